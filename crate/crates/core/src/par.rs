//! Order-preserving fan-out helpers. With the `parallel` feature these run
//! on rayon's pool unless switched off at runtime; without it they are plain
//! sequential iterators. Either way results come back in input order, so
//! every caller is deterministic regardless of thread count.

use std::sync::atomic::{AtomicBool, Ordering};

static DISABLED: AtomicBool = AtomicBool::new(false);

/// Turns data-parallel execution on or off process-wide. No effect when the
/// crate is built without the `parallel` feature.
pub fn set_parallel(enabled: bool) {
    DISABLED.store(!enabled, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && !DISABLED.load(Ordering::Relaxed)
}

pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// First `Some` in input order.
pub(crate) fn find_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let ys = map(&xs, |x| x * 2);
        assert!(ys.iter().enumerate().all(|(i, &y)| y == 2 * i as u32));
    }

    #[test]
    fn find_first_is_leftmost() {
        let xs: Vec<u32> = (0..1000).collect();
        assert_eq!(find_first(&xs, |&x| (x % 97 == 96).then_some(x)), Some(96));
        assert_eq!(find_first(&xs, |_| None::<u32>), None);
    }
}
