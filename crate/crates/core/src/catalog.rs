//! Named small graphs and exhaustive catalogs of graphs up to isomorphism.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};
use crate::vertex_set::Members;

/// Catalogs are generated by brute-force canonical labelling; beyond this
/// order that stops being a desk-scale computation.
pub const MAX_CATALOG_ORDER: usize = 8;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        .expect("path edges are valid")
        .with_label(format!("P{n}"))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        .expect("cycle edges are valid")
        .with_label(format!("C{n}"))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        .expect("complete edges are valid")
        .with_label(format!("K{n}"))
}

/// `g` plus a new vertex `g.order()` joined only to `at`.
pub fn with_pendant(g: &Graph, at: usize) -> Result<Graph> {
    let n = g.order();
    let label = g.label().map(|l| format!("{l}+pendant"));
    let mut out = Graph::from_edges(n + 1, g.edges().chain(std::iter::once((at, n))))?;
    if let Some(l) = label {
        out = out.with_label(l);
    }
    Ok(out)
}

/// The 7-cycle `0-1-…-6-0` with pendant vertex 7 hanging off vertex 0.
pub fn c7_with_pendant() -> Graph {
    with_pendant(&cycle(7), 0).expect("valid")
}

/// Parses names such as `K4`, `P2`, `C7` or `C7+pendant`.
pub fn named(name: &str) -> Result<Graph> {
    let bad = || Error::Parse {
        line: 0,
        msg: format!("unknown graph name `{name}`"),
    };
    let (base, pendant) = match name.strip_suffix("+pendant") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let mut chars = base.chars();
    let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    if n > crate::vertex_set::MAX_ORDER {
        return Err(Error::TooLarge {
            order: n,
            max: crate::vertex_set::MAX_ORDER,
        });
    }
    let g = match family {
        'K' => complete(n),
        'P' => path(n),
        'C' if n >= 3 => cycle(n),
        _ => return Err(bad()),
    };
    if pendant {
        if n == 0 {
            return Err(bad());
        }
        with_pendant(&g, 0)
    } else {
        Ok(g)
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid")
}

/// Upper-triangle adjacency bits in graph6 order (column by column), read as
/// a big-endian integer.
fn triangle_code(g: &Graph, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = code << 1 | u64::from(g.has_edge(perm[i], perm[j]));
        }
    }
    code
}

/// Stable colouring by iterated neighbour-colour refinement, starting from
/// degrees. Colours are ranks, so they are isomorphism invariant.
fn refined_colours(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let classes = |c: &[usize]| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Canonical form: the minimum triangle code over all labellings that list
/// colour classes in colour order. Returns the code and the relabelled graph.
pub fn canonical_form(g: &Graph) -> (u64, Graph) {
    let n = g.order();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let colours = refined_colours(g);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();

    fn permute(cells: &[Vec<usize>], prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let Some((cell, rest)) = cells.split_first() else {
            visit(prefix);
            return;
        };
        let mut cell = cell.clone();
        let k = cell.len();
        heap_permutations(&mut cell, k, &mut |p| {
            let mark = prefix.len();
            prefix.extend_from_slice(p);
            permute(rest, prefix, visit);
            prefix.truncate(mark);
        });
    }

    let mut best: Option<(u64, Vec<usize>)> = None;
    permute(&cells, &mut Vec::with_capacity(n), &mut |perm| {
        let code = triangle_code(g, perm);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, perm.to_vec()));
        }
    });
    let (code, perm) = best.expect("at least one labelling");
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let relabelled = Graph::from_edges(
        n,
        edges.filter(|&(i, j)| g.has_edge(perm[i], perm[j])).collect::<Vec<_>>(),
    )
    .expect("valid");
    (code, relabelled)
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Graph>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every graph of order `n` up to isomorphism, in canonical form, sorted by
/// canonical code. Built by adding a vertex to each graph of order `n - 1`
/// in every possible way; every graph arises so since deleting any vertex
/// leaves a graph of the previous order.
pub fn all_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    if n > MAX_CATALOG_ORDER {
        return Err(Error::ScaleExceeded {
            order: n,
            cap: MAX_CATALOG_ORDER,
        });
    }
    if let Some(hit) = cache().lock().expect("cache").get(&n) {
        return Ok(hit.clone());
    }
    let graphs: Vec<Graph> = if n == 0 {
        vec![Graph::empty(0)?]
    } else {
        let smaller = all_graphs(n - 1)?;
        let candidates: Vec<(&Graph, u64)> = smaller
            .iter()
            .flat_map(|g| (0..1u64 << (n - 1)).map(move |nb| (g, nb)))
            .collect();
        let canon = crate::par::map(&candidates, |&(g, nb)| {
            let edges = g.edges().chain(Members(nb).map(|v| (v, n - 1)));
            canonical_form(&Graph::from_edges(n, edges).expect("valid"))
        });
        let unique: BTreeMap<u64, Graph> = canon.into_iter().collect();
        unique
            .into_iter()
            .enumerate()
            .map(|(i, (_, g))| g.with_label(format!("n{n}#{i}")))
            .collect()
    };
    let graphs = Arc::new(graphs);
    cache().lock().expect("cache").insert(n, graphs.clone());
    Ok(graphs)
}

pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.iter().filter(|g| is_connected(g)).cloned().collect())
}

/// Graphs of every order in `lo..=hi`, smallest orders first.
pub fn graphs_in_range(lo: usize, hi: usize, connected_only: bool) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        if connected_only {
            out.extend(connected_graphs(n)?);
        } else {
            out.extend(all_graphs(n)?.iter().cloned());
        }
    }
    Ok(out)
}
