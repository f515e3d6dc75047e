use std::fmt;

use crate::error::{Error, Result};

/// Largest graph order representable by a single-word bitset row.
pub const MAX_ORDER: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the vertices `0..universe` of some host graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    universe: usize,
    bits: u64,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_ORDER, "universe {universe} > {MAX_ORDER}");
        VertexSet { universe, bits: 0 }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= MAX_ORDER, "universe {universe} > {MAX_ORDER}");
        VertexSet {
            universe,
            bits: low_mask(universe),
        }
    }

    /// Builds a set from raw bits, rejecting members outside the universe.
    pub fn from_bits(universe: usize, bits: u64) -> Result<Self> {
        if universe > MAX_ORDER {
            return Err(Error::TooLarge {
                order: universe,
                max: MAX_ORDER,
            });
        }
        if bits & !low_mask(universe) != 0 {
            return Err(Error::DimensionError {
                expected: universe,
                got: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(VertexSet { universe, bits })
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Result<Self> {
        let mut s = VertexSet::empty(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::DimensionError {
                    expected: universe,
                    got: v + 1,
                });
            }
            s.bits |= 1 << v;
        }
        Ok(s)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.bits |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.bits &= !(1 << v);
        }
    }

    pub fn complement(&self) -> Self {
        VertexSet {
            universe: self.universe,
            bits: !self.bits & low_mask(self.universe),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Members {
        Members(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet[{}]", self.universe)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone)]
pub struct Members(pub(crate) u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}
