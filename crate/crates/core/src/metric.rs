//! Isometric subgraphs and the predicates built on them: the dp spectrum,
//! removal-set families and sdp orderings.
//!
//! Every isometric subgraph is induced (a missing edge between two kept
//! vertices would stretch their distance from 1 to at least 2), so all
//! searches here range over vertex subsets.
//!
//! The central test is [`DistanceIndex::geodesics_within`]: for kept set `S`
//! and candidate pool `P ⊇ S`, it asks whether every pair of `S` is joined by
//! a host geodesic running entirely inside `P`. With `P = S` this is exactly
//! isometry of the induced subgraph; with a larger pool it is a necessary
//! condition for any isometric `S'` with `S ⊆ S' ⊆ P`, which is what the
//! subset search prunes on.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, geodesic, DistanceMatrix, Graph};
use crate::par;
use crate::vertex_set::{low_mask, Members, VertexSet};

/// Host distances arranged for subset queries: `spheres[u][l]` holds the
/// vertices at distance exactly `l` from `u`.
#[derive(Debug, Clone)]
pub struct DistanceIndex {
    rows: Vec<u64>,
    dist: DistanceMatrix,
    spheres: Vec<Vec<u64>>,
    reachable: Vec<u64>,
}

impl DistanceIndex {
    pub fn new(g: &Graph) -> DistanceIndex {
        let dist = bfs_distances(g);
        let n = g.order();
        let mut spheres = vec![Vec::new(); n];
        let mut reachable = vec![0u64; n];
        for u in 0..n {
            for v in 0..n {
                if let Some(d) = dist.get(u, v) {
                    let layers = &mut spheres[u];
                    if layers.len() <= d {
                        layers.resize(d + 1, 0);
                    }
                    layers[d] |= 1 << v;
                    reachable[u] |= 1 << v;
                }
            }
        }
        DistanceIndex {
            rows: g.rows().to_vec(),
            dist,
            spheres,
            reachable,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    fn neighborhood(&self, set: u64) -> u64 {
        Members(set).fold(0, |acc, v| acc | self.rows[v])
    }

    /// True when every pair of `kept` is joined by a host geodesic whose
    /// vertices all lie in `pool`. `kept` must be a subset of `pool`.
    pub fn geodesics_within(&self, kept: u64, pool: u64) -> bool {
        debug_assert_eq!(kept & !pool, 0);
        for u in Members(kept) {
            // Pairs are symmetric; only look at partners above u.
            let mut pending = kept & self.reachable[u] & !low_mask(u + 1);
            let mut frontier = 1u64 << u;
            let mut level = 1;
            while pending != 0 {
                let layer = self.spheres[u][level];
                let next = layer & pool & self.neighborhood(frontier);
                if pending & layer & !next != 0 {
                    return false;
                }
                pending &= !layer;
                frontier = next;
                level += 1;
            }
        }
        true
    }

    #[inline]
    pub fn is_isometric_mask(&self, kept: u64) -> bool {
        self.geodesics_within(kept, kept)
    }

    pub fn is_isometric(&self, s: &VertexSet) -> Result<bool> {
        if s.universe() != self.order() {
            return Err(Error::DimensionError {
                expected: self.order(),
                got: s.universe(),
            });
        }
        Ok(self.is_isometric_mask(s.bits()))
    }
}

/// Whether the subgraph induced by `s` preserves all host distances.
/// Sets with fewer than two vertices are isometric.
pub fn is_isometric(host: &Graph, s: &VertexSet) -> Result<bool> {
    host.check_set(s)?;
    Ok(DistanceIndex::new(host).is_isometric_mask(s.bits()))
}

/// Same predicate as [`is_isometric`], computed the long way: induce the
/// subgraph, run BFS on it, and compare every pair with host BFS.
pub fn is_isometric_by_bfs(host: &Graph, s: &VertexSet) -> Result<bool> {
    let sub = host.induce(s)?;
    let host_d = bfs_distances(host);
    Ok(isometric_against(&host_d, &sub.graph, &sub.to_host))
}

pub(crate) fn isometric_against(host_d: &DistanceMatrix, sub: &Graph, to_host: &[usize]) -> bool {
    let sub_d = bfs_distances(sub);
    (0..to_host.len()).all(|i| {
        (i + 1..to_host.len()).all(|j| sub_d.get(i, j) == host_d.get(to_host[i], to_host[j]))
    })
}

fn require_connected(index: &DistanceIndex) -> Result<()> {
    if index.distances().is_connected() {
        Ok(())
    } else {
        Err(Error::DisconnectedInput)
    }
}

/// The set of orders `k` for which the host has a `k`-vertex isometric
/// subgraph, with one witness per order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpSpectrum {
    pub host_order: usize,
    pub achievable: BTreeSet<usize>,
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: BTreeMap<usize, VertexSet>,
}

fn serialize_witnesses<S: serde::Serializer>(
    w: &BTreeMap<usize, VertexSet>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(w.iter().map(|(k, v)| (k.to_string(), v.to_vec())))
}

impl DpSpectrum {
    /// A spectrum with no witnesses, for reasoning about synthetic order sets.
    pub fn from_orders<I: IntoIterator<Item = usize>>(host_order: usize, orders: I) -> Result<Self> {
        let achievable: BTreeSet<usize> = orders.into_iter().collect();
        if let Some(&bad) = achievable.iter().find(|&&k| k == 0 || k > host_order) {
            return Err(Error::PreconditionViolated(format!(
                "order {bad} outside 1..={host_order}"
            )));
        }
        Ok(DpSpectrum {
            host_order,
            achievable,
            witnesses: BTreeMap::new(),
        })
    }

    pub fn contains(&self, k: usize) -> bool {
        self.achievable.contains(&k)
    }

    pub fn is_dp(&self) -> bool {
        self.achievable.len() == self.host_order
    }

    pub fn missing(&self) -> Vec<usize> {
        (1..=self.host_order).filter(|k| !self.contains(*k)).collect()
    }
}

/// Consecutive achievable orders `a < b` with at least one missing order
/// strictly between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NonDpIntervalPair {
    pub a: usize,
    pub b: usize,
}

pub fn non_dp_interval_pairs(spec: &DpSpectrum) -> Vec<NonDpIntervalPair> {
    spec.achievable
        .iter()
        .zip(spec.achievable.iter().skip(1))
        .filter(|&(a, b)| b - a >= 2)
        .map(|(&a, &b)| NonDpIntervalPair { a, b })
        .collect()
}

/// Isometric subsets reached by deleting one vertex at a time from the whole
/// graph, each intermediate set staying isometric. Cheap, and in practice it
/// finds most orders; the caller falls back to exhaustive search for the rest.
const WALK_BUDGET: usize = 1 << 15;

struct SpectrumSearch<'a> {
    index: &'a DistanceIndex,
    n: usize,
}

impl SpectrumSearch<'_> {
    fn deletion_walk(&self, found: &mut BTreeMap<usize, u64>) {
        let mut seen = HashSet::new();
        let mut stack = vec![low_mask(self.n)];
        seen.insert(low_mask(self.n));
        while let Some(s) = stack.pop() {
            found.entry(s.count_ones() as usize).or_insert(s);
            if found.len() == self.n || seen.len() >= WALK_BUDGET {
                break;
            }
            // Push highest first so the lowest-index deletion is explored next.
            let mut children: Vec<u64> = Members(s)
                .map(|v| s & !(1 << v))
                .filter(|&t| t != 0 && !seen.contains(&t) && self.index.is_isometric_mask(t))
                .collect();
            children.reverse();
            for t in children {
                seen.insert(t);
                stack.push(t);
            }
        }
    }

    /// Lowest (lexicographic by member list) isometric `k`-subset, if any.
    fn exhaustive(&self, k: usize) -> Option<u64> {
        let n = self.n;
        if k == 0 || k > n {
            return None;
        }
        let mut prefixes = Vec::new();
        for v0 in 0..=n - k {
            if k == 1 {
                prefixes.push((1u64 << v0, v0 + 1));
                continue;
            }
            for v1 in v0 + 1..=n - k + 1 {
                prefixes.push((1u64 << v0 | 1 << v1, v1 + 1));
            }
        }
        par::find_first(&prefixes, |&(chosen, next)| self.extend(chosen, next, k))
    }

    fn extend(&self, chosen: u64, next: usize, k: usize) -> Option<u64> {
        let have = chosen.count_ones() as usize;
        if have == k {
            return self.index.is_isometric_mask(chosen).then_some(chosen);
        }
        let pool = chosen | (low_mask(self.n) & !low_mask(next));
        if !self.index.geodesics_within(chosen, pool) {
            return None;
        }
        let need = k - have;
        (next..=self.n - need).find_map(|v| self.extend(chosen | 1 << v, v + 1, k))
    }
}

/// Computes the exact dp spectrum of a connected graph.
///
/// Orders up to `diam + 1` come from a diametral geodesic and its prefixes.
/// The rest are first sought by a bounded walk of single-vertex deletions
/// from the whole graph; any order still missing is settled by exhaustive
/// `k`-subset search pruned with [`DistanceIndex::geodesics_within`].
pub fn dp_spectrum(g: &Graph) -> Result<DpSpectrum> {
    let index = DistanceIndex::new(g);
    require_connected(&index)?;
    dp_spectrum_indexed(g, &index)
}

pub(crate) fn dp_spectrum_indexed(g: &Graph, index: &DistanceIndex) -> Result<DpSpectrum> {
    let n = g.order();
    let mut found: BTreeMap<usize, u64> = BTreeMap::new();
    if n > 0 {
        found.insert(n, low_mask(n));
        let dist = index.distances();
        let (du, dv) = diametral_pair(dist);
        let path = geodesic(g, dist, du, dv).expect("connected");
        for len in 1..=path.len() {
            let prefix = path[..len].iter().fold(0u64, |acc, &v| acc | 1 << v);
            found.entry(len).or_insert(prefix);
        }
    }
    let search = SpectrumSearch { index, n };
    if found.len() < n {
        search.deletion_walk(&mut found);
    }
    for k in (1..=n).rev() {
        if found.contains_key(&k) {
            continue;
        }
        if let Some(w) = search.exhaustive(k) {
            found.insert(k, w);
        }
    }
    let witnesses: BTreeMap<usize, VertexSet> = found
        .into_iter()
        .map(|(k, bits)| (k, VertexSet::from_bits(n, bits).expect("within universe")))
        .collect();
    Ok(DpSpectrum {
        host_order: n,
        achievable: witnesses.keys().copied().collect(),
        witnesses,
    })
}

fn diametral_pair(dist: &DistanceMatrix) -> (usize, usize) {
    let n = dist.order();
    let mut best = (0, 0, 0);
    for u in 0..n {
        for v in u + 1..n {
            let d = dist.get(u, v).unwrap_or(0);
            if d > best.2 {
                best = (u, v, d);
            }
        }
    }
    (best.0, best.1)
}

pub fn is_dp(g: &Graph) -> Result<bool> {
    Ok(dp_spectrum(g)?.is_dp())
}

/// Vertex sets whose removal leaves an isometric subgraph, up to a size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalSetFamily {
    pub host_order: usize,
    /// Sorted by size, then by member bits.
    pub sets: Vec<VertexSet>,
}

impl RemovalSetFamily {
    pub fn contains(&self, a: &VertexSet) -> bool {
        self.sets.binary_search_by_key(&(a.len(), a.bits()), |s| (s.len(), s.bits())).is_ok()
    }

    /// Sizes occurring in the family.
    pub fn sizes(&self) -> BTreeSet<usize> {
        self.sets.iter().map(VertexSet::len).collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RemovalOptions {
    /// Drop `A = V(G)`, whose empty remainder is only vacuously isometric.
    pub require_nonempty_remainder: bool,
}

pub fn removal_set_family(g: &Graph, max_size: usize) -> Result<RemovalSetFamily> {
    removal_set_family_with(g, max_size, RemovalOptions::default())
}

pub fn removal_set_family_with(
    g: &Graph,
    max_size: usize,
    opts: RemovalOptions,
) -> Result<RemovalSetFamily> {
    let n = g.order();
    if max_size > n {
        return Err(Error::PreconditionViolated(format!(
            "max_size {max_size} exceeds order {n}"
        )));
    }
    let index = DistanceIndex::new(g);
    require_connected(&index)?;
    let full = low_mask(n);
    let mut masks = filter_subsets(n, |a| {
        a.count_ones() as usize <= max_size
            && !(opts.require_nonempty_remainder && a == full)
            && index.is_isometric_mask(full & !a)
    });
    masks.sort_by_key(|&a| (a.count_ones(), a));
    Ok(RemovalSetFamily {
        host_order: n,
        sets: masks
            .into_iter()
            .map(|a| VertexSet::from_bits(n, a).expect("within universe"))
            .collect(),
    })
}

/// All masks over `n` bits satisfying `keep`, in increasing numeric order.
pub(crate) fn filter_subsets<F>(n: usize, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    assert!(n < 40, "subset enumeration over {n} vertices");
    let split = n.min(8);
    let low = n - split;
    let chunks: Vec<u64> = (0..1u64 << split).collect();
    par::map(&chunks, |&hi| {
        (0..1u64 << low)
            .map(|lo| hi << low | lo)
            .filter(|&m| keep(m))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// A vertex ordering whose every deletion prefix leaves an isometric
/// subgraph, or a certificate that none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "order", rename_all = "snake_case")]
pub enum SdpSequence {
    Found(Vec<usize>),
    NoneExists,
}

impl SdpSequence {
    pub fn as_slice(&self) -> Option<&[usize]> {
        match self {
            SdpSequence::Found(v) => Some(v),
            SdpSequence::NoneExists => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, SdpSequence::Found(_))
    }
}

/// Backtracking search, lowest vertex first, memoizing surviving sets that
/// cannot be emptied.
pub fn sdp_sequence(g: &Graph) -> Result<SdpSequence> {
    let index = DistanceIndex::new(g);
    require_connected(&index)?;
    Ok(sdp_sequence_indexed(&index))
}

pub(crate) fn sdp_sequence_indexed(index: &DistanceIndex) -> SdpSequence {
    struct Search<'a> {
        index: &'a DistanceIndex,
        dead: HashSet<u64>,
        order: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, alive: u64) -> bool {
            if alive == 0 {
                return true;
            }
            for v in Members(alive) {
                let rest = alive & !(1 << v);
                if self.dead.contains(&rest) {
                    continue;
                }
                if self.index.is_isometric_mask(rest) {
                    self.order.push(v);
                    if self.run(rest) {
                        return true;
                    }
                    self.order.pop();
                }
                self.dead.insert(rest);
            }
            false
        }
    }
    let mut search = Search {
        index,
        dead: HashSet::new(),
        order: Vec::with_capacity(index.order()),
    };
    if search.run(low_mask(index.order())) {
        SdpSequence::Found(search.order)
    } else {
        SdpSequence::NoneExists
    }
}

pub fn is_sdp(g: &Graph) -> Result<bool> {
    Ok(sdp_sequence(g)?.exists())
}

/// Re-checks a claimed sdp ordering from scratch: it must be a permutation,
/// and after each deletion prefix the survivors must induce an isometric
/// subgraph, measured by fresh BFS on the induced graph.
pub fn check_sdp_sequence(host: &Graph, order: &[usize]) -> bool {
    let n = host.order();
    if order.len() != n {
        return false;
    }
    let mut alive = host.vertices();
    for &v in order {
        if !alive.contains(v) {
            return false;
        }
        alive.remove(v);
    }
    if !alive.is_empty() {
        return false;
    }
    let host_d = bfs_distances(host);
    let mut alive = host.vertices();
    for &v in order {
        alive.remove(v);
        let sub = host.induce(&alive).expect("same universe");
        if !isometric_against(&host_d, &sub.graph, &sub.to_host) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{c7_with_pendant, complete, cycle, path};

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn geodesic_vertices_are_isometric() {
        let g = c7_with_pendant();
        assert!(is_isometric(&g, &set(8, &[7, 0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn four_vertices_of_c5_are_not_isometric() {
        let c5 = cycle(5);
        for v in 0..5 {
            let s = VertexSet::full(5).complement();
            let s = (0..5).filter(|&w| w != v).fold(s, |mut acc, w| {
                acc.insert(w);
                acc
            });
            assert!(!is_isometric(&c5, &s).unwrap());
            assert!(!is_isometric_by_bfs(&c5, &s).unwrap());
        }
    }

    #[test]
    fn trivial_sets_are_isometric() {
        let g = Graph::empty(3).unwrap();
        assert!(is_isometric(&g, &VertexSet::empty(3)).unwrap());
        assert!(is_isometric(&g, &set(3, &[2])).unwrap());
        assert!(is_isometric(&g, &VertexSet::full(3)).unwrap());
    }

    #[test]
    fn isometry_rejects_universe_mismatch() {
        assert!(matches!(
            is_isometric(&cycle(5), &VertexSet::full(4)),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn complete_graph_spectrum_is_full() {
        let s = dp_spectrum(&complete(4)).unwrap();
        assert_eq!(s.achievable, (1..=4).collect());
        assert!(s.is_dp());
    }

    #[test]
    fn c6_misses_order_five() {
        let s = dp_spectrum(&cycle(6)).unwrap();
        assert_eq!(s.achievable, [1, 2, 3, 4, 6].into_iter().collect());
        assert_eq!(non_dp_interval_pairs(&s), vec![NonDpIntervalPair { a: 4, b: 6 }]);
    }

    #[test]
    fn pendant_fixture_spectrum() {
        // Exhaustive over all 2^8 subsets: 7-0-1-2-3 is a 5-vertex geodesic,
        // and order 6 is the only gap.
        let s = dp_spectrum(&c7_with_pendant()).unwrap();
        assert_eq!(s.achievable, [1, 2, 3, 4, 5, 7, 8].into_iter().collect());
        assert_eq!(s.missing(), vec![6]);
        assert_eq!(non_dp_interval_pairs(&s), vec![NonDpIntervalPair { a: 5, b: 7 }]);
        for (k, w) in &s.witnesses {
            assert_eq!(w.len(), *k);
            assert!(is_isometric_by_bfs(&c7_with_pendant(), w).unwrap());
        }
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::empty(2).unwrap();
        assert_eq!(dp_spectrum(&g), Err(Error::DisconnectedInput));
        assert_eq!(sdp_sequence(&g), Err(Error::DisconnectedInput));
        assert_eq!(removal_set_family(&g, 1), Err(Error::DisconnectedInput));
    }

    #[test]
    fn paths_are_dp() {
        assert!(is_dp(&path(5)).unwrap());
    }

    #[test]
    fn gap_pairs_on_synthetic_spectrum() {
        let s = DpSpectrum::from_orders(9, [1, 2, 5, 6, 9]).unwrap();
        assert_eq!(
            non_dp_interval_pairs(&s),
            vec![NonDpIntervalPair { a: 2, b: 5 }, NonDpIntervalPair { a: 6, b: 9 }]
        );
        let full = DpSpectrum::from_orders(4, 1..=4).unwrap();
        assert!(non_dp_interval_pairs(&full).is_empty());
        assert!(DpSpectrum::from_orders(3, [0]).is_err());
        assert!(DpSpectrum::from_orders(3, [4]).is_err());
    }

    #[test]
    fn removal_family_basics() {
        let k4 = removal_set_family(&complete(4), 3).unwrap();
        assert_eq!(k4.sets.len(), 1 + 4 + 6 + 4);
        assert!(k4.contains(&VertexSet::empty(4)));

        let c5 = removal_set_family(&cycle(5), 1).unwrap();
        assert_eq!(c5.sets, vec![VertexSet::empty(5)]);

        let all = removal_set_family(&path(3), 3).unwrap();
        assert!(all.contains(&VertexSet::full(3)));
        let opts = RemovalOptions {
            require_nonempty_remainder: true,
        };
        let some = removal_set_family_with(&path(3), 3, opts).unwrap();
        assert!(!some.contains(&VertexSet::full(3)));
        assert!(removal_set_family(&path(3), 4).is_err());
    }

    #[test]
    fn sdp_of_path_deletes_a_leaf_first() {
        let seq = sdp_sequence(&path(4)).unwrap();
        let order = seq.as_slice().unwrap();
        assert_eq!(order[0], 0);
        assert!(check_sdp_sequence(&path(4), order));
    }

    #[test]
    fn sdp_of_complete_graph_is_identity_order() {
        assert_eq!(
            sdp_sequence(&complete(5)).unwrap(),
            SdpSequence::Found(vec![0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn non_sdp_graphs() {
        assert!(!is_sdp(&c7_with_pendant()).unwrap());
        assert!(!is_sdp(&cycle(6)).unwrap());
        assert!(is_sdp(&path(4)).unwrap());
    }

    #[test]
    fn check_sdp_sequence_rejects_non_permutations() {
        let g = path(3);
        assert!(!check_sdp_sequence(&g, &[0, 1]));
        assert!(!check_sdp_sequence(&g, &[0, 0, 2]));
        // Deleting the middle vertex of P3 first disconnects it.
        assert!(!check_sdp_sequence(&g, &[1, 0, 2]));
        assert!(check_sdp_sequence(&g, &[0, 1, 2]));
    }
}
