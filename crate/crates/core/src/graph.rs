//! Simple undirected graphs over dense vertex indices, with one `u64`
//! adjacency row per vertex, plus BFS distances and induced subgraphs.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::vertex_set::{low_mask, Members, VertexSet, MAX_ORDER};

/// Equality and hashing look at adjacency only; the label is a report tag.
#[derive(Clone)]
pub struct Graph {
    rows: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

/// Builds a simple graph from an edge list. Duplicate edges (in either
/// orientation) collapse to one.
pub fn build_graph(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(order, edges.iter().copied())
}

impl Graph {
    /// The graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Result<Graph> {
        if order > MAX_ORDER {
            return Err(Error::TooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        Ok(Graph {
            rows: vec![0; order],
            label: None,
        })
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(order)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Rows must already be symmetric, loop-free and within width `rows.len()`.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Graph {
        debug_assert!(rows.len() <= MAX_ORDER);
        let g = Graph { rows, label: None };
        debug_assert!(g.check_invariants());
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let order = self.order();
        if u >= order || v >= order {
            return Err(Error::InvalidEdge { u, v, order });
        }
        if u == v {
            return Err(Error::LoopRejected(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.rows[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> Members {
        Members(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| Members(row & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    fn check_invariants(&self) -> bool {
        let n = self.order();
        self.rows.iter().enumerate().all(|(i, &row)| {
            row >> i & 1 == 0
                && row & !low_mask(n) == 0
                && Members(row).all(|j| self.rows[j] >> i & 1 == 1)
        })
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.order() {
            return Err(Error::DimensionError {
                expected: self.order(),
                got: s.universe(),
            });
        }
        Ok(())
    }

    /// The subgraph induced by `s`, relabelled densely in increasing host order.
    pub fn induce(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(s)?;
        let to_host = s.to_vec();
        let rows = to_host
            .iter()
            .map(|&hv| {
                to_host
                    .iter()
                    .enumerate()
                    .filter(|&(_, &hw)| self.rows[hv] >> hw & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok(InducedSubgraph {
            graph: Graph::from_rows_unchecked(rows),
            to_host,
        })
    }

    /// Removes the vertices of `s`; the complement of `s` is induced.
    pub fn remove(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(s)?;
        self.induce(&s.complement())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Graph");
        if let Some(l) = &self.label {
            d.field("label", l);
        }
        d.field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Graph", 4)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.serialize_field("graph6", &crate::format::to_graph6(self).ok())?;
        st.end()
    }
}

/// An induced subgraph as a standalone graph with the map back to its host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_host[i]` is the host vertex behind local vertex `i`.
    pub to_host: Vec<usize>,
}

/// All-pairs shortest path lengths. Unreachable pairs are `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    dist: Vec<Option<u8>>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u * self.order + v].map(usize::from)
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    /// Largest distance from `u`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, u: usize) -> Option<usize> {
        (0..self.order)
            .map(|v| self.get(u, v))
            .try_fold(0, |m, d| d.map(|d| m.max(d)))
    }

    pub fn diameter(&self) -> Option<usize> {
        (0..self.order)
            .map(|u| self.eccentricity(u))
            .try_fold(0, |m, e| e.map(|e| m.max(e)))
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix({})", self.order)?;
        for u in 0..self.order {
            for v in 0..self.order {
                match self.get(u, v) {
                    Some(d) => write!(f, "{d:>3}")?,
                    None => f.write_str("  -")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Breadth-first search from every vertex, one bitset frontier per level.
pub fn bfs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut dist = vec![None; n * n];
    for src in 0..n {
        let row = &mut dist[src * n..(src + 1) * n];
        let mut seen = 1u64 << src;
        let mut frontier = seen;
        let mut level = 0u8;
        while frontier != 0 {
            for v in Members(frontier) {
                row[v] = Some(level);
            }
            let next = Members(frontier).fold(0, |acc, v| acc | g.rows[v]) & !seen;
            seen |= next;
            frontier = next;
            level += 1;
        }
    }
    DistanceMatrix { order: n, dist }
}

/// Empty graph and K1 count as connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    let all = low_mask(n);
    let mut seen = 1u64;
    let mut frontier = seen;
    while frontier != 0 {
        let next = Members(frontier).fold(0, |acc, v| acc | g.rows[v]) & !seen;
        seen |= next;
        frontier = next;
    }
    seen == all
}

/// Largest pairwise distance; `None` for a disconnected graph.
pub fn diameter(g: &Graph) -> Option<usize> {
    bfs_distances(g).diameter()
}

/// One shortest `u`-`v` path, preferring lowest-index predecessors.
pub(crate) fn geodesic(g: &Graph, dist: &DistanceMatrix, u: usize, v: usize) -> Option<Vec<usize>> {
    let d = dist.get(u, v)?;
    let mut path = vec![v];
    let mut cur = v;
    for step in (0..d).rev() {
        cur = g
            .neighbors(cur)
            .find(|&w| dist.get(u, w) == Some(step))
            .expect("a vertex one step closer exists on every geodesic");
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{c7_with_pendant, complete, cycle, path};

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            build_graph(3, &[(0, 3)]),
            Err(Error::InvalidEdge { u: 0, v: 3, order: 3 })
        );
        assert_eq!(build_graph(3, &[(1, 1)]), Err(Error::LoopRejected(1)));
        assert!(matches!(Graph::empty(65), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = build_graph(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g, path(3));
    }

    #[test]
    fn path_distances() {
        let d = bfs_distances(&path(3));
        assert_eq!(d.get(0, 2), Some(2));
        assert_eq!(d.get(2, 0), Some(2));
        assert_eq!(d.get(1, 1), Some(0));
    }

    #[test]
    fn isolated_pair_is_unreachable() {
        let g = Graph::empty(2).unwrap();
        assert_eq!(bfs_distances(&g).get(0, 1), None);
        assert!(!is_connected(&g));
        assert_eq!(diameter(&g), None);
    }

    #[test]
    fn connectivity_conventions() {
        assert!(is_connected(&Graph::empty(0).unwrap()));
        assert!(is_connected(&complete(1)));
        assert!(is_connected(&c7_with_pendant()));
        assert_eq!(diameter(&complete(1)), Some(0));
    }

    #[test]
    fn pendant_vertex_eccentricity() {
        // BFS by hand: 7 -> 0 -> {1,6} -> {2,5} -> {3,4}.
        let d = bfs_distances(&c7_with_pendant());
        assert_eq!(d.eccentricity(7), Some(4));
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&complete(4)), Some(1));
        assert_eq!(diameter(&cycle(7)), Some(3));
    }

    #[test]
    fn induce_drops_vertex_of_c4() {
        let c4 = cycle(4);
        let s = VertexSet::from_vertices(4, [0, 1, 2]).unwrap();
        let sub = c4.induce(&s).unwrap();
        assert_eq!(sub.graph, path(3));
        assert_eq!(sub.to_host, vec![0, 1, 2]);
    }

    #[test]
    fn induce_full_is_identity() {
        let g = c7_with_pendant();
        let sub = g.induce(&g.vertices()).unwrap();
        assert_eq!(sub.graph.rows(), g.rows());
    }

    #[test]
    fn induce_cycle_of_pendant_fixture() {
        let g = c7_with_pendant();
        let s = VertexSet::from_vertices(8, 0..7).unwrap();
        let sub = g.induce(&s).unwrap();
        let want: Vec<_> = cycle(7).edges().collect();
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), want);
    }

    #[test]
    fn induce_checks_universe() {
        let g = cycle(4);
        assert_eq!(
            g.induce(&VertexSet::full(5)),
            Err(Error::DimensionError { expected: 4, got: 5 })
        );
    }

    #[test]
    fn geodesic_is_shortest() {
        let g = cycle(7);
        let d = bfs_distances(&g);
        let p = geodesic(&g, &d, 0, 3).unwrap();
        assert_eq!(p, vec![0, 1, 2, 3]);
    }
}
