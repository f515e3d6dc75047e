//! Lexicographic and Cartesian products.
//!
//! Product vertex `(u, x)`, with `u` from the left factor and `x` from the
//! right factor of order `n`, always lives at index `u * n + x`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, DistanceMatrix, Graph};
use crate::vertex_set::{VertexSet, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Lexicographic,
    Cartesian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub left_order: usize,
    pub right_order: usize,
    pub kind: ProductKind,
}

impl ProductGraph {
    #[inline]
    pub fn encode(&self, u: usize, x: usize) -> usize {
        debug_assert!(u < self.left_order && x < self.right_order);
        u * self.right_order + x
    }

    #[inline]
    pub fn decode(&self, i: usize) -> (usize, usize) {
        (i / self.right_order, i % self.right_order)
    }

    /// Vertex set `{(u, x) : u ∈ a, x ∈ b}`.
    pub fn cross(&self, a: &VertexSet, b: &VertexSet) -> Result<VertexSet> {
        if a.universe() != self.left_order || b.universe() != self.right_order {
            return Err(Error::DimensionError {
                expected: self.left_order * self.right_order,
                got: a.universe() * b.universe(),
            });
        }
        let mut s = VertexSet::empty(self.graph.order());
        for u in a.iter() {
            for x in b.iter() {
                s.insert(self.encode(u, x));
            }
        }
        Ok(s)
    }
}

fn product(g: &Graph, h: &Graph, kind: ProductKind) -> Result<ProductGraph> {
    let (m, n) = (g.order(), h.order());
    if m == 0 || n == 0 {
        return Err(Error::EmptyFactor);
    }
    if m * n > MAX_ORDER {
        return Err(Error::TooLarge {
            order: m * n,
            max: MAX_ORDER,
        });
    }
    let mut edges = Vec::new();
    for a in 0..m * n {
        let (u, x) = (a / n, a % n);
        for b in a + 1..m * n {
            let (v, y) = (b / n, b % n);
            let adjacent = match kind {
                ProductKind::Lexicographic => g.has_edge(u, v) || (u == v && h.has_edge(x, y)),
                ProductKind::Cartesian => {
                    (g.has_edge(u, v) && x == y) || (u == v && h.has_edge(x, y))
                }
            };
            if adjacent {
                edges.push((a, b));
            }
        }
    }
    Ok(ProductGraph {
        graph: Graph::from_edges(m * n, edges)?,
        left_order: m,
        right_order: n,
        kind,
    })
}

/// `G[H]`: `(u,x) ~ (v,y)` iff `u ~ v` in G, or `u = v` and `x ~ y` in H.
pub fn lex_product(g: &Graph, h: &Graph) -> Result<ProductGraph> {
    product(g, h, ProductKind::Lexicographic)
}

/// `G □ H`: one coordinate moves along an edge while the other stays fixed.
pub fn cart_product(g: &Graph, h: &Graph) -> Result<ProductGraph> {
    product(g, h, ProductKind::Cartesian)
}

/// Closed-form distance in `G[H]` for distinct `(u,x)`, `(v,y)`: `d_G(u,v)`
/// across fibres, otherwise 1 or 2 by adjacency in H. `G` must be connected
/// with at least two vertices; `H` is unrestricted.
pub fn lex_distance(
    g_dist: &DistanceMatrix,
    h: &Graph,
    (u, x): (usize, usize),
    (v, y): (usize, usize),
) -> Result<usize> {
    if g_dist.order() < 2 {
        return Err(Error::PreconditionViolated(
            "left factor needs at least two vertices".into(),
        ));
    }
    if !g_dist.is_connected() {
        return Err(Error::PreconditionViolated("left factor is disconnected".into()));
    }
    if (u, x) == (v, y) {
        return Err(Error::PreconditionViolated("vertices must be distinct".into()));
    }
    if u != v {
        Ok(g_dist.get(u, v).expect("connected"))
    } else if h.has_edge(x, y) {
        Ok(1)
    } else {
        Ok(2)
    }
}

/// `d_G(u,v) + d_H(x,y)`, unreachable if either term is.
pub fn cart_distance(
    g_dist: &DistanceMatrix,
    h_dist: &DistanceMatrix,
    (u, x): (usize, usize),
    (v, y): (usize, usize),
) -> Option<usize> {
    match (g_dist.get(u, v), h_dist.get(x, y)) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    }
}

/// Left coordinates occurring in `k`.
pub fn project(k: &VertexSet, product: &ProductGraph) -> Result<VertexSet> {
    product.graph.check_set(k)?;
    let mut out = VertexSet::empty(product.left_order);
    for i in k.iter() {
        out.insert(product.decode(i).0);
    }
    Ok(out)
}

/// Both sides of the geodesic factorization property of a Cartesian product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorization {
    /// The walk has length equal to the product distance of its endpoints.
    pub product_geodesic: bool,
    /// Each coordinate sequence, with consecutive repeats collapsed, has
    /// length equal to the factor distance of its endpoints.
    pub factors_geodesic: bool,
}

impl Factorization {
    pub fn holds(&self) -> bool {
        self.product_geodesic && self.factors_geodesic
    }
}

/// Evaluates both sides independently for a walk in `G □ H`.
pub fn geodesic_factorization(
    product: &ProductGraph,
    left: &Graph,
    right: &Graph,
    walk: &[usize],
) -> Result<Factorization> {
    if product.kind != ProductKind::Cartesian {
        return Err(Error::PreconditionViolated("expected a Cartesian product".into()));
    }
    if left.order() != product.left_order || right.order() != product.right_order {
        return Err(Error::DimensionError {
            expected: product.graph.order(),
            got: left.order() * right.order(),
        });
    }
    let Some((&first, &last)) = walk.first().zip(walk.last()) else {
        return Err(Error::PreconditionViolated("empty walk".into()));
    };
    for (step, w) in walk.windows(2).enumerate() {
        if !product.graph.has_edge(w[0], w[1]) {
            return Err(Error::NotAWalk {
                step,
                from: w[0],
                to: w[1],
            });
        }
    }
    let pd = bfs_distances(&product.graph);
    let product_geodesic = pd.get(first, last) == Some(walk.len() - 1);

    let factor_is_geodesic = |g: &Graph, coords: Vec<usize>| {
        let mut collapsed = coords;
        collapsed.dedup();
        let d = bfs_distances(g);
        let ends = (collapsed[0], *collapsed.last().expect("nonempty"));
        d.get(ends.0, ends.1) == Some(collapsed.len() - 1)
    };
    let lefts = walk.iter().map(|&i| product.decode(i).0).collect();
    let rights = walk.iter().map(|&i| product.decode(i).1).collect();
    let factors_geodesic = factor_is_geodesic(left, lefts) && factor_is_geodesic(right, rights);
    Ok(Factorization {
        product_geodesic,
        factors_geodesic,
    })
}

/// True iff `walk` is a product geodesic whose coordinate projections are
/// factor geodesics.
pub fn geodesic_factorization_check(
    product: &ProductGraph,
    left: &Graph,
    right: &Graph,
    walk: &[usize],
) -> Result<bool> {
    Ok(geodesic_factorization(product, left, right, walk)?.holds())
}
