//! Brute-force reference implementations, written against plain adjacency
//! lists and sharing no code with the library's bitset routines.

#![allow(dead_code)]

use std::collections::VecDeque;

use dpgraph::Graph;

pub type Adj = Vec<Vec<usize>>;

pub fn adj(g: &Graph) -> Adj {
    let mut a = vec![Vec::new(); g.order()];
    for (u, v) in g.edges() {
        a[u].push(v);
        a[v].push(u);
    }
    a
}

/// Queue-based BFS from one source; `None` marks unreachable vertices.
pub fn bfs_from(a: &Adj, src: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; a.len()];
    d[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let du = d[u].unwrap();
        for &w in &a[u] {
            if d[w].is_none() {
                d[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    d
}

pub fn all_pairs(a: &Adj) -> Vec<Vec<Option<usize>>> {
    (0..a.len()).map(|s| bfs_from(a, s)).collect()
}

/// Distances from boolean powers of `I + A`: the first power with a 1 at
/// `(u, v)` is the distance.
pub fn matrix_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.order();
    let base: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || g.has_edge(i, j)).collect())
        .collect();
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut dist: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for k in 0..n.max(1) {
        for i in 0..n {
            for j in 0..n {
                if reach[i][j] && dist[i][j].is_none() {
                    dist[i][j] = Some(k);
                }
            }
        }
        let next: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|m| reach[i][m] && base[m][j])).collect())
            .collect();
        reach = next;
    }
    dist
}

/// Induced subgraph of `a` on `keep` (sorted), relabelled densely.
pub fn induced(a: &Adj, keep: &[usize]) -> Adj {
    let pos = |v: usize| keep.iter().position(|&k| k == v);
    keep.iter()
        .map(|&u| a[u].iter().filter_map(|&w| pos(w)).collect())
        .collect()
}

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Isometry by definition: every pair of `keep` has the same distance in
/// the induced subgraph as in the host.
pub fn naive_isometric(a: &Adj, host_d: &[Vec<Option<usize>>], keep: &[usize]) -> bool {
    let sub = induced(a, keep);
    let sub_d = all_pairs(&sub);
    (0..keep.len()).all(|i| (0..keep.len()).all(|j| sub_d[i][j] == host_d[keep[i]][keep[j]]))
}

/// Every subset checked; the achievable orders in increasing order.
pub fn naive_spectrum(g: &Graph) -> Vec<usize> {
    let a = adj(g);
    let d = all_pairs(&a);
    let n = g.order();
    let mut ok = vec![false; n + 1];
    for mask in 1u64..(1u64 << n) {
        let keep = members(mask);
        if !ok[keep.len()] && naive_isometric(&a, &d, &keep) {
            ok[keep.len()] = true;
        }
    }
    (1..=n).filter(|&k| ok[k]).collect()
}

/// Plain backtracking over deletion orders without memoization.
pub fn naive_is_sdp(g: &Graph) -> bool {
    fn go(a: &Adj, d: &[Vec<Option<usize>>], alive: &mut Vec<usize>) -> bool {
        if alive.is_empty() {
            return true;
        }
        for i in 0..alive.len() {
            let v = alive.remove(i);
            if naive_isometric(a, d, alive) && go(a, d, alive) {
                alive.insert(i, v);
                return true;
            }
            alive.insert(i, v);
        }
        false
    }
    let a = adj(g);
    let d = all_pairs(&a);
    let mut alive: Vec<usize> = (0..g.order()).collect();
    go(&a, &d, &mut alive)
}

pub fn connected(a: &Adj) -> bool {
    a.is_empty() || bfs_from(a, 0).iter().all(Option::is_some)
}

/// Product adjacency written straight from the edge rules, row-major.
pub fn lex_adj(g: &Graph, h: &Graph) -> Adj {
    product_adj(g, h, |u, v, x, y| g.has_edge(u, v) || (u == v && h.has_edge(x, y)))
}

pub fn cart_adj(g: &Graph, h: &Graph) -> Adj {
    product_adj(g, h, |u, v, x, y| {
        (g.has_edge(u, v) && x == y) || (u == v && h.has_edge(x, y))
    })
}

fn product_adj(g: &Graph, h: &Graph, edge: impl Fn(usize, usize, usize, usize) -> bool) -> Adj {
    let (m, n) = (g.order(), h.order());
    (0..m * n)
        .map(|a| {
            (0..m * n)
                .filter(|&b| b != a && edge(a / n, b / n, a % n, b % n))
                .collect()
        })
        .collect()
}

/// The sdp property of a given order, re-checked by definition.
pub fn naive_check_sequence(g: &Graph, order: &[usize]) -> bool {
    let a = adj(g);
    let d = all_pairs(&a);
    let mut alive: Vec<usize> = (0..g.order()).collect();
    for v in order {
        let Some(i) = alive.iter().position(|w| w == v) else {
            return false;
        };
        alive.remove(i);
        if !naive_isometric(&a, &d, &alive) {
            return false;
        }
    }
    alive.is_empty()
}
