//! Mechanical checks of the product theorems against brute force.
//!
//! Every biconditional is evaluated with one side computed the slow way
//! (induce, run BFS, compare with host BFS) so that a bug in the fast
//! isometry test cannot confirm itself.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::catalog::graphs_in_range;
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, diameter, is_connected, DistanceMatrix, Graph};
use crate::metric::{
    check_sdp_sequence, dp_spectrum, isometric_against, non_dp_interval_pairs, sdp_sequence_indexed,
    DistanceIndex, DpSpectrum,
};
use crate::par;
use crate::products::{cart_product, lex_product, project, ProductGraph};
use crate::vertex_set::{low_mask, VertexSet};

/// Enumerated spaces up to this many items are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
/// Items drawn when a space is too large to enumerate.
pub const SAMPLE_SIZE: usize = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed_d157;
const MAX_RECORDED_FAILURES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

fn serialize_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub instances_checked: u64,
    /// Total failures; at most the first few are kept in `failures`.
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    /// False if any part of the run was sampled rather than enumerated.
    pub exhaustive: bool,
    pub seed: Option<u64>,
    #[serde(rename = "elapsed_secs", serialize_with = "serialize_secs")]
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// An empty report that holds vacuously.
    pub fn new(claim_id: &str) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            instances_checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            exhaustive: true,
            seed: None,
            elapsed: Duration::ZERO,
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.failure_count == 0
    }

    fn absorb(&mut self, part: Outcome) {
        self.instances_checked += part.checked;
        self.failure_count += part.failures.len() as u64;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(part.failures.into_iter().take(room));
        if !part.exhaustive {
            self.exhaustive = false;
            self.seed = part.seed;
        }
    }

    /// Folds `other` in. `elapsed` is left for the caller to set.
    pub fn merge(&mut self, other: VerificationReport) {
        self.instances_checked += other.instances_checked;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        if !other.exhaustive {
            self.exhaustive = false;
            self.seed = other.seed;
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} instances, {} failures, {}, {:.3}s)",
            self.claim_id,
            if self.holds() { "holds" } else { "VIOLATED" },
            self.instances_checked,
            self.failure_count,
            match self.seed {
                Some(s) if !self.exhaustive => format!("sampled, seed {s}"),
                _ => "exhaustive".to_string(),
            },
            self.elapsed.as_secs_f64()
        )?;
        for fl in &self.failures {
            write!(f, "\n  {}: expected {}, got {}", fl.input, fl.expected, fl.got)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: DEFAULT_SEED }
    }
}

struct Outcome {
    checked: u64,
    failures: Vec<Failure>,
    exhaustive: bool,
    seed: Option<u64>,
}

/// Runs `check` over every mask on `bits` bits (or a seeded sample when
/// there are too many), collecting failures in mask order.
fn over_masks<F>(bits: usize, cfg: &SampleConfig, check: F) -> Outcome
where
    F: Fn(u64) -> Option<Option<Failure>> + Sync + Send,
{
    // `check` returns None for masks outside the claim's scope.
    let collect = |masks: &[u64]| -> (u64, Vec<Failure>) {
        let mut checked = 0;
        let mut failures = Vec::new();
        for &m in masks {
            if let Some(r) = check(m) {
                checked += 1;
                failures.extend(r);
            }
        }
        (checked, failures)
    };
    let exhaustive = bits < 64 && (1u64 << bits) <= EXHAUSTIVE_LIMIT;
    let chunks: Vec<Vec<u64>> = if exhaustive {
        let total = 1u64 << bits;
        let step = (total / 256).max(1);
        (0..total)
            .step_by(step as usize)
            .map(|lo| (lo..(lo + step).min(total)).collect())
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let all = low_mask(bits);
        let masks: Vec<u64> = (0..SAMPLE_SIZE).map(|_| rng.gen::<u64>() & all).collect();
        masks.chunks(1024).map(<[u64]>::to_vec).collect()
    };
    let parts = par::map(&chunks, |c| collect(c));
    let mut out = Outcome {
        checked: 0,
        failures: Vec::new(),
        exhaustive,
        seed: (!exhaustive).then_some(cfg.seed),
    };
    for (c, f) in parts {
        out.checked += c;
        out.failures.extend(f);
    }
    out
}

fn describe(g: &Graph) -> String {
    match g.label() {
        Some(l) => format!("{l}[{}]", crate::format::to_graph6(g).unwrap_or_default()),
        None => crate::format::to_graph6(g).unwrap_or_else(|_| format!("order-{}", g.order())),
    }
}

fn bool_failure(input: String, expected: bool, got: bool) -> Option<Failure> {
    (expected != got).then(|| Failure {
        input,
        expected: expected.to_string(),
        got: got.to_string(),
    })
}

/// Isometry of `kept` inside `host`, by inducing and running BFS.
fn isometric_slow(host: &Graph, host_d: &DistanceMatrix, kept: u64) -> bool {
    let s = VertexSet::from_bits(host.order(), kept).expect("within universe");
    let sub = host.induce(&s).expect("same universe");
    isometric_against(host_d, &sub.graph, &sub.to_host)
}

fn require_lex_left(g: &Graph) -> Result<()> {
    if g.order() < 2 || !is_connected(g) {
        return Err(Error::PreconditionViolated(format!(
            "left factor {} must be connected with at least two vertices",
            describe(g)
        )));
    }
    Ok(())
}

/// For induced `K` of `G[H]` whose projection has at least two vertices:
/// `π(K)` isometric in `G` iff `K` isometric in `G[H]`.
pub fn check_eq1(g: &Graph, h: &Graph, cfg: &SampleConfig) -> Result<VerificationReport> {
    require_lex_left(g)?;
    let start = Instant::now();
    let p = lex_product(g, h)?;
    let pd = bfs_distances(&p.graph);
    let g_index = DistanceIndex::new(g);
    let tag = format!("G={} H={}", describe(g), describe(h));
    let outcome = over_masks(p.graph.order(), cfg, |k| {
        let kset = VertexSet::from_bits(p.graph.order(), k).expect("within universe");
        let proj = project(&kset, &p).expect("same universe");
        if proj.len() < 2 {
            return None;
        }
        let factor_side = g_index.is_isometric_mask(proj.bits());
        let product_side = isometric_slow(&p.graph, &pd, k);
        Some(bool_failure(format!("{tag} K={kset}"), factor_side, product_side))
    });
    let mut r = VerificationReport::new(Claim::Eq1.id());
    r.absorb(outcome);
    r.elapsed = start.elapsed();
    Ok(r)
}

/// For induced `K` of `G[H]` inside one fibre: `K` isometric iff
/// `diam(K) ≤ 2`, a disconnected `K` failing the bound.
pub fn check_corollary_fiber(g: &Graph, h: &Graph, cfg: &SampleConfig) -> Result<VerificationReport> {
    require_lex_left(g)?;
    let start = Instant::now();
    let p = lex_product(g, h)?;
    let pd = bfs_distances(&p.graph);
    let n = h.order();
    let tag = format!("G={} H={}", describe(g), describe(h));
    let mut r = VerificationReport::new(Claim::CorFiber.id());
    for u in 0..g.order() {
        let outcome = over_masks(n, cfg, |xs| {
            if xs == 0 {
                return None;
            }
            let k = VertexSet::from_vertices(
                p.graph.order(),
                VertexSet::from_bits(n, xs).expect("within universe").iter().map(|x| p.encode(u, x)),
            )
            .expect("within universe");
            let isometric = isometric_slow(&p.graph, &pd, k.bits());
            let sub = p.graph.induce(&k).expect("same universe");
            let small_diameter = matches!(diameter(&sub.graph), Some(d) if d <= 2);
            Some(bool_failure(format!("{tag} K={k}"), small_diameter, isometric))
        });
        r.absorb(outcome);
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// `G[H]` is dp iff every gap `(a, b)` of the spectrum of `G` has
/// `b ≤ a·n + 1`, where `n = |H|`.
pub fn thm1_criterion(spec: &DpSpectrum, n: usize) -> Result<bool> {
    if spec.host_order < 2 {
        return Err(Error::PreconditionViolated(
            "spectrum must come from a graph with at least two vertices".into(),
        ));
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("|H| must be at least 1".into()));
    }
    Ok(non_dp_interval_pairs(spec)
        .iter()
        .all(|p| p.b <= p.a * n + 1))
}

/// Compares the gap criterion with a brute-force spectrum of every `G[H]`.
pub fn check_thm1(lefts: &[Graph], rights: &[Graph]) -> Result<VerificationReport> {
    let start = Instant::now();
    for g in lefts {
        require_lex_left(g)?;
    }
    let spectra = par::map(lefts, dp_spectrum);
    let spectra: Vec<DpSpectrum> = spectra.into_iter().collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..lefts.len())
        .flat_map(|i| (0..rights.len()).map(move |j| (i, j)))
        .collect();
    let results = par::map(&pairs, |&(i, j)| -> Result<Option<Failure>> {
        let (g, h) = (&lefts[i], &rights[j]);
        let predicted = thm1_criterion(&spectra[i], h.order())?;
        let product = lex_product(g, h)?;
        let actual = dp_spectrum(&product.graph)?.is_dp();
        Ok(bool_failure(
            format!("G={} H={}", describe(g), describe(h)),
            predicted,
            actual,
        ))
    });
    let failures: Vec<Failure> = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    let mut r = VerificationReport::new(Claim::Thm1.id());
    r.absorb(Outcome {
        checked: pairs.len() as u64,
        failures,
        exhaustive: true,
        seed: None,
    });
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Splits a mask on `m + n` bits into nonempty `A ⊆ V(G)`, `B ⊆ V(H)`.
fn split_pair(mask: u64, m: usize) -> Option<(u64, u64)> {
    let a = mask & low_mask(m);
    let b = mask >> m;
    (a != 0 && b != 0).then_some((a, b))
}

fn pairwise<F>(lefts: &[Graph], rights: &[Graph], claim: Claim, cfg: &SampleConfig, check: F) -> Result<VerificationReport>
where
    F: Fn(&Graph, &Graph, &SampleConfig) -> Result<VerificationReport> + Sync + Send,
{
    let start = Instant::now();
    let pairs: Vec<(&Graph, &Graph)> = lefts.iter().flat_map(|g| rights.iter().map(move |h| (g, h))).collect();
    let reports = par::map(&pairs, |&(g, h)| check(g, h, cfg));
    let mut r = VerificationReport::new(claim.id());
    for part in reports {
        r.merge(part?);
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// `G′ □ H′ ≤ G □ H` iff `G′ ≤ G` and `H′ ≤ H`, over all nonempty vertex
/// sets `G′`, `H′` (as induced subgraphs).
pub fn check_cart_isometry_pair(g: &Graph, h: &Graph, cfg: &SampleConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = cart_product(g, h)?;
    let pd = bfs_distances(&p.graph);
    let (gi, hi) = (DistanceIndex::new(g), DistanceIndex::new(h));
    let m = g.order();
    let tag = format!("G={} H={}", describe(g), describe(h));
    let outcome = over_masks(m + h.order(), cfg, |mask| {
        let (a, b) = split_pair(mask, m)?;
        let factors = gi.is_isometric_mask(a) && hi.is_isometric_mask(b);
        let kept = cross_bits(&p, a, b);
        let product_side = isometric_slow(&p.graph, &pd, kept);
        Some(bool_failure(format!("{tag} G'={a:#b} H'={b:#b}"), factors, product_side))
    });
    let mut r = VerificationReport::new(Claim::LemCartIso.id());
    r.absorb(outcome);
    r.elapsed = start.elapsed();
    Ok(r)
}

pub fn check_cart_isometry_lemma(lefts: &[Graph], rights: &[Graph], cfg: &SampleConfig) -> Result<VerificationReport> {
    pairwise(lefts, rights, Claim::LemCartIso, cfg, check_cart_isometry_pair)
}

fn cross_bits(p: &ProductGraph, a: u64, b: u64) -> u64 {
    let sa = VertexSet::from_bits(p.left_order, a).expect("within universe");
    let sb = VertexSet::from_bits(p.right_order, b).expect("within universe");
    p.cross(&sa, &sb).expect("matching universes").bits()
}

/// `A × B` is a removal set of `G □ H` iff `A` and `B` are removal sets of
/// their factors, for nonempty `A`, `B`. Product membership is tested by
/// deleting `A × B` and checking the remainder directly.
pub fn check_removal_pair(g: &Graph, h: &Graph, cfg: &SampleConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = cart_product(g, h)?;
    let pd = bfs_distances(&p.graph);
    let (gi, hi) = (DistanceIndex::new(g), DistanceIndex::new(h));
    let (m, n) = (g.order(), h.order());
    let full = low_mask(m * n);
    let tag = format!("G={} H={}", describe(g), describe(h));
    let outcome = over_masks(m + n, cfg, |mask| {
        let (a, b) = split_pair(mask, m)?;
        let factors = gi.is_isometric_mask(low_mask(m) & !a) && hi.is_isometric_mask(low_mask(n) & !b);
        let remainder = full & !cross_bits(&p, a, b);
        let product_side = isometric_slow(&p.graph, &pd, remainder);
        Some(bool_failure(format!("{tag} A={a:#b} B={b:#b}"), factors, product_side))
    });
    let mut r = VerificationReport::new(Claim::LemRemoval.id());
    r.absorb(outcome);
    r.elapsed = start.elapsed();
    Ok(r)
}

pub fn check_removal_lemma(lefts: &[Graph], rights: &[Graph], cfg: &SampleConfig) -> Result<VerificationReport> {
    pairwise(lefts, rights, Claim::LemRemoval, cfg, check_removal_pair)
}

/// The row-major sdp ordering of `G □ H` built from factor orderings:
/// `(u_1,v_1), …, (u_m,v_1), (u_1,v_2), …`.
pub fn product_sdp_sequence(p: &ProductGraph, left: &[usize], right: &[usize]) -> Vec<usize> {
    right
        .iter()
        .flat_map(|&x| left.iter().map(move |&u| p.encode(u, x)))
        .collect()
}

/// `G □ H` is sdp iff both factors are, over connected pairs whose product
/// has at most `max_product` vertices. When both factors are sdp, the
/// row-major product ordering is also re-verified prefix by prefix.
pub fn check_thm2(lefts: &[Graph], rights: &[Graph], max_product: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let sequences = |gs: &[Graph]| -> Result<Vec<Option<Vec<usize>>>> {
        gs.iter()
            .map(|g| {
                if !is_connected(g) {
                    return Err(Error::PreconditionViolated(format!("{} is disconnected", describe(g))));
                }
                Ok(sdp_sequence_indexed(&DistanceIndex::new(g)).as_slice().map(<[usize]>::to_vec))
            })
            .collect()
    };
    let (left_seqs, right_seqs) = (sequences(lefts)?, sequences(rights)?);
    let pairs: Vec<(usize, usize)> = (0..lefts.len())
        .flat_map(|i| (0..rights.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| lefts[i].order() * rights[j].order() <= max_product)
        .collect();
    let results = par::map(&pairs, |&(i, j)| -> Result<Vec<Failure>> {
        let (g, h) = (&lefts[i], &rights[j]);
        let tag = format!("G={} H={}", describe(g), describe(h));
        let p = cart_product(g, h)?;
        let product_sdp = sdp_sequence_indexed(&DistanceIndex::new(&p.graph)).exists();
        let both = left_seqs[i].is_some() && right_seqs[j].is_some();
        let mut failures: Vec<Failure> = bool_failure(tag.clone(), both, product_sdp).into_iter().collect();
        if let (Some(ls), Some(rs)) = (&left_seqs[i], &right_seqs[j]) {
            let seq = product_sdp_sequence(&p, ls, rs);
            if !check_sdp_sequence(&p.graph, &seq) {
                failures.push(Failure {
                    input: format!("{tag} row-major sequence {seq:?}"),
                    expected: "valid sdp sequence".into(),
                    got: "prefix not isometric".into(),
                });
            }
        }
        Ok(failures)
    });
    let mut r = VerificationReport::new(Claim::Thm2.id());
    let mut failures = Vec::new();
    for f in results {
        failures.extend(f?);
    }
    r.absorb(Outcome {
        checked: pairs.len() as u64,
        failures,
        exhaustive: true,
        seed: None,
    });
    r.notes.push(format!("pairs with product order above {max_product} skipped"));
    r.elapsed = start.elapsed();
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Eq1,
    CorFiber,
    Thm1,
    LemCartIso,
    LemRemoval,
    Thm2,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Eq1,
        Claim::CorFiber,
        Claim::Thm1,
        Claim::LemCartIso,
        Claim::LemRemoval,
        Claim::Thm2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Eq1 => "eq1",
            Claim::CorFiber => "cor-fiber",
            Claim::Thm1 => "thm1",
            Claim::LemCartIso => "lem-cart-iso",
            Claim::LemRemoval => "lem-removal",
            Claim::Thm2 => "thm2",
        }
    }

    /// Default catalog orders `(left, right)` and product-order ceiling.
    pub fn default_scope(self) -> Scope {
        let (max_left, max_right, max_product) = match self {
            Claim::Eq1 | Claim::CorFiber => (6, 6, 12),
            Claim::Thm1 => (5, 3, 15),
            Claim::LemCartIso | Claim::LemRemoval => (4, 4, 16),
            Claim::Thm2 => (4, 4, 16),
        };
        Scope {
            max_left,
            max_right,
            max_product,
        }
    }

    /// Whether the left (and for `thm2` also right) catalog is restricted to
    /// connected graphs, and the smallest admissible left order.
    fn left_filter(self) -> (bool, usize) {
        match self {
            Claim::Eq1 | Claim::CorFiber | Claim::Thm1 => (true, 2),
            Claim::Thm2 => (true, 1),
            Claim::LemCartIso | Claim::LemRemoval => (false, 1),
        }
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Claim> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scope {
    pub max_left: usize,
    pub max_right: usize,
    pub max_product: usize,
}

/// Internal catalogs for a claim at the given scope.
pub fn default_catalogs(claim: Claim, scope: &Scope) -> Result<(Vec<Graph>, Vec<Graph>)> {
    let (connected, min_left) = claim.left_filter();
    let lefts = graphs_in_range(min_left, scope.max_left, connected)?;
    let rights = graphs_in_range(1, scope.max_right, claim == Claim::Thm2)?;
    Ok((lefts, rights))
}

/// Runs one claim over explicit catalogs. Left graphs not meeting the claim's
/// hypotheses, and pairs whose product exceeds `scope.max_product`, are
/// skipped and noted in the report.
pub fn run_claim(
    claim: Claim,
    lefts: &[Graph],
    rights: &[Graph],
    scope: &Scope,
    cfg: &SampleConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let (connected, min_left) = claim.left_filter();
    let admissible = |g: &Graph, min: usize| g.order() >= min && (!connected || is_connected(g));
    let ls: Vec<Graph> = lefts.iter().filter(|g| admissible(g, min_left)).cloned().collect();
    let rs: Vec<Graph> = if claim == Claim::Thm2 {
        rights.iter().filter(|g| admissible(g, 1)).cloned().collect()
    } else {
        rights.iter().filter(|g| g.order() >= 1).cloned().collect()
    };
    let skipped = (lefts.len() - ls.len()) + (rights.len() - rs.len());

    let mut report = match claim {
        Claim::Thm2 => check_thm2(&ls, &rs, scope.max_product)?,
        Claim::Thm1 => {
            let mut r = VerificationReport::new(claim.id());
            for g in &ls {
                let hs: Vec<Graph> = rs
                    .iter()
                    .filter(|h| g.order() * h.order() <= scope.max_product)
                    .cloned()
                    .collect();
                r.merge(check_thm1(std::slice::from_ref(g), &hs)?);
            }
            r
        }
        _ => {
            let check = match claim {
                Claim::Eq1 => check_eq1,
                Claim::CorFiber => check_corollary_fiber,
                Claim::LemCartIso => check_cart_isometry_pair,
                _ => check_removal_pair,
            };
            let filtered = |g: &Graph, h: &Graph, cfg: &SampleConfig| {
                if g.order() * h.order() > scope.max_product {
                    Ok(VerificationReport::new(claim.id()))
                } else {
                    check(g, h, cfg)
                }
            };
            pairwise(&ls, &rs, claim, cfg, filtered)?
        }
    };
    report.notes.dedup();
    if skipped > 0 {
        report
            .notes
            .push(format!("{skipped} catalog graphs outside the claim's hypotheses skipped"));
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
