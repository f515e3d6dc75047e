//! Search for Cartesian products of dp graphs that fail to be dp.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::catalog::{connected_graphs, MAX_CATALOG_ORDER};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{dp_spectrum, DpSpectrum};
use crate::par;
use crate::products::cart_product;

/// Default ceiling on the order of any product the hunter will build.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleRecord {
    pub left: Graph,
    pub right: Graph,
    pub product_spectrum: DpSpectrum,
    pub missing_orders: BTreeSet<usize>,
}

fn micros<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros() as u64)
}

#[derive(Debug, Clone, Serialize)]
pub struct PairTiming {
    pub left: String,
    pub right: String,
    pub product_order: usize,
    #[serde(rename = "micros", serialize_with = "micros")]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct HuntReport {
    pub max_left: usize,
    pub max_right: usize,
    pub cap: usize,
    /// dp graphs admitted as left and right factors.
    pub left_candidates: usize,
    pub right_candidates: usize,
    pub pairs_checked: usize,
    pub counterexamples: Vec<CounterexampleRecord>,
    pub timings: Vec<PairTiming>,
    #[serde(rename = "pair_micros_total", serialize_with = "micros")]
    pub pair_time_total: Duration,
    #[serde(rename = "elapsed_micros", serialize_with = "micros")]
    pub elapsed: Duration,
}

impl HuntReport {
    pub fn consistent(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn dp_catalog(max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max {
        for g in connected_graphs(n)? {
            if dp_spectrum(&g)?.is_dp() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Checks every ordered pair of connected dp graphs with orders up to
/// `max_left` and `max_right`. Refuses to start if the largest product
/// would exceed `cap` vertices.
pub fn hunt_conjecture(max_left: usize, max_right: usize, cap: usize) -> Result<HuntReport> {
    let largest = max_left * max_right;
    if largest > cap {
        return Err(Error::ScaleExceeded { order: largest, cap });
    }
    if max_left.max(max_right) > MAX_CATALOG_ORDER {
        return Err(Error::ScaleExceeded {
            order: max_left.max(max_right),
            cap: MAX_CATALOG_ORDER,
        });
    }
    hunt_pairs(&dp_catalog(max_left)?, &dp_catalog(max_right)?, max_left, max_right, cap)
}

/// Hunts over explicit factor lists; factors that are not connected dp
/// graphs are dropped before any product is built.
pub fn hunt_pairs(
    lefts: &[Graph],
    rights: &[Graph],
    max_left: usize,
    max_right: usize,
    cap: usize,
) -> Result<HuntReport> {
    let start = Instant::now();
    let keep = |gs: &[Graph]| -> Vec<Graph> {
        gs.iter()
            .filter(|g| matches!(dp_spectrum(g), Ok(s) if s.is_dp()))
            .cloned()
            .collect()
    };
    let (lefts, rights) = (keep(lefts), keep(rights));
    if let Some(order) = lefts
        .iter()
        .flat_map(|g| rights.iter().map(move |h| g.order() * h.order()))
        .find(|&o| o > cap)
    {
        return Err(Error::ScaleExceeded { order, cap });
    }
    let pairs: Vec<(&Graph, &Graph)> = lefts.iter().flat_map(|g| rights.iter().map(move |h| (g, h))).collect();
    let results = par::map(&pairs, |&(g, h)| -> Result<(PairTiming, Option<CounterexampleRecord>)> {
        let t = Instant::now();
        let p = cart_product(g, h)?;
        let spectrum = dp_spectrum(&p.graph)?;
        let record = (!spectrum.is_dp()).then(|| CounterexampleRecord {
            left: g.clone(),
            right: h.clone(),
            missing_orders: spectrum.missing().into_iter().collect(),
            product_spectrum: spectrum,
        });
        let timing = PairTiming {
            left: g.label().unwrap_or("?").to_string(),
            right: h.label().unwrap_or("?").to_string(),
            product_order: p.graph.order(),
            elapsed: t.elapsed(),
        };
        Ok((timing, record))
    });
    let mut timings = Vec::with_capacity(pairs.len());
    let mut counterexamples = Vec::new();
    for r in results {
        let (t, c) = r?;
        timings.push(t);
        counterexamples.extend(c);
    }
    Ok(HuntReport {
        max_left,
        max_right,
        cap,
        left_candidates: lefts.len(),
        right_candidates: rights.len(),
        pairs_checked: pairs.len(),
        pair_time_total: timings.iter().map(|t| t.elapsed).sum(),
        counterexamples,
        timings,
        elapsed: start.elapsed(),
    })
}
