//! Batch verification of the invariant suite over all multidegrees up to
//! a rank bound.

use brickforge::automaton::{alpha_beta, find_path, initial_state};
use brickforge::builder::{build_symbolic, reduced_parameter};
use brickforge::curve::{coprimality_check, rank_degree_gcd, CurveType, NormalizedInvariants};
use brickforge::oracle::endomorphism_dimension;
use brickforge::picard::{recanonicalize_tensor, LineBundleParam};
use brickforge::scalar::{q, Q};
use brickforge::triple::assemble_from;
use brickforge::Result;
use rayon::prelude::*;

/// The invariants checked on every instance.
pub const CHECKS: [&str; 5] = ["path<=>gcd", "gcd-kept", "round-trip", "brick", "tensor"];

#[derive(Debug, Clone, Default)]
pub struct CurveSummary {
    pub instances: usize,
    pub coprime: usize,
    /// Failures per entry of [`CHECKS`].
    pub failures: [usize; 5],
    /// First failing instance per check, for the report.
    pub witnesses: [Option<String>; 5],
}

impl CurveSummary {
    pub fn pass(&self) -> bool {
        self.failures.iter().all(|&f| f == 0)
    }

    fn merge(mut self, other: CurveSummary) -> CurveSummary {
        self.instances += other.instances;
        self.coprime += other.coprime;
        for k in 0..CHECKS.len() {
            self.failures[k] += other.failures[k];
            if self.witnesses[k].is_none() {
                self.witnesses[k] = other.witnesses[k].clone();
            }
        }
        self
    }
}

/// All reduced multidegrees of a curve at rank `r`.
pub fn reduced_degrees(curve: CurveType, r: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..curve.components() {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn check_instance(inv: &NormalizedInvariants, lambdas: &[Q], oracle_rank: u32) -> Result<[bool; 5]> {
    let mut ok = [true; 5];
    let start = initial_state(inv)?;
    let path = find_path(&start);
    let coprime = coprimality_check(inv);
    ok[0] = path.is_some() == coprime && alpha_beta(&start).gcd() == rank_degree_gcd(inv);
    let Some(path) = path else { return Ok(ok) };
    ok[1] = path.states()?.iter().all(|s| alpha_beta(s).gcd() == 1);
    let form = build_symbolic(inv)?;
    let admissible: Vec<&Q> = lambdas.iter().filter(|l| !(inv.curve.is_cycle() && *l == &q(0))).collect();
    for l in &admissible {
        let back = reduced_parameter(&form.matrix.eval(l), &path)?;
        if !back.is_constant() || &back.c0 != *l {
            ok[2] = false;
        }
        if inv.r <= oracle_rank && endomorphism_dimension(&assemble_from(&form, l)?)? != 1 {
            ok[3] = false;
        }
    }
    if let Some(l) = admissible.first() {
        let mu = LineBundleParam::new(inv.curve, q(2))?;
        ok[4] = recanonicalize_tensor(&form, l, &mu).is_ok();
    }
    Ok(ok)
}

/// Runs every check on every instance of `curve` with rank up to
/// `max_rank`. The oracle runs for ranks up to `oracle_rank` only.
pub fn sweep_curve(curve: CurveType, max_rank: u32, lambdas: &[Q], oracle_rank: u32) -> CurveSummary {
    let instances: Vec<NormalizedInvariants> = (1..=max_rank)
        .flat_map(|r| {
            reduced_degrees(curve, r)
                .into_iter()
                .map(move |d| NormalizedInvariants::from_reduced(curve, r, &d).expect("reduced degrees are valid"))
        })
        .collect();
    instances
        .par_iter()
        .map(|inv| {
            let mut s = CurveSummary {
                instances: 1,
                coprime: usize::from(coprimality_check(inv)),
                ..Default::default()
            };
            let ok = check_instance(inv, lambdas, oracle_rank).unwrap_or([false; 5]);
            for (k, good) in ok.iter().enumerate() {
                if !good {
                    s.failures[k] = 1;
                    s.witnesses[k] = Some(format!("r={} d={:?}", inv.r, inv.d));
                }
            }
            s
        })
        .reduce(CurveSummary::default, CurveSummary::merge)
}
