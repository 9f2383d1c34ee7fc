#![allow(dead_code)]

use std::path::PathBuf;

use brickforge::curve::{coprimality_check, CurveType, NormalizedInvariants};

/// Every reduced multidegree of `curve` at rank `r`.
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

/// Every family `(curve, r, d̄)` with `r <= max_rank`.
pub fn families(max_rank: u32) -> Vec<NormalizedInvariants> {
    CurveType::ALL
        .iter()
        .flat_map(|&c| {
            (1..=max_rank).flat_map(move |r| {
                reduced_degrees(c, r)
                    .into_iter()
                    .map(move |d| NormalizedInvariants::from_reduced(c, r, &d).unwrap())
            })
        })
        .collect()
}

pub fn coprime_families(max_rank: u32) -> Vec<NormalizedInvariants> {
    families(max_rank).into_iter().filter(coprimality_check).collect()
}

pub fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("cannot read {}: {e}", p.display()))
}

/// The parameter sample of the brick sweep.
pub fn lambda_sample(curve: CurveType) -> Vec<i64> {
    if curve.is_cycle() {
        vec![1, 2, 3]
    } else {
        vec![0, 1, 2, 3]
    }
}
