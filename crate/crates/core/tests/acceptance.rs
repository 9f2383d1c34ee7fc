//! Acceptance gate: one pass/fail line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use brickforge::automaton::{alpha_beta, find_path, initial_state};
use brickforge::builder::{build_symbolic, forward_reduce, inverse_step, path_for};
use brickforge::curve::{coprimality_check, normalize_multidegree, CurveType, NormalizedInvariants};
use brickforge::matrix::{CellMask, ParamMatrix};
use brickforge::oracle::{determinant_parameter, endomorphism_dimension, hom_dimension, hom_dimension_mod};
use brickforge::picard::{
    recanonicalize_tensor, stabilizer_order_check, stabilizer_prime, tensor_on_triples, tensor_with_line_bundle,
    LineBundleParam, PRIME_BOUND,
};
use brickforge::render::text_matrix;
use brickforge::scalar::{q, ParamScalar, Q};
use brickforge::triple::{assemble_from, assemble_triple};
use common::{coprime_families, families, golden, lambda_sample};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden_reproduction() -> Outcome {
    for (curve, name) in [(CurveType::I2, "i2"), (CurveType::III, "iii")] {
        let inv = normalize_multidegree(curve, 9, &[3, 2]).map_err(err)?;
        let form = build_symbolic(&inv).map_err(err)?;
        ensure(text_matrix(&form.matrix) == golden(&format!("{name}_r9_d3-2.txt")), || {
            format!("{} 9×9 matrix differs from its golden file", curve.name())
        })?;
        let expected: Vec<Vec<u64>> = vec![
            vec![4, 2, 3],
            vec![2, 2, 3],
            vec![2, 2, 1],
            vec![2, 1, 1],
            vec![2, 0, 1],
            vec![2, 0, 1],
            vec![1, 0, 1],
            vec![1, 0, 1],
            vec![1, 0, 0],
        ];
        ensure(form.path.trajectory == expected, || {
            format!("{} trajectory {:?}", curve.name(), form.path.trajectory)
        })?;
    }
    let inv = normalize_multidegree(CurveType::I2, 9, &[3, 2]).map_err(err)?;
    let end = endomorphism_dimension(&assemble_triple(&inv, &q(2)).map_err(err)?).map_err(err)?;
    ensure(end == 1, || format!("End of the I2 9×9 triple at λ=2 is {end}"))?;
    Ok("I2 and III 9×9 matrices, trajectory, End=1 at λ=2".into())
}

fn coprimality_theorem() -> Outcome {
    let all = families(12);
    let bad: Vec<String> = all
        .par_iter()
        .filter_map(|inv| {
            let found = initial_state(inv).ok().and_then(|s| find_path(&s)).is_some();
            (found != coprimality_check(inv)).then(|| format!("{} r={} d={:?}", inv.curve.name(), inv.r, inv.dbar))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} instances, r <= 12", all.len()))
}

fn brick_certification() -> Outcome {
    let fams = coprime_families(12);
    let checked: Vec<Result<usize, String>> = fams
        .par_iter()
        .map(|inv| {
            let form = build_symbolic(inv).map_err(err)?;
            let sample = lambda_sample(inv.curve);
            for &l in &sample {
                let end = endomorphism_dimension(&assemble_from(&form, &q(l)).map_err(err)?).map_err(err)?;
                ensure(end == 1, || format!("{} r={} d={:?} λ={l}: End={end}", inv.curve.name(), inv.r, inv.dbar))?;
            }
            Ok(sample.len())
        })
        .collect();
    let mut triples = 0;
    for c in checked {
        triples += c?;
    }
    Ok(format!("{triples} triples over {} coprime families, r <= 12", fams.len()))
}

fn hom_vanishing() -> Outcome {
    let fams = coprime_families(6);
    let mut rng = StdRng::seed_from_u64(0x4b6f_6461);
    let picks: Vec<(NormalizedInvariants, i64, i64)> = (0..50)
        .map(|_| {
            let inv = fams[rng.gen_range(0..fams.len())].clone();
            let lo = if inv.curve.is_cycle() { 1 } else { 0 };
            let l1 = rng.gen_range(lo..8);
            let l2 = loop {
                let x = rng.gen_range(lo..8);
                if x != l1 {
                    break x;
                }
            };
            (inv, l1, l2)
        })
        .collect();
    picks.par_iter().try_for_each(|(inv, l1, l2)| {
        let form = build_symbolic(inv).map_err(err)?;
        let t1 = assemble_from(&form, &q(*l1)).map_err(err)?;
        let t2 = assemble_from(&form, &q(*l2)).map_err(err)?;
        let (a, b) = (hom_dimension(&t1, &t2).map_err(err)?, hom_dimension(&t2, &t1).map_err(err)?);
        ensure(a == 0 && b == 0, || {
            format!("{} r={} d={:?} λ=({l1},{l2}): Hom=({a},{b})", inv.curve.name(), inv.r, inv.dbar)
        })
    })?;
    Ok("50 sampled pairs λ1 ≠ λ2, both directions".into())
}

fn determinant_bijectivity() -> Outcome {
    let fams = coprime_families(6);
    fams.par_iter().try_for_each(|inv| -> Result<(), String> {
        let form = build_symbolic(inv).map_err(err)?;
        let mut seen: Vec<Q> = Vec::new();
        for l in 1..=7 {
            let v = determinant_parameter(&assemble_from(&form, &q(l)).map_err(err)?).map_err(err)?;
            ensure(!seen.contains(&v), || {
                format!("{} r={} d={:?}: repeated value {v}", inv.curve.name(), inv.r, inv.dbar)
            })?;
            seen.push(v);
        }
        Ok(())
    })?;
    Ok(format!("{} families, λ = 1..7", fams.len()))
}

fn tensor_laws() -> Outcome {
    let cases: [(CurveType, u32, Vec<i64>, &str); 3] = [
        (CurveType::I1, 2, vec![1], "λμ²"),
        (CurveType::I2, 3, vec![1, 1], "λμ³"),
        (CurveType::III, 3, vec![1, 1], "λ+3μ"),
    ];
    for (curve, r, d, law) in cases {
        let inv = normalize_multidegree(curve, r, &d).map_err(err)?;
        let form = build_symbolic(&inv).map_err(err)?;
        for (l1, m) in [(1, 2), (2, 3), (3, -1), (5, 7)] {
            let (l1, m) = (q(l1), q(m));
            let expected = if curve.is_cycle() { &l1 * num_traits::pow(m.clone(), r as usize) } else { &l1 + q(3) * &m };
            let mu = LineBundleParam::new(curve, m.clone()).map_err(err)?;
            let got = tensor_with_line_bundle(&inv, &l1, &mu).map_err(err)?;
            ensure(got == expected, || format!("{} {law}: formula gives {got}", curve.name()))?;
            let rc = recanonicalize_tensor(&form, &l1, &mu).map_err(err)?;
            ensure(rc.parameter == expected, || format!("{} {law}: reduction gives {}", curve.name(), rc.parameter))?;
            let raw = tensor_on_triples(&assemble_from(&form, &l1).map_err(err)?, &mu).map_err(err)?;
            let iso = hom_dimension(&raw, &rc.triple).map_err(err)?;
            ensure(iso == 1, || format!("{} {law}: tensored triple vs canonical Hom={iso}", curve.name()))?;
        }
    }
    Ok("I1 r=2 λμ², I2 r=3 λμ³, III r=3 λ+3μ; formula, reduction, oracle".into())
}

fn stabilizer() -> Outcome {
    let mut orders = Vec::new();
    for curve in CurveType::ALL {
        for r in 2..=7u32 {
            let mut d = vec![0; curve.components()];
            d[0] = 1;
            let inv = normalize_multidegree(curve, r, &d).map_err(err)?;
            let v = stabilizer_order_check(&inv, PRIME_BOUND).map_err(err)?;
            ensure(v.pass, || format!("{} r={r}: {:?}", curve.name(), v.elements))?;
            let t = assemble_triple(&inv, &q(2)).map_err(err)?;
            if curve.is_cycle() {
                let p = stabilizer_prime(r, PRIME_BOUND).map_err(err)?;
                let mut witnessed = Vec::new();
                for m in 1..p {
                    let tm = tensor_on_triples(&t, &LineBundleParam::new(curve, q(m as i64)).map_err(err)?).map_err(err)?;
                    if hom_dimension_mod(&tm, &t, p).map_err(err)? != 0 {
                        witnessed.push(m.to_string());
                    }
                }
                ensure(witnessed == v.elements, || {
                    format!("{} r={r} over F_{p}: oracle {witnessed:?}, roots {:?}", curve.name(), v.elements)
                })?;
                if curve == CurveType::I1 {
                    orders.push(format!("{r}:F_{p}"));
                }
            } else {
                for m in 0..3 {
                    let tm = tensor_on_triples(&t, &LineBundleParam::new(curve, q(m)).map_err(err)?).map_err(err)?;
                    let h = hom_dimension(&tm, &t).map_err(err)?;
                    ensure(h == usize::from(m == 0), || format!("{} r={r} μ={m}: Hom={h}", curve.name()))?;
                }
            }
        }
    }
    Ok(format!("cycles |Stab| = r ({}), fibers trivial; oracle agrees", orders.join(" ")))
}

fn random_matrix(rng: &mut StdRng, m: &mut ParamMatrix) {
    let d = m.dim();
    for i in 0..d {
        for j in 0..d {
            if m.mask_at(i, j) == CellMask::Free && rng.gen_range(0..3) != 0 {
                *m.at_mut(i, j) = ParamScalar::linear(q(rng.gen_range(-3..4)), q(rng.gen_range(-1..2)));
            }
        }
    }
}

fn round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut cases = 0;
    while cases < 600 {
        let curve = CurveType::ALL[rng.gen_range(0..6)];
        let r = rng.gen_range(1..=10u32);
        let dbar: Vec<u32> = (0..curve.components()).map(|_| rng.gen_range(0..r)).collect();
        let inv = NormalizedInvariants::from_reduced(curve, r, &dbar).map_err(err)?;
        let Ok(path) = path_for(&inv) else { continue };
        let states = path.states().map_err(err)?;
        for (k, t) in path.steps.iter().enumerate() {
            let target = &states[k + 1];
            let sizes = target.sizes.iter().map(|&x| x as usize).collect();
            let mut m = ParamMatrix::zeros(curve, target.state, target.shape.clone(), sizes);
            random_matrix(&mut rng, &mut m);
            let back = inverse_step(&m, &states[k], t).and_then(|s| forward_reduce(&s, &states[k], t));
            ensure(back.as_ref().ok() == Some(&m), || {
                format!("{} r={r} d={dbar:?} step {k} {}: {:?}", curve.name(), t.edge_name(), back.err())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} randomized steps, r <= 10"))
}

fn gcd_invariance() -> Outcome {
    let all = families(12);
    let transitions: usize = all
        .par_iter()
        .map(|inv| -> Result<usize, String> {
            let start = initial_state(inv).map_err(err)?;
            let Some(path) = find_path(&start) else { return Ok(0) };
            let states = path.states().map_err(err)?;
            for w in states.windows(2) {
                let (a, b) = (alpha_beta(&w[0]).gcd(), alpha_beta(&w[1]).gcd());
                ensure(a == b, || format!("{} r={} d={:?}: gcd {a} -> {b}", inv.curve.name(), inv.r, inv.dbar))?;
            }
            Ok(path.steps.len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{transitions} transitions over {} instances, r <= 12", all.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden reproduction", golden_reproduction),
        ("coprimality theorem", coprimality_theorem),
        ("brick certification", brick_certification),
        ("Hom vanishing", hom_vanishing),
        ("determinant bijectivity", determinant_bijectivity),
        ("tensor laws", tensor_laws),
        ("stabilizer", stabilizer),
        ("round trip", round_trip),
        ("gcd invariance", gcd_invariance),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail}) [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
