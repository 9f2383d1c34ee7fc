//! Independent check of simplicity: the space of morphisms between two
//! triples, computed from the gluing matrices alone.
//!
//! A morphism is a pair `(F, f)`. On component `k`, `F_k` is an
//! endomorphism of `O(n)^a ⊕ O(n+1)^b`: constant blocks `W0`, `W1` on
//! the diagonal and a linear map `Q` from the low to the high summand,
//! given by its values at `0` and `∞` (cycles) or by its value and
//! derivative at `0` (fibers). `f` acts on the fibers at the singular
//! points. The morphism condition is `F·μ₁ = μ₂·f` for every gluing
//! matrix, with the `ε`-parts of the fibers contributing
//! `F(0)·μ₁,ε + F'(0)·μ₁ = μ₂·g + μ₂,ε·f` where `g` is the nilpotent
//! part of `f` seen by the branch.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::curve::CurveType;
use crate::error::{Error, Result};
use crate::linalg::{self, Field, PrimeField, Rationals, SparseEchelon, SparseRow, CERTIFICATE_PRIME};
use crate::scalar::Q;
use crate::triple::{Slot, Triple};

/// Unknowns and equations of the morphism system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub unknowns: usize,
    pub equations: usize,
}

/// Closed form: `2N·r²` unknowns and as many equations.
pub fn census_formula(curve: CurveType, r: usize) -> Census {
    let n = 2 * curve.components() * r * r;
    Census {
        unknowns: n,
        equations: n,
    }
}

type VarMat = Vec<Vec<Option<u32>>>;

struct Vars {
    next: u32,
}

impl Vars {
    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next - 1
    }

    fn full(&mut self, r: usize) -> VarMat {
        (0..r).map(|_| (0..r).map(|_| Some(self.fresh())).collect()).collect()
    }
}

/// `F(0)`, and `F(∞)` or `F'(0)`, of one component.
fn component_vars(vars: &mut Vars, r: usize, a: usize, fiber: bool) -> (VarMat, VarMat) {
    let mut at0: VarMat = vec![vec![None; r]; r];
    let mut other: VarMat = vec![vec![None; r]; r];
    for x in 0..r {
        for y in 0..r {
            if (x < a) == (y < a) {
                let v = vars.fresh();
                at0[x][y] = Some(v);
                if !fiber {
                    other[x][y] = Some(v);
                }
            }
        }
    }
    for x in a..r {
        for y in 0..a {
            at0[x][y] = Some(vars.fresh());
            other[x][y] = Some(vars.fresh());
        }
    }
    (at0, other)
}

/// A gluing matrix over the working field with its nonzero pattern.
struct Sparse<E> {
    by_col: Vec<Vec<(usize, E)>>,
    by_row: Vec<Vec<(usize, E)>>,
}

fn sparse<F: Field>(f: &F, m: &linalg::QMat) -> Option<Sparse<F::E>> {
    let r = m.len();
    let mut by_col = vec![Vec::new(); r];
    let mut by_row = vec![Vec::new(); r];
    for (x, row) in m.iter().enumerate() {
        for (y, e) in row.iter().enumerate() {
            if !e.is_zero() {
                let v = f.embed(e)?;
                if !f.is_zero(&v) {
                    by_col[y].push((x, v.clone()));
                    by_row[x].push((y, v));
                }
            }
        }
    }
    Some(Sparse { by_col, by_row })
}

/// One summand of a matrix equation.
enum Term<'a, E> {
    /// `+ X·μ`
    VarMu(&'a VarMat, &'a Sparse<E>),
    /// `- μ·X`
    MuVar(&'a Sparse<E>, &'a VarMat),
}

fn push_equations<F: Field>(f: &F, r: usize, terms: &[Term<'_, F::E>], rows: &mut Vec<SparseRow<F::E>>) {
    for x in 0..r {
        for y in 0..r {
            let mut acc: Vec<(u32, F::E)> = Vec::new();
            for t in terms {
                match t {
                    Term::VarMu(vm, mu) => {
                        for (z, c) in &mu.by_col[y] {
                            if let Some(v) = vm[x][*z] {
                                acc.push((v, c.clone()));
                            }
                        }
                    }
                    Term::MuVar(mu, vm) => {
                        for (z, c) in &mu.by_row[x] {
                            if let Some(v) = vm[*z][y] {
                                acc.push((v, f.neg(c)));
                            }
                        }
                    }
                }
            }
            acc.sort_by_key(|e| e.0);
            let mut row: SparseRow<F::E> = Vec::with_capacity(acc.len());
            for (v, c) in acc {
                match row.last_mut() {
                    Some(last) if last.0 == v => last.1 = f.add(&last.1, &c),
                    _ => row.push((v, c)),
                }
            }
            row.retain(|e| !f.is_zero(&e.1));
            rows.push(row);
        }
    }
}

/// The morphism system from `t1` to `t2` over field `f`; `None` if some
/// entry does not reduce into the field.
fn morphism_system<F: Field>(f: &F, t1: &Triple, t2: &Triple) -> Option<(Census, Vec<SparseRow<F::E>>)> {
    let curve = t1.curve;
    let r = t1.rank();
    let n = curve.components();
    let mut vars = Vars { next: 0 };
    let mut comps = Vec::new();
    for k in 1..=n {
        let (a, _) = t1.weight_split(k);
        comps.push(component_vars(&mut vars, r, a, !curve.is_cycle()));
    }
    let mut rows = Vec::new();
    let mut equations = 0;
    let mu = |t: &Triple, k: usize, s: Slot| sparse(f, t.mu(k, s));
    if curve.is_cycle() {
        let fs: Vec<VarMat> = (0..n).map(|_| vars.full(r)).collect();
        for k in 0..n {
            let (m10, m20) = (mu(t1, k + 1, Slot::Mu0)?, mu(t2, k + 1, Slot::Mu0)?);
            let (m1i, m2i) = (mu(t1, k + 1, Slot::MuInf)?, mu(t2, k + 1, Slot::MuInf)?);
            push_equations(f, r, &[Term::VarMu(&comps[k].0, &m10), Term::MuVar(&m20, &fs[k])], &mut rows);
            push_equations(
                f,
                r,
                &[Term::VarMu(&comps[k].1, &m1i), Term::MuVar(&m2i, &fs[(k + 1) % n])],
                &mut rows,
            );
            equations += 2 * r * r;
        }
    } else {
        let f0 = vars.full(r);
        let nilpotent: Vec<VarMat> = match curve {
            CurveType::II => vec![],
            CurveType::III => vec![vars.full(r)],
            _ => vec![vars.full(r), vars.full(r)],
        };
        for k in 0..n {
            let g: Vec<&VarMat> = match (curve, k) {
                (CurveType::II, _) => vec![],
                (CurveType::III, _) => vec![&nilpotent[0]],
                (_, 0) => vec![&nilpotent[0], &nilpotent[1]],
                (_, 1) => vec![&nilpotent[0]],
                _ => vec![&nilpotent[1]],
            };
            let (m10, m20) = (mu(t1, k + 1, Slot::Mu0)?, mu(t2, k + 1, Slot::Mu0)?);
            let (m1e, m2e) = (mu(t1, k + 1, Slot::MuEps)?, mu(t2, k + 1, Slot::MuEps)?);
            push_equations(f, r, &[Term::VarMu(&comps[k].0, &m10), Term::MuVar(&m20, &f0)], &mut rows);
            let mut terms = vec![
                Term::VarMu(&comps[k].0, &m1e),
                Term::VarMu(&comps[k].1, &m10),
                Term::MuVar(&m2e, &f0),
            ];
            for gk in g {
                terms.push(Term::MuVar(&m20, gk));
            }
            push_equations(f, r, &terms, &mut rows);
            equations += 2 * r * r;
        }
    }
    Some((
        Census {
            unknowns: vars.next as usize,
            equations,
        },
        rows,
    ))
}

fn kernel_dim<F: Field>(f: &F, t1: &Triple, t2: &Triple) -> Result<Option<usize>> {
    let Some((census, rows)) = morphism_system(f, t1, t2) else {
        return Ok(None);
    };
    if census != census_formula(t1.curve, t1.rank()) {
        return Err(Error::Internal(format!("system census {census:?} differs from the closed form")));
    }
    let mut ech = SparseEchelon::new(f);
    for row in rows {
        ech.insert(row);
    }
    Ok(Some(census.unknowns - ech.rank()))
}

fn check_compatible(t1: &Triple, t2: &Triple) -> Result<()> {
    if t1.curve != t2.curve || t1.inv.r != t2.inv.r || t1.inv.dbar != t2.inv.dbar {
        return Err(Error::ShapeMismatch(
            "triples differ in curve, rank or reduced degrees".into(),
        ));
    }
    for k in 1..=t1.curve.components() {
        if t1.weight_split(k) != t2.weight_split(k) {
            return Err(Error::ShapeMismatch(format!("weights of component {k} differ")));
        }
    }
    Ok(())
}

fn certified_dim(t1: &Triple, t2: &Triple, lower_bound: usize) -> Result<usize> {
    check_compatible(t1, t2)?;
    let fp = PrimeField::new(CERTIFICATE_PRIME);
    if let Some(d) = kernel_dim(&fp, t1, t2)? {
        if d == lower_bound {
            return Ok(d);
        }
    }
    Ok(kernel_dim(&Rationals, t1, t2)?.expect("rationals accept every entry"))
}

/// `dim Hom(t1, t2)` over the rationals.
///
/// A rank computed modulo a large prime never exceeds the rational rank,
/// so a modular kernel of dimension zero is already exact; otherwise the
/// system is solved over the rationals.
pub fn hom_dimension(t1: &Triple, t2: &Triple) -> Result<usize> {
    certified_dim(t1, t2, 0)
}

/// `dim End(t)` over the rationals; scalars give the lower bound one.
pub fn endomorphism_dimension(t: &Triple) -> Result<usize> {
    certified_dim(t, t, 1)
}

pub fn brick_check(t: &Triple) -> Result<bool> {
    Ok(endomorphism_dimension(t)? == 1)
}

/// `dim Hom(t1, t2)` over the prime field `F_p`.
pub fn hom_dimension_mod(t1: &Triple, t2: &Triple, p: u64) -> Result<usize> {
    check_compatible(t1, t2)?;
    kernel_dim(&PrimeField::new(p), t1, t2)?
        .ok_or_else(|| Error::InvalidParameter(format!("an entry is not defined modulo {p}")))
}

/// The census of the morphism system actually built for a triple.
pub fn census(t: &Triple) -> Census {
    morphism_system(&PrimeField::new(CERTIFICATE_PRIME), t, t)
        .map(|(c, _)| c)
        .unwrap_or(Census {
            unknowns: 0,
            equations: 0,
        })
}

fn raw_parameter(t: &Triple) -> Result<Q> {
    let n = t.curve.components();
    if t.curve.is_cycle() {
        let mut acc = Q::one();
        for k in 1..=n {
            let d0 = linalg::determinant(t.mu(k, Slot::Mu0));
            if d0.is_zero() {
                return Err(Error::InvalidParameter(format!("μ_{k}(0) is singular")));
            }
            acc = acc * linalg::determinant(t.mu(k, Slot::MuInf)) / d0;
        }
        Ok(acc)
    } else {
        let mut acc = Q::zero();
        for k in 1..=n {
            let inv = linalg::inverse(t.mu(k, Slot::Mu0))
                .ok_or_else(|| Error::InvalidParameter(format!("μ_{k}(0) is singular")))?;
            let prod = linalg::mat_mul(t.mu(k, Slot::MuEps), &inv);
            for (x, row) in prod.iter().enumerate() {
                acc += &row[x];
            }
        }
        Ok(acc)
    }
}

type UnitKey = (CurveType, u32, Vec<u32>);

fn unit_cache() -> &'static Mutex<HashMap<UnitKey, Q>> {
    static CACHE: OnceLock<Mutex<HashMap<UnitKey, Q>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Normalizing unit of a family: the raw invariant of the canonical
/// triple at `λ = 1` for cycles, and the trace offset at `λ = 0` for
/// fibers.
fn family_unit(t: &Triple) -> Result<Q> {
    let key = (t.curve, t.inv.r, t.inv.dbar.clone());
    if let Some(u) = unit_cache().lock().expect("unit cache").get(&key) {
        return Ok(u.clone());
    }
    let base = if t.curve.is_cycle() { Q::one() } else { Q::zero() };
    let u = raw_parameter(&crate::triple::assemble_triple(&t.inv, &base)?)?;
    unit_cache().lock().expect("unit cache").insert(key, u.clone());
    Ok(u)
}

/// The parameter of a triple in its family, normalized so that the
/// canonical triple at `λ` returns `λ`: `Π det μ_k(∞) / Π det μ_k(0)`
/// divided by its value at `λ = 1` for cycles, and `Σ tr(μ_{ε_k} μ_k(0)⁻¹)`
/// minus its value at `λ = 0` for fibers.
pub fn determinant_parameter(t: &Triple) -> Result<Q> {
    let raw = raw_parameter(t)?;
    let u = family_unit(t)?;
    if t.curve.is_cycle() {
        Ok(raw / u)
    } else {
        Ok(raw - u)
    }
}
