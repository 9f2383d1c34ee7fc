//! Degree-zero line bundles `L(μ)` and their action `E(λ) ↦ E(λ) ⊗ L(μ)`
//! on simple bundles of fixed rank and multidegree.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::builder::{check_lambda, reduced_parameter, vertex_multiplicities, CanonicalForm};
use crate::curve::{coprimality_check, CurveType, NormalizedInvariants};
use crate::error::{Error, Result};
use crate::linalg::{Field, PrimeField};
use crate::matrix::ParamMatrix;
use crate::scalar::{ParamScalar, Q};
use crate::triple::{assemble_from, Slot, Triple};

/// The parameter `μ` of a degree-zero line bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBundleParam {
    pub curve: CurveType,
    pub value: Q,
}

impl LineBundleParam {
    /// Validates `μ`: nonzero on cycles, arbitrary on cuspidal fibers.
    pub fn new(curve: CurveType, value: Q) -> Result<Self> {
        if curve.is_cycle() && value.is_zero() {
            return Err(Error::InvalidParameter(
                "μ must be nonzero on a Kodaira cycle".into(),
            ));
        }
        Ok(LineBundleParam { curve, value })
    }

    /// The trivial bundle: `μ = 1` on cycles and `μ = 0` on fibers.
    pub fn trivial(curve: CurveType) -> Self {
        let value = if curve.is_cycle() { Q::one() } else { Q::zero() };
        LineBundleParam { curve, value }
    }
}

fn check_curve(inv: &NormalizedInvariants, mu: &LineBundleParam) -> Result<()> {
    if inv.curve != mu.curve {
        return Err(Error::ShapeMismatch(format!(
            "line bundle lives on {}, bundle on {}",
            mu.curve.name(),
            inv.curve.name()
        )));
    }
    Ok(())
}

/// Parameter of `E(λ₁) ⊗ L(μ)`: `λ₁·μʳ` on cycles and `λ₁ + r·μ` on fibers.
pub fn tensor_with_line_bundle(
    inv: &NormalizedInvariants,
    lambda1: &Q,
    mu: &LineBundleParam,
) -> Result<Q> {
    check_curve(inv, mu)?;
    check_lambda(inv.curve, lambda1)?;
    let r = inv.r as usize;
    Ok(if inv.curve.is_cycle() {
        lambda1 * num_traits::pow(mu.value.clone(), r)
    } else {
        lambda1 + Q::from_integer(BigInt::from(r)) * &mu.value
    })
}

/// Tensors the gluing data of a triple with `L(μ)`: on cycles `μ₁(∞)` is
/// scaled by `μ`, on fibers `μ·μ₁(0)` is added to `μ_{ε₁}`. The result is
/// isomorphic to the canonical triple at the new parameter but is not in
/// canonical form itself.
pub fn tensor_on_triples(t: &Triple, mu: &LineBundleParam) -> Result<Triple> {
    check_curve(&t.inv, mu)?;
    let mut out = t.clone();
    if t.curve.is_cycle() {
        let m = out
            .matrix_mut(1, Slot::MuInf)
            .ok_or_else(|| Error::ShapeMismatch("triple has no μ₁(∞)".into()))?;
        for row in &mut m.entries {
            for e in row.iter_mut() {
                *e = &*e * &mu.value;
            }
        }
    } else {
        let mu0 = t
            .matrix(1, Slot::Mu0)
            .ok_or_else(|| Error::ShapeMismatch("triple has no μ₁(0)".into()))?
            .entries
            .clone();
        let eps = out
            .matrix_mut(1, Slot::MuEps)
            .ok_or_else(|| Error::ShapeMismatch("triple has no μ_ε₁".into()))?;
        if eps.entries.len() != mu0.len() {
            return Err(Error::ShapeMismatch("μ₁(0) and μ_ε₁ differ in size".into()));
        }
        for (er, mr) in eps.entries.iter_mut().zip(&mu0) {
            for (e, m) in er.iter_mut().zip(mr) {
                *e = &*e + &mu.value * m;
            }
        }
    }
    Ok(out)
}

/// The reduced matrix of `E(λ₁) ⊗ L(μ)` in the initial shape: `μ·M(λ₁)` on
/// cycles, and on fibers `M(λ₁) + μ·D` where `D` is diagonal with the
/// multiplicity of each vertex in the fine layout of component 1.
pub fn tensor_reduced(form: &CanonicalForm, lambda1: &Q, mu: &LineBundleParam) -> Result<ParamMatrix> {
    check_curve(&form.inv, mu)?;
    check_lambda(form.inv.curve, lambda1)?;
    let mut m = form.matrix.eval(lambda1);
    if form.inv.curve.is_cycle() {
        m.map_entries(|e| e.scale(&mu.value));
        return Ok(m);
    }
    let copies = vertex_multiplicities(&form.path.start);
    for (k, &c) in copies.iter().enumerate() {
        let v = (k + 1) as u8;
        let add = ParamScalar::constant(&mu.value * Q::from_integer((c as i64).into()));
        for a in 0..m.size(v) {
            let cur = m.get((v, a), (v, a)).clone();
            m.set((v, a), (v, a), &cur + &add);
        }
    }
    Ok(m)
}

/// A tensored bundle brought back to canonical form.
#[derive(Debug, Clone)]
pub struct Recanonicalized {
    /// Parameter read off by forward reduction.
    pub parameter: Q,
    /// Canonical triple at that parameter.
    pub triple: Triple,
}

/// Tensors `E(λ₁)` with `L(μ)` and re-canonicalizes by forward reduction
/// along the path of `form`.
pub fn recanonicalize_tensor(form: &CanonicalForm, lambda1: &Q, mu: &LineBundleParam) -> Result<Recanonicalized> {
    let m = tensor_reduced(form, lambda1, mu)?;
    let p = reduced_parameter(&m, &form.path)?;
    if !p.is_constant() {
        return Err(Error::Internal("evaluated matrix reduced to a λ-dependent entry".into()));
    }
    let parameter = p.c0;
    let expected = tensor_with_line_bundle(&form.inv, lambda1, mu)?;
    if parameter != expected {
        return Err(Error::Internal(format!(
            "re-canonicalized parameter {parameter} differs from the tensor law {expected}"
        )));
    }
    let triple = assemble_from(form, &parameter)?;
    Ok(Recanonicalized { parameter, triple })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p > r` with `p ≡ 1 (mod r)`, searched below `bound`.
pub fn stabilizer_prime(r: u32, bound: u64) -> Result<u64> {
    let r = u64::from(r);
    (r + 1..bound)
        .find(|&p| p % r == 1 % r && is_prime(p))
        .ok_or_else(|| Error::InvalidParameter(format!("no prime p ≡ 1 mod {r} below {bound}")))
}

/// Default search bound for [`stabilizer_prime`].
pub const PRIME_BOUND: u64 = 100_000;

/// Outcome of the stabilizer check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerVerdict {
    /// Field used for cycles; `None` means the check ran over the rationals.
    pub prime: Option<u64>,
    /// The stabilizer elements `μ`, as residues or rationals in text form.
    pub elements: Vec<String>,
    pub expected_order: usize,
    pub pass: bool,
}

/// Checks that the stabilizer of `E(λ)` under the action has order `r` on
/// cycles (over `F_p`, `p ≡ 1 mod r`) and is trivial on fibers.
pub fn stabilizer_order_check(inv: &NormalizedInvariants, bound: u64) -> Result<StabilizerVerdict> {
    if !coprimality_check(inv) {
        return Err(Error::NotCoprime {
            rank: inv.r,
            degree: inv.d_total(),
            gcd: crate::curve::rank_degree_gcd(inv),
        });
    }
    let r = inv.r;
    if !inv.curve.is_cycle() {
        // λ + rμ = λ is the linear equation rμ = 0, whose only rational
        // solution is μ = 0 because r ≠ 0.
        return Ok(StabilizerVerdict {
            prime: None,
            elements: vec!["0".into()],
            expected_order: 1,
            pass: r != 0,
        });
    }
    stabilizer_order_check_mod(inv, stabilizer_prime(r, bound)?)
}

/// The stabilizer check on cycles over a given prime `p ≡ 1 (mod r)`.
pub fn stabilizer_order_check_mod(inv: &NormalizedInvariants, p: u64) -> Result<StabilizerVerdict> {
    let r = u64::from(inv.r);
    if !inv.curve.is_cycle() {
        return Err(Error::Unsupported("the finite-field check applies to cycles".into()));
    }
    if !is_prime(p) || p <= r || p % r != 1 % r {
        return Err(Error::InvalidParameter(format!("{p} is not a prime p > {r} with p ≡ 1 mod {r}")));
    }
    let f = PrimeField::new(p);
    let elements: Vec<u64> = (1..p).filter(|&mu| f.pow(mu, r) == 1).collect();
    Ok(StabilizerVerdict {
        prime: Some(p),
        elements: elements.iter().map(u64::to_string).collect(),
        expected_order: r as usize,
        pass: elements.len() == r as usize,
    })
}

/// Residue of a rational in `F_p`, if its denominator is invertible.
pub fn residue(x: &Q, p: u64) -> Option<u64> {
    let f = PrimeField::new(p);
    f.embed(x)
}

/// Some `μ` with `action(λ₁, μ) = λ₂`: over `F_p` on cycles (`p` must be
/// given), over the rationals on fibers. Returns `None` when no such `μ`
/// exists in the chosen field.
pub fn transporter(inv: &NormalizedInvariants, lambda1: &Q, lambda2: &Q, p: Option<u64>) -> Result<Option<Q>> {
    check_lambda(inv.curve, lambda1)?;
    check_lambda(inv.curve, lambda2)?;
    if !inv.curve.is_cycle() {
        return Ok(Some((lambda2 - lambda1) / Q::from_integer(inv.r.into())));
    }
    let p = p.ok_or_else(|| Error::InvalidParameter("cycles need a prime for the transporter".into()))?;
    let f = PrimeField::new(p);
    let (a, b) = match (residue(lambda1, p), residue(lambda2, p)) {
        (Some(a), Some(b)) if a != 0 && b != 0 => (a, b),
        _ => return Err(Error::InvalidParameter(format!("λ does not reduce to a unit mod {p}"))),
    };
    let target = f.mul(&b, &f.inv(&a));
    Ok((1..p)
        .find(|&mu| f.pow(mu, u64::from(inv.r)) == target)
        .map(|mu| Q::from_integer(mu.into())))
}
