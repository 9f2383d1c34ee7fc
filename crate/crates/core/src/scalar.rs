//! Exact scalars: rationals and degree-one polynomials in the family
//! parameter `λ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;

/// Builds the rational `n / 1`.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`; panics on `d == 0`.
pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical wire form `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn q_to_wire(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact human form: `p` for integers, `p/q` otherwise.
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        q_to_wire(x)
    }
}

/// Parses `p`, `-p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse rational `{s}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidParameter(format!("zero denominator in `{s}`")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_val: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = ip_val.abs() * &scale + frac;
        let num = if neg { -mag } else { mag };
        return Ok(Q::new(num, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// `c0 + c1·λ` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamScalar {
    pub c0: Q,
    pub c1: Q,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar {
            c0: Q::zero(),
            c1: Q::zero(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The parameter `λ` itself.
    pub fn lambda() -> Self {
        ParamScalar {
            c0: Q::zero(),
            c1: Q::one(),
        }
    }

    pub fn constant(c: Q) -> Self {
        ParamScalar { c0: c, c1: Q::zero() }
    }

    pub fn linear(c0: Q, c1: Q) -> Self {
        ParamScalar { c0, c1 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c1.is_zero() && self.c0.is_one()
    }

    /// Value at `λ = x`.
    pub fn eval(&self, x: &Q) -> Q {
        &self.c0 + &self.c1 * x
    }

    pub fn scale(&self, k: &Q) -> Self {
        ParamScalar {
            c0: &self.c0 * k,
            c1: &self.c1 * k,
        }
    }

    /// Product, defined only when the result stays of degree at most one.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !self.c1.is_zero() && !other.c1.is_zero() {
            return Err(Error::Unsupported(
                "product of two λ-dependent entries leaves degree one".into(),
            ));
        }
        Ok(ParamScalar {
            c0: &self.c0 * &other.c0,
            c1: &self.c0 * &other.c1 + &self.c1 * &other.c0,
        })
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, o: &ParamScalar) -> ParamScalar {
        ParamScalar {
            c0: &self.c0 + &o.c0,
            c1: &self.c1 + &o.c1,
        }
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, o: &ParamScalar) -> ParamScalar {
        ParamScalar {
            c0: &self.c0 - &o.c0,
            c1: &self.c1 - &o.c1,
        }
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            c0: -&self.c0,
            c1: -&self.c1,
        }
    }
}

impl Mul<&Q> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, k: &Q) -> ParamScalar {
        self.scale(k)
    }
}

/// Writes a coefficient in front of a symbol, e.g. `λ`, `-λ`, `λ/9`, `3λ/2`.
fn fmt_symbol_term(c: &Q, sym: &str) -> String {
    if c.is_one() {
        return sym.to_string();
    }
    if *c == -Q::one() {
        return format!("-{sym}");
    }
    let n = c.numer();
    let d = c.denom();
    let lead = if n.abs().is_one() {
        if n.is_negative() {
            format!("-{sym}")
        } else {
            sym.to_string()
        }
    } else {
        format!("{n}{sym}")
    };
    if d.is_one() {
        lead
    } else {
        format!("{lead}/{d}")
    }
}

impl ParamScalar {
    /// Renders with the given symbol for `λ`.
    pub fn render(&self, sym: &str) -> String {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => q_to_string(&self.c0),
            (true, false) => fmt_symbol_term(&self.c1, sym),
            (false, false) => {
                let t = fmt_symbol_term(&self.c1, sym);
                if let Some(rest) = t.strip_prefix('-') {
                    format!("{}-{}", q_to_string(&self.c0), rest)
                } else {
                    format!("{}+{}", q_to_string(&self.c0), t)
                }
            }
        }
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("λ"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_q("3").unwrap(), q(3));
        assert_eq!(parse_q("-6/4").unwrap(), q_frac(-3, 2));
        assert_eq!(parse_q("0.25").unwrap(), q_frac(1, 4));
        assert_eq!(parse_q("-1.5").unwrap(), q_frac(-3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn wire_form_is_reduced() {
        assert_eq!(q_to_wire(&q_frac(4, -6)), "-2/3");
        assert_eq!(q_to_wire(&q(5)), "5/1");
    }

    #[test]
    fn renders_entries() {
        assert_eq!(ParamScalar::lambda().to_string(), "λ");
        assert_eq!(ParamScalar::linear(q(0), q_frac(1, 9)).to_string(), "λ/9");
        assert_eq!(ParamScalar::linear(q(2), q(-1)).to_string(), "2-λ");
        assert_eq!(ParamScalar::one().to_string(), "1");
    }

    #[test]
    fn degree_is_capped() {
        let l = ParamScalar::lambda();
        assert!(l.checked_mul(&l).is_err());
        let two = ParamScalar::constant(q(2));
        assert_eq!(two.checked_mul(&l).unwrap(), ParamScalar::linear(q(0), q(2)));
    }
}
