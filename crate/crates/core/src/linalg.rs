//! Dense exact linear algebra over the rationals and over prime fields.

use num_traits::{One, Zero};

use crate::scalar::Q;

/// Dense rational matrix stored row by row.
pub type QMat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc = Q::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][c].is_zero() {
                            acc += &row[k] * &b[k][c];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                for cc in c..cols {
                    if !m[r][cc].is_zero() {
                        let d = &f * &m[r][cc];
                        m[k][cc] -= d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMat) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

pub fn determinant(m: &QMat) -> Q {
    let n = m.len();
    let mut w = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| !w[k][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det *= &w[c][c];
        let inv = Q::one() / &w[c][c];
        for k in c + 1..n {
            if !w[k][c].is_zero() {
                let f = &w[k][c] * &inv;
                for cc in c..n {
                    if !w[c][cc].is_zero() {
                        let d = &f * &w[c][cc];
                        w[k][cc] -= d;
                    }
                }
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` when it is singular.
pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: QMat = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if r == c { Q::one() } else { Q::zero() }));
            v
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Indices of standard basis vectors that complete the columns of `b`
/// (an `n × k` matrix of full column rank) to a basis of `Q^n`, chosen
/// greedily in increasing order.
pub fn complete_columns(b: &QMat, n: usize) -> Vec<usize> {
    let k = b.first().map_or(0, Vec::len);
    let mut basis: QMat = (0..k).map(|c| (0..n).map(|r| b[r][c].clone()).collect()).collect();
    let mut r = rank(&basis);
    let mut out = Vec::new();
    for e in 0..n {
        if r == n {
            break;
        }
        basis.push((0..n).map(|x| if x == e { Q::one() } else { Q::zero() }).collect());
        let nr = rank(&basis);
        if nr > r {
            r = nr;
            out.push(e);
        } else {
            basis.pop();
        }
    }
    out
}

pub fn transpose(m: &QMat) -> QMat {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

/// Arithmetic of a field used by the sparse eliminator.
pub trait Field {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Image of a rational number, or `None` when its denominator vanishes.
    fn embed(&self, x: &Q) -> Option<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn embed(&self, x: &Q) -> Option<Q> {
        Some(x.clone())
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Q {
        Q::one() / a
    }
}

/// The prime field `F_p` for a prime `p < 2^63`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

/// Large prime used for fast rank certificates.
pub const CERTIFICATE_PRIME: u64 = (1 << 61) - 1;

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    fn reduce_big(&self, x: &num_bigint::BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let m = num_bigint::BigInt::from(self.p);
        let r = ((x % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn embed(&self, x: &Q) -> Option<u64> {
        let d = self.reduce_big(x.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_big(x.numer());
        Some(self.mul(&n, &self.inv(&d)))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) * u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
}

/// A sparse row: `(variable, coefficient)` pairs sorted by variable, with
/// no zero coefficients.
pub type SparseRow<E> = Vec<(u32, E)>;

/// Incremental row echelon form of a sparse homogeneous system.
pub struct SparseEchelon<'a, F: Field> {
    field: &'a F,
    pivots: std::collections::HashMap<u32, SparseRow<F::E>>,
}

impl<'a, F: Field> SparseEchelon<'a, F> {
    pub fn new(field: &'a F) -> Self {
        SparseEchelon {
            field,
            pivots: std::collections::HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds an equation; returns whether it raised the rank.
    pub fn insert(&mut self, mut row: SparseRow<F::E>) -> bool {
        let f = self.field;
        loop {
            let Some((lead, c)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    let k = f.neg(&c);
                    row = axpy(f, &row, &k, piv);
                }
                None => {
                    let inv = f.inv(&c);
                    for e in row.iter_mut() {
                        e.1 = f.mul(&e.1, &inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `a + k·b` for sorted sparse rows.
fn axpy<F: Field>(f: &F, a: &SparseRow<F::E>, k: &F::E, b: &SparseRow<F::E>) -> SparseRow<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x].clone());
            x += 1;
        } else if x == a.len() || b[y].0 < a[x].0 {
            out.push((b[y].0, f.mul(k, &b[y].1)));
            y += 1;
        } else {
            let v = f.add(&a[x].1, &f.mul(k, &b[y].1));
            if !f.is_zero(&v) {
                out.push((a[x].0, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}
