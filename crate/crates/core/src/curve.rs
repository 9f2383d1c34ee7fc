//! Curve taxonomy and the normalization of multidegrees.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether the curve is a cycle of lines or a fiber with a non-reduced
/// singular scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Cycle,
    Fiber,
}

/// The six plane degenerations of an elliptic curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveType {
    I1,
    I2,
    I3,
    II,
    III,
    IV,
}

impl CurveType {
    pub const ALL: [CurveType; 6] = [
        CurveType::I1,
        CurveType::I2,
        CurveType::I3,
        CurveType::II,
        CurveType::III,
        CurveType::IV,
    ];

    /// Number of irreducible components.
    pub fn components(self) -> usize {
        match self {
            CurveType::I1 | CurveType::II => 1,
            CurveType::I2 | CurveType::III => 2,
            CurveType::I3 | CurveType::IV => 3,
        }
    }

    pub fn family(self) -> Family {
        match self {
            CurveType::I1 | CurveType::I2 | CurveType::I3 => Family::Cycle,
            CurveType::II | CurveType::III | CurveType::IV => Family::Fiber,
        }
    }

    pub fn is_cycle(self) -> bool {
        self.family() == Family::Cycle
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveType::I1 => "I1",
            CurveType::I2 => "I2",
            CurveType::I3 => "I3",
            CurveType::II => "II",
            CurveType::III => "III",
            CurveType::IV => "IV",
        }
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        CurveType::ALL
            .into_iter()
            .find(|c| c.name() == upper)
            .ok_or_else(|| Error::UnknownCurve(s.to_string()))
    }
}

/// Rank and multidegree split into reduced degrees and twists, so that
/// `d[k] == r * twists[k] + dbar[k]` with `0 <= dbar[k] < r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizedInvariants {
    pub curve: CurveType,
    pub r: u32,
    pub d: Vec<i64>,
    pub dbar: Vec<u32>,
    pub twists: Vec<i64>,
}

impl NormalizedInvariants {
    /// Total degree `d = sum d_k`.
    pub fn d_total(&self) -> i64 {
        self.d.iter().sum()
    }

    /// Total reduced degree `dbar = sum dbar_k`.
    pub fn dbar_total(&self) -> u32 {
        self.dbar.iter().sum()
    }

    /// Builds invariants directly from reduced degrees with zero twists.
    pub fn from_reduced(curve: CurveType, r: u32, dbar: &[u32]) -> Result<Self> {
        let d: Vec<i64> = dbar.iter().map(|&x| i64::from(x)).collect();
        normalize_multidegree(curve, r, &d)
    }
}

/// Splits each `d_k` by floor division into `r * n_k + dbar_k`.
pub fn normalize_multidegree(curve: CurveType, r: u32, d: &[i64]) -> Result<NormalizedInvariants> {
    if r == 0 {
        return Err(Error::InvalidRank);
    }
    if d.len() != curve.components() {
        return Err(Error::DimensionMismatch {
            curve: curve.to_string(),
            expected: curve.components(),
            got: d.len(),
        });
    }
    let rr = i64::from(r);
    let mut dbar = Vec::with_capacity(d.len());
    let mut twists = Vec::with_capacity(d.len());
    for &dk in d {
        let (n, rem) = dk.div_mod_floor(&rr);
        twists.push(n);
        dbar.push(rem as u32);
    }
    Ok(NormalizedInvariants {
        curve,
        r,
        d: d.to_vec(),
        dbar,
        twists,
    })
}

/// Reassembles the multidegree from reduced degrees and twists.
pub fn recover_multidegree(inv: &NormalizedInvariants) -> Vec<i64> {
    let rr = i64::from(inv.r);
    inv.dbar
        .iter()
        .zip(&inv.twists)
        .map(|(&db, &n)| rr * n + i64::from(db))
        .collect()
}

/// `gcd(r, d)`, which equals `gcd(r, dbar)`.
pub fn rank_degree_gcd(inv: &NormalizedInvariants) -> u64 {
    i64::from(inv.r).gcd(&inv.d_total()).unsigned_abs()
}

/// True iff rank and total degree are coprime.
pub fn coprimality_check(inv: &NormalizedInvariants) -> bool {
    rank_degree_gcd(inv) == 1
}

/// Fails with [`Error::NotCoprime`] unless rank and degree are coprime.
pub fn require_coprime(inv: &NormalizedInvariants) -> Result<()> {
    let gcd = rank_degree_gcd(inv);
    if gcd == 1 {
        Ok(())
    } else {
        Err(Error::NotCoprime {
            rank: inv.r,
            degree: inv.d_total(),
            gcd,
        })
    }
}
