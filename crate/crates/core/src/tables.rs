//! Initial matrix problems: for every curve, which set of blocks survives
//! the primary reduction, their sizes in terms of rank and reduced degrees,
//! and the fine block layout of each component.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveType, NormalizedInvariants};
use crate::error::{Error, Result};

/// Block identifiers of the primary reduction. Blocks `1..=8` are the
/// ordinary ones; [`ZERO_BLOCK`] is the split block written `0` for the
/// fiber of type IV.
pub type BlockId = u8;

pub const ZERO_BLOCK: BlockId = 0;

/// Name of a block as printed in tables and displays.
pub fn block_name(b: BlockId) -> String {
    b.to_string()
}

/// A position in the fine block grid of one component. The IV block `0`
/// occurs twice in every component, once in each half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FineBlock {
    Plain(BlockId),
    ZeroA,
    ZeroB,
}

impl FineBlock {
    pub fn block(self) -> BlockId {
        match self {
            FineBlock::Plain(b) => b,
            FineBlock::ZeroA | FineBlock::ZeroB => ZERO_BLOCK,
        }
    }

    pub fn name(self) -> String {
        match self {
            FineBlock::Plain(b) => b.to_string(),
            FineBlock::ZeroA => "0a".into(),
            FineBlock::ZeroB => "0b".into(),
        }
    }
}

impl fmt::Display for FineBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Fine layout of one component: the blocks of the low-weight summand
/// `O(n_k)` followed by those of the high-weight summand `O(n_k + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineOrder {
    pub low: Vec<FineBlock>,
    pub high: Vec<FineBlock>,
}

impl FineOrder {
    pub fn all(&self) -> impl Iterator<Item = FineBlock> + '_ {
        self.low.iter().chain(self.high.iter()).copied()
    }
}

fn plain(v: &[u8]) -> Vec<FineBlock> {
    v.iter().map(|&b| FineBlock::Plain(b)).collect()
}

/// The fine layouts of all components, indexed by component.
pub fn fine_orders(curve: CurveType) -> Vec<FineOrder> {
    use FineBlock::{Plain as P, ZeroA as ZA, ZeroB as ZB};
    let fo = |low: Vec<FineBlock>, high: Vec<FineBlock>| FineOrder { low, high };
    match curve {
        CurveType::I1 | CurveType::II => vec![fo(plain(&[1]), plain(&[2]))],
        CurveType::I2 | CurveType::III => vec![
            fo(plain(&[1, 2]), plain(&[3, 4])),
            fo(plain(&[1, 3]), plain(&[2, 4])),
        ],
        CurveType::I3 => vec![
            fo(plain(&[1, 2, 3, 4]), plain(&[5, 6, 7, 8])),
            fo(plain(&[1, 5, 3, 7]), plain(&[2, 6, 4, 8])),
            fo(plain(&[1, 2, 5, 6]), plain(&[3, 4, 7, 8])),
        ],
        CurveType::IV => vec![
            fo(vec![P(1), P(2), P(3), ZA, P(4)], vec![P(5), ZB, P(6), P(7), P(8)]),
            fo(vec![P(1), P(2), P(5), ZB, P(6)], vec![P(3), ZA, P(4), P(7), P(8)]),
            fo(vec![P(1), P(3), P(5), ZB, P(7)], vec![P(2), ZA, P(4), P(6), P(8)]),
        ],
    }
}

/// One row of the table of initial states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// Row name as printed, e.g. `1`, `1'`, `3'`; `-` for one component.
    pub row: String,
    /// Surviving blocks `I = (i_1, .., i_n)`.
    pub blocks: Vec<BlockId>,
    /// Dimension vector, aligned with `blocks`.
    pub sizes: Vec<u64>,
    /// Name of the configuration as printed in the table.
    pub config: String,
}

struct Candidate {
    row: &'static str,
    /// Condition exactly as written.
    strict: bool,
    /// Condition with every strict inequality relaxed.
    relaxed: bool,
    blocks: [BlockId; 4],
    sizes: [i64; 4],
    config: &'static str,
}

fn cand(
    row: &'static str,
    strict: bool,
    relaxed: bool,
    blocks: [BlockId; 4],
    sizes: [i64; 4],
    config: &'static str,
) -> Candidate {
    Candidate {
        row,
        strict,
        relaxed,
        blocks,
        sizes,
        config,
    }
}

fn pick(cands: Vec<Candidate>, n: usize) -> Result<TableRow> {
    let valid = |c: &&Candidate| c.sizes[..n].iter().all(|&s| s >= 0);
    let chosen = cands
        .iter()
        .filter(valid)
        .find(|c| c.strict)
        .or_else(|| cands.iter().filter(valid).find(|c| c.relaxed))
        .ok_or_else(|| Error::Internal("no table row matches the reduced degrees".into()))?;
    Ok(TableRow {
        row: chosen.row.to_string(),
        blocks: chosen.blocks[..n].to_vec(),
        sizes: chosen.sizes[..n].iter().map(|&s| s as u64).collect(),
        config: chosen.config.to_string(),
    })
}

/// Selects the table row for the given invariants.
///
/// Rows are tried in the printed order and the first one whose condition
/// holds wins. Where the printed strict inequalities leave a boundary case
/// uncovered, the first row whose relaxed condition holds and whose sizes
/// are nonnegative is used instead.
pub fn table_row(inv: &NormalizedInvariants) -> Result<TableRow> {
    let r = i64::from(inv.r);
    let d: Vec<i64> = inv.dbar.iter().map(|&x| i64::from(x)).collect();
    let db: i64 = d.iter().sum();
    match inv.curve {
        CurveType::I1 | CurveType::II => Ok(TableRow {
            row: "-".into(),
            blocks: vec![1, 2],
            sizes: vec![(r - db) as u64, db as u64],
            config: if inv.curve == CurveType::I1 { "node" } else { "cusp" }.into(),
        }),
        CurveType::I2 | CurveType::III => {
            let (d1, d2) = (d[0], d[1]);
            pick(
                vec![
                    cand("1", r >= db, r >= db, [1, 2, 3, 0], [r - db, d2, d1, 0], "A+"),
                    cand("1'", r < db, r <= db, [2, 3, 4, 0], [r - d1, r - d2, db - r, 0], "A-"),
                ],
                3,
            )
        }
        CurveType::I3 => {
            let (d1, d2, d3) = (d[0], d[1], d[2]);
            let (s23, s13) = (d2 + d3, d1 + d3);
            pick(
                vec![
                    cand("1", r >= db, r >= db, [1, 2, 3, 5], [r - db, d2, d3, d1], "A+"),
                    cand(
                        "1'",
                        db >= 2 * r,
                        db >= 2 * r,
                        [4, 6, 7, 8],
                        [r - d1, r - d3, r - d2, db - 2 * r],
                        "A-",
                    ),
                    cand(
                        "2",
                        db > r && r > s23 && r > s13,
                        db >= r && r >= s23 && r >= s13,
                        [2, 3, 5, 6],
                        [r - s13, d3, r - s23, db - r],
                        "A-",
                    ),
                    cand(
                        "2'",
                        s23 > r && s13 > r,
                        s23 >= r && s13 >= r,
                        [3, 4, 6, 7],
                        [2 * r - db, s23 - r, r - d3, s13 - r],
                        "A+",
                    ),
                    cand(
                        "3",
                        s23 >= r && r >= s13,
                        s23 >= r && r >= s13,
                        [2, 3, 4, 6],
                        [r - s13, r - d2, s23 - r, d1],
                        "C",
                    ),
                    cand(
                        "3'",
                        s13 >= r && r >= s23,
                        s13 >= r && r >= s23,
                        [3, 5, 6, 7],
                        [r - d1, r - s23, d2, s13 - r],
                        "C",
                    ),
                ],
                4,
            )
        }
        CurveType::IV => {
            let (d1, d2, d3) = (d[0], d[1], d[2]);
            let (s12, s13, s23) = (d1 + d2, d1 + d3, d2 + d3);
            let z = ZERO_BLOCK;
            pick(
                vec![
                    cand("1", r >= db, r >= db, [1, 2, 3, 5], [r - db, d3, d2, d1], "A+"),
                    cand(
                        "1'",
                        db > 2 * r,
                        db >= 2 * r,
                        [4, 6, 7, 8],
                        [r - d1, r - d2, r - d3, db - 2 * r],
                        "A-",
                    ),
                    cand(
                        "2",
                        db > r && r > s12 && r > s13 && r > s23,
                        db >= r && r >= s12 && r >= s13 && r >= s23,
                        [2, 3, 5, z],
                        [r - s12, r - s13, r - s23, db - r],
                        "A-",
                    ),
                    cand(
                        "2'",
                        s12 > r && s13 > r && s23 > r && 2 * r > db,
                        s12 >= r && s13 >= r && s23 >= r && 2 * r >= db,
                        [z, 4, 6, 7],
                        [2 * r - db, s23 - r, s13 - r, s12 - r],
                        "A+",
                    ),
                    cand(
                        "3",
                        s23 > r && r > s12 && r > s13,
                        s23 >= r && r >= s12 && r >= s13,
                        [2, 3, z, 4],
                        [r - s12, r - s13, d1, s23 - r],
                        "B-(0)",
                    ),
                    cand(
                        "3'",
                        s12 > r && s13 > r && r > s23,
                        s12 >= r && s13 >= r && r >= s23,
                        [5, z, 6, 7],
                        [r - s23, r - d1, s13 - r, s12 - r],
                        "B+(0)",
                    ),
                    cand(
                        "4",
                        s13 > r && s23 > r && r > s12,
                        s13 >= r && s23 >= r && r >= s12,
                        [2, z, 4, 6],
                        [r - s12, r - d3, s23 - r, s13 - r],
                        "B+(0)",
                    ),
                    cand(
                        "4'",
                        s12 > r && r > s13 && r > s23,
                        s12 >= r && r >= s13 && r >= s23,
                        [3, 5, z, 7],
                        [r - s13, r - s23, d3, s12 - r],
                        "B-(0)",
                    ),
                    cand(
                        "5",
                        s13 > r && r > s12 && r > s23,
                        s13 >= r && r >= s12 && r >= s23,
                        [2, 5, z, 6],
                        [r - s12, r - s23, d2, s13 - r],
                        "B-(0)",
                    ),
                    cand(
                        "5'",
                        s12 > r && s23 > r && r > s13,
                        s12 >= r && s23 >= r && r >= s13,
                        [3, z, 4, 7],
                        [r - s13, r - d2, s23 - r, s12 - r],
                        "B+(0)",
                    ),
                ],
                4,
            )
        }
    }
}

/// Reconstructs `(r, dbar)` from a table row through the fine layouts:
/// the rank is the size of any component and `dbar_k` is the size of the
/// high-weight half of component `k`.
pub fn weights_from_row(curve: CurveType, row: &TableRow) -> (u64, Vec<u64>) {
    let size_of = |fb: FineBlock| -> u64 {
        row.blocks
            .iter()
            .position(|&b| b == fb.block())
            .map(|p| row.sizes[p])
            .unwrap_or(0)
    };
    let orders = fine_orders(curve);
    let rank = orders[0].all().map(size_of).sum();
    let dbar = orders
        .iter()
        .map(|o| o.high.iter().map(|&fb| size_of(fb)).sum())
        .collect();
    (rank, dbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::normalize_multidegree;

    fn row(curve: CurveType, r: u32, d: &[i64]) -> TableRow {
        table_row(&normalize_multidegree(curve, r, d).unwrap()).unwrap()
    }

    #[test]
    fn two_component_example() {
        let t = row(CurveType::I2, 9, &[3, 2]);
        assert_eq!((t.config.as_str(), t.blocks, t.sizes), ("A+", vec![1, 2, 3], vec![4, 2, 3]));
    }

    #[test]
    fn three_component_examples() {
        let t = row(CurveType::I3, 4, &[1, 1, 1]);
        assert_eq!((t.blocks, t.sizes), (vec![1, 2, 3, 5], vec![1, 1, 1, 1]));
        let t = row(CurveType::IV, 5, &[2, 2, 2]);
        assert_eq!(t.config, "A-");
        assert_eq!((t.blocks, t.sizes), (vec![2, 3, 5, 0], vec![1, 1, 1, 1]));
    }

    #[test]
    fn one_component() {
        let t = row(CurveType::II, 2, &[1]);
        assert_eq!(t.sizes, vec![1, 1]);
        assert_eq!(t.config, "cusp");
    }
}
