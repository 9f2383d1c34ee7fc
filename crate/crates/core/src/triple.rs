//! Gluing data of a vector bundle: the reduced canonical matrix embedded
//! back into the matrices `μ` of the normalization.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::automaton::ReductionState;
use crate::builder::{build_symbolic, CanonicalForm};
use crate::curve::{CurveType, NormalizedInvariants};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::matrix::ParamMatrix;
use crate::scalar::Q;
use crate::tables::{fine_orders, BlockId, FineBlock, FineOrder, ZERO_BLOCK};

/// Which gluing matrix of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    /// `μ_k(0)`.
    #[serde(rename = "mu0")]
    Mu0,
    /// `μ_k(∞)`, cycles only.
    #[serde(rename = "muInf")]
    MuInf,
    /// The `ε`-part `μ_{ε_k}(0)`, fibers only.
    #[serde(rename = "muEps")]
    MuEps,
}

/// A named block of rows or columns of a gluing matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineSpan {
    pub block: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingMatrix {
    /// Component number, starting at 1.
    pub component: usize,
    pub slot: Slot,
    pub block_rows: Vec<FineSpan>,
    pub block_cols: Vec<FineSpan>,
    pub entries: QMat,
}

/// A triple `(F̃, M, μ̃)` at a fixed parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub curve: CurveType,
    pub inv: NormalizedInvariants,
    pub lambda: Q,
    pub matrices: Vec<GluingMatrix>,
}

impl Triple {
    pub fn rank(&self) -> usize {
        self.inv.r as usize
    }

    pub fn matrix(&self, component: usize, slot: Slot) -> Option<&GluingMatrix> {
        self.matrices
            .iter()
            .find(|m| m.component == component && m.slot == slot)
    }

    pub fn matrix_mut(&mut self, component: usize, slot: Slot) -> Option<&mut GluingMatrix> {
        self.matrices
            .iter_mut()
            .find(|m| m.component == component && m.slot == slot)
    }

    /// Entries of a gluing matrix; panics if the slot does not exist for
    /// this curve.
    pub fn mu(&self, component: usize, slot: Slot) -> &QMat {
        &self
            .matrix(component, slot)
            .unwrap_or_else(|| panic!("no {slot:?} matrix for component {component}"))
            .entries
    }

    /// Sizes of the two weight summands `O(n_k)` and `O(n_k + 1)` of
    /// component `k` (1-based), read off the row blocks of `μ_k(0)`.
    pub fn weight_split(&self, component: usize) -> (usize, usize) {
        let m = self.matrix(component, Slot::Mu0).expect("mu0 exists");
        let high: usize = m.block_rows.iter().filter(|s| s.block.ends_with('+')).map(|s| s.size).sum();
        (self.rank() - high, high)
    }
}

/// Where the entries of the doubled IV block `0` go. Pairs with blocks 3,
/// 4, 5 and 6 are forced by the triangular shape of the fine layout; the
/// remaining ones are recorded here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroPlacement {
    /// Column copy used by entries in row block 2, column block 0.
    pub row2_col: FineBlock,
    /// Row copy used by entries in row block 0, column block 7.
    pub col7_row: FineBlock,
    /// Row and column copy used by the diagonal block `(0, 0)`.
    pub diagonal: (FineBlock, FineBlock),
}

pub const ZERO_PLACEMENT: ZeroPlacement = ZeroPlacement {
    row2_col: FineBlock::ZeroA,
    col7_row: FineBlock::ZeroB,
    diagonal: (FineBlock::ZeroA, FineBlock::ZeroA),
};

impl ZeroPlacement {
    /// All candidate placements, used to search for the consistent one.
    pub fn candidates() -> Vec<ZeroPlacement> {
        use FineBlock::{ZeroA as A, ZeroB as B};
        let mut out = Vec::new();
        for row2_col in [A, B] {
            for col7_row in [A, B] {
                for diagonal in [(A, A), (B, B), (A, B), (B, A)] {
                    out.push(ZeroPlacement {
                        row2_col,
                        col7_row,
                        diagonal,
                    });
                }
            }
        }
        out
    }

    fn place(&self, row: BlockId, col: BlockId) -> (FineBlock, FineBlock) {
        use FineBlock::{Plain, ZeroA, ZeroB};
        match (row, col) {
            (ZERO_BLOCK, ZERO_BLOCK) => self.diagonal,
            (ZERO_BLOCK, c) => {
                let r = match c {
                    4 => ZeroA,
                    6 => ZeroB,
                    7 => self.col7_row,
                    _ => ZeroA,
                };
                (r, Plain(c))
            }
            (r, ZERO_BLOCK) => {
                let c = match r {
                    3 => ZeroA,
                    5 => ZeroB,
                    2 => self.row2_col,
                    _ => ZeroA,
                };
                (Plain(r), c)
            }
            (r, c) => (Plain(r), Plain(c)),
        }
    }
}

/// Fine layout of one component with block sizes and offsets.
struct Layout {
    blocks: Vec<(FineBlock, usize, bool)>,
}

impl Layout {
    fn new(order: &FineOrder, size_of: &impl Fn(FineBlock) -> usize) -> Self {
        let blocks = order
            .low
            .iter()
            .map(|&b| (b, size_of(b), false))
            .chain(order.high.iter().map(|&b| (b, size_of(b), true)))
            .collect();
        Layout { blocks }
    }

    fn offset(&self, fb: FineBlock) -> usize {
        let mut o = 0;
        for &(b, s, _) in &self.blocks {
            if b == fb {
                return o;
            }
            o += s;
        }
        panic!("block {fb} missing from layout")
    }

    fn spans(&self) -> Vec<FineSpan> {
        self.blocks
            .iter()
            .map(|&(b, s, high)| FineSpan {
                block: if high { format!("{b}+") } else { b.name() },
                size: s,
            })
            .collect()
    }

    /// Matrix sending each block of `self` to the block of the same name
    /// in `cols`.
    fn label_identity(&self, cols: &Layout, r: usize) -> QMat {
        let mut m = vec![vec![Q::zero(); r]; r];
        for &(b, s, _) in &self.blocks {
            let (ro, co) = (self.offset(b), cols.offset(b));
            for k in 0..s {
                m[ro + k][co + k] = Q::one();
            }
        }
        m
    }
}

fn fine_size(state: &ReductionState) -> impl Fn(FineBlock) -> usize + '_ {
    move |fb: FineBlock| {
        state
            .vertex_blocks
            .iter()
            .position(|&b| b == fb.block())
            .map_or(0, |k| state.sizes[k] as usize)
    }
}

/// Embeds the reduced matrix `m` (evaluated) into an `r × r` matrix with
/// rows laid out by `rows` and columns by `cols`.
fn embed(
    m: &ParamMatrix,
    start: &ReductionState,
    rows: &Layout,
    cols: &Layout,
    r: usize,
    zero: &ZeroPlacement,
    lambda: &Q,
) -> QMat {
    let mut out = vec![vec![Q::zero(); r]; r];
    let n = start.vertex_blocks.len();
    for v in 1..=n as u8 {
        for w in 1..=n as u8 {
            let (fr, fc) = zero.place(start.block(v), start.block(w));
            for a in 0..m.size(v) {
                for b in 0..m.size(w) {
                    let e = m.get((v, a), (w, b));
                    if e.is_zero() {
                        continue;
                    }
                    out[rows.offset(fr) + a][cols.offset(fc) + b] = e.eval(lambda);
                }
            }
        }
    }
    out
}

/// Assembles the triple of a canonical form at parameter `λ`.
pub fn assemble_from(form: &CanonicalForm, lambda: &Q) -> Result<Triple> {
    assemble_with(form, lambda, &ZERO_PLACEMENT)
}

/// Assembles with an explicit placement of the IV block `0`.
pub fn assemble_with(form: &CanonicalForm, lambda: &Q, zero: &ZeroPlacement) -> Result<Triple> {
    let curve = form.inv.curve;
    crate::builder::check_lambda(curve, lambda)?;
    let start = &form.path.start;
    if form.matrix.shape != start.shape {
        return Err(Error::ShapeMismatch("canonical matrix is not in the initial shape".into()));
    }
    let r = form.inv.r as usize;
    let size_of = fine_size(start);
    let layouts: Vec<Layout> = fine_orders(curve).iter().map(|o| Layout::new(o, &size_of)).collect();
    let n = layouts.len();
    for (k, l) in layouts.iter().enumerate() {
        let total: usize = l.blocks.iter().map(|b| b.1).sum();
        let high: usize = l.blocks.iter().filter(|b| b.2).map(|b| b.1).sum();
        if total != r || high != form.inv.dbar[k] as usize {
            return Err(Error::Internal(format!(
                "component {} layout has rank {total} and high part {high}, expected {r} and {}",
                k + 1,
                form.inv.dbar[k]
            )));
        }
    }
    let mk = |component: usize, slot: Slot, rows: &Layout, cols: &Layout, entries: QMat| GluingMatrix {
        component,
        slot,
        block_rows: rows.spans(),
        block_cols: cols.spans(),
        entries,
    };
    let mut matrices = Vec::new();
    if curve.is_cycle() {
        for k in 0..n {
            let next = &layouts[(k + 1) % n];
            matrices.push(mk(k + 1, Slot::Mu0, &layouts[k], &layouts[k], layouts[k].label_identity(&layouts[k], r)));
            let inf = if k == 0 {
                embed(&form.matrix, start, &layouts[0], next, r, zero, lambda)
            } else {
                layouts[k].label_identity(next, r)
            };
            matrices.push(mk(k + 1, Slot::MuInf, &layouts[k], next, inf));
        }
    } else {
        let l1 = &layouts[0];
        for k in 0..n {
            let mut mu0 = layouts[k].label_identity(l1, r);
            if curve == CurveType::IV && k == 2 {
                let (ro, co) = (layouts[k].offset(FineBlock::ZeroB), l1.offset(FineBlock::ZeroA));
                for a in 0..size_of(FineBlock::ZeroA) {
                    mu0[ro + a][co + a] = Q::one();
                }
            }
            matrices.push(mk(k + 1, Slot::Mu0, &layouts[k], l1, mu0));
            let eps = if k == 0 {
                embed(&form.matrix, start, l1, l1, r, zero, lambda)
            } else {
                vec![vec![Q::zero(); r]; r]
            };
            matrices.push(mk(k + 1, Slot::MuEps, &layouts[k], l1, eps));
        }
    }
    Ok(Triple {
        curve,
        inv: form.inv.clone(),
        lambda: lambda.clone(),
        matrices,
    })
}

/// Builds the canonical matrix and assembles its triple.
pub fn assemble_triple(inv: &NormalizedInvariants, lambda: &Q) -> Result<Triple> {
    assemble_from(&build_symbolic(inv)?, lambda)
}

/// Reads `(r, d̄, n)` back off the weight blocks of a triple.
pub fn degree_of_triple(t: &Triple) -> Result<NormalizedInvariants> {
    let r = t.rank() as u32;
    let dbar: Vec<u32> = (1..=t.curve.components()).map(|k| t.weight_split(k).1 as u32).collect();
    let d: Vec<i64> = dbar
        .iter()
        .zip(&t.inv.twists)
        .map(|(&db, &n)| i64::from(r) * n + i64::from(db))
        .collect();
    crate::curve::normalize_multidegree(t.curve, r, &d)
}
