//! Block matrices of a reduced matrix problem.
//!
//! Entries are stored vertex by vertex: the rows of vertex `1` come first,
//! then those of vertex `2`, and so on, and the columns use the same
//! layout. The printed order of the blocks is taken from the shape of the
//! state.

use serde::{Deserialize, Serialize};

use crate::automaton::{BoxStateId, Shape, Vertex};
use crate::curve::CurveType;
use crate::error::{Error, Result};
use crate::scalar::{ParamScalar, Q};

/// Bunch of chains (cycles) or bunch of triangles (fibers).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    Chains,
    Triangles,
}

impl MatrixKind {
    pub fn of(curve: CurveType) -> Self {
        if curve.is_cycle() {
            MatrixKind::Chains
        } else {
            MatrixKind::Triangles
        }
    }
}

/// Structural status of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellMask {
    Free,
    /// A block with no arrow in the box; always zero.
    Hole,
}

/// One block of a row or column partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpan {
    pub vertex: Vertex,
    pub size: usize,
}

/// A row or column position: vertex and index inside its block.
pub type Pos = (Vertex, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamMatrix {
    pub curve: CurveType,
    pub state: BoxStateId,
    pub shape: Shape,
    /// Block size of each vertex, indexed by `vertex - 1`.
    pub sizes: Vec<usize>,
    entries: Vec<ParamScalar>,
}

impl ParamMatrix {
    pub fn zeros(curve: CurveType, state: BoxStateId, shape: Shape, sizes: Vec<usize>) -> Self {
        let n: usize = sizes.iter().sum();
        ParamMatrix {
            curve,
            state,
            shape,
            sizes,
            entries: vec![ParamScalar::zero(); n * n],
        }
    }

    pub fn kind(&self) -> MatrixKind {
        MatrixKind::of(self.curve)
    }

    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.sizes[usize::from(v) - 1]
    }

    pub fn offset(&self, v: Vertex) -> usize {
        self.sizes[..usize::from(v) - 1].iter().sum()
    }

    /// Storage index of a position.
    pub fn index(&self, p: Pos) -> usize {
        debug_assert!(p.1 < self.size(p.0));
        self.offset(p.0) + p.1
    }

    /// Vertex owning a storage index.
    pub fn vertex_of(&self, mut idx: usize) -> Vertex {
        for (k, &s) in self.sizes.iter().enumerate() {
            if idx < s {
                return (k + 1) as Vertex;
            }
            idx -= s;
        }
        panic!("index out of range")
    }

    pub fn at(&self, r: usize, c: usize) -> &ParamScalar {
        &self.entries[r * self.dim() + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut ParamScalar {
        let n = self.dim();
        &mut self.entries[r * n + c]
    }

    pub fn get(&self, r: Pos, c: Pos) -> &ParamScalar {
        self.at(self.index(r), self.index(c))
    }

    pub fn set(&mut self, r: Pos, c: Pos, v: ParamScalar) {
        let (ri, ci) = (self.index(r), self.index(c));
        *self.at_mut(ri, ci) = v;
    }

    /// Mask of the block with row vertex `a` and column vertex `b`.
    pub fn block_mask(&self, a: Vertex, b: Vertex) -> CellMask {
        match self.kind() {
            MatrixKind::Chains => CellMask::Free,
            MatrixKind::Triangles => {
                if a == b || self.shape.precedes(a, b) {
                    CellMask::Free
                } else {
                    CellMask::Hole
                }
            }
        }
    }

    pub fn mask_at(&self, r: usize, c: usize) -> CellMask {
        self.block_mask(self.vertex_of(r), self.vertex_of(c))
    }

    /// Sets every hole to zero.
    pub fn clear_holes(&mut self) {
        if self.kind() == MatrixKind::Chains {
            return;
        }
        let n = self.dim();
        for r in 0..n {
            for c in 0..n {
                if self.mask_at(r, c) == CellMask::Hole {
                    *self.at_mut(r, c) = ParamScalar::zero();
                }
            }
        }
    }

    /// Checks that holes are zero.
    pub fn check_mask(&self) -> Result<()> {
        let n = self.dim();
        for r in 0..n {
            for c in 0..n {
                if self.mask_at(r, c) == CellMask::Hole && !self.at(r, c).is_zero() {
                    return Err(Error::Internal(format!("nonzero entry in hole ({r},{c})")));
                }
            }
        }
        Ok(())
    }

    /// Printed order of the row blocks.
    pub fn row_order(&self) -> &[Vertex] {
        match self.kind() {
            MatrixKind::Chains => &self.shape.rows,
            MatrixKind::Triangles => &self.shape.cols,
        }
    }

    /// Printed order of the column blocks.
    pub fn col_order(&self) -> &[Vertex] {
        &self.shape.cols
    }

    fn spans(&self, order: &[Vertex]) -> Vec<BlockSpan> {
        order
            .iter()
            .map(|&v| BlockSpan {
                vertex: v,
                size: self.size(v),
            })
            .collect()
    }

    pub fn row_blocks(&self) -> Vec<BlockSpan> {
        self.spans(self.row_order())
    }

    pub fn col_blocks(&self) -> Vec<BlockSpan> {
        self.spans(self.col_order())
    }

    fn printed_indices(&self, order: &[Vertex]) -> Vec<usize> {
        order
            .iter()
            .flat_map(|&v| {
                let o = self.offset(v);
                (0..self.size(v)).map(move |k| o + k)
            })
            .collect()
    }

    /// Entries in printed order.
    pub fn printed(&self) -> Vec<Vec<ParamScalar>> {
        let rows = self.printed_indices(self.row_order());
        let cols = self.printed_indices(self.col_order());
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.at(r, c).clone()).collect())
            .collect()
    }

    /// Masks in printed order.
    pub fn printed_mask(&self) -> Vec<Vec<CellMask>> {
        let rows = self.printed_indices(self.row_order());
        let cols = self.printed_indices(self.col_order());
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.mask_at(r, c)).collect())
            .collect()
    }

    /// Substitutes a value for `λ`.
    pub fn eval(&self, lambda: &Q) -> ParamMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = ParamScalar::constant(e.eval(lambda));
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = &ParamScalar> {
        self.entries.iter()
    }

    pub fn map_entries(&mut self, f: impl Fn(&ParamScalar) -> ParamScalar) {
        for e in self.entries.iter_mut() {
            *e = f(e);
        }
    }

    /// `row dst += k · row src`.
    pub fn add_row(&mut self, dst: usize, src: usize, k: &ParamScalar) -> Result<()> {
        let n = self.dim();
        for c in 0..n {
            let s = self.at(src, c);
            if !s.is_zero() {
                let d = k.checked_mul(s)?;
                let cell = self.at_mut(dst, c);
                *cell = &*cell + &d;
            }
        }
        Ok(())
    }

    /// `col dst += k · col src`.
    pub fn add_col(&mut self, dst: usize, src: usize, k: &ParamScalar) -> Result<()> {
        let n = self.dim();
        for r in 0..n {
            let s = self.at(r, src);
            if !s.is_zero() {
                let d = k.checked_mul(s)?;
                let cell = self.at_mut(r, dst);
                *cell = &*cell + &d;
            }
        }
        Ok(())
    }

    /// Number of entries depending on `λ`.
    pub fn lambda_entries(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_constant()).count()
    }
}
