//! Canonical matrices: reversing a reduction path from the one-dimensional
//! matrix `(λ)`, and the forward small reduction that undoes each step.

use num_traits::Zero;

use crate::automaton::{self, apply_transition, find_path, Path, ReductionState, Transition, Vertex};
use crate::curve::{rank_degree_gcd, NormalizedInvariants};
use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::matrix::{MatrixKind, ParamMatrix, Pos};
use crate::scalar::{ParamScalar, Q};

/// Where the rows and columns of the target of a step sit inside its
/// source, and where the inserted identity goes.
///
/// `i` and `j` are the row and column vertex of the minimal block of the
/// source. When the block is tall, or wide and square, the inserted rows
/// belong to `i` and the inserted columns to `j`; `p` is the vertex whose
/// reduced size remains and `q` the vertex whose size was subtracted.
#[derive(Debug, Clone, Copy)]
enum Layout {
    TallType {
        i: Vertex,
        j: Vertex,
        p: Vertex,
        q: Vertex,
        tp: usize,
        tq: usize,
    },
    Wide {
        i: Vertex,
        j: Vertex,
        si: usize,
    },
}

fn usize_sizes(s: &ReductionState) -> Vec<usize> {
    s.sizes.iter().map(|&x| x as usize).collect()
}

fn layout(source: &ReductionState, t: &Transition) -> Result<Layout> {
    let (i, j) = source.shape.minimal_edge();
    let si = source.size(i) as usize;
    let sj = source.size(j) as usize;
    let (x, y) = t.edge;
    if (x, y) != (i, j) && (x, y) != (j, i) {
        return Err(Error::TransitionNotApplicable {
            edge: t.edge_name(),
            state: source.state.to_string(),
            reason: "edge is not the minimal edge of the state".into(),
        });
    }
    if (x, y) == (j, i) && sj > si {
        return Ok(Layout::Wide { i, j, si });
    }
    let sx = source.size(x) as usize;
    let sy = source.size(y) as usize;
    if sx < sy {
        return Err(Error::TransitionNotApplicable {
            edge: t.edge_name(),
            state: source.state.to_string(),
            reason: format!("s_{x} = {sx} < s_{y} = {sy}"),
        });
    }
    Ok(Layout::TallType {
        i,
        j,
        p: x,
        q: y,
        tp: sx - sy,
        tq: sy,
    })
}

impl Layout {
    /// Source position of a target entry.
    fn place(&self, kind: MatrixKind, tr: Pos, tc: Pos) -> (Pos, Pos) {
        match *self {
            Layout::TallType { i, j, p, q, tp, .. } => {
                let sr = if tr.0 == p {
                    (i, tr.1)
                } else if tr.0 == q {
                    match kind {
                        MatrixKind::Chains => (j, tr.1),
                        MatrixKind::Triangles => (i, tp + tr.1),
                    }
                } else {
                    tr
                };
                let sc = if tc.0 == p {
                    (i, tc.1)
                } else if tc.0 == q {
                    match kind {
                        MatrixKind::Chains => (i, tp + tc.1),
                        MatrixKind::Triangles if sr.0 == i => (i, tp + tc.1),
                        MatrixKind::Triangles => (j, tc.1),
                    }
                } else {
                    tc
                };
                (sr, sc)
            }
            Layout::Wide { i, j, si } => match kind {
                MatrixKind::Chains => {
                    let sr = if tr.0 == i {
                        (j, tr.1)
                    } else if tr.0 == j {
                        (j, si + tr.1)
                    } else {
                        tr
                    };
                    let sc = if tc.0 == j { (j, si + tc.1) } else { tc };
                    (sr, sc)
                }
                MatrixKind::Triangles => {
                    let sc = if tc.0 == i {
                        (j, tc.1)
                    } else if tc.0 == j {
                        (j, si + tc.1)
                    } else {
                        tc
                    };
                    let sr = if tr.0 == i {
                        if sc.0 == j {
                            (j, tr.1)
                        } else {
                            (i, tr.1)
                        }
                    } else if tr.0 == j {
                        (j, si + tr.1)
                    } else {
                        tr
                    };
                    (sr, sc)
                }
            },
        }
    }

    /// Positions of the inserted identity block.
    fn ones(&self) -> Vec<(Pos, Pos)> {
        match *self {
            Layout::TallType { i, j, tp, tq, .. } => (0..tq).map(|a| ((i, tp + a), (j, a))).collect(),
            Layout::Wide { i, j, si } => (0..si).map(|a| ((i, a), (j, a))).collect(),
        }
    }
}

fn positions(m: &ParamMatrix) -> Vec<Pos> {
    (1..=m.sizes.len() as Vertex)
        .flat_map(|v| (0..m.size(v)).map(move |a| (v, a)))
        .collect()
}

fn empty_like(state: &ReductionState) -> ParamMatrix {
    ParamMatrix::zeros(state.curve, state.state, state.shape.clone(), usize_sizes(state))
}

fn check_shape(m: &ParamMatrix, state: &ReductionState, what: &str) -> Result<()> {
    if m.curve != state.curve || m.shape != state.shape || m.sizes != usize_sizes(state) {
        return Err(Error::ShapeMismatch(format!(
            "{what} matrix has shape {:?} with sizes {:?}, expected {:?} with sizes {:?}",
            m.shape, m.sizes, state.shape, state.sizes
        )));
    }
    Ok(())
}

/// The one-dimensional matrix `(λ)` at the end state of a path.
pub fn seed_matrix(end: &ReductionState, lambda: ParamScalar) -> Result<ParamMatrix> {
    if end.total_size() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "seed needs a one-dimensional state, got sizes {:?}",
            end.sizes
        )));
    }
    if end.curve.is_cycle() && lambda.is_zero() {
        return Err(Error::InvalidParameter(
            "λ must be nonzero on a Kodaira cycle".into(),
        ));
    }
    let v = (end.sizes.iter().position(|&s| s == 1).expect("one vertex of size one") + 1) as Vertex;
    let mut m = empty_like(end);
    m.set((v, 0), (v, 0), lambda);
    Ok(m)
}

/// Reverses one transition: grows `m`, given in the target shape of `t`,
/// to the source state.
pub fn inverse_step(m: &ParamMatrix, source: &ReductionState, t: &Transition) -> Result<ParamMatrix> {
    let target = apply_transition(source, t)?;
    check_shape(m, &target, "target")?;
    let lay = layout(source, t)?;
    let kind = m.kind();
    let mut out = empty_like(source);
    let mut written = vec![false; out.dim() * out.dim()];
    let n = out.dim();
    let mut put = |out: &mut ParamMatrix, r: Pos, c: Pos, v: ParamScalar| -> Result<()> {
        let (ri, ci) = (out.index(r), out.index(c));
        if std::mem::replace(&mut written[ri * n + ci], true) {
            return Err(Error::Internal(format!("inverse step writes {r:?},{c:?} twice")));
        }
        *out.at_mut(ri, ci) = v;
        Ok(())
    };
    let pos = positions(m);
    for &tr in &pos {
        for &tc in &pos {
            let v = m.get(tr, tc);
            if v.is_zero() {
                continue;
            }
            let (sr, sc) = lay.place(kind, tr, tc);
            put(&mut out, sr, sc, v.clone())?;
        }
    }
    for (r, c) in lay.ones() {
        put(&mut out, r, c, ParamScalar::one())?;
    }
    out.check_mask()?;
    Ok(out)
}

fn block(m: &ParamMatrix, rv: Vertex, cv: Vertex) -> Result<QMat> {
    (0..m.size(rv))
        .map(|a| {
            (0..m.size(cv))
                .map(|b| {
                    let e = m.get((rv, a), (cv, b));
                    if e.is_constant() {
                        Ok(e.c0.clone())
                    } else {
                        Err(Error::Unsupported(format!(
                            "minimal block ({rv},{cv}) depends on λ; substitute a value first"
                        )))
                    }
                })
                .collect()
        })
        .collect()
}

/// Replaces the rows of `v` by `g · rows` and its columns by `cols · g⁻¹`.
fn conjugate_vertex(m: &mut ParamMatrix, v: Vertex, g: &QMat, g_inv: &QMat) {
    let s = m.size(v);
    let o = m.offset(v);
    let n = m.dim();
    let combine = |vals: &[ParamScalar], coeffs: &[Q]| -> ParamScalar {
        let mut acc = ParamScalar::zero();
        for (x, k) in vals.iter().zip(coeffs) {
            if !k.is_zero() && !x.is_zero() {
                acc = &acc + &x.scale(k);
            }
        }
        acc
    };
    for c in 0..n {
        let old: Vec<ParamScalar> = (0..s).map(|a| m.at(o + a, c).clone()).collect();
        for a in 0..s {
            *m.at_mut(o + a, c) = combine(&old, &g[a]);
        }
    }
    for r in 0..n {
        let old: Vec<ParamScalar> = (0..s).map(|b| m.at(r, o + b).clone()).collect();
        for b in 0..s {
            let col: Vec<Q> = (0..s).map(|k| g_inv[k][b].clone()).collect();
            *m.at_mut(r, o + b) = combine(&old, &col);
        }
    }
}

fn normalize(m: &mut ParamMatrix, lay: &Layout) -> Result<()> {
    let rank_error = |i, j, rank, expected| Error::NotABrick { i, j, rank, expected };
    match *lay {
        Layout::TallType { i, j, .. } => {
            let (si, sj) = (m.size(i), m.size(j));
            let b = block(m, i, j)?;
            let rank = linalg::rank(&b);
            if rank < sj {
                return Err(rank_error(i, j, rank, sj));
            }
            let extra = linalg::complete_columns(&b, si);
            let t: QMat = (0..si)
                .map(|r| {
                    let mut row: Vec<Q> = extra.iter().map(|&e| if e == r { Q::from_integer(1.into()) } else { Q::zero() }).collect();
                    row.extend(b[r].iter().cloned());
                    row
                })
                .collect();
            let p = linalg::inverse(&t).ok_or_else(|| Error::Internal("completion is singular".into()))?;
            conjugate_vertex(m, i, &p, &t);
        }
        Layout::Wide { i, j, .. } => {
            let (si, sj) = (m.size(i), m.size(j));
            let b = block(m, i, j)?;
            let rank = linalg::rank(&b);
            if rank < si {
                return Err(rank_error(i, j, rank, si));
            }
            let extra = linalg::complete_columns(&linalg::transpose(&b), sj);
            let mut y = b.clone();
            for &e in &extra {
                y.push((0..sj).map(|c| if c == e { Q::from_integer(1.into()) } else { Q::zero() }).collect());
            }
            let y_inv = linalg::inverse(&y).ok_or_else(|| Error::Internal("completion is singular".into()))?;
            conjugate_vertex(m, j, &y, &y_inv);
        }
    }
    Ok(())
}

fn clear(m: &mut ParamMatrix, lay: &Layout) -> Result<()> {
    let n = m.dim();
    match (m.kind(), *lay) {
        (MatrixKind::Chains, Layout::TallType { i, j, tp, tq, .. }) => {
            let pivots: Vec<usize> = (0..tq).map(|a| m.index((i, tp + a))).collect();
            for rho in 0..n {
                if pivots.contains(&rho) {
                    continue;
                }
                for (c, &sigma) in pivots.iter().enumerate() {
                    let f = m.get_idx(rho, (j, c));
                    if f.is_zero() {
                        continue;
                    }
                    m.add_row(rho, sigma, &-&f)?;
                    if m.vertex_of(rho) == i {
                        m.add_col(sigma, rho, &f)?;
                    }
                }
            }
            for (a, &sigma) in pivots.iter().enumerate() {
                let jc = m.index((j, a));
                for kappa in 0..n {
                    if m.vertex_of(kappa) == j {
                        continue;
                    }
                    let f = m.at(sigma, kappa).clone();
                    if !f.is_zero() {
                        m.add_col(kappa, jc, &-&f)?;
                    }
                }
            }
        }
        (MatrixKind::Chains, Layout::Wide { i, j, si }) => {
            let pivots: Vec<usize> = (0..si).map(|a| m.index((j, a))).collect();
            for a in 0..si {
                let row = m.index((i, a));
                for kappa in 0..n {
                    if pivots.contains(&kappa) {
                        continue;
                    }
                    let f = m.at(row, kappa).clone();
                    if f.is_zero() {
                        continue;
                    }
                    m.add_col(kappa, pivots[a], &-&f)?;
                    if m.vertex_of(kappa) == j {
                        m.add_row(pivots[a], kappa, &f)?;
                    }
                }
            }
            for rho in 0..n {
                if m.vertex_of(rho) == i {
                    continue;
                }
                for a in 0..si {
                    let f = m.at(rho, pivots[a]).clone();
                    if !f.is_zero() {
                        let src = m.index((i, a));
                        m.add_row(rho, src, &-&f)?;
                    }
                }
            }
        }
        (MatrixKind::Triangles, Layout::TallType { i, j, tp, tq, .. }) => {
            let later: Vec<Vertex> = m.shape.rows.iter().copied().filter(|&k| m.shape.precedes(i, k)).collect();
            for k in later {
                for a in 0..m.size(k) {
                    let rho = m.index((k, a));
                    for c in 0..tq {
                        let f = m.get_idx(rho, (j, c));
                        if f.is_zero() {
                            continue;
                        }
                        let sigma = m.index((i, tp + c));
                        let g = -&f;
                        m.add_row(rho, sigma, &g)?;
                        m.add_col(sigma, rho, &f)?;
                    }
                }
            }
            m.clear_holes();
        }
        (MatrixKind::Triangles, Layout::Wide { i, j, si }) => {
            let earlier: Vec<Vertex> = m.shape.rows.iter().copied().filter(|&c| m.shape.precedes(c, j)).collect();
            for c in earlier {
                for a in 0..si {
                    let row = m.index((i, a));
                    let pivot = m.index((j, a));
                    for b in 0..m.size(c) {
                        let kappa = m.index((c, b));
                        let f = m.at(row, kappa).clone();
                        if f.is_zero() {
                            continue;
                        }
                        m.add_row(pivot, kappa, &f)?;
                        m.add_col(kappa, pivot, &-&f)?;
                    }
                }
            }
            m.clear_holes();
        }
    }
    Ok(())
}

impl ParamMatrix {
    fn get_idx(&self, r: usize, c: Pos) -> ParamScalar {
        self.at(r, self.index(c)).clone()
    }
}

/// One forward small reduction: brings the minimal block of `source` to
/// its normal form, clears the entries it can clear and strips the reduced
/// rows and columns, giving a matrix in the target shape of `t`.
pub fn forward_reduce(m: &ParamMatrix, source: &ReductionState, t: &Transition) -> Result<ParamMatrix> {
    check_shape(m, source, "source")?;
    let target = apply_transition(source, t)?;
    let lay = layout(source, t)?;
    let mut s = m.clone();
    normalize(&mut s, &lay)?;
    clear(&mut s, &lay)?;
    let mut out = empty_like(&target);
    let kind = s.kind();
    let pos = positions(&out);
    for &tr in &pos {
        for &tc in &pos {
            let (sr, sc) = lay.place(kind, tr, tc);
            out.set(tr, tc, s.get(sr, sc).clone());
        }
    }
    out.clear_holes();
    if inverse_step(&out, source, t)? != s {
        return Err(Error::Internal(format!(
            "matrix does not reduce to normal form along {}",
            t.edge_name()
        )));
    }
    Ok(out)
}

/// Runs the forward reduction along a whole path and returns the final
/// one-dimensional matrix.
pub fn reduce_along(m: &ParamMatrix, path: &Path) -> Result<ParamMatrix> {
    let states = path.states()?;
    let mut cur = m.clone();
    for (state, t) in states.iter().zip(&path.steps) {
        cur = forward_reduce(&cur, state, t)?;
    }
    Ok(cur)
}

/// The parameter left after reducing `m` along `path`.
pub fn reduced_parameter(m: &ParamMatrix, path: &Path) -> Result<ParamScalar> {
    let end = reduce_along(m, path)?;
    if end.dim() != 1 {
        return Err(Error::Internal("path does not end in dimension one".into()));
    }
    Ok(end.at(0, 0).clone())
}

/// A canonical matrix together with the path it was built from.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub inv: NormalizedInvariants,
    pub path: Path,
    pub matrix: ParamMatrix,
}

/// The reduction path for coprime invariants.
pub fn path_for(inv: &NormalizedInvariants) -> Result<Path> {
    let start = automaton::initial_state(inv)?;
    find_path(&start).ok_or_else(|| Error::NotCoprime {
        rank: inv.r,
        degree: inv.d_total(),
        gcd: rank_degree_gcd(inv),
    })
}

/// Builds the canonical matrix with `λ` kept symbolic.
pub fn build_symbolic(inv: &NormalizedInvariants) -> Result<CanonicalForm> {
    crate::curve::require_coprime(inv)?;
    let path = path_for(inv)?;
    let states = path.states()?;
    let end = states.last().expect("path has a start");
    let mut m = seed_matrix(end, ParamScalar::lambda())?;
    for (state, t) in states.iter().zip(&path.steps).rev() {
        m = inverse_step(&m, state, t)?;
    }
    Ok(CanonicalForm {
        inv: inv.clone(),
        path,
        matrix: m,
    })
}

/// Builds the canonical matrix `M(λ)` at a given parameter value.
pub fn build_canonical(inv: &NormalizedInvariants, lambda: &Q) -> Result<ParamMatrix> {
    check_lambda(inv.curve, lambda)?;
    Ok(build_symbolic(inv)?.matrix.eval(lambda))
}

/// Rejects `λ = 0` on cycles, where the parameter lives in `k*`.
pub fn check_lambda(curve: crate::curve::CurveType, lambda: &Q) -> Result<()> {
    if curve.is_cycle() && lambda.is_zero() {
        return Err(Error::InvalidParameter(
            "λ must be nonzero on a Kodaira cycle".into(),
        ));
    }
    Ok(())
}

/// Number of copies of each vertex in the fine layout of component 1,
/// indexed by `vertex - 1`. Only the doubled IV block `0` has two.
pub fn vertex_multiplicities(state: &ReductionState) -> Vec<usize> {
    let layout = &crate::tables::fine_orders(state.curve)[0];
    state
        .vertex_blocks
        .iter()
        .map(|&b| layout.all().filter(|fb| fb.block() == b).count())
        .collect()
}

/// Moves the parameter of a fiber canonical form from its corner to the
/// diagonal: every `λ`-term is dropped and `c·λ/r` is added to each
/// diagonal entry of a vertex with `c` copies in the fine layout.
pub fn to_diagonal_form(form: &CanonicalForm) -> Result<ParamMatrix> {
    let m = &form.matrix;
    if m.kind() == MatrixKind::Chains {
        return Err(Error::Unsupported(
            "the diagonal form exists for fibers only".into(),
        ));
    }
    let start = &form.path.start;
    let copies = vertex_multiplicities(start);
    let r = form.inv.r as i64;
    let mut out = m.clone();
    out.map_entries(|e| ParamScalar::constant(e.c0.clone()));
    for v in 1..=copies.len() as Vertex {
        let share = ParamScalar::linear(Q::zero(), Q::new((copies[v as usize - 1] as i64).into(), r.into()));
        for a in 0..out.size(v) {
            let cur = out.get((v, a), (v, a)).clone();
            out.set((v, a), (v, a), &cur + &share);
        }
    }
    Ok(out)
}
