//! Small-reduction automata.
//!
//! A state of a bunch-of-chains problem is described by its shape: the
//! order of the row blocks and the order of the column blocks, both given
//! as vertex labels `1..=n`. Vertex `a` precedes `b` when it comes first in
//! both orders; this is the poset of the state. The minimal block sits in
//! the first row block and the last column block. Reducing it either keeps
//! the rows and merges the columns (a tall block, `s_i >= s_j`) or keeps
//! the columns and merges the rows (a wide block, `s_j >= s_i`). Running
//! this on the inventories below reproduces the displayed automata; the
//! fiber IV automaton runs on the shapes of `I3` and reports the glued
//! state names.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveType, NormalizedInvariants};
use crate::error::{Error, Result};
use crate::tables::{self, BlockId, TableRow};

/// Vertex label of a box, `1..=n`.
pub type Vertex = u8;

/// Names of automaton states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoxStateId {
    Node,
    Cusp,
    APlus,
    AMinus,
    B,
    AStarPlus,
    AStarMinus,
    BPlus(Vertex),
    BMinus(Vertex),
    C(Vertex, Vertex),
    D,
    DStar,
}

impl BoxStateId {
    /// The name after gluing `A*` with `A` and `D*` with `D`.
    pub fn glued(self) -> BoxStateId {
        match self {
            BoxStateId::AStarPlus => BoxStateId::APlus,
            BoxStateId::AStarMinus => BoxStateId::AMinus,
            BoxStateId::DStar => BoxStateId::D,
            other => other,
        }
    }

    /// Principal states are those where a reduction may terminate.
    pub fn is_principal(self) -> bool {
        matches!(
            self,
            BoxStateId::Node
                | BoxStateId::Cusp
                | BoxStateId::APlus
                | BoxStateId::AMinus
                | BoxStateId::AStarPlus
                | BoxStateId::AStarMinus
        )
    }
}

impl fmt::Display for BoxStateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxStateId::Node => write!(f, "node"),
            BoxStateId::Cusp => write!(f, "cusp"),
            BoxStateId::APlus => write!(f, "A+"),
            BoxStateId::AMinus => write!(f, "A-"),
            BoxStateId::B => write!(f, "B"),
            BoxStateId::AStarPlus => write!(f, "A*+"),
            BoxStateId::AStarMinus => write!(f, "A*-"),
            BoxStateId::BPlus(j) => write!(f, "B+({j})"),
            BoxStateId::BMinus(j) => write!(f, "B-({j})"),
            BoxStateId::C(a, b) => write!(f, "C({a},{b})"),
            BoxStateId::D => write!(f, "D"),
            BoxStateId::DStar => write!(f, "D*"),
        }
    }
}

/// Row and column orders of a state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
}

impl Shape {
    pub fn new(rows: &[Vertex], cols: &[Vertex]) -> Self {
        Shape {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    fn pos(order: &[Vertex], v: Vertex) -> usize {
        order.iter().position(|&x| x == v).expect("vertex in shape")
    }

    /// `a ≺ b`: `a` comes before `b` among rows and among columns.
    pub fn precedes(&self, a: Vertex, b: Vertex) -> bool {
        a != b
            && Self::pos(&self.rows, a) < Self::pos(&self.rows, b)
            && Self::pos(&self.cols, a) < Self::pos(&self.cols, b)
    }

    /// The block `(i, j)` in the first row block and last column block.
    pub fn minimal_edge(&self) -> (Vertex, Vertex) {
        (self.rows[0], *self.cols.last().expect("nonempty shape"))
    }

    /// Shape after reducing a tall minimal block.
    pub fn after_tall(&self) -> Shape {
        let (i, j) = self.minimal_edge();
        let mut cols = Vec::with_capacity(self.cols.len());
        for &c in &self.cols {
            if c == i {
                cols.push(i);
                cols.push(j);
            } else if c != j {
                cols.push(c);
            }
        }
        Shape {
            rows: self.rows.clone(),
            cols,
        }
    }

    /// Shape after reducing a wide minimal block.
    pub fn after_wide(&self) -> Shape {
        let (i, j) = self.minimal_edge();
        let mut rows = Vec::with_capacity(self.rows.len());
        for &r in &self.rows {
            if r == j {
                rows.push(i);
                rows.push(j);
            } else if r != i {
                rows.push(r);
            }
        }
        Shape {
            rows,
            cols: self.cols.clone(),
        }
    }

    pub fn is_minimal(&self, v: Vertex) -> bool {
        !self.rows.iter().any(|&u| self.precedes(u, v))
    }

    pub fn is_maximal(&self, v: Vertex) -> bool {
        !self.rows.iter().any(|&u| self.precedes(v, u))
    }

    /// All pairs `a ≺ b`.
    pub fn relations(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for &a in &self.rows {
            for &b in &self.rows {
                if self.precedes(a, b) {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// One arrow of an automaton: reduce `s_{edge.0}` by `s_{edge.1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub edge: (Vertex, Vertex),
    pub source: BoxStateId,
    pub target: BoxStateId,
}

impl Transition {
    pub fn edge_name(&self) -> String {
        format!("({}{})", self.edge.0, self.edge.1)
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -{}-> {}", self.source, self.edge_name(), self.target)
    }
}

/// Whether the minimal block is tall (rows are kept) or wide (columns are
/// kept) for a given transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Tall,
    Wide,
}

/// The state inventory of one curve with its precomputed transitions.
#[derive(Debug)]
pub struct Automaton {
    pub curve: CurveType,
    pub states: Vec<(BoxStateId, Shape)>,
    /// For each state: index reached by the tall and by the wide reduction.
    next: Vec<(usize, usize)>,
}

fn inventory(curve: CurveType) -> Vec<(BoxStateId, Shape)> {
    use BoxStateId::*;
    let s = Shape::new;
    match curve {
        CurveType::I1 => vec![(Node, s(&[1, 2], &[1, 2]))],
        CurveType::II => vec![(Cusp, s(&[1, 2], &[1, 2]))],
        CurveType::I2 | CurveType::III => vec![
            (APlus, s(&[1, 2, 3], &[1, 3, 2])),
            (B, s(&[1, 2, 3], &[1, 2, 3])),
            (AMinus, s(&[2, 1, 3], &[1, 2, 3])),
        ],
        CurveType::I3 | CurveType::IV => vec![
            (APlus, s(&[1, 2, 3, 4], &[1, 4, 3, 2])),
            (AMinus, s(&[3, 2, 1, 4], &[1, 2, 3, 4])),
            (AStarPlus, s(&[1, 3, 2, 4], &[1, 4, 2, 3])),
            (AStarMinus, s(&[2, 3, 1, 4], &[1, 3, 2, 4])),
            (BPlus(2), s(&[1, 2, 3, 4], &[1, 2, 4, 3])),
            (BMinus(3), s(&[2, 1, 3, 4], &[1, 2, 3, 4])),
            (BPlus(3), s(&[1, 3, 2, 4], &[1, 3, 4, 2])),
            (BMinus(2), s(&[3, 1, 2, 4], &[1, 3, 2, 4])),
            (C(2, 3), s(&[2, 1, 3, 4], &[1, 2, 4, 3])),
            (C(3, 2), s(&[3, 1, 2, 4], &[1, 3, 4, 2])),
            (D, s(&[1, 2, 3, 4], &[1, 3, 2, 4])),
            (DStar, s(&[1, 3, 2, 4], &[1, 2, 3, 4])),
        ],
    }
}

impl Automaton {
    fn build(curve: CurveType) -> Automaton {
        let states = inventory(curve);
        let find = |sh: &Shape| {
            states
                .iter()
                .position(|(_, t)| t == sh)
                .unwrap_or_else(|| panic!("shape {sh:?} missing from the {curve} inventory"))
        };
        let next = states
            .iter()
            .map(|(_, sh)| (find(&sh.after_tall()), find(&sh.after_wide())))
            .collect();
        Automaton {
            curve,
            states,
            next,
        }
    }

    /// The automaton of a curve; built once and shared.
    pub fn of(curve: CurveType) -> &'static Automaton {
        static CELLS: OnceLock<Vec<Automaton>> = OnceLock::new();
        let all = CELLS.get_or_init(|| CurveType::ALL.iter().map(|&c| Automaton::build(c)).collect());
        let idx = CurveType::ALL.iter().position(|&c| c == curve).expect("known curve");
        &all[idx]
    }

    /// Name of a state as reported for this curve.
    pub fn display_id(&self, idx: usize) -> BoxStateId {
        let id = self.states[idx].0;
        if self.curve == CurveType::IV {
            id.glued()
        } else {
            id
        }
    }

    pub fn index_of_shape(&self, shape: &Shape) -> Option<usize> {
        self.states.iter().position(|(_, s)| s == shape)
    }

    /// The two outgoing arrows of a state: the tall reduction first.
    pub fn arrows_from(&self, idx: usize) -> [(Transition, usize, Orientation); 2] {
        let (i, j) = self.states[idx].1.minimal_edge();
        let (tall, wide) = self.next[idx];
        let src = self.display_id(idx);
        [
            (
                Transition {
                    edge: (i, j),
                    source: src,
                    target: self.display_id(tall),
                },
                tall,
                Orientation::Tall,
            ),
            (
                Transition {
                    edge: (j, i),
                    source: src,
                    target: self.display_id(wide),
                },
                wide,
                Orientation::Wide,
            ),
        ]
    }

    /// The automaton as a graph on reported state names, with duplicate
    /// arrows removed.
    pub fn graph(&self) -> AutomatonGraph {
        let mut states: Vec<GraphState> = Vec::new();
        let mut arrows: Vec<Transition> = Vec::new();
        for idx in 0..self.states.len() {
            let id = self.display_id(idx);
            let shape = &self.states[idx].1;
            if !states.iter().any(|s| s.id == id.to_string()) {
                states.push(GraphState {
                    id: id.to_string(),
                    rows: shape.rows.clone(),
                    cols: shape.cols.clone(),
                    principal: id.is_principal(),
                });
            }
            for (t, _, _) in self.arrows_from(idx) {
                if !arrows.contains(&t) {
                    arrows.push(t);
                }
            }
        }
        AutomatonGraph {
            curve: self.curve,
            states,
            arrows: arrows
                .into_iter()
                .map(|t| GraphArrow {
                    source: t.source.to_string(),
                    edge: t.edge_name(),
                    target: t.target.to_string(),
                })
                .collect(),
        }
    }
}

/// Serializable view of an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonGraph {
    pub curve: CurveType,
    pub states: Vec<GraphState>,
    pub arrows: Vec<GraphArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphState {
    pub id: String,
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphArrow {
    pub source: String,
    pub edge: String,
    pub target: String,
}

impl AutomatonGraph {
    /// Arrows as sorted `source (ij) target` lines, suitable for comparing
    /// against a literal listing.
    pub fn adjacency_lines(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{} {} {}", a.source, a.edge, a.target))
            .collect();
        v.sort();
        v
    }
}

/// A box state together with its dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionState {
    pub curve: CurveType,
    pub state: BoxStateId,
    pub shape: Shape,
    /// Block of the primary reduction sitting at each vertex.
    pub vertex_blocks: Vec<BlockId>,
    /// Size of each vertex, indexed by `vertex - 1`.
    pub sizes: Vec<u64>,
    /// Vertex at each position of the table's block tuple `I`.
    pub table_vertices: Vec<Vertex>,
    /// Table row this state came from.
    pub table_row: String,
    /// Configuration name printed in that row.
    pub table_config: String,
}

impl ReductionState {
    pub fn size(&self, v: Vertex) -> u64 {
        self.sizes[usize::from(v) - 1]
    }

    pub fn block(&self, v: Vertex) -> BlockId {
        self.vertex_blocks[usize::from(v) - 1]
    }

    /// The tuple `I` in table order.
    pub fn blocks(&self) -> Vec<BlockId> {
        self.table_vertices.iter().map(|&v| self.block(v)).collect()
    }

    /// The dimension vector in table order.
    pub fn dimension_vector(&self) -> Vec<u64> {
        self.table_vertices.iter().map(|&v| self.size(v)).collect()
    }

    pub fn total_size(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// True once a single vertex of size one is left in a principal state.
    pub fn is_terminal(&self) -> bool {
        is_terminal(&self.sizes) && self.state.is_principal()
    }

    pub fn automaton_index(&self) -> usize {
        Automaton::of(self.curve)
            .index_of_shape(&self.shape)
            .expect("state shape belongs to its automaton")
    }

    pub fn orientation_of(&self, edge: (Vertex, Vertex)) -> Option<Orientation> {
        let (i, j) = self.shape.minimal_edge();
        if edge == (i, j) {
            Some(Orientation::Tall)
        } else if edge == (j, i) {
            Some(Orientation::Wide)
        } else {
            None
        }
    }
}

fn is_terminal(sizes: &[u64]) -> bool {
    sizes.iter().sum::<u64>() == 1
}

/// Full row and column orders of the reduced matrix before restriction to
/// the surviving blocks.
fn full_orders(curve: CurveType) -> (Vec<BlockId>, Vec<BlockId>) {
    match curve.components() {
        1 => (vec![1, 2], vec![1, 2]),
        2 => (vec![1, 2, 3, 4], vec![1, 3, 2, 4]),
        _ => (vec![1, 2, 3, 4, 5, 6, 7, 8], vec![1, 5, 3, 7, 2, 6, 4, 8]),
    }
}

/// Poset of a fiber IV configuration on table positions `0..4`.
fn iv_form_relations(config: &str) -> Result<Vec<(usize, usize)>> {
    Ok(match config {
        "A+" => vec![(0, 1), (0, 2), (0, 3)],
        "A-" => vec![(0, 3), (1, 3), (2, 3)],
        "B+(0)" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
        "B-(0)" => vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        other => return Err(Error::Internal(format!("unknown IV configuration {other}"))),
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Finds the automaton state and the vertex-to-position assignment for a
/// table row. Returns `(state index, position of each vertex)`.
fn match_row(curve: CurveType, row: &TableRow) -> Result<(usize, Vec<usize>)> {
    let aut = Automaton::of(curve);
    let n = row.blocks.len();
    let perms = permutations(n);
    if curve == CurveType::IV {
        let rel = iv_form_relations(&row.config)?;
        for (idx, (_, shape)) in aut.states.iter().enumerate() {
            for p in &perms {
                let ok = (1..=n as Vertex).all(|a| {
                    (1..=n as Vertex).all(|b| {
                        let lhs = shape.precedes(a, b);
                        let rhs = rel.contains(&(p[usize::from(a) - 1], p[usize::from(b) - 1]));
                        lhs == rhs
                    })
                });
                if ok {
                    return Ok((idx, p.clone()));
                }
            }
        }
        return Err(Error::Internal(format!("no IV state realizes {}", row.config)));
    }
    let (rows_full, cols_full) = full_orders(curve);
    let restrict =
        |order: &[BlockId]| -> Vec<BlockId> { order.iter().copied().filter(|b| row.blocks.contains(b)).collect() };
    let (rows, cols) = (restrict(&rows_full), restrict(&cols_full));
    for (idx, (_, shape)) in aut.states.iter().enumerate() {
        for p in &perms {
            let blk = |v: Vertex| row.blocks[p[usize::from(v) - 1]];
            let r: Vec<BlockId> = shape.rows.iter().map(|&v| blk(v)).collect();
            let c: Vec<BlockId> = shape.cols.iter().map(|&v| blk(v)).collect();
            if r == rows && c == cols {
                return Ok((idx, p.clone()));
            }
        }
    }
    Err(Error::Internal(format!(
        "no {curve} state realizes table row {}",
        row.row
    )))
}

/// Builds the initial reduction state from the tables.
pub fn initial_state(inv: &NormalizedInvariants) -> Result<ReductionState> {
    let row = tables::table_row(inv)?;
    let (idx, pos_of_vertex) = match_row(inv.curve, &row)?;
    let aut = Automaton::of(inv.curve);
    let n = row.blocks.len();
    let mut table_vertices = vec![0 as Vertex; n];
    for (v0, &p) in pos_of_vertex.iter().enumerate() {
        table_vertices[p] = (v0 + 1) as Vertex;
    }
    Ok(ReductionState {
        curve: inv.curve,
        state: aut.display_id(idx),
        shape: aut.states[idx].1.clone(),
        vertex_blocks: pos_of_vertex.iter().map(|&p| row.blocks[p]).collect(),
        sizes: pos_of_vertex.iter().map(|&p| row.sizes[p]).collect(),
        table_vertices,
        table_row: row.row,
        table_config: row.config,
    })
}

/// Applies a transition to a state.
pub fn apply_transition(state: &ReductionState, t: &Transition) -> Result<ReductionState> {
    let not_applicable = |reason: String| Error::TransitionNotApplicable {
        edge: t.edge_name(),
        state: state.state.to_string(),
        reason,
    };
    if t.source != state.state {
        return Err(not_applicable(format!("transition starts at {}", t.source)));
    }
    let aut = Automaton::of(state.curve);
    let idx = state.automaton_index();
    let arrow = aut
        .arrows_from(idx)
        .into_iter()
        .find(|(a, _, _)| a.edge == t.edge)
        .ok_or_else(|| not_applicable("edge is not the minimal edge of the state".into()))?;
    if arrow.0.target != t.target {
        return Err(not_applicable(format!("edge leads to {}", arrow.0.target)));
    }
    let (x, y) = t.edge;
    let (sx, sy) = (state.size(x), state.size(y));
    if sx < sy {
        return Err(not_applicable(format!("s_{x} = {sx} < s_{y} = {sy}")));
    }
    let mut next = state.clone();
    next.sizes[usize::from(x) - 1] = sx - sy;
    next.state = t.target;
    next.shape = aut.states[arrow.1].1.clone();
    Ok(next)
}

/// Applies the transition along `edge` from the current state.
pub fn step(state: &ReductionState, edge: (Vertex, Vertex)) -> Result<ReductionState> {
    let aut = Automaton::of(state.curve);
    let (t, _, _) = aut
        .arrows_from(state.automaton_index())
        .into_iter()
        .find(|(a, _, _)| a.edge == edge)
        .ok_or_else(|| Error::TransitionNotApplicable {
            edge: format!("({}{})", edge.0, edge.1),
            state: state.state.to_string(),
            reason: "edge is not the minimal edge of the state".into(),
        })?;
    apply_transition(state, &t)
}

/// Coarse invariants of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaBeta {
    pub alpha: u64,
    pub beta: u64,
}

impl AlphaBeta {
    pub fn gcd(&self) -> u64 {
        self.alpha.gcd(&self.beta)
    }
}

/// `α` sums the sizes of the non-maximal vertices and `β` those of the
/// non-minimal vertices. For configurations `A` and `C` these are the
/// minimal and maximal vertices; for `B(j)` both sums pick up `s_j`.
pub fn alpha_beta(state: &ReductionState) -> AlphaBeta {
    let sh = &state.shape;
    let mut ab = AlphaBeta { alpha: 0, beta: 0 };
    for &v in &sh.rows {
        if !sh.is_maximal(v) {
            ab.alpha += state.size(v);
        }
        if !sh.is_minimal(v) {
            ab.beta += state.size(v);
        }
    }
    ab
}

/// A run of the automaton with its size trajectory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub start: ReductionState,
    pub steps: Vec<Transition>,
    /// Sizes by vertex before the first step and after every step.
    pub trajectory: Vec<Vec<u64>>,
}

impl Path {
    pub fn end(&self) -> Result<ReductionState> {
        let mut s = self.start.clone();
        for t in &self.steps {
            s = apply_transition(&s, t)?;
        }
        Ok(s)
    }

    /// All states visited, the start included.
    pub fn states(&self) -> Result<Vec<ReductionState>> {
        let mut out = vec![self.start.clone()];
        for t in &self.steps {
            let next = apply_transition(out.last().expect("nonempty"), t)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Edges as printed, e.g. `(12)(31)(23)`.
    pub fn edge_string(&self) -> String {
        self.steps.iter().map(Transition::edge_name).collect()
    }
}

/// Searches for the canonical path to a principal state with a single
/// vertex of size one.
///
/// The minimal edge decides the step whenever its two sizes differ. On a
/// tie both reductions are tried, the wide one first when the first vertex
/// is involved, so that vertex `1` survives. Cycles and dead ends are
/// pruned; `None` means the end state is unreachable.
pub fn find_path(start: &ReductionState) -> Option<Path> {
    let aut = Automaton::of(start.curve);
    let mut dead: HashSet<(usize, Vec<u64>)> = HashSet::new();
    let mut on_stack: HashSet<(usize, Vec<u64>)> = HashSet::new();
    let mut steps: Vec<Transition> = Vec::new();
    let mut traj = vec![start.sizes.clone()];
    let found = search(
        aut,
        start.automaton_index(),
        start.sizes.clone(),
        &mut dead,
        &mut on_stack,
        &mut steps,
        &mut traj,
    );
    found.then(|| Path {
        start: start.clone(),
        steps,
        trajectory: traj,
    })
}

fn search(
    aut: &Automaton,
    idx: usize,
    sizes: Vec<u64>,
    dead: &mut HashSet<(usize, Vec<u64>)>,
    on_stack: &mut HashSet<(usize, Vec<u64>)>,
    steps: &mut Vec<Transition>,
    traj: &mut Vec<Vec<u64>>,
) -> bool {
    if is_terminal(&sizes) && aut.states[idx].0.is_principal() {
        return true;
    }
    let key = (idx, sizes.clone());
    if dead.contains(&key) || on_stack.contains(&key) {
        return false;
    }
    on_stack.insert(key.clone());
    let (i, j) = aut.states[idx].1.minimal_edge();
    let (si, sj) = (sizes[usize::from(i) - 1], sizes[usize::from(j) - 1]);
    let arrows = aut.arrows_from(idx);
    let order: Vec<usize> = if si > sj {
        vec![0]
    } else if sj > si {
        vec![1]
    } else if i == 1 {
        vec![1, 0]
    } else {
        vec![0, 1]
    };
    for k in order {
        let (t, next_idx, _) = arrows[k];
        let (x, y) = t.edge;
        let mut next = sizes.clone();
        next[usize::from(x) - 1] -= next[usize::from(y) - 1];
        steps.push(t);
        traj.push(next.clone());
        if search(aut, next_idx, next, dead, on_stack, steps, traj) {
            return true;
        }
        steps.pop();
        traj.pop();
    }
    on_stack.remove(&key);
    dead.insert(key);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::normalize_multidegree;

    #[test]
    fn worked_two_component_path() {
        let inv = normalize_multidegree(CurveType::I2, 9, &[3, 2]).unwrap();
        let s = initial_state(&inv).unwrap();
        assert_eq!(s.state, BoxStateId::APlus);
        assert_eq!(alpha_beta(&s), AlphaBeta { alpha: 4, beta: 5 });
        let p = find_path(&s).unwrap();
        assert_eq!(p.edge_string(), "(12)(31)(23)(23)(32)(13)(12)(31)");
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
        assert_eq!(p.trajectory, expected);
    }

    #[test]
    fn node_non_coprime_has_no_path() {
        let inv = normalize_multidegree(CurveType::I1, 4, &[2]).unwrap();
        assert!(find_path(&initial_state(&inv).unwrap()).is_none());
    }
}
