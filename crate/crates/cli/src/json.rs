//! JSON documents emitted by the CLI. Every document carries
//! `"schema": 1`; rationals are canonical `p/q` strings.

use brickforge::automaton::{alpha_beta, Path, ReductionState};
use brickforge::curve::{recover_multidegree, NormalizedInvariants};
use brickforge::matrix::{BlockSpan, ParamMatrix};
use brickforge::scalar::{q_to_wire, Q};
use brickforge::triple::Triple;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

pub fn invariants(inv: &NormalizedInvariants) -> Value {
    json!({
        "curve": inv.curve.name(),
        "rank": inv.r,
        "multidegree": recover_multidegree(inv),
        "reduced_multidegree": inv.dbar,
        "twists": inv.twists,
    })
}

pub fn state(s: &ReductionState) -> Value {
    let ab = alpha_beta(s);
    json!({
        "state": s.state.to_string(),
        "table_row": s.table_row,
        "blocks": s.vertex_blocks,
        "sizes": s.sizes,
        "rows": s.shape.rows,
        "cols": s.shape.cols,
        "alpha": ab.alpha,
        "beta": ab.beta,
    })
}

pub fn path(p: &Path) -> Value {
    let states: Vec<String> = p
        .states()
        .map(|v| v.iter().map(|s| s.state.to_string()).collect())
        .unwrap_or_default();
    json!({
        "edges": p.steps.iter().map(|t| t.edge_name()).collect::<Vec<_>>(),
        "states": states,
        "trajectory": p.trajectory,
    })
}

fn spans(v: &[BlockSpan]) -> Value {
    Value::Array(v.iter().map(|s| json!({"vertex": s.vertex, "size": s.size})).collect())
}

/// The reduced matrix in printed order, evaluated at `lambda`, together
/// with its symbolic entries.
pub fn matrix(m: &ParamMatrix, lambda: &Q) -> Value {
    let printed = m.printed();
    let entries: Vec<Vec<String>> = printed
        .iter()
        .map(|row| row.iter().map(|e| q_to_wire(&e.eval(lambda))).collect())
        .collect();
    let symbolic: Vec<Vec<String>> = printed
        .iter()
        .map(|row| row.iter().map(|e| e.render("λ")).collect())
        .collect();
    json!({
        "row_blocks": spans(&m.row_blocks()),
        "col_blocks": spans(&m.col_blocks()),
        "entries": entries,
        "symbolic": symbolic,
    })
}

pub fn triple(t: &Triple) -> Value {
    let matrices: Vec<Value> = t
        .matrices
        .iter()
        .map(|g| {
            json!({
                "component": g.component,
                "slot": g.slot,
                "block_rows": g.block_rows,
                "block_cols": g.block_cols,
                "entries": g.entries.iter().map(|r| r.iter().map(q_to_wire).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "curve": t.curve.name(),
        "rank": t.rank(),
        "multidegree": recover_multidegree(&t.inv),
        "twists": t.inv.twists,
        "lambda": q_to_wire(&t.lambda),
        "matrices": matrices,
    })
}

/// Wraps a payload as a versioned document of the given kind.
pub fn document(kind: &str, mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("kind".into(), json!(kind));
    }
    body
}
