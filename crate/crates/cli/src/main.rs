//! `brickforge`: classify, build and verify canonical forms of simple
//! vector bundles on plane degenerations of an elliptic curve.

mod json;
mod sweep;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use brickforge::automaton::{alpha_beta, find_path, initial_state, Automaton};
use brickforge::builder::{build_symbolic, check_lambda, to_diagonal_form};
use brickforge::curve::{normalize_multidegree, rank_degree_gcd, CurveType, NormalizedInvariants};
use brickforge::oracle::{endomorphism_dimension, hom_dimension};
use brickforge::picard::{
    recanonicalize_tensor, stabilizer_order_check, stabilizer_order_check_mod, tensor_with_line_bundle,
    LineBundleParam, PRIME_BOUND,
};
use brickforge::render::{latex_matrix, text_matrix};
use brickforge::scalar::{parse_q, q_to_string, q_to_wire, Q};
use brickforge::triple::{assemble_from, Triple};
use brickforge::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "brickforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the artifact to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug, Clone)]
struct Family {
    /// Curve type: I1, I2, I3, II, III or IV.
    #[arg(long)]
    curve: CurveType,
    /// Rank of the bundle.
    #[arg(long)]
    rank: u32,
    /// Multidegree as a comma-separated list, one entry per component.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    degree: Vec<i64>,
}

impl Family {
    fn invariants(&self) -> Result<NormalizedInvariants> {
        normalize_multidegree(self.curve, self.rank, &self.degree)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Initial state, block tuple, sizes, (α, β) and the reduction path.
    Classify {
        #[command(flatten)]
        family: Family,
    },
    /// The canonical matrix M(λ) and the full triple.
    Build {
        #[command(flatten)]
        family: Family,
        /// Parameter λ as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Spread λ over the diagonal as λ/r (fibers only).
        #[arg(long)]
        diagonal: bool,
    },
    /// End and Hom dimensions from the independent oracle.
    Verify {
        #[command(flatten)]
        family: Family,
        /// Parameter λ as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Second parameter: also report Hom in both directions.
        #[arg(long, allow_hyphen_values = true)]
        lambda2: Option<String>,
    },
    /// The parameter of E(λ) ⊗ L(μ), by formula and by re-canonicalization.
    Tensor {
        #[command(flatten)]
        family: Family,
        /// Parameter λ as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Parameter μ of the degree-zero line bundle, as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Also emit the canonical triple of the tensored bundle.
        #[arg(long)]
        triple: bool,
        /// Also run the stabilizer check.
        #[arg(long)]
        stabilizer: bool,
        /// Prime for the stabilizer check on cycles (default: smallest
        /// p > r with p ≡ 1 mod r).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// The invariant suite over all multidegrees up to a rank bound.
    Sweep {
        /// Largest rank to visit.
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
        /// Largest rank for the End-dimension oracle.
        #[arg(long, default_value_t = 6)]
        oracle_rank: u32,
        /// Parameter sample; 0 is skipped on cycles.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3", allow_hyphen_values = true)]
        lambdas: Vec<String>,
        /// Curves to sweep (default: all).
        #[arg(long, value_delimiter = ',')]
        curves: Vec<CurveType>,
    },
    /// The automaton of a curve as a graph.
    EmitAutomaton {
        /// Curve type: I1, I2, I3, II, III or IV.
        #[arg(long)]
        curve: CurveType,
    },
}

fn parse_lambda(curve: CurveType, s: &str) -> Result<Q> {
    let l = parse_q(s)?;
    check_lambda(curve, &l)?;
    Ok(l)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn triple_text(t: &Triple) -> String {
    let mut out = String::new();
    for g in &t.matrices {
        let rows: Vec<String> = g.block_rows.iter().map(|s| format!("{}:{}", s.block, s.size)).collect();
        let cols: Vec<String> = g.block_cols.iter().map(|s| format!("{}:{}", s.block, s.size)).collect();
        let slot = serde_json::to_value(g.slot).expect("slot serializes");
        let _ = writeln!(
            out,
            "{}[{}] rows {} cols {}",
            slot.as_str().unwrap_or_default(),
            g.component,
            rows.join(" "),
            cols.join(" ")
        );
        for row in &g.entries {
            let cells: Vec<String> = row.iter().map(q_to_string).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
    }
    out
}

fn classify(fam: &Family, fmt: Format) -> Result<(String, u8)> {
    let inv = fam.invariants()?;
    let start = initial_state(&inv)?;
    let ab = alpha_beta(&start);
    let path = find_path(&start);
    if fmt == Format::Json {
        let mut body = json!({
            "invariants": json::invariants(&inv),
            "initial": json::state(&start),
            "gcd": rank_degree_gcd(&inv),
        });
        body["path"] = path.as_ref().map_or(serde_json::Value::Null, json::path);
        let code = if path.is_some() { 0 } else { 2 };
        return Ok((pretty(&json::document("classify", body)), code));
    }
    let mut out = format!("{}, I={}, s={}\n", start.state, tuple(&start.vertex_blocks), tuple(&start.sizes));
    let _ = writeln!(out, "(alpha,beta)=({},{})", ab.alpha, ab.beta);
    let Some(path) = path else {
        let _ = writeln!(out, "no reduction path: gcd(r,d) = {}", rank_degree_gcd(&inv));
        return Ok((out, 2));
    };
    let states = path.states()?;
    let mut line = states[0].state.to_string();
    for (t, s) in path.steps.iter().zip(&states[1..]) {
        let _ = write!(line, " {} {}", t.edge_name(), s.state);
    }
    let _ = writeln!(out, "path: {line}");
    let traj: Vec<String> = path.trajectory.iter().map(|s| tuple(s)).collect();
    let _ = writeln!(out, "trajectory: {}", traj.join(" "));
    Ok((out, 0))
}

fn build(fam: &Family, lambda: &str, diagonal: bool, fmt: Format) -> Result<String> {
    let inv = fam.invariants()?;
    let l = parse_lambda(inv.curve, lambda)?;
    let form = build_symbolic(&inv)?;
    let shown = if diagonal { to_diagonal_form(&form)? } else { form.matrix.clone() };
    let triple = assemble_from(&form, &l)?;
    Ok(match fmt {
        Format::Latex => latex_matrix(&shown),
        Format::Json => pretty(&json::document(
            "build",
            json!({
                "invariants": json::invariants(&inv),
                "lambda": q_to_wire(&l),
                "initial": json::state(&form.path.start),
                "path": json::path(&form.path),
                "matrix": json::matrix(&shown, &l),
                "triple": json::triple(&triple),
            }),
        )),
        Format::Text => {
            let mut out = format!(
                "{} r={} d={} λ={}\nstate {} s={}\npath {}\n",
                inv.curve.name(),
                inv.r,
                tuple(&inv.d),
                q_to_string(&l),
                form.path.start.state,
                tuple(&form.path.start.sizes),
                form.path.edge_string()
            );
            out.push_str(&text_matrix(&shown));
            out.push_str(&triple_text(&triple));
            out
        }
    })
}

fn verify(fam: &Family, lambda: &str, lambda2: Option<&str>, fmt: Format) -> Result<String> {
    let inv = fam.invariants()?;
    let l = parse_lambda(inv.curve, lambda)?;
    let form = build_symbolic(&inv)?;
    let t = assemble_from(&form, &l)?;
    let end = endomorphism_dimension(&t)?;
    let homs = match lambda2 {
        Some(s) => {
            let l2 = parse_lambda(inv.curve, s)?;
            let t2 = assemble_from(&form, &l2)?;
            Some((l2, hom_dimension(&t, &t2)?, hom_dimension(&t2, &t)?))
        }
        None => None,
    };
    if fmt == Format::Json {
        let mut body = json!({
            "invariants": json::invariants(&inv),
            "lambda": q_to_wire(&l),
            "end": end,
            "brick": end == 1,
        });
        if let Some((l2, a, b)) = &homs {
            body["lambda2"] = json!(q_to_wire(l2));
            body["hom_12"] = json!(a);
            body["hom_21"] = json!(b);
        }
        return Ok(pretty(&json::document("verify", body)));
    }
    let mut out = format!("End={end}, brick={}\n", end == 1);
    if let Some((_, a, b)) = homs {
        let _ = writeln!(out, "Hom12={a}, Hom21={b}");
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn tensor(fam: &Family, lambda: &str, mu: &str, with_triple: bool, stab: bool, prime: Option<u64>, fmt: Format) -> Result<String> {
    let inv = fam.invariants()?;
    let l = parse_lambda(inv.curve, lambda)?;
    let mu = LineBundleParam::new(inv.curve, parse_q(mu)?)?;
    let law = tensor_with_line_bundle(&inv, &l, &mu)?;
    let form = build_symbolic(&inv)?;
    let rc = recanonicalize_tensor(&form, &l, &mu)?;
    let verdict = if stab {
        Some(match prime {
            Some(p) => stabilizer_order_check_mod(&inv, p)?,
            None => stabilizer_order_check(&inv, PRIME_BOUND)?,
        })
    } else {
        None
    };
    if fmt == Format::Json {
        let mut body = json!({
            "invariants": json::invariants(&inv),
            "lambda": q_to_wire(&l),
            "mu": q_to_wire(&mu.value),
            "parameter": q_to_wire(&law),
            "recanonicalized": q_to_wire(&rc.parameter),
        });
        if with_triple {
            body["triple"] = json::triple(&rc.triple);
        }
        if let Some(v) = &verdict {
            body["stabilizer"] = json!({
                "prime": v.prime,
                "elements": v.elements,
                "expected_order": v.expected_order,
                "pass": v.pass,
            });
        }
        return Ok(pretty(&json::document("tensor", body)));
    }
    let rule = if inv.curve.is_cycle() { "λμ^r" } else { "λ+rμ" };
    let mut out = format!(
        "{rule}={}, recanonicalized={}\n",
        q_to_string(&law),
        q_to_string(&rc.parameter)
    );
    if let Some(v) = verdict {
        let field = v.prime.map_or("Q".to_string(), |p| format!("F_{p}"));
        let _ = writeln!(
            out,
            "stabilizer over {field}: {{{}}}, order {} (expected {}), {}",
            v.elements.join(","),
            v.elements.len(),
            v.expected_order,
            if v.pass { "pass" } else { "fail" }
        );
    }
    if with_triple {
        out.push_str(&triple_text(&rc.triple));
    }
    Ok(out)
}

fn run_sweep(max_rank: u32, oracle_rank: u32, lambdas: &[String], curves: &[CurveType], fmt: Format) -> Result<(String, bool)> {
    let lambdas: Vec<Q> = lambdas.iter().map(|s| parse_q(s)).collect::<Result<_>>()?;
    let curves: Vec<CurveType> = if curves.is_empty() { CurveType::ALL.to_vec() } else { curves.to_vec() };
    let rows: Vec<(CurveType, sweep::CurveSummary)> = curves
        .iter()
        .map(|&c| (c, sweep::sweep_curve(c, max_rank, &lambdas, oracle_rank)))
        .collect();
    let all_pass = rows.iter().all(|(_, s)| s.pass());
    if fmt == Format::Json {
        let body = json!({
            "max_rank": max_rank,
            "oracle_rank": oracle_rank,
            "lambdas": lambdas.iter().map(q_to_wire).collect::<Vec<_>>(),
            "checks": sweep::CHECKS,
            "curves": rows.iter().map(|(c, s)| json!({
                "curve": c.name(),
                "instances": s.instances,
                "coprime": s.coprime,
                "failures": s.failures,
                "witnesses": s.witnesses,
                "pass": s.pass(),
            })).collect::<Vec<_>>(),
            "pass": all_pass,
        });
        return Ok((pretty(&json::document("sweep", body)), all_pass));
    }
    let mut out = format!("{:<6}{:>10}{:>9}", "curve", "instances", "coprime");
    for c in sweep::CHECKS {
        let _ = write!(out, "{c:>12}");
    }
    out.push('\n');
    for (c, s) in &rows {
        let _ = write!(out, "{:<6}{:>10}{:>9}", c.name(), s.instances, s.coprime);
        for f in s.failures {
            let cell = if f == 0 { "pass".to_string() } else { format!("FAIL({f})") };
            let _ = write!(out, "{cell:>12}");
        }
        out.push('\n');
        for (k, w) in s.witnesses.iter().enumerate() {
            if let Some(w) = w {
                let _ = writeln!(out, "  {} fails at {w}", sweep::CHECKS[k]);
            }
        }
    }
    let _ = writeln!(out, "{}", if all_pass { "all checks pass" } else { "some checks FAIL" });
    Ok((out, all_pass))
}

fn emit_automaton(curve: CurveType, fmt: Format) -> String {
    let g = Automaton::of(curve).graph();
    if fmt == Format::Json {
        let body = serde_json::to_value(&g).expect("graph serializes");
        return pretty(&json::document("automaton", body));
    }
    g.adjacency_lines().iter().map(|l| l.clone() + "\n").collect()
}

fn run(cli: &Cli) -> Result<(String, u8)> {
    let fmt = cli.format;
    let text_only = |name: &str| {
        if fmt == Format::Latex {
            Err(Error::InvalidParameter(format!("{name} has no LaTeX output")))
        } else {
            Ok(())
        }
    };
    Ok(match &cli.command {
        Command::Classify { family } => {
            text_only("classify")?;
            classify(family, fmt)?
        }
        Command::Build { family, lambda, diagonal } => (build(family, lambda, *diagonal, fmt)?, 0),
        Command::Verify { family, lambda, lambda2 } => {
            text_only("verify")?;
            (verify(family, lambda, lambda2.as_deref(), fmt)?, 0)
        }
        Command::Tensor { family, lambda, mu, triple, stabilizer, prime } => {
            text_only("tensor")?;
            (tensor(family, lambda, mu, *triple, *stabilizer, *prime, fmt)?, 0)
        }
        Command::Sweep { max_rank, oracle_rank, lambdas, curves } => {
            text_only("sweep")?;
            configure_workers()?;
            let (out, pass) = run_sweep(*max_rank, *oracle_rank, lambdas, curves, fmt)?;
            (out, if pass { 0 } else { 4 })
        }
        Command::EmitAutomaton { curve } => {
            text_only("emit-automaton")?;
            (emit_automaton(*curve, fmt), 0)
        }
    })
}

/// Sizes the worker pool from `BRICKFORGE_SWEEP_JOBS` when set.
fn configure_workers() -> Result<()> {
    let Ok(v) = std::env::var("BRICKFORGE_SWEEP_JOBS") else { return Ok(()) };
    let jobs: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("BRICKFORGE_SWEEP_JOBS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| Error::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((artifact, code)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &artifact).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => {
                    print!("{artifact}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(4);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
