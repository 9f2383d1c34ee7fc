//! Deterministic text and LaTeX renderings of canonical matrices.

use crate::matrix::{BlockSpan, CellMask, ParamMatrix};

fn block_starts(spans: &[BlockSpan]) -> Vec<usize> {
    let mut out = Vec::with_capacity(spans.len());
    let mut acc = 0;
    for s in spans {
        out.push(acc);
        acc += s.size;
    }
    out
}

fn label_per_index(spans: &[BlockSpan]) -> Vec<String> {
    spans
        .iter()
        .flat_map(|s| (0..s.size).map(move |k| if k == 0 { s.vertex.to_string() } else { String::new() }))
        .collect()
}

fn cells(m: &ParamMatrix, sym: &str) -> Vec<Vec<String>> {
    let mask = m.printed_mask();
    m.printed()
        .iter()
        .zip(&mask)
        .map(|(row, mrow)| {
            row.iter()
                .zip(mrow)
                .map(|(e, k)| match k {
                    CellMask::Hole => String::new(),
                    CellMask::Free => e.render(sym),
                })
                .collect()
        })
        .collect()
}

/// Plain-text grid: column vertices on top, row vertices on the left,
/// blocks separated by `|` and dashed lines, holes left blank.
pub fn text_matrix(m: &ParamMatrix) -> String {
    let rows = m.row_blocks();
    let cols = m.col_blocks();
    let grid = cells(m, "λ");
    let col_labels = label_per_index(&cols);
    let row_labels = label_per_index(&rows);
    let width = grid
        .iter()
        .flatten()
        .chain(&col_labels)
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1)
        .max(1);
    let lw = row_labels.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(1);
    let col_starts = block_starts(&cols);
    let row_starts = block_starts(&rows);
    let pad = |s: &str, w: usize| format!("{}{s}", " ".repeat(w - s.chars().count()));
    let line = |labels: &[String], lead: &str| {
        let mut out = format!("{} |", pad(lead, lw));
        for (c, s) in labels.iter().enumerate() {
            if c > 0 && col_starts.contains(&c) {
                out.push_str(" |");
            }
            out.push(' ');
            out.push_str(&pad(s, width));
        }
        out.push_str(" |");
        out
    };
    let header = line(&col_labels, "");
    let rule: String = header.chars().map(|ch| if ch == '|' { '+' } else { '-' }).collect();
    let mut out = vec![header, rule.clone()];
    for (r, row) in grid.iter().enumerate() {
        if r > 0 && row_starts.contains(&r) {
            out.push(rule.clone());
        }
        out.push(line(row, &row_labels[r]));
    }
    out.push(rule);
    out.iter().map(|l| l.trim_end().to_string() + "\n").collect()
}

/// LaTeX `array` with a vertex label row on top and row labels on the
/// right; holes are empty cells.
pub fn latex_matrix(m: &ParamMatrix) -> String {
    let rows = m.row_blocks();
    let cols = m.col_blocks();
    let grid = cells(m, "\\lambda");
    let row_starts = block_starts(&rows);
    let row_labels = label_per_index(&rows);
    let col_labels = label_per_index(&cols);
    let mut spec = String::from("|");
    for s in &cols {
        spec.push_str(&"c".repeat(s.size));
        spec.push('|');
    }
    spec.push('l');
    let tex_cell = |s: &str| {
        if let Some(rest) = s.strip_prefix("\\lambda/") {
            format!("\\frac{{\\lambda}}{{{rest}}}")
        } else {
            s.to_string()
        }
    };
    let mut out = String::new();
    out.push_str(&format!("\\begin{{array}}{{{spec}}}\n"));
    let labels: Vec<String> = col_labels
        .iter()
        .map(|l| if l.is_empty() { String::new() } else { format!("\\scriptstyle{{{l}}}") })
        .collect();
    out.push_str(&labels.join(" & "));
    out.push_str(" & \\\\\n\\hline\n");
    for (r, row) in grid.iter().enumerate() {
        if r > 0 && row_starts.contains(&r) {
            out.push_str("\\hline\n");
        }
        let mut parts: Vec<String> = row.iter().map(|s| tex_cell(s)).collect();
        let label = &row_labels[r];
        parts.push(if label.is_empty() { String::new() } else { format!("\\scriptstyle{{{label}}}") });
        out.push_str(&parts.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\hline\n\\end{array}\n");
    out
}
