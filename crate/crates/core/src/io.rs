//! File formats and exports.
//!
//! Algebra files (UTF-8 TOML): a `[quiver]` section with `vertices` and
//! `arrows`, and an optional `[relations]` section with `exprs`. Relation
//! terms are `coeff path` with integer or `p/q` coefficients and
//! `*`-composed arrow ids, `b*a` meaning "apply a first".
//!
//! Representation files: a `[module]` section with `dims` and one
//! `[matrix.<arrow-id>]` block per arrow, row-major entries as integers or
//! `"p/q"` strings (reduced mod p over a prime field).
//!
//! Reports export as schema-versioned JSON embedding the algebra hash,
//! seed and engine version; Hasse diagrams also export as DOT.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraDescription, AlgebraError, BoundAlgebra};
use crate::census::{BbtReport, CensusMode, CensusReport};
use crate::matrix::Mat;
use crate::quiver::{Quiver, QuiverError};
use crate::rep::{RepError, Representation};
use crate::scalar::{Field, RatLit, ScalarDomain};
use crate::sttilt::TorsionLatticeGraph;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum IoError {
    #[error("TOML parse error: {0}")]
    Toml(String),
    #[error("relation expression {index}, offset {offset}: {msg}")]
    BadExpr {
        index: usize,
        offset: usize,
        msg: String,
    },
    #[error("arrow entry must be [id, source, target], got {0} fields")]
    BadArrowEntry(usize),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("matrix block for arrow {arrow:?}: {msg}")]
    BadMatrix { arrow: String, msg: String },
    #[error("missing matrix block for arrow {0:?}")]
    MissingMatrix(String),
    #[error("bad entry {text:?}: expected integer or p/q")]
    BadEntry { text: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// algebra files
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct AlgFile {
    name: Option<String>,
    quiver: QuiverSection,
    relations: Option<RelationsSection>,
}

#[derive(Deserialize)]
struct QuiverSection {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RelationsSection {
    #[serde(default)]
    exprs: Vec<String>,
}

pub fn parse_algebra(text: &str, fallback_name: &str) -> Result<AlgebraDescription, IoError> {
    let file: AlgFile = toml::from_str(text).map_err(|e| IoError::Toml(e.to_string()))?;
    let mut arrows = Vec::new();
    for a in &file.quiver.arrows {
        if a.len() != 3 {
            return Err(IoError::BadArrowEntry(a.len()));
        }
        arrows.push((a[0].clone(), a[1].clone(), a[2].clone()));
    }
    let quiver = Quiver::new(file.quiver.vertices, arrows)?;
    let mut relations = Vec::new();
    if let Some(rels) = &file.relations {
        for (index, expr) in rels.exprs.iter().enumerate() {
            relations.push(parse_relation(&quiver, expr, index)?);
        }
    }
    let name = file.name.unwrap_or_else(|| fallback_name.to_string());
    Ok(AlgebraDescription::new(quiver, relations, name)?)
}

/// Parse one relation expression: `term (("+"|"-") term)*` with
/// `term := [coeff] path`, `path := id ("*" id)*` in composition order.
fn parse_relation(
    quiver: &Quiver,
    expr: &str,
    index: usize,
) -> Result<Vec<(RatLit, Vec<usize>)>, IoError> {
    let bytes: Vec<char> = expr.chars().collect();
    let mut pos = 0usize;
    let err = |offset: usize, msg: &str| IoError::BadExpr {
        index,
        offset,
        msg: msg.into(),
    };
    let mut terms: Vec<(RatLit, Vec<usize>)> = Vec::new();
    let mut sign = 1i64;
    let mut first = true;
    loop {
        while pos < bytes.len() && bytes[pos].is_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            if first {
                return Err(err(pos, "empty expression"));
            }
            break;
        }
        if !first {
            match bytes[pos] {
                '+' => sign = 1,
                '-' => sign = -1,
                _ => return Err(err(pos, "expected + or - between terms")),
            }
            pos += 1;
        } else if bytes[pos] == '-' {
            sign = -1;
            pos += 1;
        } else if bytes[pos] == '+' {
            pos += 1;
        }
        first = false;
        while pos < bytes.len() && bytes[pos].is_whitespace() {
            pos += 1;
        }
        // optional coefficient
        let mut num: i64 = 1;
        let mut den: i64 = 1;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            num = expr[start..pos]
                .parse()
                .map_err(|_| err(start, "bad integer"))?;
            if pos < bytes.len() && bytes[pos] == '/' {
                pos += 1;
                let dstart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                den = expr[dstart..pos]
                    .parse()
                    .map_err(|_| err(dstart, "bad denominator"))?;
                if den == 0 {
                    return Err(err(dstart, "zero denominator"));
                }
            }
            while pos < bytes.len() && bytes[pos].is_whitespace() {
                pos += 1;
            }
        }
        // path: ident ("*" ident)* in composition order (leftmost applied last)
        let mut ids: Vec<String> = Vec::new();
        loop {
            let start = pos;
            while pos < bytes.len()
                && (bytes[pos].is_alphanumeric() || bytes[pos] == '_' || bytes[pos] == '\'')
            {
                pos += 1;
            }
            if start == pos {
                return Err(err(start, "expected an arrow id"));
            }
            ids.push(expr[start..pos].to_string());
            while pos < bytes.len() && bytes[pos].is_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_whitespace() {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        // composition order: `b*a` lists b first but applies a first
        ids.reverse();
        let mut word = Vec::with_capacity(ids.len());
        for id in &ids {
            let ai = quiver
                .arrow_index(id)
                .ok_or_else(|| IoError::UnknownArrow(id.clone()))?;
            word.push(ai);
        }
        terms.push((RatLit { num: sign * num, den }, word));
    }
    Ok(terms)
}

// ---------------------------------------------------------------------------
// representation files
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RepFile {
    module: ModuleSection,
    #[serde(default)]
    matrix: BTreeMap<String, MatrixSection>,
}

#[derive(Deserialize)]
struct ModuleSection {
    dims: Vec<usize>,
}

#[derive(Deserialize)]
struct MatrixSection {
    entries: Vec<Vec<toml::Value>>,
}

fn parse_entry(v: &toml::Value) -> Result<RatLit, IoError> {
    match v {
        toml::Value::Integer(n) => Ok(RatLit::int(*n)),
        toml::Value::String(s) => {
            let s = s.trim();
            if let Some((n, d)) = s.split_once('/') {
                let num = n.trim().parse().map_err(|_| IoError::BadEntry {
                    text: s.to_string(),
                })?;
                let den = d.trim().parse().map_err(|_| IoError::BadEntry {
                    text: s.to_string(),
                })?;
                if den == 0 {
                    return Err(IoError::BadEntry {
                        text: s.to_string(),
                    });
                }
                Ok(RatLit { num, den })
            } else {
                let num = s.parse().map_err(|_| IoError::BadEntry {
                    text: s.to_string(),
                })?;
                Ok(RatLit::int(num))
            }
        }
        other => Err(IoError::BadEntry {
            text: other.to_string(),
        }),
    }
}

pub fn parse_representation<F: Field>(
    text: &str,
    algebra: &Arc<BoundAlgebra<F>>,
) -> Result<Representation<F>, IoError> {
    let file: RepFile = toml::from_str(text).map_err(|e| IoError::Toml(e.to_string()))?;
    let f = &algebra.field;
    let q = algebra.quiver();
    if file.module.dims.len() != q.num_vertices() {
        return Err(IoError::Toml(format!(
            "dims has {} entries, quiver has {} vertices",
            file.module.dims.len(),
            q.num_vertices()
        )));
    }
    let dims = file.module.dims.clone();
    let mut mats = Vec::new();
    for a in q.arrows() {
        let rows = dims[a.target];
        let cols = dims[a.source];
        let section = file.matrix.get(&a.name);
        let m = match section {
            None if rows * cols == 0 => Mat::zero(f, rows, cols),
            None => return Err(IoError::MissingMatrix(a.name.clone())),
            Some(sec) => {
                if sec.entries.len() != rows {
                    return Err(IoError::BadMatrix {
                        arrow: a.name.clone(),
                        msg: format!("expected {rows} rows, got {}", sec.entries.len()),
                    });
                }
                let mut data = Vec::with_capacity(rows * cols);
                for r in &sec.entries {
                    if r.len() != cols {
                        return Err(IoError::BadMatrix {
                            arrow: a.name.clone(),
                            msg: format!("expected {cols} columns, got {}", r.len()),
                        });
                    }
                    for v in r {
                        let lit = parse_entry(v)?;
                        let e = lit.to_elem(f).ok_or_else(|| IoError::BadMatrix {
                            arrow: a.name.clone(),
                            msg: "denominator vanishes in the scalar domain".into(),
                        })?;
                        data.push(e);
                    }
                }
                Mat::new(rows, cols, data)
            }
        };
        mats.push(m);
    }
    for (name, _) in &file.matrix {
        if q.arrow_index(name).is_none() {
            return Err(IoError::UnknownArrow(name.clone()));
        }
    }
    Ok(Representation::new(algebra.clone(), dims, mats)?)
}

/// Serialize a representation to the module file format.
pub fn representation_to_toml<F: Field>(rep: &Representation<F>) -> String {
    let f = rep.field();
    let q = rep.algebra().quiver();
    let mut out = String::new();
    out.push_str("[module]\n");
    out.push_str(&format!(
        "dims = [{}]\n",
        rep.dims()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for (ai, a) in q.arrows().iter().enumerate() {
        let m = rep.arrow_matrix(ai);
        if m.rows() * m.cols() == 0 {
            continue;
        }
        out.push_str(&format!("\n[matrix.{}]\n", a.name));
        out.push_str("entries = [\n");
        for r in 0..m.rows() {
            let row: Vec<String> = (0..m.cols())
                .map(|c| {
                    let s = f.fmt_elem(&m[(r, c)]);
                    if s.contains('/') {
                        format!("\"{s}\"")
                    } else {
                        s
                    }
                })
                .collect();
            out.push_str(&format!("  [{}],\n", row.join(", ")));
        }
        out.push_str("]\n");
    }
    out
}

// ---------------------------------------------------------------------------
// JSON report builders
// ---------------------------------------------------------------------------

pub fn report_header(
    desc: &AlgebraDescription,
    domain: ScalarDomain,
    seed: Option<u64>,
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "engine": "bricklab",
        "engine_version": ENGINE_VERSION,
        "algebra": desc.name.clone(),
        "algebra_hash": desc.content_hash(),
        "scalar_domain": domain.to_string(),
        "seed": seed,
    })
}

fn rep_json<F: Field>(rep: &Representation<F>) -> Value {
    let f = rep.field();
    let q = rep.algebra().quiver();
    let mats: BTreeMap<String, Vec<Vec<String>>> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let m = rep.arrow_matrix(ai);
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| f.fmt_elem(&m[(r, c)])).collect())
                .collect();
            (a.name.clone(), rows)
        })
        .collect();
    json!({ "dims": rep.dims(), "matrices": mats })
}

pub fn graph_json<F: Field>(graph: &TorsionLatticeGraph<F>, header: Value) -> Value {
    let nodes: Vec<Value> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let shifted: Vec<String> = n
                .shifted
                .iter()
                .map(|&v| n.algebra.quiver().vertex_name(v).to_string())
                .collect();
            json!({
                "id": i,
                "g_matrix": n.g_cols,
                "module_dims": n.modules.iter().map(|m| m.dims().to_vec()).collect::<Vec<_>>(),
                "shifted": shifted,
            })
        })
        .collect();
    let edges: Vec<Value> = graph
        .edges
        .iter()
        .map(|e| {
            let label = e.label.as_ref().map(|l| {
                json!({
                    "dims": l.dims(),
                    "module": rep_json(l),
                })
            });
            json!({ "from": e.from, "to": e.to, "label": label })
        })
        .collect();
    json!({
        "header": header,
        "truncated": !graph.complete,
        "nodes": nodes,
        "edges": edges,
    })
}

/// DOT rendering of the labeled Hasse diagram.
pub fn graph_dot<F: Field>(graph: &TorsionLatticeGraph<F>) -> String {
    let mut out = String::new();
    out.push_str("digraph tors {\n");
    out.push_str(&format!(
        "  graph [truncated={}];\n",
        if graph.complete { "false" } else { "true" }
    ));
    for (i, n) in graph.nodes.iter().enumerate() {
        let cols: Vec<String> = n
            .g_cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        out.push_str(&format!("  n{} [label=\"[{}]\"];\n", i, cols.join(" | ")));
    }
    for e in &graph.edges {
        let label = match &e.label {
            Some(l) => format!(
                "({})",
                l.dims()
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            None => String::new(),
        };
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            e.from, e.to, label
        ));
    }
    out.push_str("}\n");
    out
}

fn census_mode_json(mode: CensusMode) -> Value {
    match mode {
        CensusMode::Exhaustive => json!("exhaustive"),
        CensusMode::Sample(c) => json!({ "sample": c }),
    }
}

pub fn census_json<F: Field>(report: &CensusReport<F>, header: Value) -> Value {
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "dims": c.rep.dims(),
                "points": c.points,
                "pd_le_1": c.pd_le_1,
                "tau_homogeneous": c.tau_homogeneous,
                "faithful": c.faithful,
                "module": rep_json(&c.rep),
            })
        })
        .collect();
    json!({
        "header": header,
        "dims": report.dims,
        "field": report.q,
        "mode": census_mode_json(report.mode),
        "points_visited": report.points_visited,
        "relation_points": report.relation_points,
        "brick_points": report.brick_points,
        "class_count": report.class_count(),
        "classes": classes,
        "orthogonal": report.orthogonal,
    })
}

pub fn bbt_json<F: Field>(report: &BbtReport<F>, header: Value) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let per_field: Vec<Value> = e
                .per_field
                .iter()
                .map(|s| {
                    json!({
                        "q": s.q,
                        "mode": census_mode_json(s.mode),
                        "class_count": s.class_count,
                        "brick_points": s.brick_points,
                        "all_pd_le_1": s.all_pd_le_1,
                        "all_tau_homogeneous": s.all_tau_homogeneous,
                    })
                })
                .collect();
            json!({
                "dims": e.dims,
                "per_field": per_field,
                "flagged": e.flagged,
                "max_orthogonal_family": e.orthogonal_family.len(),
            })
        })
        .collect();
    json!({
        "header": header,
        "max_total_dim": report.max_total_dim,
        "fields": report.fields,
        "budget": report.budget.to_string(),
        "flagged_dims": report.flagged_dims(),
        "brick_dims_found": report.brick_dims_found,
        "entries": entries,
    })
}
