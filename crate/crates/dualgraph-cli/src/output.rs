//! Machine- and human-readable rendering of results.
//!
//! JSON objects are built with a fixed key insertion order and printed
//! compactly, so parsing an emitted record and re-serializing it is
//! byte-identical. The classify record schema is:
//!
//! ```json
//! {"shape": "...", "minimal": "...", "standard": "..." | null,
//!  "verdict": {"family": "..." | null, "params": {...}},
//!  "trace": [{"op": "...", "args": ["..."]}], "diagnostics": ["..."]}
//! ```

use serde_json::{json, Map, Value};

use dualgraph::moves::MoveTrace;
use dualgraph::normal_form::{
    circular_standard_form, linear_standard_form, BranchDecomposition, FibrationMarker,
};
use dualgraph::{Direction, DualGraph, Family, GraphShape, Move, Outcome, Verdict};

use crate::dsl::{print_graph, print_presentation};

/// Stable family tag used in machine output.
pub fn family_tag(f: &Family) -> &'static str {
    match f {
        Family::Type1Zigzag { .. } => "Type1Zigzag",
        Family::Type1CxCstar => "Type1CxCstar",
        Family::Type2a { .. } => "Type2a",
        Family::Type2b { .. } => "Type2b",
        Family::Type2c => "Type2c",
        Family::Type3 { .. } => "Type3",
        Family::Type4 => "Type4",
        Family::Type5 { .. } => "Type5",
        Family::Type6 { .. } => "Type6",
    }
}

fn family_params(f: &Family) -> Value {
    match f {
        Family::Type1Zigzag { weights } => json!({ "weights": weights }),
        Family::Type1CxCstar => json!({}),
        Family::Type2a { tail } => json!({ "tail": tail }),
        Family::Type2b { zeros, w } => json!({ "zeros": zeros, "w": w }),
        Family::Type2c => json!({}),
        Family::Type3 { w0, tail } => json!({ "w0": w0, "tail": tail }),
        Family::Type4 => json!({}),
        Family::Type5 { w0, tail, k_prime } => {
            json!({ "w0": w0, "tail": tail, "k_prime": k_prime })
        }
        Family::Type6 { k_prime } => json!({ "k_prime": k_prime }),
    }
}

/// One `{op, args}` object per move, mirroring the script syntax: the
/// rendered trace is exactly the tokenization of a replayable script.
pub fn trace_value(trace: &MoveTrace) -> Value {
    let items: Vec<Value> = trace
        .moves()
        .iter()
        .map(|m| {
            let (op, args) = match m {
                Move::BlowDown(v) => ("down", vec![v.as_str().to_string()]),
                Move::OuterBlowUp { at, .. } => ("outer", vec![at.as_str().to_string()]),
                Move::InnerBlowUp { u, w, .. } => {
                    ("inner", vec![u.as_str().to_string(), w.as_str().to_string()])
                }
                Move::Elementary {
                    zero, direction, ..
                } => {
                    let mut args = vec![zero.as_str().to_string()];
                    match direction {
                        Direction::Toward(w) => {
                            args.push("toward".into());
                            args.push(w.as_str().to_string());
                        }
                        Direction::Raise => args.push("raise".into()),
                        Direction::Lower => args.push("lower".into()),
                    }
                    ("elem", args)
                }
            };
            json!({ "op": op, "args": args })
        })
        .collect();
    Value::Array(items)
}

/// The standard form the verdict reached, when it reached one.
fn standard_presentation(v: &Verdict) -> Option<String> {
    match &v.outcome {
        Outcome::InList(_) => Some(print_presentation(&v.normalized)),
        Outcome::NotInList(_) => {
            let recognized = match v.shape {
                GraphShape::SingleVertex | GraphShape::Linear => {
                    linear_standard_form(&v.normalized).is_some()
                }
                GraphShape::Circular => circular_standard_form(&v.normalized).is_some(),
                GraphShape::Branched => false,
            };
            recognized.then(|| print_presentation(&v.normalized))
        }
    }
}

/// The full classify record.
pub fn verdict_value(v: &Verdict, with_trace: bool) -> Value {
    let mut map = Map::new();
    map.insert("shape".into(), json!(v.shape.to_string()));
    map.insert("minimal".into(), json!(print_presentation(&v.minimal)));
    map.insert(
        "standard".into(),
        match standard_presentation(v) {
            Some(s) => json!(s),
            None => Value::Null,
        },
    );
    let verdict = match &v.outcome {
        Outcome::InList(f) => {
            let mut m = Map::new();
            m.insert("family".into(), json!(family_tag(f)));
            m.insert("params".into(), family_params(f));
            Value::Object(m)
        }
        Outcome::NotInList(r) => {
            let mut m = Map::new();
            m.insert("family".into(), Value::Null);
            m.insert(
                "params".into(),
                json!({ "reason": r.code(), "detail": r.to_string() }),
            );
            Value::Object(m)
        }
    };
    map.insert("verdict".into(), verdict);
    map.insert(
        "trace".into(),
        if with_trace {
            trace_value(&v.witness)
        } else {
            Value::Array(Vec::new())
        },
    );
    map.insert(
        "diagnostics".into(),
        Value::Array(
            v.diagnostics
                .iter()
                .map(|d| json!(d.to_string()))
                .collect(),
        ),
    );
    Value::Object(map)
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

/// Undirected DOT: one node per vertex (weight in the label), one edge line
/// per unit of multiplicity.
pub fn dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for (v, w) in g.vertices() {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\n{}\"];\n",
            v.as_str(),
            v.as_str(),
            w
        ));
    }
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", u.as_str(), v.as_str()));
        }
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Matrix / negdef
// ---------------------------------------------------------------------------

pub fn matrix_value(g: &DualGraph) -> Value {
    let m = g.intersection_matrix();
    let mut map = Map::new();
    map.insert(
        "ordering".into(),
        json!(m
            .ordering()
            .iter()
            .map(|v| v.as_str().to_string())
            .collect::<Vec<_>>()),
    );
    map.insert("entries".into(), json!(m.entries()));
    map.insert("determinant".into(), json!(m.determinant().to_string()));
    map.insert(
        "negative_definite".into(),
        json!(m.is_negative_definite()),
    );
    Value::Object(map)
}

pub fn matrix_text(g: &DualGraph) -> String {
    let m = g.intersection_matrix();
    let names: Vec<&str> = m.ordering().iter().map(|v| v.as_str()).collect();
    let cells: Vec<Vec<String>> = m
        .entries()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut out = format!("ordering: {}\n", names.join(", "));
    for row in &cells {
        let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str(&format!("[ {} ]\n", padded.join("  ")));
    }
    out.push_str(&format!("determinant: {}", m.determinant()));
    out
}

// ---------------------------------------------------------------------------
// Markers
// ---------------------------------------------------------------------------

pub fn marker_value(m: &FibrationMarker) -> Value {
    match m {
        FibrationMarker::CFiber { anchor } => {
            json!({ "kind": "line-fiber", "anchor": anchor.as_str() })
        }
        FibrationMarker::UntwistedCstar { anchor } => {
            json!({ "kind": "untwisted-punctured-fiber", "anchor": anchor.as_str() })
        }
        FibrationMarker::TwistedA { anchor, neighbor } => json!({
            "kind": "twisted-double-section",
            "anchor": anchor.as_str(),
            "neighbor": neighbor.as_str(),
        }),
        FibrationMarker::TwistedB { center, leaves } => json!({
            "kind": "twisted-fork",
            "center": center.as_str(),
            "leaves": [leaves.0.as_str(), leaves.1.as_str()],
        }),
    }
}

pub fn marker_text(m: &FibrationMarker) -> String {
    match m {
        FibrationMarker::CFiber { anchor } => format!("line-fiber at {}", anchor.as_str()),
        FibrationMarker::UntwistedCstar { anchor } => {
            format!("untwisted-punctured-fiber at {}", anchor.as_str())
        }
        FibrationMarker::TwistedA { anchor, neighbor } => format!(
            "twisted-double-section at {} (double edge to {})",
            anchor.as_str(),
            neighbor.as_str()
        ),
        FibrationMarker::TwistedB { center, leaves } => format!(
            "twisted-fork at {} (leaves {}, {})",
            center.as_str(),
            leaves.0.as_str(),
            leaves.1.as_str()
        ),
    }
}

// ---------------------------------------------------------------------------
// Branch decomposition
// ---------------------------------------------------------------------------

fn id_list(set: &std::collections::BTreeSet<dualgraph::VertexId>) -> Vec<String> {
    set.iter().map(|v| v.as_str().to_string()).collect()
}

pub fn decomposition_value(minimal: &DualGraph, d: &BranchDecomposition) -> Value {
    let mut map = Map::new();
    map.insert("minimal".into(), json!(print_graph(minimal)));
    map.insert("branch_points".into(), json!(id_list(&d.br)));
    map.insert("recognized_forks".into(), json!(id_list(&d.t0)));
    map.insert("other_branch_points".into(), json!(id_list(&d.t1)));
    map.insert(
        "components".into(),
        Value::Array(
            d.components
                .iter()
                .map(|c| {
                    json!({
                        "tag": component_tag_str(c.tag),
                        "vertices": id_list(&c.vertices),
                    })
                })
                .collect(),
        ),
    );
    Value::Object(map)
}

pub fn component_tag_str(tag: dualgraph::normal_form::ComponentTag) -> &'static str {
    use dualgraph::normal_form::ComponentTag;
    match tag {
        ComponentTag::Linear => "linear",
        ComponentTag::Circular => "circular",
        ComponentTag::OneFork => "one-fork",
        ComponentTag::TwoForks => "two-forks",
        ComponentTag::Other => "other",
    }
}

pub fn decomposition_text(minimal: &DualGraph, d: &BranchDecomposition) -> String {
    fn line(label: &str, items: Vec<String>) -> String {
        if items.is_empty() {
            format!("{label}: (none)")
        } else {
            format!("{label}: {}", items.join(", "))
        }
    }
    let mut out = format!("minimal: {}\n", print_presentation(minimal));
    out.push_str(&line("branch points", id_list(&d.br)));
    out.push('\n');
    out.push_str(&line("recognized forks", id_list(&d.t0)));
    out.push('\n');
    out.push_str(&line("other branch points", id_list(&d.t1)));
    for (i, c) in d.components.iter().enumerate() {
        out.push('\n');
        out.push_str(&format!(
            "component {} [{}]: {}",
            i + 1,
            component_tag_str(c.tag),
            id_list(&c.vertices).join(", ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dualgraph::classify;

    #[test]
    fn verdict_json_round_trips_byte_identically() {
        for g in [
            DualGraph::chain(&[0, 0, -2, -3]),
            DualGraph::chain(&[-2, -2]),
            DualGraph::cycle(&[0, 0, -1, -1]),
        ] {
            let v = classify(&g).unwrap();
            let record = verdict_value(&v, true);
            let text = serde_json::to_string(&record).unwrap();
            let reparsed: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(serde_json::to_string(&reparsed).unwrap(), text);
        }
    }

    #[test]
    fn dot_has_one_node_per_vertex_and_one_edge_per_multiplicity() {
        let g = DualGraph::cycle(&[0, 0]); // double edge
        let text = dot(&g);
        assert_eq!(text.matches("[label=").count(), 2);
        assert_eq!(text.matches(" -- ").count(), 2);
    }

    #[test]
    fn matrix_text_shows_exact_integers() {
        let text = matrix_text(&DualGraph::chain(&[-2, -1, -2]));
        assert!(text.contains("determinant: "), "{text}");
        assert!(text.contains("-2"), "{text}");
    }
}
