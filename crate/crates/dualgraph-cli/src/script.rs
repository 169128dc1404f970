//! Move scripts: one move per line.
//!
//! ```text
//! down V            # blow down the (-1)-vertex V
//! outer V           # outer blow-up at V
//! inner U W         # inner blow-up on one copy of the edge U--W
//! elem Z toward W   # elementary move at the 0-vertex Z, digging W
//! elem Z raise      # elementary move at a valency-1 zero, raising its neighbor
//! elem Z lower      # ... lowering its neighbor
//! ```
//!
//! Fresh vertices created by blow-ups are named by the engine (`E0`, `E1`,
//! …) deterministically, so a printed trace is itself a valid script that
//! replays to the same graph.

use std::fmt;

use dualgraph::moves::MoveTrace;
use dualgraph::{Direction, DualGraph, Move, VertexId};

/// One parsed script line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptMove {
    Down(VertexId),
    Outer(VertexId),
    Inner(VertexId, VertexId),
    Elem(VertexId, ElemDir),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemDir {
    Toward(VertexId),
    Raise,
    Lower,
}

/// A script failure, tagged with its 1-based source line.
#[derive(Debug)]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ScriptError {}

fn err(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError {
        line,
        message: message.into(),
    }
}

/// Parse a script; returns each move with its source line.
pub fn parse_script(text: &str) -> Result<Vec<(usize, ScriptMove)>, ScriptError> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line_no = li + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let mv = match words.as_slice() {
            ["down", v] => ScriptMove::Down(VertexId::new(*v)),
            ["outer", v] => ScriptMove::Outer(VertexId::new(*v)),
            ["inner", u, w] => ScriptMove::Inner(VertexId::new(*u), VertexId::new(*w)),
            ["elem", z, "toward", w] => {
                ScriptMove::Elem(VertexId::new(*z), ElemDir::Toward(VertexId::new(*w)))
            }
            ["elem", z, "raise"] => ScriptMove::Elem(VertexId::new(*z), ElemDir::Raise),
            ["elem", z, "lower"] => ScriptMove::Elem(VertexId::new(*z), ElemDir::Lower),
            ["down", ..] => return Err(err(line_no, "usage: down V")),
            ["outer", ..] => return Err(err(line_no, "usage: outer V")),
            ["inner", ..] => return Err(err(line_no, "usage: inner U W")),
            ["elem", ..] => {
                return Err(err(
                    line_no,
                    "usage: elem Z toward W | elem Z raise | elem Z lower",
                ))
            }
            [other, ..] => {
                return Err(err(
                    line_no,
                    format!("unknown move `{other}` (expected down/outer/inner/elem)"),
                ))
            }
            [] => unreachable!(),
        };
        out.push((line_no, mv));
    }
    Ok(out)
}

/// Run a parsed script against a graph, recording a replayable trace.
pub fn run_script(
    g: &DualGraph,
    moves: &[(usize, ScriptMove)],
) -> Result<(DualGraph, MoveTrace), ScriptError> {
    let mut cur = g.clone();
    let mut trace = MoveTrace::new(g);
    for (line, mv) in moves {
        let result = match mv {
            ScriptMove::Down(v) => trace.blow_down(&mut cur, v),
            ScriptMove::Outer(v) => trace.blow_up_outer(&mut cur, v).map(|_| ()),
            ScriptMove::Inner(u, w) => trace.blow_up_inner(&mut cur, u, w).map(|_| ()),
            ScriptMove::Elem(z, dir) => {
                let direction = match dir {
                    ElemDir::Toward(w) => Direction::Toward(w.clone()),
                    ElemDir::Raise => Direction::Raise,
                    ElemDir::Lower => Direction::Lower,
                };
                trace.elementary(&mut cur, z, direction).map(|_| ())
            }
        };
        result.map_err(|e| err(*line, e.to_string()))?;
    }
    Ok((cur, trace))
}

/// Render a recorded trace as script text (one move per line).
pub fn trace_to_script(trace: &MoveTrace) -> String {
    trace
        .moves()
        .iter()
        .map(|m| match m {
            Move::BlowDown(v) => format!("down {}", v.as_str()),
            Move::OuterBlowUp { at, .. } => format!("outer {}", at.as_str()),
            Move::InnerBlowUp { u, w, .. } => {
                format!("inner {} {}", u.as_str(), w.as_str())
            }
            Move::Elementary {
                zero, direction, ..
            } => match direction {
                Direction::Toward(w) => {
                    format!("elem {} toward {}", zero.as_str(), w.as_str())
                }
                Direction::Raise => format!("elem {} raise", zero.as_str()),
                Direction::Lower => format!("elem {} lower", zero.as_str()),
            },
        })
        .collect::<Vec<_>>()
        .join("\n")
}
