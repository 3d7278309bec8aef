//! Linear type checking of flat circuits.
//!
//! Checking is syntax directed: every constructor splits its context
//! deterministically, so the first failed judgment is reported together with
//! the path from the root of the circuit to the offending node.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::circuit::{BoxedCircuit, FlatCircuit, Pattern};
use crate::context::{merge_ctx, Context};
use crate::wire::WireType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeErrorKind {
    DuplicateVar,
    UnusedVar,
    UnboundVar,
    TypeMismatch,
    InvalidMerge,
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub detail: String,
    /// Steps from the root to the failing node, e.g. `["gate 1 (H)", "lift 1"]`.
    pub path: Vec<String>,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind, detail: impl Into<String>) -> Self {
        TypeError {
            kind,
            detail: detail.into(),
            path: Vec::new(),
        }
    }

    fn at(mut self, path: &[String]) -> Self {
        self.path = path.to_vec();
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)?;
        if !self.path.is_empty() {
            write!(f, " (at {})", self.path.join(" / "))?;
        }
        Ok(())
    }
}

/// The minimal context typing `p`.
pub fn context_of_pattern(p: &Pattern) -> Result<Context, TypeError> {
    let mut ctx = Context::empty();
    for (v, w) in p.leaves() {
        if ctx.insert(v, w).is_err() {
            return Err(TypeError::new(
                TypeErrorKind::DuplicateVar,
                format!("variable {v} occurs more than once in pattern {p}"),
            ));
        }
    }
    Ok(ctx)
}

/// Remove the variables of `p` from `g`, checking each is present at its type.
fn consume(g: &Context, p: &Pattern) -> Result<Context, TypeError> {
    context_of_pattern(p)?;
    let mut rest = g.clone();
    for (v, w) in p.leaves() {
        match rest.remove(v) {
            None => {
                return Err(TypeError::new(
                    TypeErrorKind::UnboundVar,
                    format!("variable {v} is not in scope"),
                ))
            }
            Some(t) if t != w => {
                return Err(TypeError::new(
                    TypeErrorKind::TypeMismatch,
                    format!("variable {v} has type {t} but is used at type {w}"),
                ))
            }
            Some(_) => {}
        }
    }
    Ok(rest)
}

fn list_vars(g: &Context) -> String {
    g.vars()
        .map(|(v, w)| format!("{v}:{w}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `Ok` iff `c` is well typed with free context exactly `g`.
pub fn check_circuit(c: &FlatCircuit, g: &Context) -> Result<(), TypeError> {
    let mut path = Vec::new();
    check_at(c, g, &mut path)
}

fn check_at(c: &FlatCircuit, g: &Context, path: &mut Vec<String>) -> Result<(), TypeError> {
    match c {
        FlatCircuit::Output(p) => {
            path.push("output".into());
            let rest = consume(g, p).map_err(|e| e.at(path))?;
            if !rest.is_empty() {
                return Err(TypeError::new(
                    TypeErrorKind::UnusedVar,
                    format!("wires never consumed: {}", list_vars(&rest)),
                )
                .at(path));
            }
            path.pop();
            Ok(())
        }
        FlatCircuit::GateApp {
            gate,
            input,
            output,
            rest,
        } => {
            path.push(format!("gate {}", gate));
            let (win, wout) = (gate.input_type(), gate.output_type());
            if input.wire_type() != win {
                return Err(TypeError::new(
                    TypeErrorKind::TypeMismatch,
                    format!("gate {gate} expects {win} but input pattern {input} has type {}", input.wire_type()),
                )
                .at(path));
            }
            if output.wire_type() != wout {
                return Err(TypeError::new(
                    TypeErrorKind::TypeMismatch,
                    format!("gate {gate} produces {wout} but output pattern {output} has type {}", output.wire_type()),
                )
                .at(path));
            }
            let remainder = consume(g, input).map_err(|e| e.at(path))?;
            let out_ctx = context_of_pattern(output).map_err(|e| e.at(path))?;
            let Some(next) = merge_ctx(&remainder, &out_ctx) else {
                return Err(TypeError::new(
                    TypeErrorKind::InvalidMerge,
                    format!("output pattern {output} rebinds a live variable"),
                )
                .at(path));
            };
            check_at(rest, &next, path)?;
            path.pop();
            Ok(())
        }
        FlatCircuit::Lift { pattern, branches } => {
            path.push(format!("lift {pattern}"));
            let remainder = consume(g, pattern).map_err(|e| e.at(path))?;
            let expected: BTreeSet<_> = pattern.wire_type().enumerate_values().into_iter().collect();
            let found: BTreeSet<_> = branches.keys().cloned().collect();
            if expected != found {
                return Err(TypeError::new(
                    TypeErrorKind::TypeMismatch,
                    format!(
                        "lift branches do not cover the values of {} exactly",
                        pattern.wire_type()
                    ),
                )
                .at(path));
            }
            for (v, b) in branches {
                path.push(format!("branch {v}"));
                check_at(b, &remainder, path)?;
                path.pop();
            }
            path.pop();
            Ok(())
        }
    }
}

/// `Ok` iff the input pattern has the box's input type and the body checks under it.
pub fn check_box(b: &BoxedCircuit) -> Result<(), TypeError> {
    let found = b.input_pat.wire_type();
    if found != b.input_type {
        return Err(TypeError::new(
            TypeErrorKind::TypeMismatch,
            format!("input pattern {} has type {found}, box declares {}", b.input_pat, b.input_type),
        ));
    }
    let ctx = context_of_pattern(&b.input_pat)?;
    check_circuit(&b.body, &ctx)
}

/// The type of every `Output` leaf of `c`.
pub fn output_type(c: &FlatCircuit) -> Result<WireType, TypeError> {
    match c {
        FlatCircuit::Output(p) => Ok(p.wire_type()),
        FlatCircuit::GateApp { rest, .. } => output_type(rest),
        FlatCircuit::Lift { branches, .. } => {
            let mut types = branches.values().map(output_type);
            let first = types.next().ok_or_else(|| {
                TypeError::new(TypeErrorKind::TypeMismatch, "lift without branches")
            })??;
            for t in types {
                let t = t?;
                if t != first {
                    return Err(TypeError::new(
                        TypeErrorKind::TypeMismatch,
                        format!("lift branches output {first} and {t}"),
                    ));
                }
            }
            Ok(first)
        }
    }
}

/// Input and output types of a checked box.
pub fn box_type(b: &BoxedCircuit) -> Result<(WireType, WireType), TypeError> {
    check_box(b)?;
    Ok((b.input_type.clone(), output_type(&b.body)?))
}
