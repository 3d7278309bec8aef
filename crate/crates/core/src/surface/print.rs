//! Canonical surface text for a boxed circuit.
//!
//! Wires are named by variable index and type (`q`, `q1`, `b2`, ...). A lift
//! over two or more wires is written as nested single-wire lifts, which
//! denotes the same circuit but elaborates to nested `Lift` nodes.

use std::fmt::Write;

use crate::check::output_type;
use crate::circuit::{BoxedCircuit, FlatCircuit, Pattern};
use crate::wire::{ClassicalValue, WireType};

fn var_name(prefix: char, v: usize) -> String {
    if v == 0 {
        prefix.to_string()
    } else {
        format!("{prefix}{v}")
    }
}

fn pat(p: &Pattern) -> String {
    match p {
        Pattern::Unit => "()".into(),
        Pattern::Bit(v) => var_name('b', v.index()),
        Pattern::Qubit(v) => var_name('q', v.index()),
        Pattern::Pair(l, r) => format!("({}, {})", pat(l), pat(r)),
    }
}

/// Replace characters that cannot appear in an identifier with `_`.
pub fn sanitize_name(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '\'' { c } else { '_' })
        .collect();
    if !s.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        s.insert(0, '_');
    }
    s
}

struct Printer {
    out: String,
}

impl Printer {
    fn line(&mut self, indent: usize, text: &str) {
        for _ in 0..indent {
            self.out.push_str("  ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn circuit(&mut self, c: &FlatCircuit, indent: usize, depth: usize) {
        match c {
            FlatCircuit::Output(p) => self.line(indent, &format!("output {};", pat(p))),
            FlatCircuit::GateApp {
                gate,
                input,
                output,
                rest,
            } => {
                self.line(indent, &format!("gate {} = {gate}({});", pat(output), pat(input)));
                self.circuit(rest, indent, depth);
            }
            FlatCircuit::Lift { pattern, branches } => {
                let leaves: Vec<Pattern> = leaf_patterns(pattern);
                if leaves.len() <= 1 {
                    self.single_lift(pattern, branches, indent, depth);
                } else {
                    self.lift(pattern, &leaves, &mut Vec::new(), branches, indent, depth);
                }
            }
        }
    }

    /// A lift whose pattern has at most one wire, printed with its full pattern.
    fn single_lift(
        &mut self,
        pattern: &Pattern,
        branches: &std::collections::BTreeMap<ClassicalValue, FlatCircuit>,
        indent: usize,
        depth: usize,
    ) {
        let x = var_name('x', depth);
        self.line(indent, &format!("lift {x} = {};", pat(pattern)));
        let w = pattern.wire_type();
        if w.wire_count() == 0 {
            let only = rebuild(&w, &mut std::iter::empty());
            self.circuit(&branches[&only], indent, depth + 1);
            return;
        }
        let arm = |bit: bool| &branches[&rebuild(&w, &mut std::iter::once(bit))];
        self.line(indent, &format!("if {x} {{"));
        self.circuit(arm(true), indent + 1, depth + 1);
        self.line(indent, "} else {");
        self.circuit(arm(false), indent + 1, depth + 1);
        self.line(indent, "}");
    }

    /// Lift one leaf at a time, collecting the chosen bits in `bits`.
    fn lift(
        &mut self,
        whole: &Pattern,
        leaves: &[Pattern],
        bits: &mut Vec<bool>,
        branches: &std::collections::BTreeMap<ClassicalValue, FlatCircuit>,
        indent: usize,
        depth: usize,
    ) {
        let Some((leaf, rest)) = leaves.split_first() else {
            let value = rebuild(&whole.wire_type(), &mut bits.iter().copied());
            self.circuit(&branches[&value], indent, depth);
            return;
        };
        let x = var_name('x', depth);
        self.line(indent, &format!("lift {x} = {};", pat(leaf)));
        self.line(indent, &format!("if {x} {{"));
        bits.push(true);
        self.lift(whole, rest, bits, branches, indent + 1, depth + 1);
        bits.pop();
        self.line(indent, "} else {");
        bits.push(false);
        self.lift(whole, rest, bits, branches, indent + 1, depth + 1);
        bits.pop();
        self.line(indent, "}");
    }
}

fn leaf_patterns(p: &Pattern) -> Vec<Pattern> {
    match p {
        Pattern::Unit => vec![],
        Pattern::Bit(_) | Pattern::Qubit(_) => vec![p.clone()],
        Pattern::Pair(l, r) => {
            let mut v = leaf_patterns(l);
            v.extend(leaf_patterns(r));
            v
        }
    }
}

fn rebuild(w: &WireType, bits: &mut impl Iterator<Item = bool>) -> ClassicalValue {
    match w {
        WireType::Unit => ClassicalValue::Unit,
        WireType::Bit | WireType::Qubit => ClassicalValue::Bool(bits.next().expect("one bit per leaf")),
        WireType::Tensor(l, r) => {
            let a = rebuild(l, bits);
            ClassicalValue::pair(a, rebuild(r, bits))
        }
    }
}

/// Surface text for `b` under the given box name (sanitized to an identifier).
///
/// `b` must pass `check_box`.
pub fn print(b: &BoxedCircuit, name: &str) -> String {
    let b = b.renumber();
    let out_ty = output_type(&b.body).expect("box passes check_box");
    let mut p = Printer { out: String::new() };
    let _ = writeln!(
        p.out,
        "box {} ({} : {}) -> {} {{",
        sanitize_name(name),
        pat(&b.input_pat),
        b.input_type,
        out_ty
    );
    p.circuit(&b.body, 1, 0);
    p.out.push_str("}\n");
    p.out
}
