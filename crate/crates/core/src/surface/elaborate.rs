//! Elaboration of source boxes into checked [`BoxedCircuit`]s.
//!
//! Every binder gets a never-reused variable index, so a name that refers to
//! an already consumed wire shows up as an unbound variable in the checker.
//! Accepted boxes are renumbered canonically.

use std::collections::HashMap;

use indexmap::IndexMap;
use thiserror::Error;

use super::ast::{BoxDef, SPat, SourceProgram, Stmt};
use crate::check::{check_box, output_type, TypeError, TypeErrorKind};
use crate::circuit::{try_compose, unbox_in, BoxedCircuit, FlatCircuit, Pattern};
use crate::context::{Context, VarId};
use crate::error::IrError;
use crate::wire::{ClassicalValue, WireType};

/// Accepted boxes in source order.
pub type BoxMap = IndexMap<String, BoxedCircuit>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("box {box_name}: {error}")]
    Type { box_name: String, error: TypeError },
    #[error("box {box_name}: unknown box `{target}`")]
    UnknownBox { box_name: String, target: String },
}

impl ElabError {
    pub fn box_name(&self) -> &str {
        match self {
            ElabError::Type { box_name, .. } | ElabError::UnknownBox { box_name, .. } => box_name,
        }
    }
}

#[derive(Debug)]
enum Fail {
    Type(TypeError),
    UnknownBox(String),
}

impl From<TypeError> for Fail {
    fn from(e: TypeError) -> Self {
        Fail::Type(e)
    }
}

fn type_err(kind: TypeErrorKind, detail: impl Into<String>) -> Fail {
    Fail::Type(TypeError::new(kind, detail))
}

impl From<IrError> for Fail {
    fn from(e: IrError) -> Self {
        let kind = match e {
            IrError::DuplicateVar(_) => TypeErrorKind::DuplicateVar,
            _ => TypeErrorKind::TypeMismatch,
        };
        type_err(kind, e.to_string())
    }
}

type Wires = HashMap<String, Pattern>;
type Lifted = HashMap<String, ClassicalValue>;

struct Elab<'a> {
    boxes: &'a BoxMap,
    next: usize,
}

impl Elab<'_> {
    fn alloc(&mut self, w: &WireType) -> Pattern {
        match w {
            WireType::Unit => Pattern::Unit,
            WireType::Bit => {
                self.next += 1;
                Pattern::Bit(VarId(self.next - 1))
            }
            WireType::Qubit => {
                self.next += 1;
                Pattern::Qubit(VarId(self.next - 1))
            }
            WireType::Tensor(l, r) => {
                let lp = self.alloc(l);
                let rp = self.alloc(r);
                Pattern::pair(lp, rp)
            }
        }
    }

    /// Every index handed out so far.
    fn used(&self) -> Context {
        Context::from_slots(vec![Some(WireType::Qubit); self.next])
    }

    fn bump_past(&mut self, c: &FlatCircuit) {
        if let Some(m) = max_var(c) {
            self.next = self.next.max(m + 1);
        }
    }

    fn block(&mut self, stmts: &[Stmt], wires: Wires, lifted: Lifted) -> Result<FlatCircuit, Fail> {
        let Some((stmt, rest)) = stmts.split_first() else {
            return Err(type_err(TypeErrorKind::TypeMismatch, "block has no terminal statement"));
        };
        match stmt {
            Stmt::Output { pat, .. } => Ok(FlatCircuit::Output(resolve(pat, &wires)?)),
            Stmt::Gate { out, gate, arg, .. } => {
                let input = resolve(arg, &wires)?;
                let output = self.alloc(&gate.output_type());
                let mut wires = wires;
                bind(out, &output, &mut wires)?;
                let rest = self.block(rest, wires, lifted)?;
                Ok(FlatCircuit::GateApp {
                    gate: gate.clone(),
                    input,
                    output,
                    rest: Box::new(rest),
                })
            }
            Stmt::LetUnbox { out, target, arg, .. } => {
                let b = self
                    .boxes
                    .get(target)
                    .ok_or_else(|| Fail::UnknownBox(target.clone()))?;
                let input = resolve(arg, &wires)?;
                let inlined = unbox_in(b, &input, &self.used())?;
                self.bump_past(&inlined);
                try_compose(&inlined, &mut |q: &Pattern| {
                    let mut wires = wires.clone();
                    bind(out, q, &mut wires)?;
                    self.block(rest, wires, lifted.clone())
                })
            }
            Stmt::Lift { name, pat, .. } => {
                let pattern = resolve(pat, &wires)?;
                let mut branches = std::collections::BTreeMap::new();
                for v in pattern.wire_type().enumerate_values() {
                    let mut lifted = lifted.clone();
                    lifted.insert(name.clone(), v.clone());
                    branches.insert(v, self.block(rest, wires.clone(), lifted)?);
                }
                Ok(FlatCircuit::Lift { pattern, branches })
            }
            Stmt::If {
                name,
                then_branch,
                else_branch,
                ..
            } => match lifted.get(name).map(|v| (v, v.bits())) {
                Some((_, bits)) if bits == [true] => self.block(then_branch, wires, lifted),
                Some((_, bits)) if bits == [false] => self.block(else_branch, wires, lifted),
                Some((v, _)) => Err(type_err(
                    TypeErrorKind::TypeMismatch,
                    format!("`if {name}` needs a single lifted wire, `{name}` has value {v}"),
                )),
                None => Err(type_err(
                    TypeErrorKind::UnboundVar,
                    format!("`{name}` is not a lifted value"),
                )),
            },
        }
    }
}

fn resolve(p: &SPat, wires: &Wires) -> Result<Pattern, Fail> {
    match p {
        SPat::Unit => Ok(Pattern::Unit),
        SPat::Name(n) => wires
            .get(n)
            .cloned()
            .ok_or_else(|| type_err(TypeErrorKind::UnboundVar, format!("unknown wire `{n}`"))),
        SPat::Pair(l, r) => Ok(Pattern::pair(resolve(l, wires)?, resolve(r, wires)?)),
    }
}

fn bind(sp: &SPat, p: &Pattern, wires: &mut Wires) -> Result<(), Fail> {
    match (sp, p) {
        (SPat::Name(n), _) => {
            wires.insert(n.clone(), p.clone());
            Ok(())
        }
        (SPat::Unit, Pattern::Unit) => Ok(()),
        (SPat::Pair(a, b), Pattern::Pair(x, y)) => {
            bind(a, x, wires)?;
            bind(b, y, wires)
        }
        _ => Err(type_err(
            TypeErrorKind::TypeMismatch,
            format!("pattern {sp} cannot bind a value of type {}", p.wire_type()),
        )),
    }
}

fn max_var(c: &FlatCircuit) -> Option<usize> {
    let pat_max = |p: &Pattern| p.vars().into_iter().map(VarId::index).max();
    match c {
        FlatCircuit::Output(p) => pat_max(p),
        FlatCircuit::GateApp {
            input, output, rest, ..
        } => [pat_max(input), pat_max(output), max_var(rest)].into_iter().flatten().max(),
        FlatCircuit::Lift { pattern, branches } => std::iter::once(pat_max(pattern))
            .chain(branches.values().map(max_var))
            .flatten()
            .max(),
    }
}

fn elaborate_box(def: &BoxDef, boxes: &BoxMap) -> Result<BoxedCircuit, ElabError> {
    let wrap = |f: Fail| match f {
        Fail::Type(error) => ElabError::Type {
            box_name: def.name.clone(),
            error,
        },
        Fail::UnknownBox(target) => ElabError::UnknownBox {
            box_name: def.name.clone(),
            target,
        },
    };
    let mut e = Elab { boxes, next: 0 };
    let input = e.alloc(&def.input_type);
    let mut wires = Wires::new();
    bind(&def.param, &input, &mut wires).map_err(wrap)?;
    let body = e.block(&def.body, wires, Lifted::new()).map_err(wrap)?;
    let b = BoxedCircuit::new(def.input_type.clone(), input, body);
    check_box(&b).map_err(|t| wrap(Fail::Type(t)))?;
    let out = output_type(&b.body).map_err(|t| wrap(Fail::Type(t)))?;
    if out != def.output_type {
        return Err(wrap(type_err(
            TypeErrorKind::TypeMismatch,
            format!("box outputs {out} but declares {}", def.output_type),
        )));
    }
    Ok(b.renumber())
}

/// Elaborate each box in order. A box that fails is unavailable to later boxes.
pub fn elaborate_each(p: &SourceProgram) -> Vec<(String, Result<BoxedCircuit, ElabError>)> {
    let mut ok = BoxMap::new();
    let mut out = Vec::new();
    for def in &p.boxes {
        let r = elaborate_box(def, &ok);
        if let Ok(b) = &r {
            ok.insert(def.name.clone(), b.clone());
        }
        out.push((def.name.clone(), r));
    }
    out
}

/// Elaborate every box, stopping at the first error.
pub fn elaborate(p: &SourceProgram) -> Result<BoxMap, ElabError> {
    let mut ok = BoxMap::new();
    for def in &p.boxes {
        let b = elaborate_box(def, &ok)?;
        ok.insert(def.name.clone(), b);
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse;

    const COIN_FLIP: &str = "box coin_flip (() : One) -> Bit {
        gate x = init0(());
        gate y = H(x);
        gate z = meas(y);
        output z;
    }";

    fn kind(src: &str) -> TypeErrorKind {
        match elaborate(&parse(src).unwrap()).unwrap_err() {
            ElabError::Type { error, .. } => error.kind,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn coin_flip_elaborates() {
        let m = elaborate(&parse(COIN_FLIP).unwrap()).unwrap();
        let b = &m["coin_flip"];
        assert_eq!(crate::check::box_type(b).unwrap(), (WireType::Unit, WireType::Bit));
        assert_eq!(b.body.gate_count(), 3);
    }

    #[test]
    fn clone_is_rejected() {
        assert_eq!(kind("box clone (w : Qubit) -> Qubit * Qubit { output (w, w); }"), TypeErrorKind::DuplicateVar);
    }

    #[test]
    fn lift_with_if_becomes_two_branches() {
        let src = format!(
            "{COIN_FLIP}
            box flips1 (() : One) -> Bit {{
                gate q = new1(());
                lift x = q;
                if x {{ let r = unbox coin_flip(()); output r; }} else {{ gate r = new0(()); output r; }}
            }}"
        );
        let m = elaborate(&parse(&src).unwrap()).unwrap();
        let FlatCircuit::GateApp { rest, .. } = &m["flips1"].body else { panic!() };
        let FlatCircuit::Lift { branches, .. } = &**rest else { panic!() };
        assert_eq!(branches.len(), 2);
        assert_eq!(branches[&ClassicalValue::Bool(true)].gate_count(), 3);
    }

    #[test]
    fn errors() {
        assert_eq!(kind("box f (q : Qubit) -> Qubit { gate r = H(q); output q; }"), TypeErrorKind::UnboundVar);
        assert_eq!(kind("box f (q : Qubit) -> One { output (); }"), TypeErrorKind::UnusedVar);
        assert_eq!(kind("box f (q : Qubit) -> Bit { output q; }"), TypeErrorKind::TypeMismatch);
        assert_eq!(kind("box f (q : Qubit) -> Qubit { output r; }"), TypeErrorKind::UnboundVar);
        assert_eq!(kind("box f ((a, b) : Qubit) -> Qubit { output a; }"), TypeErrorKind::TypeMismatch);
        assert_eq!(kind("box f (q : Qubit) -> Qubit { gate (a, b) = H(q); output a; }"), TypeErrorKind::TypeMismatch);
        assert_eq!(kind("box f (q : Qubit) -> Bit { if x { output q; } else { output q; } }"), TypeErrorKind::UnboundVar);
        assert_eq!(
            kind("box f (p : Qubit * Qubit) -> One { lift x = p; if x { output (); } else { output (); } }"),
            TypeErrorKind::TypeMismatch
        );
        let err = elaborate(&parse("box f (q : Qubit) -> Qubit { let r = unbox g(q); output r; }").unwrap()).unwrap_err();
        assert!(matches!(err, ElabError::UnknownBox { ref target, .. } if target == "g"));
    }

    #[test]
    fn consumed_names_cannot_be_reused() {
        // `q` is consumed by the first H; using it again must fail even though
        // its variable index could otherwise be recycled.
        let src = "box f (q : Qubit) -> Qubit * Qubit { gate r = H(q); gate s = init0(()); output (q, s); }";
        assert_eq!(kind(src), TypeErrorKind::UnboundVar);
    }

    #[test]
    fn unbox_inside_a_larger_context() {
        let src = "box prep (() : One) -> Qubit { gate q = init0(()); output q; }
                   box pair (a : Qubit) -> Qubit * Qubit { let b = unbox prep(()); output (a, b); }";
        let m = elaborate(&parse(src).unwrap()).unwrap();
        check_box(&m["pair"]).unwrap();
        assert_eq!(m.get_index(1).unwrap().0, "pair");
    }

    #[test]
    fn failed_boxes_are_unavailable_downstream() {
        let src = "box bad (q : Qubit) -> One { output (); }
                   box user (q : Qubit) -> One { let u = unbox bad(q); output u; }";
        let each = elaborate_each(&parse(src).unwrap());
        assert!(each[0].1.is_err());
        assert!(matches!(each[1].1, Err(ElabError::UnknownBox { .. })));
    }
}
