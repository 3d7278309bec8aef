//! Patterns, flat circuits and boxes, with the meta-operations on them.

use std::collections::{BTreeMap, HashMap};
use std::convert::Infallible;
use std::fmt;

use crate::context::{merge, Context, OContext, VarId};
use crate::error::IrError;
use crate::gate::Gate;
use crate::wire::{ClassicalValue, WireType};

/// A tuple of wire variables. Its shape determines its type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Unit,
    Bit(VarId),
    Qubit(VarId),
    Pair(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    pub fn pair(l: Pattern, r: Pattern) -> Self {
        Pattern::Pair(Box::new(l), Box::new(r))
    }

    pub fn bit(v: usize) -> Self {
        Pattern::Bit(VarId(v))
    }

    pub fn qubit(v: usize) -> Self {
        Pattern::Qubit(VarId(v))
    }

    pub fn wire_type(&self) -> WireType {
        match self {
            Pattern::Unit => WireType::Unit,
            Pattern::Bit(_) => WireType::Bit,
            Pattern::Qubit(_) => WireType::Qubit,
            Pattern::Pair(l, r) => WireType::tensor(l.wire_type(), r.wire_type()),
        }
    }

    /// Leaf variables with their types, left to right.
    pub fn leaves(&self) -> Vec<(VarId, WireType)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<(VarId, WireType)>) {
        match self {
            Pattern::Unit => {}
            Pattern::Bit(v) => out.push((*v, WireType::Bit)),
            Pattern::Qubit(v) => out.push((*v, WireType::Qubit)),
            Pattern::Pair(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn vars(&self) -> Vec<VarId> {
        self.leaves().into_iter().map(|(v, _)| v).collect()
    }

    /// Replace each leaf variable through `f`, keeping the shape.
    pub fn map_vars(&self, f: &mut impl FnMut(VarId) -> VarId) -> Pattern {
        match self {
            Pattern::Unit => Pattern::Unit,
            Pattern::Bit(v) => Pattern::Bit(f(*v)),
            Pattern::Qubit(v) => Pattern::Qubit(f(*v)),
            Pattern::Pair(l, r) => Pattern::pair(l.map_vars(f), r.map_vars(f)),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Unit => f.write_str("()"),
            Pattern::Bit(v) => write!(f, "b{v}"),
            Pattern::Qubit(v) => write!(f, "q{v}"),
            Pattern::Pair(l, r) => write!(f, "({l}, {r})"),
        }
    }
}

/// Circuits with explicit variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatCircuit {
    Output(Pattern),
    GateApp {
        gate: Gate,
        input: Pattern,
        output: Pattern,
        rest: Box<FlatCircuit>,
    },
    /// Measure `pattern` and continue with the branch for the observed value.
    /// The branch map is keyed by every value of the pattern's type.
    Lift {
        pattern: Pattern,
        branches: BTreeMap<ClassicalValue, FlatCircuit>,
    },
}

impl FlatCircuit {
    pub fn output(p: Pattern) -> Self {
        FlatCircuit::Output(p)
    }

    pub fn gate(gate: impl Into<Gate>, input: Pattern, output: Pattern, rest: FlatCircuit) -> Self {
        FlatCircuit::GateApp {
            gate: gate.into(),
            input,
            output,
            rest: Box::new(rest),
        }
    }

    /// Lift over `pattern`, tabulating `f` on every value of its type.
    pub fn lift(pattern: Pattern, mut f: impl FnMut(&ClassicalValue) -> FlatCircuit) -> Self {
        let branches = pattern
            .wire_type()
            .enumerate_values()
            .into_iter()
            .map(|v| {
                let c = f(&v);
                (v, c)
            })
            .collect();
        FlatCircuit::Lift { pattern, branches }
    }

    /// Number of gate applications along all paths.
    pub fn gate_count(&self) -> usize {
        match self {
            FlatCircuit::Output(_) => 0,
            FlatCircuit::GateApp { rest, .. } => 1 + rest.gate_count(),
            FlatCircuit::Lift { branches, .. } => branches.values().map(Self::gate_count).sum(),
        }
    }

    pub fn lift_count(&self) -> usize {
        match self {
            FlatCircuit::Output(_) => 0,
            FlatCircuit::GateApp { rest, .. } => rest.lift_count(),
            FlatCircuit::Lift { branches, .. } => {
                1 + branches.values().map(Self::lift_count).sum::<usize>()
            }
        }
    }
}

/// A closed circuit abstracted over its input pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxedCircuit {
    pub input_type: WireType,
    pub input_pat: Pattern,
    pub body: FlatCircuit,
}

impl BoxedCircuit {
    pub fn new(input_type: WireType, input_pat: Pattern, body: FlatCircuit) -> Self {
        BoxedCircuit {
            input_type,
            input_pat,
            body,
        }
    }

    /// Canonical variable numbering: the input pattern is allocated from 0
    /// and every binder takes the first free indices in its live context.
    pub fn renumber(&self) -> BoxedCircuit {
        let (pat, _) = fresh_pat(&OContext::Valid(Context::empty()), &self.input_type)
            .expect("the empty context is valid");
        let body = unbox(self, &pat).expect("input pattern has the box input type");
        BoxedCircuit::new(self.input_type.clone(), pat, body)
    }

    /// Equality up to renaming of variables.
    pub fn alpha_eq(&self, other: &BoxedCircuit) -> bool {
        self.input_type == other.input_type && self.renumber() == other.renumber()
    }
}

/// A pattern of type `w` over fresh variables, each taking the first index free
/// in `g` (and in the variables already allocated). Returns the pattern's context.
pub fn fresh_pat(g: &OContext, w: &WireType) -> Result<(Pattern, Context), IrError> {
    let OContext::Valid(g) = g else {
        return Err(IrError::InvalidContext);
    };
    let mut taken = g.clone();
    let mut own = Context::empty();
    let pat = alloc(w, &mut taken, &mut own);
    Ok((pat, own))
}

fn alloc(w: &WireType, taken: &mut Context, own: &mut Context) -> Pattern {
    match w {
        WireType::Unit => Pattern::Unit,
        WireType::Bit | WireType::Qubit => {
            let v = taken.first_free();
            taken.insert(v, w.clone()).expect("first free slot is empty");
            own.insert(v, w.clone()).expect("fresh variable");
            if *w == WireType::Bit {
                Pattern::Bit(v)
            } else {
                Pattern::Qubit(v)
            }
        }
        WireType::Tensor(l, r) => {
            let lp = alloc(l, taken, own);
            let rp = alloc(r, taken, own);
            Pattern::pair(lp, rp)
        }
    }
}

/// Substitute the continuation `k` for every `Output` leaf of `c`.
pub fn compose(c: &FlatCircuit, mut k: impl FnMut(&Pattern) -> FlatCircuit) -> FlatCircuit {
    let r: Result<_, Infallible> = try_compose(c, &mut |p| Ok(k(p)));
    match r {
        Ok(c) => c,
        Err(never) => match never {},
    }
}

/// Fallible [`compose`]; stops at the first error returned by `k`.
pub fn try_compose<E>(
    c: &FlatCircuit,
    k: &mut impl FnMut(&Pattern) -> Result<FlatCircuit, E>,
) -> Result<FlatCircuit, E> {
    Ok(match c {
        FlatCircuit::Output(p) => k(p)?,
        FlatCircuit::GateApp {
            gate,
            input,
            output,
            rest,
        } => FlatCircuit::GateApp {
            gate: gate.clone(),
            input: input.clone(),
            output: output.clone(),
            rest: Box::new(try_compose(rest, k)?),
        },
        FlatCircuit::Lift { pattern, branches } => FlatCircuit::Lift {
            pattern: pattern.clone(),
            branches: branches
                .iter()
                .map(|(v, b)| Ok((v.clone(), try_compose(b, k)?)))
                .collect::<Result<_, E>>()?,
        },
    })
}

/// Instantiate a box at pattern `p`.
pub fn unbox(b: &BoxedCircuit, p: &Pattern) -> Result<FlatCircuit, IrError> {
    unbox_in(b, p, &Context::empty())
}

/// Instantiate a box at pattern `p` inside a circuit whose other live
/// variables are `outer`. Variables bound inside the box body are renamed to
/// indices free in both `p` and `outer`.
pub fn unbox_in(b: &BoxedCircuit, p: &Pattern, outer: &Context) -> Result<FlatCircuit, IrError> {
    let found = p.wire_type();
    if found != b.input_type {
        return Err(IrError::PatternTypeMismatch {
            expected: b.input_type.clone(),
            found,
        });
    }
    let mut live = Context::empty();
    for (v, w) in p.leaves() {
        live.insert(v, w).map_err(|_| IrError::DuplicateVar(v))?;
    }
    let env: HashMap<VarId, VarId> = b
        .input_pat
        .vars()
        .into_iter()
        .zip(p.vars())
        .collect();
    let mut r = Renamer { outer };
    Ok(r.rename(&b.body, env, live))
}

struct Renamer<'a> {
    outer: &'a Context,
}

impl Renamer<'_> {
    fn occupied(&self, live: &Context) -> OContext {
        match merge(&live.clone().into(), &self.outer.clone().into()) {
            OContext::Valid(c) => c.into(),
            // Overlap means the caller's context is inconsistent; still avoid both.
            OContext::Invalid => {
                let mut c = live.clone();
                for (v, w) in self.outer.vars() {
                    let _ = c.insert(v, w.clone());
                }
                c.into()
            }
        }
    }

    fn rename(
        &mut self,
        c: &FlatCircuit,
        mut env: HashMap<VarId, VarId>,
        mut live: Context,
    ) -> FlatCircuit {
        let subst = |p: &Pattern, env: &HashMap<VarId, VarId>| {
            p.map_vars(&mut |v| env.get(&v).copied().unwrap_or(v))
        };
        match c {
            FlatCircuit::Output(p) => FlatCircuit::Output(subst(p, &env)),
            FlatCircuit::GateApp {
                gate,
                input,
                output,
                rest,
            } => {
                let input = subst(input, &env);
                for v in input.vars() {
                    live.remove(v);
                }
                let (fresh, fresh_ctx) = fresh_pat(&self.occupied(&live), &output.wire_type())
                    .expect("occupied context is valid");
                for (old, new) in output.vars().into_iter().zip(fresh.vars()) {
                    env.insert(old, new);
                }
                for (v, w) in fresh_ctx.vars() {
                    let _ = live.insert(v, w.clone());
                }
                FlatCircuit::GateApp {
                    gate: gate.clone(),
                    input,
                    output: fresh,
                    rest: Box::new(self.rename(rest, env, live)),
                }
            }
            FlatCircuit::Lift { pattern, branches } => {
                let pattern = subst(pattern, &env);
                for v in pattern.vars() {
                    live.remove(v);
                }
                let branches = branches
                    .iter()
                    .map(|(v, b)| (v.clone(), self.rename(b, env.clone(), live.clone())))
                    .collect();
                FlatCircuit::Lift { pattern, branches }
            }
        }
    }
}
