//! Builder API in higher-order style: binders are host closures that receive
//! the pattern of freshly allocated variables. [`box_`] flattens the result
//! to a [`FlatCircuit`] and runs the linear checker on it.
//!
//! ```
//! use qwire::hoas::{box_, gate, output};
//! use qwire::{Gate, Pattern, UnitaryGate, WireType};
//!
//! let coin_flip = box_(WireType::Unit, |unit| {
//!     gate(Gate::Init0, unit, |x| {
//!         gate(UnitaryGate::H, x, |y| gate(Gate::Meas, y, output))
//!     })
//! })
//! .unwrap();
//! assert_eq!(coin_flip.body.gate_count(), 3);
//! ```

use crate::check::{check_box, TypeError, TypeErrorKind};
use crate::circuit::{fresh_pat, try_compose, unbox_in, BoxedCircuit, FlatCircuit, Pattern};
use crate::context::{Context, OContext};
use crate::error::IrError;
use crate::gate::Gate;
use crate::wire::{ClassicalValue, WireType};

type PatK = Box<dyn Fn(Pattern) -> Circuit>;

/// A circuit whose binders are host functions.
pub enum Circuit {
    Output(Pattern),
    Gate {
        gate: Gate,
        input: Pattern,
        k: PatK,
    },
    Lift {
        pattern: Pattern,
        k: Box<dyn Fn(&ClassicalValue) -> Circuit>,
    },
    /// `let p <- unbox b input; k p`
    LetUnbox {
        boxed: BoxedCircuit,
        input: Pattern,
        k: PatK,
    },
}

pub fn output(p: Pattern) -> Circuit {
    Circuit::Output(p)
}

pub fn gate(g: impl Into<Gate>, input: Pattern, k: impl Fn(Pattern) -> Circuit + 'static) -> Circuit {
    Circuit::Gate {
        gate: g.into(),
        input,
        k: Box::new(k),
    }
}

pub fn lift(pattern: Pattern, k: impl Fn(&ClassicalValue) -> Circuit + 'static) -> Circuit {
    Circuit::Lift {
        pattern,
        k: Box::new(k),
    }
}

/// Lift a single wire and branch on the boolean outcome.
pub fn lift_bool(pattern: Pattern, k: impl Fn(bool) -> Circuit + 'static) -> Circuit {
    lift(pattern, move |v| match v {
        ClassicalValue::Bool(b) => k(*b),
        other => panic!("lift_bool on a non-boolean value {other}"),
    })
}

pub fn let_unbox(
    boxed: &BoxedCircuit,
    input: Pattern,
    k: impl Fn(Pattern) -> Circuit + 'static,
) -> Circuit {
    Circuit::LetUnbox {
        boxed: boxed.clone(),
        input,
        k: Box::new(k),
    }
}

/// Flatten `c`, whose free variables are `ctx`. Each binder receives
/// `fresh_pat` of the live context at that point.
pub fn from_hoas(c: &Circuit, ctx: &Context) -> Result<FlatCircuit, IrError> {
    match c {
        Circuit::Output(p) => Ok(FlatCircuit::Output(p.clone())),
        Circuit::Gate { gate, input, k } => {
            let mut live = without(ctx, input);
            let (out, out_ctx) = fresh_pat(&OContext::Valid(live.clone()), &gate.output_type())?;
            absorb(&mut live, &out_ctx);
            let rest = from_hoas(&k(out.clone()), &live)?;
            Ok(FlatCircuit::GateApp {
                gate: gate.clone(),
                input: input.clone(),
                output: out,
                rest: Box::new(rest),
            })
        }
        Circuit::Lift { pattern, k } => {
            let live = without(ctx, pattern);
            let branches = pattern
                .wire_type()
                .enumerate_values()
                .into_iter()
                .map(|v| {
                    let b = from_hoas(&k(&v), &live)?;
                    Ok((v, b))
                })
                .collect::<Result<_, IrError>>()?;
            Ok(FlatCircuit::Lift {
                pattern: pattern.clone(),
                branches,
            })
        }
        Circuit::LetUnbox { boxed, input, k } => {
            let rest = without(ctx, input);
            let inlined = unbox_in(boxed, input, &rest)?;
            try_compose(&inlined, &mut |q: &Pattern| {
                let mut live = rest.clone();
                for (v, w) in q.leaves() {
                    let _ = live.insert(v, w);
                }
                from_hoas(&k(q.clone()), &live)
            })
        }
    }
}

fn without(ctx: &Context, p: &Pattern) -> Context {
    let mut live = ctx.clone();
    for v in p.vars() {
        live.remove(v);
    }
    live
}

fn absorb(live: &mut Context, extra: &Context) {
    for (v, w) in extra.vars() {
        let _ = live.insert(v, w.clone());
    }
}

/// Build a box over input type `w` and run the linear checker on it.
pub fn box_(w: WireType, f: impl FnOnce(Pattern) -> Circuit) -> Result<BoxedCircuit, TypeError> {
    let (p, ctx) = fresh_pat(&OContext::Valid(Context::empty()), &w).expect("empty context is valid");
    let body = from_hoas(&f(p.clone()), &ctx).map_err(|e| TypeError::new(TypeErrorKind::TypeMismatch, e.to_string()))?;
    let b = BoxedCircuit::new(w, p, body);
    check_box(&b)?;
    Ok(b)
}
