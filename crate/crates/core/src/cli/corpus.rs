//! Built-in example boxes, addressed as `name` or `name@param`.

use thiserror::Error;

use crate::circuit::{BoxedCircuit, Pattern};
use crate::gate::{Gate, UnitaryGate};
use crate::hoas::{box_, gate, let_unbox, lift_bool, output, Circuit};
use crate::surface::parse_wire_type;
use crate::wire::WireType;

/// Largest accepted `n` for the coin-flip families.
pub const MAX_FLIPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown built-in `{0}`")]
    UnknownName(String),
    #[error("built-in `{name}` needs a parameter: {name}@{hint}")]
    MissingParam { name: String, hint: &'static str },
    #[error("built-in `{0}` takes no parameter")]
    UnexpectedParam(String),
    #[error("bad parameter `{param}` for `{name}`: {reason}")]
    BadParam { name: String, param: String, reason: String },
}

/// Name, parameter hint and one-line description of every entry.
pub const ENTRIES: &[(&str, &str, &str)] = &[
    ("coin_flip", "", "fair coin: init0, H, meas"),
    ("coin_flips", "n", "recursive coin flips, outputs 1 with probability 2^-n"),
    ("coin_flips'", "n", "coin flips with a lifted bit choosing the recursion"),
    ("unitary_trans", "U", "U followed by its transpose"),
    ("lift_meas", "", "lift a qubit and rebuild the bit"),
    ("meas", "", "the measurement gate as a box"),
    ("id", "W", "identity on wire type W (default Qubit)"),
    ("bell", "", "Bell pair preparation"),
];

fn built(r: Result<BoxedCircuit, crate::check::TypeError>) -> BoxedCircuit {
    r.expect("built-in boxes are well typed")
}

pub fn coin_flip() -> BoxedCircuit {
    built(box_(WireType::Unit, |u| {
        gate(Gate::Init0, u, |x| gate(UnitaryGate::H, x, |y| gate(Gate::Meas, y, output)))
    }))
}

fn new1(u: Pattern) -> Circuit {
    gate(Gate::New1, u, output)
}

pub fn coin_flips(n: usize) -> BoxedCircuit {
    let mut b = built(box_(WireType::Unit, new1));
    for _ in 0..n {
        let prev = b;
        b = built(box_(WireType::Unit, move |u| {
            let_unbox(&prev, u, |c| {
                gate(Gate::Init0, Pattern::Unit, move |q| {
                    gate(UnitaryGate::bit_control(UnitaryGate::H), Pattern::pair(c.clone(), q), |cq| {
                        let Pattern::Pair(c, q) = cq else { unreachable!() };
                        gate(Gate::Discard, *c, move |_| gate(Gate::Meas, (*q).clone(), output))
                    })
                })
            })
        }));
    }
    b
}

pub fn coin_flips_lift(n: usize) -> BoxedCircuit {
    let mut b = built(box_(WireType::Unit, new1));
    for _ in 0..n {
        let prev = b;
        b = built(box_(WireType::Unit, move |u| {
            gate(Gate::Init0, u, move |q| {
                let prev = prev.clone();
                gate(UnitaryGate::H, q, move |q| {
                    let prev = prev.clone();
                    gate(Gate::Meas, q, move |x| {
                        let prev = prev.clone();
                        lift_bool(x, move |bit| {
                            if bit {
                                let_unbox(&prev, Pattern::Unit, output)
                            } else {
                                gate(Gate::New0, Pattern::Unit, output)
                            }
                        })
                    })
                })
            })
        }));
    }
    b
}

pub fn unitary_trans(u: &UnitaryGate) -> BoxedCircuit {
    let u = u.clone();
    built(box_(u.input_type(), move |p| {
        let t = UnitaryGate::transpose(u.clone());
        gate(u.clone(), p, move |p| gate(t.clone(), p, output))
    }))
}

pub fn lift_meas() -> BoxedCircuit {
    built(box_(WireType::Qubit, |q| {
        lift_bool(q, |bit| gate(if bit { Gate::New1 } else { Gate::New0 }, Pattern::Unit, output))
    }))
}

pub fn boxed_gate(g: &Gate) -> BoxedCircuit {
    let g = g.clone();
    built(box_(g.input_type(), move |p| gate(g.clone(), p, output)))
}

pub fn identity(w: &WireType) -> BoxedCircuit {
    built(box_(w.clone(), output))
}

pub fn bell() -> BoxedCircuit {
    built(box_(WireType::Unit, |u| {
        gate(Gate::Init0, u, |a| {
            gate(Gate::Init0, Pattern::Unit, move |b| {
                gate(UnitaryGate::H, a.clone(), move |a| {
                    gate(UnitaryGate::control(UnitaryGate::X), Pattern::pair(a, b.clone()), output)
                })
            })
        })
    }))
}

fn flips_param(name: &str, param: &str) -> Result<usize, CorpusError> {
    let bad = |reason: String| CorpusError::BadParam {
        name: name.into(),
        param: param.into(),
        reason,
    };
    let n: i64 = param.parse().map_err(|_| bad("expected a natural number".into()))?;
    if n < 0 {
        return Err(bad("must not be negative".into()));
    }
    if n as u64 > MAX_FLIPS as u64 {
        return Err(bad(format!("at most {MAX_FLIPS}")));
    }
    Ok(n as usize)
}

/// Look up a built-in by its full spelling, e.g. `coin_flips@3` or
/// `unitary_trans@ctrl.X`.
pub fn builtin(entry: &str) -> Result<BoxedCircuit, CorpusError> {
    let (name, param) = match entry.split_once('@') {
        Some((n, p)) => (n, Some(p)),
        None => (entry, None),
    };
    let no_param = |b: BoxedCircuit| match param {
        None => Ok(b),
        Some(_) => Err(CorpusError::UnexpectedParam(name.into())),
    };
    let need = |hint| {
        param.ok_or(CorpusError::MissingParam {
            name: name.into(),
            hint,
        })
    };
    match name {
        "coin_flip" => no_param(coin_flip()),
        "coin_flips" => Ok(coin_flips(flips_param(name, need("n")?)?)),
        "coin_flips'" => Ok(coin_flips_lift(flips_param(name, need("n")?)?)),
        "unitary_trans" => {
            let p = need("U")?;
            let u = UnitaryGate::from_name(p).ok_or_else(|| CorpusError::BadParam {
                name: name.into(),
                param: p.into(),
                reason: "not a unitary gate name".into(),
            })?;
            Ok(unitary_trans(&u))
        }
        "lift_meas" => no_param(lift_meas()),
        "meas" => no_param(boxed_gate(&Gate::Meas)),
        "bell" => no_param(bell()),
        "id" => {
            let w = match param {
                None => WireType::Qubit,
                Some(p) => parse_wire_type(p).map_err(|e| CorpusError::BadParam {
                    name: name.into(),
                    param: p.into(),
                    reason: e.message,
                })?,
            };
            Ok(identity(&w))
        }
        _ => Err(CorpusError::UnknownName(name.into())),
    }
}

/// A fixed sample of every entry, keyed by full spelling.
pub fn builtin_corpus() -> Vec<(String, BoxedCircuit)> {
    let mut out = vec![("coin_flip".to_string(), coin_flip())];
    for n in 0..=6 {
        out.push((format!("coin_flips@{n}"), coin_flips(n)));
    }
    for n in 0..=6 {
        out.push((format!("coin_flips'@{n}"), coin_flips_lift(n)));
    }
    for u in UnitaryGate::generate(1) {
        if u.input_type().wire_count() <= 2 {
            out.push((format!("unitary_trans@{}", u.dotted_name()), unitary_trans(&u)));
        }
    }
    out.push(("lift_meas".into(), lift_meas()));
    out.push(("meas".into(), boxed_gate(&Gate::Meas)));
    for w in ["One", "Bit", "Qubit", "Qubit*Bit"] {
        out.push((format!("id@{w}"), builtin(&format!("id@{w}")).expect("valid type")));
    }
    out.push(("bell".into(), bell()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{box_type, check_box};
    use crate::circuit::FlatCircuit;

    #[test]
    fn every_sample_checks() {
        for (name, b) in builtin_corpus() {
            check_box(&b).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn coin_flips_zero_is_new1() {
        let b = builtin("coin_flips@0").unwrap();
        assert_eq!(b.body.gate_count(), 1);
        assert!(matches!(&b.body, FlatCircuit::GateApp { gate: Gate::New1, .. }));
    }

    #[test]
    fn coin_flips_lift_has_two_branches() {
        let b = builtin("coin_flips'@1").unwrap();
        assert_eq!(b.body.lift_count(), 1);
        let FlatCircuit::GateApp { rest, .. } = &b.body else { panic!() };
        let FlatCircuit::GateApp { rest, .. } = &**rest else { panic!() };
        let FlatCircuit::GateApp { rest, .. } = &**rest else { panic!() };
        let FlatCircuit::Lift { branches, .. } = &**rest else { panic!() };
        assert_eq!(branches.len(), 2);
    }

    #[test]
    fn parameters() {
        assert!(matches!(builtin("coin_flips@-1"), Err(CorpusError::BadParam { .. })));
        assert!(matches!(builtin("coin_flips@x"), Err(CorpusError::BadParam { .. })));
        assert!(matches!(builtin("coin_flips@65"), Err(CorpusError::BadParam { .. })));
        assert!(matches!(builtin("coin_flips"), Err(CorpusError::MissingParam { .. })));
        assert!(matches!(builtin("coin_flip@2"), Err(CorpusError::UnexpectedParam(_))));
        assert!(matches!(builtin("nope"), Err(CorpusError::UnknownName(_))));
        assert!(matches!(builtin("unitary_trans@W"), Err(CorpusError::BadParam { .. })));
        assert!(matches!(builtin("id@Qubit*"), Err(CorpusError::BadParam { .. })));
        let u = builtin("unitary_trans@ctrl.X").unwrap();
        let two = WireType::tensor(WireType::Qubit, WireType::Qubit);
        assert_eq!(box_type(&u).unwrap(), (two.clone(), two));
        assert_eq!(builtin("id").unwrap(), identity(&WireType::Qubit));
        assert_eq!(box_type(&builtin("bell").unwrap()).unwrap().1, WireType::tensor(WireType::Qubit, WireType::Qubit));
    }
}
