//! Register-level programs: circuits over numbered registers.
//!
//! Input wires occupy registers `0..num_wires_in`; every `init` takes the next
//! unused number, so a register number is never rebound. `branch r` consumes
//! register `r`, which should hold a measured bit.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::circuit::{BoxedCircuit, FlatCircuit, Pattern};
use crate::context::VarId;
use crate::denote::{denote_gate_pad, permutation_matrix, super_op, super_plus, Superoperator};
use crate::gate::{Gate, UnitaryGate};
use crate::matrix::CMatrix;
use crate::wire::WireType;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Init(usize, bool),
    Unitary(UnitaryGate, Vec<usize>),
    Meas(usize),
    Discard(usize),
    Branch {
        reg: usize,
        then_branch: Vec<Instr>,
        else_branch: Vec<Instr>,
    },
    Halt(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterProgram {
    pub num_wires_in: usize,
    pub instrs: Vec<Instr>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegisterError {
    #[error("register {0} is not live")]
    NotLive(usize),
    #[error("register {0} was already used")]
    Reused(usize),
    #[error("register {0} appears twice in one instruction")]
    Repeated(usize),
    #[error("gate {gate} acts on {expected} registers, got {found}")]
    Arity { gate: String, expected: usize, found: usize },
    #[error("halt must list every live register exactly once")]
    BadHalt,
    #[error("block does not end in halt")]
    MissingHalt,
    #[error("instructions after halt")]
    TrailingInstr,
    #[error("branch arms produce {0} and {1} output registers")]
    ArmMismatch(usize, usize),
}

struct Lowerer {
    regs: HashMap<VarId, usize>,
    next: usize,
}

impl Lowerer {
    fn take(&mut self, p: &Pattern) -> Vec<usize> {
        p.vars().into_iter().map(|v| self.regs.remove(&v).expect("checked circuit")).collect()
    }

    fn bind(&mut self, p: &Pattern, regs: &[usize]) {
        for (v, r) in p.vars().into_iter().zip(regs) {
            self.regs.insert(v, *r);
        }
    }

    fn fork(&self) -> Lowerer {
        Lowerer {
            regs: self.regs.clone(),
            next: self.next,
        }
    }

    fn circuit(&mut self, c: &FlatCircuit, out: &mut Vec<Instr>) {
        match c {
            FlatCircuit::Output(p) => out.push(Instr::Halt(self.take(p))),
            FlatCircuit::GateApp {
                gate,
                input,
                output,
                rest,
            } => {
                let ins = self.take(input);
                match gate {
                    Gate::Init0 | Gate::Init1 | Gate::New0 | Gate::New1 => {
                        let r = self.next;
                        self.next += 1;
                        out.push(Instr::Init(r, matches!(gate, Gate::Init1 | Gate::New1)));
                        self.bind(output, &[r]);
                    }
                    Gate::Meas => {
                        out.push(Instr::Meas(ins[0]));
                        self.bind(output, &ins);
                    }
                    Gate::Discard => out.push(Instr::Discard(ins[0])),
                    Gate::Apply(u) => {
                        out.push(Instr::Unitary(u.clone(), ins.clone()));
                        self.bind(output, &ins);
                    }
                }
                self.circuit(rest, out);
            }
            FlatCircuit::Lift { pattern, branches } => {
                let leaves = pattern.leaves();
                let regs = self.take(pattern);
                for ((_, w), r) in leaves.iter().zip(&regs) {
                    if *w == WireType::Qubit {
                        out.push(Instr::Meas(*r));
                    }
                }
                let arms: Vec<_> = branches.values().collect();
                self.branch(&regs, &arms, out);
            }
        }
    }

    /// `arms` holds the branches for every assignment of `regs`, in
    /// enumeration order (false before true, leftmost register most significant).
    fn branch(&mut self, regs: &[usize], arms: &[&FlatCircuit], out: &mut Vec<Instr>) {
        let Some((&r, rest)) = regs.split_first() else {
            self.circuit(arms[0], out);
            return;
        };
        let half = arms.len() / 2;
        let mut then_branch = Vec::new();
        self.fork().branch(rest, &arms[half..], &mut then_branch);
        let mut else_branch = Vec::new();
        self.fork().branch(rest, &arms[..half], &mut else_branch);
        out.push(Instr::Branch {
            reg: r,
            then_branch,
            else_branch,
        });
    }
}

/// Lower a checked box. Input registers follow the canonical input pattern.
pub fn lower(b: &BoxedCircuit) -> RegisterProgram {
    let b = b.renumber();
    let vars = b.input_pat.vars();
    let mut l = Lowerer {
        regs: vars.iter().enumerate().map(|(i, v)| (*v, i)).collect(),
        next: vars.len(),
    };
    let mut instrs = Vec::new();
    l.circuit(&b.body, &mut instrs);
    RegisterProgram {
        num_wires_in: vars.len(),
        instrs,
    }
}

#[derive(Clone)]
struct State {
    live: Vec<usize>,
    used: HashSet<usize>,
}

impl State {
    fn position(&self, r: usize) -> Result<usize, RegisterError> {
        self.live.iter().position(|&x| x == r).ok_or(RegisterError::NotLive(r))
    }

    /// Move `regs` to the front, in order.
    fn gather(&mut self, regs: &[usize]) -> Result<Superoperator, RegisterError> {
        let mut order = Vec::with_capacity(self.live.len());
        for &r in regs {
            let p = self.position(r)?;
            if order.contains(&p) {
                return Err(RegisterError::Repeated(r));
            }
            order.push(p);
        }
        for p in 0..self.live.len() {
            if !order.contains(&p) {
                order.push(p);
            }
        }
        self.live = order.iter().map(|&p| self.live[p]).collect();
        Ok(super_op(&permutation_matrix(&order)))
    }
}

fn run(instrs: &[Instr], mut st: State) -> Result<Superoperator, RegisterError> {
    let mut acc = Superoperator::identity(1 << st.live.len());
    let chain = |acc: &Superoperator, s: &Superoperator| acc.then(s).expect("dimensions follow live registers");
    for (i, ins) in instrs.iter().enumerate() {
        let terminal = matches!(ins, Instr::Halt(_) | Instr::Branch { .. });
        if terminal && i + 1 != instrs.len() {
            return Err(RegisterError::TrailingInstr);
        }
        match ins {
            Instr::Init(r, b) => {
                if !st.used.insert(*r) {
                    return Err(RegisterError::Reused(*r));
                }
                let g = if *b { Gate::Init1 } else { Gate::Init0 };
                acc = chain(&acc, &denote_gate_pad(st.live.len(), &g));
                st.live.insert(0, *r);
            }
            Instr::Unitary(u, regs) => {
                let expected = u.input_type().wire_count();
                if regs.len() != expected {
                    return Err(RegisterError::Arity {
                        gate: u.dotted_name(),
                        expected,
                        found: regs.len(),
                    });
                }
                acc = chain(&acc, &st.gather(regs)?);
                acc = chain(&acc, &denote_gate_pad(st.live.len() - expected, &Gate::Apply(u.clone())));
            }
            Instr::Meas(r) => {
                acc = chain(&acc, &st.gather(&[*r])?);
                acc = chain(&acc, &denote_gate_pad(st.live.len() - 1, &Gate::Meas));
            }
            Instr::Discard(r) => {
                acc = chain(&acc, &st.gather(&[*r])?);
                acc = chain(&acc, &denote_gate_pad(st.live.len() - 1, &Gate::Discard));
                st.live.remove(0);
            }
            Instr::Branch {
                reg,
                then_branch,
                else_branch,
            } => {
                acc = chain(&acc, &st.gather(&[*reg])?);
                st.live.remove(0);
                let id = CMatrix::identity(1 << st.live.len());
                let mut arms = Vec::new();
                for (bit, body) in [(true, then_branch), (false, else_branch)] {
                    let select = super_op(&CMatrix::basis_ket(bit).adjoint().kron(&id));
                    arms.push(chain(&select, &run(body, st.clone())?));
                }
                let (t, e) = (&arms[0], &arms[1]);
                if t.out_dim() != e.out_dim() {
                    return Err(RegisterError::ArmMismatch(t.out_dim(), e.out_dim()));
                }
                let sum = super_plus(t, e).expect("same dims");
                return Ok(chain(&acc, &sum));
            }
            Instr::Halt(regs) => {
                if regs.len() != st.live.len() {
                    return Err(RegisterError::BadHalt);
                }
                return Ok(chain(&acc, &st.gather(regs).map_err(|_| RegisterError::BadHalt)?));
            }
        }
    }
    Err(RegisterError::MissingHalt)
}

/// Density-matrix semantics of a register program. Output wires are the
/// halted registers in the order listed.
pub fn denote_register(rp: &RegisterProgram) -> Result<Superoperator, RegisterError> {
    let st = State {
        live: (0..rp.num_wires_in).collect(),
        used: (0..rp.num_wires_in).collect(),
    };
    run(&rp.instrs, st)
}

fn regs_text(regs: &[usize]) -> String {
    regs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn write_block(f: &mut fmt::Formatter<'_>, instrs: &[Instr], indent: usize) -> fmt::Result {
    let pad = "  ".repeat(indent);
    for ins in instrs {
        match ins {
            Instr::Init(r, b) => writeln!(f, "{pad}init {r} {}", u8::from(*b))?,
            Instr::Unitary(u, regs) => writeln!(f, "{pad}u {} {}", u.dotted_name(), regs_text(regs))?,
            Instr::Meas(r) => writeln!(f, "{pad}meas {r}")?,
            Instr::Discard(r) => writeln!(f, "{pad}discard {r}")?,
            Instr::Branch {
                reg,
                then_branch,
                else_branch,
            } => {
                writeln!(f, "{pad}branch {reg} {{")?;
                write_block(f, then_branch, indent + 1)?;
                writeln!(f, "{pad}}} else {{")?;
                write_block(f, else_branch, indent + 1)?;
                writeln!(f, "{pad}}}")?;
            }
            Instr::Halt(regs) if regs.is_empty() => writeln!(f, "{pad}halt")?,
            Instr::Halt(regs) => writeln!(f, "{pad}halt {}", regs_text(regs))?,
        }
    }
    Ok(())
}

/// One instruction per line, two-space indentation inside branches.
impl fmt::Display for RegisterProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_block(f, &self.instrs, 0)
    }
}
