//! Density-matrix semantics of gates, patterns, circuits and boxes.
//!
//! Wire convention: the wires of a context are its present variables in
//! ascending order, and wire 0 is the leftmost (most significant) Kronecker
//! factor. A pattern denotes the permutation taking context-ordered wires to
//! pattern order.

mod superop;

use std::f64::consts::FRAC_1_SQRT_2;

use thiserror::Error;

pub use superop::{
    choi, kraus, max_deviation, super_op, super_plus, super_zero, superop_eq, ChoiMatrix,
    Superoperator,
};

use crate::check::{check_box, check_circuit, context_of_pattern, output_type, TypeError};
use crate::circuit::{BoxedCircuit, FlatCircuit, Pattern};
use crate::context::{merge_ctx, Context, VarId};
use crate::gate::{Gate, UnitaryGate};
use crate::matrix::{ket, CMatrix, Complex, MatrixError, ONE, ZERO};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DenoteError {
    #[error("expected a {expected}x{expected} input, got {}x{}", .found.0, .found.1)]
    DimensionMismatch { expected: usize, found: (usize, usize) },
    #[error("superoperator dimensions differ: {}->{} vs {}->{}", .left.0, .left.1, .right.0, .right.1)]
    SuperDimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("wire index out of range: ({i}, {j}) in a {n}-wire system")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("variable {0} is not in the context")]
    UnboundVar(VarId),
    #[error("contexts overlap")]
    InvalidMerge,
    #[error("pattern does not cover its context exactly")]
    NotAPermutation,
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn projector(bit: bool) -> CMatrix {
    let k = CMatrix::basis_ket(bit);
    &k * &k.adjoint()
}

pub fn denote_unitary(u: &UnitaryGate) -> CMatrix {
    match u {
        UnitaryGate::H => CMatrix::from_real_rows(&[[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]]),
        UnitaryGate::X => CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]),
        UnitaryGate::Y => CMatrix::from_rows(&[[ZERO, Complex::new(0.0, -1.0)], [Complex::new(0.0, 1.0), ZERO]]),
        UnitaryGate::Z => CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]),
        UnitaryGate::Control(inner) | UnitaryGate::BitControl(inner) => {
            let m = denote_unitary(inner);
            let id = CMatrix::identity(m.rows());
            &projector(false).kron(&id) + &projector(true).kron(&m)
        }
        UnitaryGate::Transpose(inner) => denote_unitary(inner).adjoint(),
    }
}

/// Operators `K_i` with `〚g〛(ρ) = Σ K_i ρ K_i†`.
pub fn gate_kraus(g: &Gate) -> Vec<CMatrix> {
    match g {
        Gate::Apply(u) => vec![denote_unitary(u)],
        Gate::Init0 | Gate::New0 => vec![CMatrix::basis_ket(false)],
        Gate::Init1 | Gate::New1 => vec![CMatrix::basis_ket(true)],
        Gate::Meas => vec![projector(false), projector(true)],
        Gate::Discard => vec![CMatrix::basis_ket(false).adjoint(), CMatrix::basis_ket(true).adjoint()],
    }
}

pub fn denote_gate(g: &Gate) -> Superoperator {
    denote_gate_pad(0, g)
}

/// `g` on the leading wires, identity on `n` trailing wires.
pub fn denote_gate_pad(n: usize, g: &Gate) -> Superoperator {
    let id = CMatrix::identity(1 << n);
    kraus(gate_kraus(g).iter().map(|k| k.kron(&id)).collect())
}

/// Swap of two adjacent wires: the 4×4 exchange of `|01⟩` and `|10⟩`.
pub fn swap() -> CMatrix {
    CMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

fn adjacent_swap(k: usize, n: usize) -> CMatrix {
    CMatrix::identity(1 << k)
        .kron(&swap())
        .kron(&CMatrix::identity(1 << (n - k - 2)))
}

/// Exchange wires `i` and `j` of an `n`-wire system, as a product of
/// adjacent swaps: `swap2(i, j) = S_{j-1} · swap2(i, j-1) · S_{j-1}`.
pub fn swap2(i: usize, j: usize, n: usize) -> Result<CMatrix, DenoteError> {
    if i >= n || j >= n {
        return Err(DenoteError::IndexOutOfRange { i, j, n });
    }
    let (lo, hi) = (i.min(j), i.max(j));
    if lo == hi {
        return Ok(CMatrix::identity(1 << n));
    }
    let mut m = adjacent_swap(lo, n);
    for k in lo + 1..hi {
        let s = adjacent_swap(k, n);
        m = &(&s * &m) * &s;
    }
    Ok(m)
}

/// Wire number in `g` of each leaf of `p`, left to right.
pub fn pattern_indices(p: &Pattern, g: &Context) -> Result<Vec<usize>, DenoteError> {
    p.vars()
        .into_iter()
        .map(|v| g.wire_index(v).ok_or(DenoteError::UnboundVar(v)))
        .collect()
}

/// The permutation sending basis state `|b_0 … b_{n-1}⟩` to
/// `|b_{order[0]} … b_{order[n-1]}⟩`. `order` must be a permutation of `0..n`.
pub fn permutation_matrix(order: &[usize]) -> CMatrix {
    let n = order.len();
    let dim = 1usize << n;
    let mut m = CMatrix::zero(dim, dim);
    for old in 0..dim {
        let mut new = 0;
        for &src in order {
            new = (new << 1) | ((old >> (n - 1 - src)) & 1);
        }
        m[(new, old)] = ONE;
    }
    m
}

/// Wire order of `g ⋓ gext` that puts `p`'s wires first, then `gext`'s.
fn pattern_order(gext: &Context, p: &Pattern, g: &Context) -> Result<Vec<usize>, DenoteError> {
    let full = merge_ctx(g, gext).ok_or(DenoteError::InvalidMerge)?;
    let mut order = pattern_indices(p, &full)?;
    order.extend(gext.vars().map(|(v, _)| full.wire_index(v).expect("gext is part of full")));
    let n = full.wire_count();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(DenoteError::NotAPermutation);
    }
    for &o in &order {
        if std::mem::replace(&mut seen[o], true) {
            return Err(DenoteError::NotAPermutation);
        }
    }
    Ok(order)
}

/// Permutation from the wires of `g ⋓ gext` to `p`'s wires followed by `gext`'s.
pub fn denote_pat_in(gext: &Context, p: &Pattern, g: &Context) -> Result<CMatrix, DenoteError> {
    Ok(permutation_matrix(&pattern_order(gext, p, g)?))
}

/// [`denote_pat_in`] assembled from `swap2` factors by selection sort.
pub fn denote_pat_in_swaps(gext: &Context, p: &Pattern, g: &Context) -> Result<CMatrix, DenoteError> {
    let order = pattern_order(gext, p, g)?;
    let n = order.len();
    let mut current: Vec<usize> = (0..n).collect();
    let mut m = CMatrix::identity(1 << n);
    for k in 0..n {
        let pos = current.iter().position(|&w| w == order[k]).expect("permutation");
        if pos != k {
            m = &swap2(k, pos, n)? * &m;
            current.swap(k, pos);
        }
    }
    Ok(m)
}

/// The plain pattern denotation `〚p〛`, relative to the pattern's own context.
pub fn denote_pat(p: &Pattern) -> Result<CMatrix, DenoteError> {
    let g = context_of_pattern(p)?;
    denote_pat_in(&Context::empty(), p, &g)
}

fn remove_pattern(g: &Context, p: &Pattern) -> Context {
    let mut rest = g.clone();
    for v in p.vars() {
        rest.remove(v);
    }
    rest
}

/// Semantics of `c` with free context `g`, after checking it.
pub fn denote_circuit(c: &FlatCircuit, g: &Context) -> Result<Superoperator, DenoteError> {
    check_circuit(c, g)?;
    build(c, g)
}

fn build(c: &FlatCircuit, g: &Context) -> Result<Superoperator, DenoteError> {
    match c {
        FlatCircuit::Output(p) => Ok(super_op(&denote_pat_in(&Context::empty(), p, g)?)),
        FlatCircuit::GateApp {
            gate,
            input,
            output,
            rest,
        } => {
            let remainder = remove_pattern(g, input);
            let in_ctx = context_of_pattern(input)?;
            let out_ctx = context_of_pattern(output)?;
            let gather = super_op(&denote_pat_in(&remainder, input, &in_ctx)?);
            let apply = denote_gate_pad(remainder.wire_count(), gate);
            let scatter = super_op(&denote_pat_in(&remainder, output, &out_ctx)?.adjoint());
            let next = merge_ctx(&out_ctx, &remainder).ok_or(DenoteError::InvalidMerge)?;
            gather
                .then(&apply)?
                .then(&scatter)?
                .then(&build(rest, &next)?)
        }
        FlatCircuit::Lift { pattern, branches } => {
            let remainder = remove_pattern(g, pattern);
            let pat_ctx = context_of_pattern(pattern)?;
            let gather = super_op(&denote_pat_in(&remainder, pattern, &pat_ctx)?);
            let id = CMatrix::identity(1 << remainder.wire_count());
            let in_dim = 1 << g.wire_count();
            let out_dim = output_type(c)?.dim();
            let mut acc = super_zero(in_dim, out_dim);
            for (v, branch) in branches {
                let select = super_op(&ket(v).adjoint().kron(&id));
                let arm = gather.then(&select)?.then(&build(branch, &remainder)?)?;
                acc = super_plus(&acc, &arm)?;
            }
            Ok(acc)
        }
    }
}

/// `〚body〛 ∘ super 〚input_pat〛†`.
pub fn denote_box(b: &BoxedCircuit) -> Result<Superoperator, DenoteError> {
    check_box(b)?;
    let ctx = context_of_pattern(&b.input_pat)?;
    let unpack = super_op(&denote_pat(&b.input_pat)?.adjoint());
    unpack.then(&build(&b.body, &ctx)?)
}
