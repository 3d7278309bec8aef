//! Shared fixtures: corpus loading and random well-typed circuits.
#![allow(dead_code)]

use std::path::PathBuf;

use qwire::cli::corpus::builtin_corpus;
use qwire::surface::{elaborate, parse};
use qwire::{BoxedCircuit, CMatrix, Complex, Context, FlatCircuit, Gate, Pattern, UnitaryGate, VarId, WireType};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_WIRES: usize = 3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every accepted `.qw` file box, keyed `file:box`.
pub fn file_boxes() -> Vec<(String, BoxedCircuit)> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "qw"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(&p).unwrap();
        let file = p.file_name().unwrap().to_string_lossy().into_owned();
        let boxes = elaborate(&parse(&text).unwrap_or_else(|e| panic!("{file}: {e}")))
            .unwrap_or_else(|e| panic!("{file}: {e}"));
        for (name, b) in boxes {
            out.push((format!("{file}:{name}"), b));
        }
    }
    out
}

/// Built-in samples followed by the `.qw` corpus.
pub fn all_corpus_boxes() -> Vec<(String, BoxedCircuit)> {
    let mut all: Vec<_> = builtin_corpus().into_iter().map(|(n, b)| (format!("builtin:{n}"), b)).collect();
    all.extend(file_boxes());
    all
}

fn random_type(rng: &mut impl Rng, wires: usize) -> WireType {
    match wires {
        0 => WireType::Unit,
        1 => {
            if rng.random_bool(0.7) {
                WireType::Qubit
            } else {
                WireType::Bit
            }
        }
        n => {
            let left = rng.random_range(1..n);
            WireType::tensor(random_type(rng, left), random_type(rng, n - left))
        }
    }
}

/// Right-nested tuple over `leaves` with an occasional unit thrown in.
fn tuple(rng: &mut impl Rng, leaves: &[Pattern]) -> Pattern {
    match leaves {
        [] => Pattern::Unit,
        [p] => {
            if rng.random_bool(0.1) {
                Pattern::pair(p.clone(), Pattern::Unit)
            } else {
                p.clone()
            }
        }
        _ => {
            let split = rng.random_range(1..leaves.len());
            let l = tuple(rng, &leaves[..split]);
            Pattern::pair(l, tuple(rng, &leaves[split..]))
        }
    }
}

fn leaf(v: VarId, w: &WireType) -> Pattern {
    if *w == WireType::Bit {
        Pattern::Bit(v)
    } else {
        Pattern::Qubit(v)
    }
}

fn first_free(live: &[(VarId, WireType)]) -> VarId {
    let ctx = Context::from_slots({
        let n = live.iter().map(|(v, _)| v.index() + 1).max().unwrap_or(0);
        let mut slots = vec![None; n];
        for (v, w) in live {
            slots[v.index()] = Some(w.clone());
        }
        slots
    });
    ctx.first_free()
}

fn pick(rng: &mut impl Rng, live: &[(VarId, WireType)], w: &WireType, avoid: &[VarId]) -> Option<usize> {
    let idx: Vec<usize> = (0..live.len()).filter(|&i| live[i].1 == *w && !avoid.contains(&live[i].0)).collect();
    idx.choose(rng).copied()
}

fn one_wire_unitary(rng: &mut impl Rng) -> UnitaryGate {
    let base = [UnitaryGate::H, UnitaryGate::X, UnitaryGate::Y, UnitaryGate::Z][rng.random_range(0..4)].clone();
    if rng.random_bool(0.3) {
        UnitaryGate::transpose(base)
    } else {
        base
    }
}

/// Try to apply a random unitary; returns the gate and the indices into `live`.
fn random_unitary(rng: &mut impl Rng, live: &[(VarId, WireType)]) -> Option<(UnitaryGate, Vec<usize>)> {
    let target = pick(rng, live, &WireType::Qubit, &[])?;
    let inner = one_wire_unitary(rng);
    match rng.random_range(0..3) {
        0 => Some((inner, vec![target])),
        1 => {
            let c = pick(rng, live, &WireType::Qubit, &[live[target].0])?;
            Some((UnitaryGate::control(inner), vec![c, target]))
        }
        _ => {
            let c = pick(rng, live, &WireType::Bit, &[])?;
            Some((UnitaryGate::bit_control(inner), vec![c, target]))
        }
    }
}

/// A random circuit over `live` (at most [`MAX_WIRES`] wires at any point).
pub fn random_circuit(rng: &mut impl Rng, mut live: Vec<(VarId, WireType)>, fuel: usize) -> FlatCircuit {
    if fuel == 0 {
        live.shuffle(rng);
        let leaves: Vec<_> = live.iter().map(|(v, w)| leaf(*v, w)).collect();
        return FlatCircuit::Output(tuple(rng, &leaves));
    }
    for _ in 0..8 {
        match rng.random_range(0..10) {
            0..=3 => {
                if let Some((u, idx)) = random_unitary(rng, &live) {
                    let pats: Vec<_> = idx.iter().map(|&i| leaf(live[i].0, &live[i].1)).collect();
                    let p = pats.into_iter().reduce(Pattern::pair).expect("at least one wire");
                    let rest = random_circuit(rng, live, fuel - 1);
                    return FlatCircuit::gate(u, p.clone(), p, rest);
                }
            }
            4 | 5 if live.len() < MAX_WIRES => {
                let g = [Gate::Init0, Gate::Init1, Gate::New0, Gate::New1][rng.random_range(0..4)].clone();
                let w = g.output_type();
                let v = first_free(&live);
                live.push((v, w.clone()));
                let rest = random_circuit(rng, live, fuel - 1);
                return FlatCircuit::gate(g, Pattern::Unit, leaf(v, &w), rest);
            }
            6 => {
                if let Some(i) = pick(rng, &live, &WireType::Qubit, &[]) {
                    live[i].1 = WireType::Bit;
                    let v = live[i].0;
                    let rest = random_circuit(rng, live, fuel - 1);
                    return FlatCircuit::gate(Gate::Meas, Pattern::Qubit(v), Pattern::Bit(v), rest);
                }
            }
            7 => {
                if let Some(i) = pick(rng, &live, &WireType::Bit, &[]) {
                    let (v, _) = live.remove(i);
                    let rest = random_circuit(rng, live, fuel - 1);
                    return FlatCircuit::gate(Gate::Discard, Pattern::Bit(v), Pattern::Unit, rest);
                }
            }
            8 | 9 if !live.is_empty() => return random_lift(rng, live, fuel),
            _ => {}
        }
    }
    random_circuit(rng, live, 0)
}

/// Lift one or two wires. Branches share one continuation shape, each
/// preceded by its own single-qubit unitary so they differ.
fn random_lift(rng: &mut impl Rng, mut live: Vec<(VarId, WireType)>, fuel: usize) -> FlatCircuit {
    live.shuffle(rng);
    let k = if live.len() >= 2 && rng.random_bool(0.3) { 2 } else { 1 };
    let lifted: Vec<_> = live.drain(..k).collect();
    let leaves: Vec<_> = lifted.iter().map(|(v, w)| leaf(*v, w)).collect();
    let pattern = tuple(rng, &leaves);
    let seed = rng.next_u64();
    let prefix_seed = rng.next_u64();
    let mut prefix_rng = ChaCha8Rng::seed_from_u64(prefix_seed);
    FlatCircuit::lift(pattern, |_| {
        let rest = random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), live.clone(), fuel - 1);
        match pick(&mut prefix_rng, &live, &WireType::Qubit, &[]) {
            Some(i) if prefix_rng.random_bool(0.8) => {
                let p = leaf(live[i].0, &live[i].1);
                FlatCircuit::gate(one_wire_unitary(&mut prefix_rng), p.clone(), p, rest)
            }
            _ => rest,
        }
    })
}

/// A random well-typed box with input and intermediate width at most [`MAX_WIRES`].
pub fn random_box(rng: &mut impl Rng) -> BoxedCircuit {
    let n = rng.random_range(0..=MAX_WIRES);
    let w = random_type(rng, n);
    random_box_of(rng, &w)
}

/// A random well-typed box with the given input type.
pub fn random_box_of(rng: &mut impl Rng, w: &WireType) -> BoxedCircuit {
    let (input_pat, ctx) = qwire::fresh_pat(&qwire::OContext::Valid(Context::empty()), w).unwrap();
    let live: Vec<_> = ctx.vars().map(|(v, w)| (v, w.clone())).collect();
    let fuel = rng.random_range(1..=6);
    let body = random_circuit(rng, live, fuel);
    let b = BoxedCircuit::new(w.clone(), input_pat, body);
    qwire::check_box(&b).unwrap_or_else(|e| panic!("generator produced an ill-typed box: {e}\n{b:?}"));
    b
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    CMatrix::from_vec(rows, cols, data).unwrap()
}

/// `A A† / tr(A A†)` for a random square `A`: a generic full-rank density matrix.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let a = random_matrix(rng, dim, dim);
    let rho = &a * &a.adjoint();
    let tr = rho.trace();
    rho.scale(Complex::new(1.0, 0.0) / tr)
}

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Run `qwire ARGS` in-process from the repository root and render the
/// exit code and both streams. `ARGS` is split on whitespace.
pub fn transcript(args: &str) -> String {
    static CWD: std::sync::Mutex<()> = std::sync::Mutex::new(());
    let _guard = CWD.lock().unwrap_or_else(|e| e.into_inner());
    let argv: Vec<&str> = args.split_whitespace().collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let old = std::env::current_dir().unwrap();
    std::env::set_current_dir(repo_root()).unwrap();
    let status = qwire::cli::run(&argv, &mut out, &mut err);
    std::env::set_current_dir(old).unwrap();
    format!(
        "$ qwire {args}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        status.code(),
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap()
    )
}

/// `(file name, args, expected transcript)` for every `tests/golden/*.golden`.
pub fn golden_cases() -> Vec<(String, String, String)> {
    let mut paths: Vec<_> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "golden"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let expected = std::fs::read_to_string(&p).unwrap();
            let args = expected
                .lines()
                .next()
                .and_then(|l| l.strip_prefix("$ qwire "))
                .unwrap_or_else(|| panic!("{}: first line must be `$ qwire ARGS`", p.display()))
                .to_string();
            (p.file_name().unwrap().to_string_lossy().into_owned(), args, expected)
        })
        .collect()
}
