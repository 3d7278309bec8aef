//! Wire types and the classical values that inhabit them.

use std::fmt;

/// The type carried by a bundle of wires.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WireType {
    Unit,
    Bit,
    Qubit,
    Tensor(Box<WireType>, Box<WireType>),
}

impl WireType {
    pub fn tensor(left: WireType, right: WireType) -> Self {
        WireType::Tensor(Box::new(left), Box::new(right))
    }

    /// Right-nested tensor of the given types; `Unit` when empty.
    pub fn tensor_all<I>(types: I) -> Self
    where
        I: IntoIterator<Item = WireType>,
        I::IntoIter: DoubleEndedIterator,
    {
        let mut it = types.into_iter().rev();
        match it.next() {
            None => WireType::Unit,
            Some(last) => it.fold(last, |acc, w| WireType::tensor(w, acc)),
        }
    }

    /// Number of `Bit`/`Qubit` leaves.
    pub fn wire_count(&self) -> usize {
        match self {
            WireType::Unit => 0,
            WireType::Bit | WireType::Qubit => 1,
            WireType::Tensor(l, r) => l.wire_count() + r.wire_count(),
        }
    }

    /// Matrix dimension `2^wire_count` of the state space on these wires.
    pub fn dim(&self) -> usize {
        1 << self.wire_count()
    }

    pub fn is_base(&self) -> bool {
        matches!(self, WireType::Bit | WireType::Qubit)
    }

    /// All classical values of this shape, big-endian over the leaves:
    /// the leftmost leaf varies slowest and `false` comes before `true`.
    pub fn enumerate_values(&self) -> Vec<ClassicalValue> {
        match self {
            WireType::Unit => vec![ClassicalValue::Unit],
            WireType::Bit | WireType::Qubit => {
                vec![ClassicalValue::Bool(false), ClassicalValue::Bool(true)]
            }
            WireType::Tensor(l, r) => {
                let rights = r.enumerate_values();
                l.enumerate_values()
                    .into_iter()
                    .flat_map(|lv| {
                        rights
                            .iter()
                            .map(move |rv| ClassicalValue::pair(lv.clone(), rv.clone()))
                    })
                    .collect()
            }
        }
    }
}

/// Free function form of [`WireType::wire_count`].
pub fn wire_count(w: &WireType) -> usize {
    w.wire_count()
}

/// Free function form of [`WireType::enumerate_values`].
pub fn enumerate_values(w: &WireType) -> Vec<ClassicalValue> {
    w.enumerate_values()
}

impl fmt::Display for WireType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireType::Unit => f.write_str("One"),
            WireType::Bit => f.write_str("Bit"),
            WireType::Qubit => f.write_str("Qubit"),
            WireType::Tensor(l, r) => {
                // `*` is right-associative, so only a tensor on the left needs parens.
                if matches!(**l, WireType::Tensor(..)) {
                    write!(f, "({l}) * {r}")
                } else {
                    write!(f, "{l} * {r}")
                }
            }
        }
    }
}

/// A measurement outcome shaped like a wire type.
///
/// The derived ordering coincides with [`WireType::enumerate_values`] order
/// for values of the same shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalValue {
    Unit,
    Bool(bool),
    Pair(Box<ClassicalValue>, Box<ClassicalValue>),
}

impl ClassicalValue {
    pub fn pair(l: ClassicalValue, r: ClassicalValue) -> Self {
        ClassicalValue::Pair(Box::new(l), Box::new(r))
    }

    /// Leaf booleans, left to right.
    pub fn bits(&self) -> Vec<bool> {
        let mut out = Vec::new();
        self.collect_bits(&mut out);
        out
    }

    fn collect_bits(&self, out: &mut Vec<bool>) {
        match self {
            ClassicalValue::Unit => {}
            ClassicalValue::Bool(b) => out.push(*b),
            ClassicalValue::Pair(l, r) => {
                l.collect_bits(out);
                r.collect_bits(out);
            }
        }
    }

    pub fn has_type(&self, w: &WireType) -> bool {
        match (self, w) {
            (ClassicalValue::Unit, WireType::Unit) => true,
            (ClassicalValue::Bool(_), WireType::Bit | WireType::Qubit) => true,
            (ClassicalValue::Pair(a, b), WireType::Tensor(l, r)) => a.has_type(l) && b.has_type(r),
            _ => false,
        }
    }
}

impl fmt::Display for ClassicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalValue::Unit => f.write_str("()"),
            ClassicalValue::Bool(b) => write!(f, "{}", u8::from(*b)),
            ClassicalValue::Pair(l, r) => write!(f, "({l}, {r})"),
        }
    }
}
