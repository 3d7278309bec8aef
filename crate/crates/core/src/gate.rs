//! The gate set.

use std::fmt;

use crate::wire::WireType;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UnitaryGate {
    H,
    X,
    Y,
    Z,
    /// Quantum control on a leading qubit.
    Control(Box<UnitaryGate>),
    /// Classical control on a leading bit.
    BitControl(Box<UnitaryGate>),
    /// Adjoint of the inner gate.
    Transpose(Box<UnitaryGate>),
}

impl UnitaryGate {
    pub fn control(u: UnitaryGate) -> Self {
        UnitaryGate::Control(Box::new(u))
    }

    pub fn bit_control(u: UnitaryGate) -> Self {
        UnitaryGate::BitControl(Box::new(u))
    }

    pub fn transpose(u: UnitaryGate) -> Self {
        UnitaryGate::Transpose(Box::new(u))
    }

    pub fn input_type(&self) -> WireType {
        match self {
            UnitaryGate::H | UnitaryGate::X | UnitaryGate::Y | UnitaryGate::Z => WireType::Qubit,
            UnitaryGate::Control(u) => WireType::tensor(WireType::Qubit, u.input_type()),
            UnitaryGate::BitControl(u) => WireType::tensor(WireType::Bit, u.input_type()),
            UnitaryGate::Transpose(u) => u.input_type(),
        }
    }

    /// Every gate over the base set {H, X, Y, Z} with at most `depth`
    /// nested `Control`/`BitControl`/`Transpose` wrappers.
    pub fn generate(depth: usize) -> Vec<UnitaryGate> {
        let mut all = vec![UnitaryGate::H, UnitaryGate::X, UnitaryGate::Y, UnitaryGate::Z];
        let mut frontier = all.clone();
        for _ in 0..depth {
            let next: Vec<_> = frontier
                .iter()
                .flat_map(|u| {
                    [
                        UnitaryGate::control(u.clone()),
                        UnitaryGate::bit_control(u.clone()),
                        UnitaryGate::transpose(u.clone()),
                    ]
                })
                .collect();
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Single-token spelling, e.g. `ctrl.X` or `transpose.bit_ctrl.H`.
    pub fn dotted_name(&self) -> String {
        self.to_string().replace(' ', ".")
    }

    /// Inverse of [`UnitaryGate::dotted_name`]; also accepts spaces as separators.
    pub fn from_name(name: &str) -> Option<UnitaryGate> {
        let parts: Vec<&str> = name
            .split(|c: char| c == '.' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let (base, wrappers) = parts.split_last()?;
        let mut u = match *base {
            "H" => UnitaryGate::H,
            "X" => UnitaryGate::X,
            "Y" => UnitaryGate::Y,
            "Z" => UnitaryGate::Z,
            _ => return None,
        };
        for w in wrappers.iter().rev() {
            u = match *w {
                "ctrl" => UnitaryGate::control(u),
                "bit_ctrl" => UnitaryGate::bit_control(u),
                "transpose" => UnitaryGate::transpose(u),
                _ => return None,
            };
        }
        Some(u)
    }
}

impl fmt::Display for UnitaryGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitaryGate::H => f.write_str("H"),
            UnitaryGate::X => f.write_str("X"),
            UnitaryGate::Y => f.write_str("Y"),
            UnitaryGate::Z => f.write_str("Z"),
            UnitaryGate::Control(u) => write!(f, "ctrl {u}"),
            UnitaryGate::BitControl(u) => write!(f, "bit_ctrl {u}"),
            UnitaryGate::Transpose(u) => write!(f, "transpose {u}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Apply(UnitaryGate),
    Init0,
    Init1,
    New0,
    New1,
    Meas,
    Discard,
}

impl Gate {
    pub fn input_type(&self) -> WireType {
        match self {
            Gate::Apply(u) => u.input_type(),
            Gate::Init0 | Gate::Init1 | Gate::New0 | Gate::New1 => WireType::Unit,
            Gate::Meas => WireType::Qubit,
            Gate::Discard => WireType::Bit,
        }
    }

    pub fn output_type(&self) -> WireType {
        match self {
            Gate::Apply(u) => u.input_type(),
            Gate::Init0 | Gate::Init1 => WireType::Qubit,
            Gate::New0 | Gate::New1 => WireType::Bit,
            Gate::Meas => WireType::Bit,
            Gate::Discard => WireType::Unit,
        }
    }
}

impl From<UnitaryGate> for Gate {
    fn from(u: UnitaryGate) -> Self {
        Gate::Apply(u)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Apply(u) => write!(f, "{u}"),
            Gate::Init0 => f.write_str("init0"),
            Gate::Init1 => f.write_str("init1"),
            Gate::New0 => f.write_str("new0"),
            Gate::New1 => f.write_str("new1"),
            Gate::Meas => f.write_str("meas"),
            Gate::Discard => f.write_str("discard"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_input_types() {
        let cbh = UnitaryGate::control(UnitaryGate::bit_control(UnitaryGate::H));
        assert_eq!(
            cbh.input_type(),
            WireType::tensor(WireType::Qubit, WireType::tensor(WireType::Bit, WireType::Qubit))
        );
        assert_eq!(UnitaryGate::transpose(UnitaryGate::Y).input_type(), WireType::Qubit);
    }

    #[test]
    fn gate_signatures() {
        assert_eq!((Gate::Init0.input_type(), Gate::Init0.output_type()), (WireType::Unit, WireType::Qubit));
        assert_eq!((Gate::New1.input_type(), Gate::New1.output_type()), (WireType::Unit, WireType::Bit));
        assert_eq!((Gate::Meas.input_type(), Gate::Meas.output_type()), (WireType::Qubit, WireType::Bit));
        assert_eq!((Gate::Discard.input_type(), Gate::Discard.output_type()), (WireType::Bit, WireType::Unit));
    }

    #[test]
    fn names_round_trip() {
        for u in UnitaryGate::generate(2) {
            assert_eq!(UnitaryGate::from_name(&u.dotted_name()), Some(u.clone()));
            assert_eq!(UnitaryGate::from_name(&u.to_string()), Some(u));
        }
        assert_eq!(UnitaryGate::from_name("ctrl"), None);
        assert_eq!(UnitaryGate::from_name("ctrl.Q"), None);
    }

    #[test]
    fn generate_counts() {
        // 4 bases, each level triples the frontier.
        assert_eq!(UnitaryGate::generate(0).len(), 4);
        assert_eq!(UnitaryGate::generate(1).len(), 4 + 12);
        assert_eq!(UnitaryGate::generate(3).len(), 4 + 12 + 36 + 108);
    }
}
