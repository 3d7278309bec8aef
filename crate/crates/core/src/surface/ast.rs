use std::fmt;

use crate::gate::Gate;
use crate::wire::WireType;

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Pattern over source names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SPat {
    Unit,
    Name(String),
    Pair(Box<SPat>, Box<SPat>),
}

impl fmt::Display for SPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SPat::Unit => f.write_str("()"),
            SPat::Name(n) => f.write_str(n),
            SPat::Pair(l, r) => write!(f, "({l}, {r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Gate {
        out: SPat,
        gate: Gate,
        arg: SPat,
        pos: Pos,
    },
    LetUnbox {
        out: SPat,
        target: String,
        arg: SPat,
        pos: Pos,
    },
    Lift {
        name: String,
        pat: SPat,
        pos: Pos,
    },
    If {
        name: String,
        then_branch: Vec<Stmt>,
        else_branch: Vec<Stmt>,
        pos: Pos,
    },
    Output {
        pat: SPat,
        pos: Pos,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxDef {
    pub name: String,
    pub param: SPat,
    pub input_type: WireType,
    pub output_type: WireType,
    pub body: Vec<Stmt>,
    pub pos: Pos,
}

/// Box definitions in source order; names are unique.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SourceProgram {
    pub boxes: Vec<BoxDef>,
}

impl SourceProgram {
    pub fn get(&self, name: &str) -> Option<&BoxDef> {
        self.boxes.iter().find(|b| b.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.boxes.iter().map(|b| b.name.as_str())
    }
}
