//! Surface syntax: parsing, elaboration to checked boxes, printing, and
//! lowering to register programs.

mod ast;
mod elaborate;
mod parser;
mod print;
mod register;

pub use ast::{BoxDef, Pos, SPat, SourceProgram, Stmt};
pub use elaborate::{elaborate, elaborate_each, BoxMap, ElabError};
pub use parser::{parse, parse_wire_type, ParseError};
pub use print::{print, sanitize_name};
pub use register::{denote_register, lower, Instr, RegisterError, RegisterProgram};
