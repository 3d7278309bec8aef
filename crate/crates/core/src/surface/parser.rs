//! Lexer and recursive-descent parser for the surface syntax.

use std::fmt;

use thiserror::Error;

use super::ast::{BoxDef, Pos, SPat, SourceProgram, Stmt};
use crate::gate::{Gate, UnitaryGate};
use crate::wire::WireType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semi,
    Eq,
    Star,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: &[&str] = &["box", "gate", "let", "unbox", "lift", "if", "else", "output"];

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&ch) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if ch == '/' {
            bump(&mut chars);
            if chars.peek() == Some(&'/') {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                continue;
            }
            return Err(ParseError::at(pos, "unexpected character `/`"));
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        bump(&mut chars);
        let tok = match ch {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            '*' => Tok::Star,
            '-' if chars.peek() == Some(&'>') => {
                bump(&mut chars);
                Tok::Arrow
            }
            other => return Err(ParseError::at(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn advance(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::at(self.pos(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, t: Tok) -> Result<Pos, ParseError> {
        if *self.peek() == t {
            Ok(self.advance().1)
        } else {
            Err(self.error(&t.to_string()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, ParseError> {
        if self.is_keyword(kw) {
            Ok(self.advance().1)
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let pos = self.advance().1;
                Ok((s, pos))
            }
            _ => Err(self.error("an identifier")),
        }
    }

    fn program(&mut self) -> Result<SourceProgram, ParseError> {
        let mut prog = SourceProgram::default();
        while *self.peek() != Tok::Eof {
            let b = self.boxdef()?;
            if prog.get(&b.name).is_some() {
                return Err(ParseError::at(b.pos, format!("box `{}` is defined twice", b.name)));
            }
            prog.boxes.push(b);
        }
        Ok(prog)
    }

    fn boxdef(&mut self) -> Result<BoxDef, ParseError> {
        self.keyword("box")?;
        let (name, pos) = self.ident()?;
        self.expect(Tok::LParen)?;
        let param = self.pat()?;
        self.expect(Tok::Colon)?;
        let input_type = self.wtype()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Arrow)?;
        let output_type = self.wtype()?;
        let body = self.block()?;
        Ok(BoxDef {
            name,
            param,
            input_type,
            output_type,
            body,
            pos,
        })
    }

    /// `{ stmt* }` ending in `output` or `if`.
    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut stmts = Vec::new();
        loop {
            if *self.peek() == Tok::RBrace {
                return Err(ParseError::at(self.pos(), "block must end with `output` or `if`"));
            }
            let s = self.stmt()?;
            let terminal = matches!(s, Stmt::Output { .. } | Stmt::If { .. });
            stmts.push(s);
            if terminal {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(stmts)
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.pos();
        if self.is_keyword("gate") {
            self.advance();
            let out = self.pat()?;
            self.expect(Tok::Eq)?;
            let gate = self.gname()?;
            self.expect(Tok::LParen)?;
            let arg = self.pat()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Semi)?;
            Ok(Stmt::Gate { out, gate, arg, pos })
        } else if self.is_keyword("let") {
            self.advance();
            let out = self.pat()?;
            self.expect(Tok::Eq)?;
            self.keyword("unbox")?;
            let (target, _) = self.ident()?;
            self.expect(Tok::LParen)?;
            let arg = self.pat()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Semi)?;
            Ok(Stmt::LetUnbox { out, target, arg, pos })
        } else if self.is_keyword("lift") {
            self.advance();
            let (name, _) = self.ident()?;
            self.expect(Tok::Eq)?;
            let pat = self.pat()?;
            self.expect(Tok::Semi)?;
            Ok(Stmt::Lift { name, pat, pos })
        } else if self.is_keyword("if") {
            self.advance();
            let (name, _) = self.ident()?;
            let then_branch = self.block()?;
            self.keyword("else")?;
            let else_branch = self.block()?;
            Ok(Stmt::If {
                name,
                then_branch,
                else_branch,
                pos,
            })
        } else if self.is_keyword("output") {
            self.advance();
            let pat = self.pat()?;
            self.expect(Tok::Semi)?;
            Ok(Stmt::Output { pat, pos })
        } else {
            Err(self.error("a statement"))
        }
    }

    fn pat(&mut self) -> Result<SPat, ParseError> {
        match self.peek() {
            Tok::LParen if *self.peek2() == Tok::RParen => {
                self.advance();
                self.advance();
                Ok(SPat::Unit)
            }
            Tok::LParen => {
                self.advance();
                let l = self.pat()?;
                self.expect(Tok::Comma)?;
                let r = self.pat()?;
                self.expect(Tok::RParen)?;
                Ok(SPat::Pair(Box::new(l), Box::new(r)))
            }
            _ => Ok(SPat::Name(self.ident()?.0)),
        }
    }

    fn wtype(&mut self) -> Result<WireType, ParseError> {
        let left = self.wtype_atom()?;
        if *self.peek() == Tok::Star {
            self.advance();
            let right = self.wtype()?;
            Ok(WireType::tensor(left, right))
        } else {
            Ok(left)
        }
    }

    fn wtype_atom(&mut self) -> Result<WireType, ParseError> {
        if *self.peek() == Tok::LParen {
            self.advance();
            let w = self.wtype()?;
            self.expect(Tok::RParen)?;
            return Ok(w);
        }
        let t = match self.peek() {
            Tok::Ident(s) if s == "One" => WireType::Unit,
            Tok::Ident(s) if s == "Bit" => WireType::Bit,
            Tok::Ident(s) if s == "Qubit" => WireType::Qubit,
            _ => return Err(self.error("a wire type")),
        };
        self.advance();
        Ok(t)
    }

    fn gname(&mut self) -> Result<Gate, ParseError> {
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.error("a gate name")),
        };
        let simple = match name.as_str() {
            "init0" => Some(Gate::Init0),
            "init1" => Some(Gate::Init1),
            "new0" => Some(Gate::New0),
            "new1" => Some(Gate::New1),
            "meas" => Some(Gate::Meas),
            "discard" => Some(Gate::Discard),
            _ => None,
        };
        if let Some(g) = simple {
            self.advance();
            return Ok(g);
        }
        self.unitary().map(Gate::Apply)
    }

    fn unitary(&mut self) -> Result<UnitaryGate, ParseError> {
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.error("a unitary gate name")),
        };
        let u = match name.as_str() {
            "H" => UnitaryGate::H,
            "X" => UnitaryGate::X,
            "Y" => UnitaryGate::Y,
            "Z" => UnitaryGate::Z,
            "ctrl" | "bit_ctrl" | "transpose" => {
                self.advance();
                let inner = self.unitary()?;
                return Ok(match name.as_str() {
                    "ctrl" => UnitaryGate::control(inner),
                    "bit_ctrl" => UnitaryGate::bit_control(inner),
                    _ => UnitaryGate::transpose(inner),
                });
            }
            _ => return Err(self.error("a gate name")),
        };
        self.advance();
        Ok(u)
    }
}

pub fn parse(text: &str) -> Result<SourceProgram, ParseError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.program()
}

/// Parse a standalone wire type such as `Qubit * (Bit * One)`.
pub fn parse_wire_type(text: &str) -> Result<WireType, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let w = p.wtype()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok(w)
}
