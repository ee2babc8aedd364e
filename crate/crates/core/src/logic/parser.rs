//! Tokenizer and recursive-descent parser for the formula syntax.
//!
//! Precedence from tightest: `!`, `&`, `|`, `->` (right associative), `<->`.
//! Quantifier bodies extend as far to the right as possible.

use super::ast::{is_set_var, Formula, SetBound};
use crate::error::{Error, Result};
use crate::params::ParamKind;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Dot,
    Equals,
    Le,
    Percent,
    Bar,
    Amp,
    Bang,
    Arrow,
    DArrow,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Num(n) => format!("'{n}'"),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse::<u64>().map_err(|_| Error::Syntax {
                pos: start,
                msg: "number too large".into(),
            })?;
            out.push((Tok::Num(n), start));
            continue;
        } else if text[i..].starts_with("<->") {
            i += 3;
            Tok::DArrow
        } else if text[i..].starts_with("->") {
            i += 2;
            Tok::Arrow
        } else if text[i..].starts_with("<=") {
            i += 2;
            Tok::Le
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b',' => Tok::Comma,
                b';' => Tok::Semi,
                b'.' => Tok::Dot,
                b'=' => Tok::Equals,
                b'%' => Tok::Percent,
                b'|' => Tok::Bar,
                b'&' => Tok::Amp,
                b'!' => Tok::Bang,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unexpected character '{ch}'"),
                    });
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

const ELEMENT_KEYWORDS: &[&str] = &[
    "exists", "forall", "in", "true", "false", "color", "card", "dp", "conn", "ttwle",
];
const SET_KEYWORDS: &[&str] = &["E", "Exists", "Forall"];

fn kind_of(name: &str) -> Option<ParamKind> {
    match name {
        "ttw" => Some(ParamKind::Ttw),
        "bog" => Some(ParamKind::Bog),
        "brg" => Some(ParamKind::Brg),
        "atw" => Some(ParamKind::Atw),
        "size" => Some(ParamKind::Size),
        "adbrg" => Some(ParamKind::Adbrg),
        _ => None,
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", describe(&t), describe(self.peek())))
        }
    }

    fn number(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            t => self.err(format!("expected a number, found {}", describe(&t))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected an identifier, found {}", describe(&t))),
        }
    }

    /// A declared element variable.
    fn elem_var(&mut self) -> Result<String> {
        let pos = self.pos();
        let name = self.ident()?;
        if is_set_var(&name) || ELEMENT_KEYWORDS.contains(&name.as_str()) {
            return Err(Error::Syntax {
                pos,
                msg: format!("expected an element variable, found '{name}'"),
            });
        }
        self.check_scope(&name)?;
        Ok(name)
    }

    fn set_var(&mut self) -> Result<String> {
        let pos = self.pos();
        let name = self.ident()?;
        if !is_set_var(&name) || SET_KEYWORDS.contains(&name.as_str()) {
            return Err(Error::Syntax {
                pos,
                msg: format!("expected a set variable, found '{name}'"),
            });
        }
        self.check_scope(&name)?;
        Ok(name)
    }

    fn check_scope(&self, name: &str) -> Result<()> {
        if self.scope.iter().any(|s| s == name) {
            Ok(())
        } else {
            Err(Error::Scope(format!("unbound variable '{name}'")))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let left = self.implication()?;
        let mut acc = left;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let right = self.implication()?;
            acc = Formula::Iff(Box::new(acc), Box::new(right));
        }
        Ok(acc)
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) => match s.as_str() {
                "exists" | "forall" => self.elem_quantifier(s == "exists"),
                "Exists" | "Forall" => self.set_quantifier(s == "Exists"),
                _ => self.atom(),
            },
            t => self.err(format!("expected a formula, found {}", describe(&t))),
        }
    }

    fn elem_quantifier(&mut self, exists: bool) -> Result<Formula> {
        self.bump();
        let pos = self.pos();
        let x = self.ident()?;
        if is_set_var(&x) || ELEMENT_KEYWORDS.contains(&x.as_str()) {
            return Err(Error::Syntax {
                pos,
                msg: format!("'{x}' is not an element variable name"),
            });
        }
        self.expect(Tok::Dot)?;
        self.scope.push(x.clone());
        let body = self.formula();
        self.scope.pop();
        let body = body?;
        Ok(if exists {
            Formula::exists(x, body)
        } else {
            Formula::forall(x, body)
        })
    }

    fn set_quantifier(&mut self, exists: bool) -> Result<Formula> {
        self.bump();
        self.expect(Tok::LBrack)?;
        let pos = self.pos();
        let kname = self.ident()?;
        let Some(kind) = kind_of(&kname) else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unknown parameter '{kname}' in set quantifier"),
            });
        };
        self.expect(Tok::Le)?;
        let k = self.number()? as usize;
        self.expect(Tok::RBrack)?;
        let pos = self.pos();
        let x = self.ident()?;
        if !is_set_var(&x) || SET_KEYWORDS.contains(&x.as_str()) {
            return Err(Error::Syntax {
                pos,
                msg: format!("'{x}' is not a set variable name"),
            });
        }
        self.expect(Tok::Dot)?;
        self.scope.push(x.clone());
        let body = self.formula();
        self.scope.pop();
        let body = Box::new(body?);
        let b = SetBound { kind, k };
        Ok(if exists {
            Formula::SetExists(b, x, body)
        } else {
            Formula::SetForall(b, x, body)
        })
    }

    fn atom(&mut self) -> Result<Formula> {
        let Tok::Ident(head) = self.peek().clone() else {
            return self.err("expected an atom");
        };
        let call = *self.peek_at(1) == Tok::LParen;
        match head.as_str() {
            "true" => {
                self.bump();
                Ok(Formula::True)
            }
            "false" => {
                self.bump();
                Ok(Formula::False)
            }
            "E" if call => {
                self.bump();
                self.bump();
                let a = self.elem_var()?;
                self.expect(Tok::Comma)?;
                let b = self.elem_var()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Edge(a, b))
            }
            "color" if call => {
                self.bump();
                self.bump();
                let c = self.ident()?;
                self.expect(Tok::Comma)?;
                let x = self.elem_var()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Color(c, x))
            }
            "card" if call => {
                self.bump();
                self.bump();
                let set = self.set_var()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Percent)?;
                let m = self.number()?;
                self.expect(Tok::Equals)?;
                let r = self.number()?;
                if m == 0 {
                    return Err(Error::Semantic("modulus must be positive".into()));
                }
                if r >= m {
                    return Err(Error::Semantic(format!(
                        "residue ≥ modulus in card({set}) % {m} = {r}"
                    )));
                }
                Ok(Formula::CardMod {
                    set,
                    modulus: m as u32,
                    residue: r as u32,
                })
            }
            "dp" if call => {
                self.bump();
                self.bump();
                let mut pairs = Vec::new();
                loop {
                    let a = self.elem_var()?;
                    self.expect(Tok::Comma)?;
                    let b = self.elem_var()?;
                    pairs.push((a, b));
                    if *self.peek() == Tok::Semi {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(Formula::Dp(pairs))
            }
            "conn" if call => {
                self.bump();
                self.bump();
                let s = self.elem_var()?;
                self.expect(Tok::Comma)?;
                let t = self.elem_var()?;
                let mut deleted = Vec::new();
                if *self.peek() == Tok::Bar {
                    self.bump();
                    deleted.push(self.elem_var()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        deleted.push(self.elem_var()?);
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(Formula::Conn { s, t, deleted })
            }
            "ttwle" if call => {
                self.bump();
                self.bump();
                let k = self.number()? as usize;
                self.expect(Tok::Semi)?;
                let mut vars = vec![self.elem_var()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    vars.push(self.elem_var()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Formula::TtwLe { k, vars })
            }
            _ => {
                let x = self.elem_var()?;
                match self.peek().clone() {
                    Tok::Equals => {
                        self.bump();
                        let y = self.elem_var()?;
                        Ok(Formula::Eq(x, y))
                    }
                    Tok::Ident(s) if s == "in" => {
                        self.bump();
                        let set = self.set_var()?;
                        Ok(Formula::Member(x, set))
                    }
                    t => self.err(format!("expected '=' or 'in', found {}", describe(&t))),
                }
            }
        }
    }
}

/// Parses a closed formula.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_with_free(text, &[])
}

/// Parses a formula whose free variables must be among `free`.
pub fn parse_formula_with_free(text: &str, free: &[&str]) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
        scope: free.iter().map(|s| s.to_string()).collect(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(f)
}
