//! Text syntax for subspaces of `F_{q^n}`.
//!
//! ```text
//! subspace := term ("+" term)*
//! term     := "span" "(" [elem ("," elem)*] ")" | elem "*" field | field
//! field    := "F" "(" int ["," int] ")"          F(q) = F_q, F(q,s) = F_{q^s}
//! elem     := ["-"] prod (("+" | "-") prod)*
//! prod     := factor ("*" factor)*
//! factor   := "(" elem ")" ["^" int] | "z" ["^" int] | int
//! ```
//!
//! Whitespace is ignored. Integers are reduced mod `p`, exponents of nonzero
//! elements mod `q^n - 1`. An element absorbs as many `+`/`-` summands as it
//! can, so `z^5+1*F(3,2)` reads as `(z^5+1)·F_9`. The plain monomial form
//! `[int "*"] ("z" ["^" int] | int)` is a special case of `prod`.

use std::sync::Arc;

use super::Subspace;
use crate::error::{Error, Result};
use crate::gf::{FFElem, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u128),
    Z,
    Span,
    F,
    Caret,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Z => "`z`".into(),
        Tok::Span => "`span`".into(),
        Tok::F => "`F`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Star => "`*`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i].parse::<u128>().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "integer too large".into(),
                })?;
                out.push((Tok::Int(v), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "z" => Tok::Z,
                    "span" => Tok::Span,
                    "F" => Tok::F,
                    _ => {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: format!("unknown identifier `{word}`"),
                        })
                    }
                };
                out.push((tok, start));
                continue;
            }
            b'^' => Tok::Caret,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    tower: &'a Arc<FieldTower>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::Syntax { pos: self.pos(), msg: format!("expected {wanted}, found {}", describe(self.peek())) }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn int(&mut self) -> Result<u128> {
        match *self.peek() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn subspace(&mut self) -> Result<Subspace> {
        let mut acc = self.term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let t = self.term()?;
            acc = acc.sum(&t)?;
        }
        if *self.peek() != Tok::End {
            return Err(self.unexpected("`+` or end of input"));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Subspace> {
        match self.peek() {
            Tok::Span => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut elems = Vec::new();
                if *self.peek() != Tok::RParen {
                    elems.push(self.elem()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        elems.push(self.elem()?);
                    }
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Subspace::span(self.tower, &elems)
            }
            Tok::F => {
                let s = self.field()?;
                Ok(Subspace::line_sum(self.tower, &[(self.tower.one(), s)])?.subspace)
            }
            _ => {
                let start = self.pos();
                let e = self.elem()?;
                self.expect(Tok::Star, "`*` followed by a field `F(q,s)`")?;
                if *self.peek() != Tok::F {
                    return Err(self.unexpected("a field `F(q,s)`"));
                }
                let s = self.field()?;
                if e.is_zero() {
                    return Err(Error::Syntax { pos: start, msg: "generator evaluates to zero".into() });
                }
                Ok(Subspace::line_sum(self.tower, &[(e, s)])?.subspace)
            }
        }
    }

    /// `F(q[,s])`, returning `s`.
    fn field(&mut self) -> Result<usize> {
        self.expect(Tok::F, "`F`")?;
        self.expect(Tok::LParen, "`(`")?;
        let qpos = self.pos();
        let q = self.int()?;
        if q != self.tower.q() as u128 {
            return Err(Error::Syntax {
                pos: qpos,
                msg: format!("F({q}) does not match the tower's q = {}", self.tower.q()),
            });
        }
        let mut s = 1usize;
        if *self.peek() == Tok::Comma {
            self.bump();
            let spos = self.pos();
            let v = self.int()?;
            if v == 0 || v > self.tower.n() as u128 || self.tower.n() % v as usize != 0 {
                return Err(Error::Syntax {
                    pos: spos,
                    msg: format!("F_{{q^{v}}} is not a subfield of F_{{q^{}}}", self.tower.n()),
                });
            }
            s = v as usize;
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(s)
    }

    fn elem(&mut self) -> Result<FFElem> {
        let t = self.tower;
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.prod()?;
        if negate {
            acc = t.neg(&acc);
        }
        loop {
            let op = self.peek().clone();
            if !matches!(op, Tok::Plus | Tok::Minus) {
                break;
            }
            if !matches!(self.peek2(), Tok::Int(_) | Tok::Z | Tok::LParen) {
                break;
            }
            self.bump();
            let rhs = self.prod()?;
            acc = if op == Tok::Plus { t.add(&acc, &rhs) } else { t.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<FFElem> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star && *self.peek2() != Tok::F {
            self.bump();
            let rhs = self.factor()?;
            acc = self.tower.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FFElem> {
        let t = self.tower;
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                let c = (v % t.p() as u128) as i64;
                Ok(t.element_from_ints(&[c]))
            }
            Tok::Z => {
                self.bump();
                let k = self.exponent()?.unwrap_or(1);
                Ok(t.z_pow((k % t.group_order() as u128) as u64))
            }
            Tok::LParen => {
                self.bump();
                let e = self.elem()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(match self.exponent()? {
                    Some(k) => power(t, &e, k),
                    None => e,
                })
            }
            _ => Err(self.unexpected("`z`, an integer or `(`")),
        }
    }

    fn exponent(&mut self) -> Result<Option<u128>> {
        if *self.peek() == Tok::Caret {
            self.bump();
            Ok(Some(self.int()?))
        } else {
            Ok(None)
        }
    }
}

fn power(t: &FieldTower, e: &FFElem, k: u128) -> FFElem {
    if k == 0 || e.is_zero() {
        return t.pow(e, k.min(1));
    }
    let order = t.group_order() as u128;
    t.pow(e, (k - 1) % order + 1)
}

pub fn parse_subspace(text: &str, tower: &Arc<FieldTower>) -> Result<Subspace> {
    let toks = lex(text)?;
    Parser { toks, at: 0, tower }.subspace()
}

/// A single element expression (the `elem` rule).
pub fn parse_element(text: &str, tower: &Arc<FieldTower>) -> Result<FFElem> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, tower };
    let e = p.elem()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(e)
}

/// Renders `text` with a caret under byte offset `pos`.
pub fn caret_message(text: &str, pos: usize, msg: &str) -> String {
    let col = text.get(..pos.min(text.len())).map_or(pos, |s| s.chars().count());
    format!("{text}\n{}^ {msg}", " ".repeat(col))
}

/// Polynomial in `z` for an element, highest degree first (`0` for zero).
pub fn format_element(a: &FFElem) -> String {
    let mut parts = Vec::new();
    for (i, &c) in a.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{i}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ConwayTable;

    fn tower(q: u32, n: usize) -> Arc<FieldTower> {
        FieldTower::conway(q, n, &ConwayTable::bundled()).unwrap()
    }

    #[test]
    fn empty_span_is_zero() {
        let t = tower(3, 4);
        assert_eq!(parse_subspace("span()", &t).unwrap().dim(), 0);
        assert_eq!(parse_subspace("  span ( ) ", &t).unwrap().dim(), 0);
    }

    #[test]
    fn monomials_and_products() {
        let t = tower(3, 4);
        let e = parse_element("2*z^3 + z - 1", &t).unwrap();
        assert_eq!(e, t.element_from_ints(&[-1, 1, 0, 2]));
        let prod = parse_element("(z+1)*(z+2)", &t).unwrap();
        assert_eq!(prod, t.element_from_ints(&[2, 0, 1]));
        let sq = parse_element("(z+1)^2", &t).unwrap();
        assert_eq!(sq, t.element_from_ints(&[1, 2, 1]));
        assert_eq!(parse_element("z^80", &t).unwrap(), t.one());
        assert_eq!(parse_element("-z", &t).unwrap(), t.neg(&t.z()));
        assert_eq!(parse_element("7", &t).unwrap(), t.one());
    }

    #[test]
    fn greedy_generator() {
        let t = tower(3, 10);
        let a = parse_subspace("z^5+1*F(3,2)", &t).unwrap();
        let b = parse_subspace("(z^5+1)*F(3,2)", &t).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn errors_have_positions() {
        let t = tower(3, 10);
        let cases = [
            ("span(z^2,", 9),
            ("z^2*F(2,2)", 6),
            ("z^2*F(3,3)", 8),
            ("z^2 + F(3,2)", 4),
            ("span(z) z", 8),
            ("spam(z)", 0),
            ("z^*F(3,1)", 2),
            ("0*F(3,1)", 0),
            ("span(z) # z", 8),
        ];
        for (text, pos) in cases {
            match parse_subspace(text, &t) {
                Err(Error::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn caret_rendering() {
        let m = caret_message("span(z,", 7, "expected elem");
        assert_eq!(m, "span(z,\n       ^ expected elem");
    }

    #[test]
    fn format_round_trip() {
        let t = tower(3, 5);
        for text in ["2*z^4+z+1", "z", "0", "2", "z^3+2*z^2"] {
            let e = parse_element(text, &t).unwrap();
            assert_eq!(format_element(&e), text);
        }
    }
}
