//! Text syntax for words and Hecke expressions.
//!
//! Letters are `s<i>`, `t<k>`, `t<a>.<b>` and `a<i>.<j>`, each optionally
//! followed by `^<integer>`, separated by whitespace. A Hecke expression is a
//! sum of terms `coef*[word]`, e.g. `(q-1)*[s3] + q*[]`. Errors carry a
//! 1-based column.

use crate::braid::{BraidWord, Crossing};
use crate::conjrules::{PureLetter, PureWord};
use crate::error::{Error, Result};
use crate::handlebody::{HLetter, HandleWord};
use crate::hecke::{HeckeExpr, HeckeLetter};
use crate::laurent::Laurent;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    S(u32),
    T(u32, Option<u32>),
    A(u32, u32),
}

/// A letter token with its power and the column where it starts.
#[derive(Debug, Clone, Copy)]
struct Token {
    tok: Tok,
    pow: i32,
    pos: usize,
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { pos: pos + 1, msg: msg.into() })
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), i: 0 }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return err(start, "expected a number");
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .or_else(|_| err(start, "number too large"))
    }

    fn int(&mut self) -> Result<i32> {
        let start = self.i;
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let v = self.uint()?;
        let v = i32::try_from(v).or_else(|_| err(start, "number too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn letter(&mut self) -> Result<Token> {
        let pos = self.i;
        let tok = match self.peek() {
            Some(b's') => {
                self.i += 1;
                Tok::S(self.uint()?)
            }
            Some(b't') => {
                self.i += 1;
                let a = self.uint()?;
                if self.eat(b'.') {
                    Tok::T(a, Some(self.uint()?))
                } else {
                    Tok::T(a, None)
                }
            }
            Some(b'a') => {
                self.i += 1;
                let i = self.uint()?;
                if !self.eat(b'.') {
                    return err(self.i, "expected '.' in a<i>.<j>");
                }
                Tok::A(i, self.uint()?)
            }
            Some(c) => return err(pos, format!("unexpected character '{}'", c as char)),
            None => return err(pos, "unexpected end of input"),
        };
        let pow = if self.eat(b'^') { self.int()? } else { 1 };
        if self.peek().is_some_and(|c| !c.is_ascii_whitespace() && c != b']') {
            return err(self.i, "expected whitespace between letters");
        }
        Ok(Token { tok, pow, pos })
    }

    /// Letters up to end of input or `]`.
    fn letters(&mut self) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b']') => return Ok(out),
                _ => out.push(self.letter()?),
            }
        }
    }
}

fn tokens(text: &str) -> Result<Vec<Token>> {
    let mut c = Cursor::new(text);
    let out = c.letters()?;
    if c.peek().is_some() {
        return err(c.i, "unexpected ']'");
    }
    Ok(out)
}

fn repeat<T: Copy>(x: T, inv: T, pow: i32, out: &mut Vec<T>) {
    let l = if pow < 0 { inv } else { x };
    out.extend(std::iter::repeat_n(l, pow.unsigned_abs() as usize));
}

fn range_err<T>(t: &Token, msg: String) -> Result<T> {
    Err(Error::Index(format!("column {}: {msg}", t.pos + 1)))
}

pub fn parse_braid(text: &str, m: u32) -> Result<BraidWord> {
    let mut out = Vec::new();
    for t in tokens(text)? {
        match t.tok {
            Tok::S(i) if i >= 1 && i < m => repeat(Crossing::new(i, 1), Crossing::new(i, -1), t.pow, &mut out),
            Tok::S(i) => return range_err(&t, format!("s{i} needs 1 <= i < {m}")),
            _ => return err(t.pos, "only s<i> letters are allowed in a braid word"),
        }
    }
    BraidWord::new(m, out)
}

pub fn parse_pure(text: &str, m: u32) -> Result<PureWord> {
    let mut out = Vec::new();
    for t in tokens(text)? {
        match t.tok {
            Tok::A(i, j) if 1 <= i && i < j && j <= m => {
                repeat(PureLetter::new(i, j, 1), PureLetter::new(i, j, -1), t.pow, &mut out)
            }
            Tok::A(i, j) => return range_err(&t, format!("a{i}.{j} needs 1 <= i < j <= {m}")),
            _ => return err(t.pos, "only a<i>.<j> letters are allowed in a pure word"),
        }
    }
    PureWord::new(m, out)
}

/// `t<k>` is the loop around handle `k`, `s<i>` with `g < i < g + n` a crossing.
pub fn parse_handle(text: &str, g: u32, n: u32) -> Result<HandleWord> {
    let mut out = Vec::new();
    for t in tokens(text)? {
        match t.tok {
            Tok::T(k, None) => repeat(HLetter::Tau(k, 1), HLetter::Tau(k, -1), t.pow, &mut out),
            Tok::S(i) => repeat(HLetter::Sigma(i, 1), HLetter::Sigma(i, -1), t.pow, &mut out),
            _ => return err(t.pos, "only t<k> and s<i> letters are allowed in a handlebody word"),
        }
    }
    HandleWord::new(g, n, out)
}

fn hecke_letters(toks: &[Token], g: u32) -> Result<Vec<HeckeLetter>> {
    let mut out = Vec::new();
    for t in toks {
        match t.tok {
            Tok::T(a, b) => {
                let b = b.unwrap_or(g + 1);
                repeat(HeckeLetter::T { a, b, e: 1 }, HeckeLetter::T { a, b, e: -1 }, t.pow, &mut out)
            }
            Tok::S(i) => repeat(HeckeLetter::S { i, e: 1 }, HeckeLetter::S { i, e: -1 }, t.pow, &mut out),
            Tok::A(..) => return err(t.pos, "a-letters are not allowed in Hecke words"),
        }
    }
    Ok(out)
}

/// A Hecke word without brackets or coefficients; `t<k>` means `t<k>.<g+1>`.
pub fn parse_hecke_word(text: &str, g: u32) -> Result<Vec<HeckeLetter>> {
    hecke_letters(&tokens(text)?, g)
}

/// `[<int>] [q[^<int>]]`, at least one part present.
fn monomial(c: &mut Cursor) -> Result<Laurent> {
    let start = c.i;
    let coef = if c.peek().is_some_and(|x| x.is_ascii_digit()) { Some(c.uint()? as i128) } else { None };
    let save = c.i;
    if coef.is_some() && c.eat(b'*') {
        c.skip_ws();
        if c.peek() != Some(b'q') {
            c.i = save;
            return Ok(Laurent::constant(coef.unwrap()));
        }
    }
    if c.eat(b'q') {
        let e = if c.eat(b'^') { c.int()? } else { 1 };
        return Ok(Laurent::monomial(coef.unwrap_or(1), e));
    }
    match coef {
        Some(v) => Ok(Laurent::constant(v)),
        None => err(start, "expected a coefficient"),
    }
}

/// A signed sum of monomials, ending before `)` or `*` or `[`.
fn polynomial(c: &mut Cursor) -> Result<Laurent> {
    let mut acc = Laurent::zero();
    c.skip_ws();
    let mut neg = if c.eat(b'-') {
        true
    } else {
        c.eat(b'+');
        false
    };
    loop {
        c.skip_ws();
        let m = monomial(c)?;
        acc = if neg { &acc - &m } else { &acc + &m };
        c.skip_ws();
        neg = match c.peek() {
            Some(b'-') => true,
            Some(b'+') => false,
            _ => return Ok(acc),
        };
        c.i += 1;
    }
}

fn coefficient(c: &mut Cursor) -> Result<Laurent> {
    c.skip_ws();
    if c.eat(b'(') {
        let p = polynomial(c)?;
        c.skip_ws();
        if !c.eat(b')') {
            return err(c.i, "expected ')'");
        }
        Ok(p)
    } else {
        monomial(c)
    }
}

/// Parses `c1*[w1] ± c2*[w2] …`; a bare coefficient means a multiple of the empty word,
/// and text without brackets or coefficients is a single word.
pub fn parse_hecke(text: &str, g: u32) -> Result<HeckeExpr> {
    let t = text.trim_start();
    if !text.contains('[') && (t.starts_with('s') || t.starts_with('t')) {
        return Ok(HeckeExpr::word(parse_hecke_word(text, g)?));
    }
    let mut c = Cursor::new(text);
    let mut terms = Vec::new();
    c.skip_ws();
    let mut neg = c.eat(b'-');
    loop {
        c.skip_ws();
        let coef = if c.peek() == Some(b'[') {
            Laurent::one()
        } else {
            let k = coefficient(&mut c)?;
            c.skip_ws();
            if c.eat(b'*') {
                c.skip_ws();
                if c.peek() != Some(b'[') {
                    return err(c.i, "expected '[' after '*'");
                }
            }
            k
        };
        let word = if c.eat(b'[') {
            let toks = c.letters()?;
            if !c.eat(b']') {
                return err(c.i, "expected ']'");
            }
            hecke_letters(&toks, g)?
        } else {
            Vec::new()
        };
        terms.push((if neg { -coef } else { coef }, word));
        c.skip_ws();
        neg = match c.peek() {
            None => break,
            Some(b'+') => false,
            Some(b'-') => true,
            Some(x) => return err(c.i, format!("unexpected character '{}'", x as char)),
        };
        c.i += 1;
    }
    Ok(HeckeExpr { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(e: Error) -> usize {
        match e {
            Error::Syntax { pos, .. } => pos,
            other => panic!("not a syntax error: {other}"),
        }
    }

    #[test]
    fn examples() {
        let w = parse_handle("t1 s2 t1 s2^-1", 1, 2).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "t1 s2 t1 s2^-1");
        let p = parse_pure("a1.2 a1.3", 3).unwrap();
        assert_eq!(p.len(), 2);
        let h = parse_hecke("(q-1)*[s2] + q*[]", 1).unwrap();
        assert_eq!(h.terms.len(), 2);
        assert_eq!(h.terms[0].0, Laurent::q_minus_one());
        assert_eq!(h.terms[1], (Laurent::q(), vec![]));
    }

    #[test]
    fn powers_expand() {
        assert_eq!(parse_braid("s1^3 s2^-2 s1^0", 3).unwrap().to_string(), "s1 s1 s1 s2^-1 s2^-1");
        assert_eq!(parse_braid("", 3).unwrap().letters().len(), 0);
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(pos(parse_braid("s1 x2", 3).unwrap_err()), 4);
        assert_eq!(pos(parse_braid("s1s2", 3).unwrap_err()), 3);
        assert_eq!(pos(parse_pure("a1 a2.3", 3).unwrap_err()), 3);
        assert_eq!(pos(parse_hecke("q*[s2", 1).unwrap_err()), 6);
        assert!(matches!(parse_braid("s3", 3), Err(Error::Index(_))));
        assert!(matches!(parse_handle("t2", 1, 2), Err(Error::Index(_))));
    }

    #[test]
    fn hecke_coefficients() {
        let h = parse_hecke("-[t1] + (-1 + q^-1)*[t1.3 s2] - 2q^-1*[s2^-1] + 3", 1).unwrap();
        assert_eq!(h.terms.len(), 4);
        assert_eq!(h.terms[0].0, Laurent::constant(-1));
        assert_eq!(h.terms[0].1, vec![HeckeLetter::T { a: 1, b: 2, e: 1 }]);
        assert_eq!(h.terms[1].0, Laurent::qinv_minus_one());
        assert_eq!(h.terms[2].0, Laurent::monomial(-2, -1));
        assert_eq!(h.terms[3], (Laurent::constant(3), vec![]));
        assert_eq!(parse_hecke("2*q*[s2]", 1).unwrap().terms[0].0, Laurent::monomial(2, 1));
        let w = parse_hecke("t1 s2^-1", 1).unwrap();
        assert_eq!(w, HeckeExpr::word(vec![HeckeLetter::T { a: 1, b: 2, e: 1 }, HeckeLetter::S { i: 2, e: -1 }]));
    }

    #[test]
    fn printed_forms_parse_back() {
        let h = parse_hecke("(q - 1)*[t1.3^-1] + (-q + 1)*[t1.2^-1] + [t1.2^-1 s2] - q^2*[]", 1).unwrap();
        assert_eq!(parse_hecke(&h.to_string(), 1).unwrap(), h);
    }
}
