//! The quotient `G_{g,n}` of `B_{g,n}` by `σ_i^2 = 1`, realized as `F_g ≀ S_n`.
//!
//! An element is `(h_1, …, h_n; α)`; column `c` is a reduced word over
//! `b_{1,g+c}, …, b_{g,g+c}`. The product is
//! `(h; α)(h'; α') = (h · α(h'); α ∘ α')` where `α(h')` moves column `c`
//! of `h'` to column `α(c)`.

use std::fmt;

use serde::Serialize;

use crate::braid::Permutation;
use crate::error::{Error, Result};
use crate::freewords::{FreeWord, Gen, Letter};
use crate::handlebody::{HLetter, HandleWord};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WreathElement {
    pub g: u32,
    pub n: u32,
    pub columns: Vec<FreeWord>,
    pub perm: Permutation,
}

impl WreathElement {
    pub fn identity(g: u32, n: u32) -> Self {
        WreathElement { g, n, columns: vec![FreeWord::empty(); n as usize], perm: Permutation::identity(n) }
    }

    /// Checks column alphabets and sizes.
    pub fn new(g: u32, n: u32, columns: Vec<FreeWord>, perm: Permutation) -> Result<Self> {
        if columns.len() != n as usize || perm.size() != n {
            return Err(Error::ParamMismatch(format!("need {n} columns and a permutation of {n} points")));
        }
        for (c, h) in columns.iter().enumerate() {
            let col = g + 1 + c as u32;
            if !h.all_gens(|x| matches!(x, Gen::B(i, j) if *i <= g && *j == col)) {
                return Err(Error::OutsideTable(format!("column {} word {h}", c + 1)));
            }
        }
        Ok(WreathElement { g, n, columns, perm })
    }

    /// `b_{k,g+c}` alone in column `c`.
    pub fn loop_at(g: u32, n: u32, k: u32, c: u32, exp: i8) -> Self {
        let mut e = WreathElement::identity(g, n);
        e.columns[(c - 1) as usize] = FreeWord::letter(Gen::B(k, g + c), exp);
        e
    }

    pub fn transposition(g: u32, n: u32, i: u32) -> Self {
        WreathElement { perm: Permutation::adjacent(n, i), ..WreathElement::identity(g, n) }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.columns.iter().all(|c| c.is_empty())
    }

    fn check(&self, other: &WreathElement) -> Result<()> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::ParamMismatch(format!(
                "G_{{{},{}}} vs G_{{{},{}}}",
                self.g, self.n, other.g, other.n
            )));
        }
        Ok(())
    }

    /// Moves column `c` of `self.columns` to column `p(c)`, relabelling letters.
    fn permuted_columns(&self, p: &Permutation) -> Vec<FreeWord> {
        let g = self.g;
        let mut out = vec![FreeWord::empty(); self.n as usize];
        for (c, h) in self.columns.iter().enumerate() {
            let target = p.apply(c as u32 + 1);
            out[(target - 1) as usize] = h.map_gens(|x| match x {
                Gen::B(i, _) => Gen::B(i, g + target),
                other => other,
            });
        }
        out
    }

    pub fn multiply(&self, other: &WreathElement) -> Result<WreathElement> {
        self.check(other)?;
        let moved = other.permuted_columns(&self.perm);
        let columns = self.columns.iter().zip(&moved).map(|(a, b)| a.multiply(b)).collect();
        Ok(WreathElement { g: self.g, n: self.n, columns, perm: self.perm.compose(&other.perm) })
    }

    pub fn inverse(&self) -> WreathElement {
        let inv = self.perm.inverse();
        let cols: Vec<FreeWord> = self.columns.iter().map(|h| h.invert()).collect();
        let tmp = WreathElement { columns: cols, ..self.clone() };
        WreathElement { g: self.g, n: self.n, columns: tmp.permuted_columns(&inv), perm: inv }
    }

    pub fn eq(&self, other: &WreathElement) -> Result<bool> {
        self.check(other)?;
        Ok(self == other)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, h) in self.columns.iter().enumerate() {
            if h.is_empty() {
                write!(f, "h{}=e ", c + 1)?;
            } else {
                let parts: Vec<String> = h.letters().iter().map(Letter::to_string).collect();
                write!(f, "h{}={} ", c + 1, parts.join("*"))?;
            }
        }
        write!(f, "perm={}", self.perm)
    }
}

/// The image of a generator of `B_{g,n}`.
pub fn project_letter(g: u32, n: u32, l: HLetter) -> WreathElement {
    match l {
        HLetter::Tau(k, e) => WreathElement::loop_at(g, n, k, 1, e),
        HLetter::Sigma(i, _) => WreathElement::transposition(g, n, i - g),
    }
}

pub fn project(w: &HandleWord) -> WreathElement {
    let (g, n) = (w.g(), w.n());
    let mut acc = WreathElement::identity(g, n);
    for &l in w.letters() {
        acc = acc.multiply(&project_letter(g, n, l)).expect("same parameters");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use HLetter::{Sigma as S, Tau as T};

    fn hw(g: u32, n: u32, ls: &[HLetter]) -> HandleWord {
        HandleWord::new(g, n, ls.to_vec()).unwrap()
    }

    #[test]
    fn projection_examples() {
        let x = project(&hw(1, 2, &[T(1, 1)]));
        assert_eq!(x.columns[0], FreeWord::letter(Gen::B(1, 2), 1));
        assert!(x.columns[1].is_empty() && x.perm.is_identity());

        assert!(project(&hw(2, 3, &[S(3, 1), S(3, 1)])).is_identity());
        assert!(project(&hw(2, 3, &[S(3, 1), S(3, -1)])).is_identity());

        let y = project(&hw(1, 2, &[T(1, 1), S(2, 1), T(1, 1), S(2, -1)]));
        assert_eq!(y.to_string(), "h1=b1.2 h2=b1.3 perm=id");
    }

    #[test]
    fn group_laws() {
        let x = project(&hw(2, 3, &[T(1, 1), S(3, 1), T(2, -1), S(4, 1)]));
        let e = WreathElement::identity(2, 3);
        assert_eq!(x.multiply(&e).unwrap(), x);
        assert!(x.multiply(&x.inverse()).unwrap().is_identity());
        assert!(x.inverse().multiply(&x).unwrap().is_identity());
        let b = WreathElement::loop_at(1, 2, 1, 1, 1);
        assert!(b.multiply(&WreathElement::loop_at(1, 2, 1, 1, -1)).unwrap().is_identity());
        assert!(x.multiply(&WreathElement::identity(1, 3)).is_err());
    }

    #[test]
    fn transposition_moves_columns() {
        let b = WreathElement::loop_at(1, 2, 1, 1, 1);
        let s = WreathElement::transposition(1, 2, 1);
        let bs = b.multiply(&s).unwrap();
        let sq = bs.multiply(&bs).unwrap();
        assert_eq!(sq.columns[0], FreeWord::letter(Gen::B(1, 2), 1));
        assert_eq!(sq.columns[1], FreeWord::letter(Gen::B(1, 3), 1));
        assert!(sq.perm.is_identity());
        let conj = s.multiply(&b).unwrap().multiply(&s).unwrap();
        assert_eq!(conj, WreathElement::loop_at(1, 2, 1, 2, 1));
    }

    #[test]
    fn columns_commute() {
        let x = WreathElement::loop_at(2, 3, 1, 1, 1);
        let y = WreathElement::loop_at(2, 3, 2, 3, -1);
        assert_eq!(x.multiply(&y).unwrap(), y.multiply(&x).unwrap());
        let z = WreathElement::loop_at(2, 3, 2, 1, 1);
        assert_ne!(x.multiply(&z).unwrap(), z.multiply(&x).unwrap());
    }
}
