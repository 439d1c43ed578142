//! Integer Laurent polynomials in `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Laurent {
    /// exponent -> coefficient, never zero
    terms: BTreeMap<i32, i128>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn q() -> Self {
        Laurent::monomial(1, 1)
    }

    pub fn monomial(c: i128, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// `q - 1`
    pub fn q_minus_one() -> Self {
        Laurent::from_pairs([(1, 1), (0, -1)])
    }

    /// `1 - q`
    pub fn one_minus_q() -> Self {
        -Laurent::q_minus_one()
    }

    /// `q^{-1} - 1`
    pub fn qinv_minus_one() -> Self {
        Laurent::from_pairs([(-1, 1), (0, -1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, i128)>>(pairs: I) -> Self {
        let mut out = Laurent::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: i32, c: i128) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_abs(&self) -> u128 {
        self.terms.values().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn eval_q1(&self) -> i128 {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: i128) -> Laurent {
        Laurent::from_pairs(self.terms().map(|(e, x)| (e, x * c)))
    }

    fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: i128, e: i32, first: bool) -> fmt::Result {
        let abs = c.unsigned_abs();
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else if c < 0 {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        match (abs, e) {
            (_, 0) => write!(f, "{abs}"),
            (1, 1) => f.write_str("q"),
            (1, _) => write!(f, "q^{e}"),
            (_, 1) => write!(f, "{abs}q"),
            _ => write!(f, "{abs}q^{e}"),
        }
    }
}

impl fmt::Display for Laurent {
    /// Descending powers, e.g. `q^2 - 1`, `-q^-1 + 3`; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.terms.iter().rev().enumerate() {
            Laurent::fmt_monomial(f, c, e, k == 0)?;
        }
        Ok(())
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs.clone())
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
