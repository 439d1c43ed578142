//! Reduced words in free groups over indexed generator alphabets.
//!
//! Exponent convention used everywhere in the crate: `x^y = y^{-1} x y` and
//! `[a, b] = a^{-1} b^{-1} a b`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator symbol. Two-index families keep their indices ordered `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    /// Free generator `x_i` of the Artin action.
    X(u32),
    /// Pure braid generator `a_{ij}`.
    A(u32, u32),
    /// Image `b_{ij}` of `a_{ij}` in the wreath quotient.
    B(u32, u32),
    /// Hecke-level loop element `t_{ij}`.
    T(u32, u32),
    /// Crossing `s_i` / `σ_i`.
    S(u32),
    /// Handle loop `τ_k`.
    Tau(u32),
}

impl Gen {
    pub fn x(i: u32) -> Result<Self> {
        check_pos(i)?;
        Ok(Gen::X(i))
    }

    pub fn a(i: u32, j: u32) -> Result<Self> {
        check_pair(i, j)?;
        Ok(Gen::A(i, j))
    }

    pub fn b(i: u32, j: u32) -> Result<Self> {
        check_pair(i, j)?;
        Ok(Gen::B(i, j))
    }

    pub fn t(i: u32, j: u32) -> Result<Self> {
        check_pair(i, j)?;
        Ok(Gen::T(i, j))
    }

    pub fn s(i: u32) -> Result<Self> {
        check_pos(i)?;
        Ok(Gen::S(i))
    }

    pub fn tau(k: u32) -> Result<Self> {
        check_pos(k)?;
        Ok(Gen::Tau(k))
    }

    /// Second index of a two-index symbol (its column in the generator table).
    pub fn column(&self) -> Option<u32> {
        match *self {
            Gen::A(_, j) | Gen::B(_, j) | Gen::T(_, j) => Some(j),
            _ => None,
        }
    }

    /// First index of a two-index symbol (its row in the generator table).
    pub fn row(&self) -> Option<u32> {
        match *self {
            Gen::A(i, _) | Gen::B(i, _) | Gen::T(i, _) => Some(i),
            _ => None,
        }
    }
}

fn check_pos(i: u32) -> Result<()> {
    if i == 0 {
        return Err(Error::Index(format!("generator index must be positive, got {i}")));
    }
    Ok(())
}

fn check_pair(i: u32, j: u32) -> Result<()> {
    check_pos(i)?;
    if i >= j {
        return Err(Error::Index(format!("two-index generator needs i < j, got ({i}, {j})")));
    }
    Ok(())
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i) => write!(f, "x{i}"),
            Gen::A(i, j) => write!(f, "a{i}.{j}"),
            Gen::B(i, j) => write!(f, "b{i}.{j}"),
            Gen::T(i, j) => write!(f, "t{i}.{j}"),
            Gen::S(i) => write!(f, "s{i}"),
            Gen::Tau(k) => write!(f, "t{k}"),
        }
    }
}

/// A generator raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Gen, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp < 0 {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word. Construction always reduces, so two words are equal
/// in the free group iff they are equal as values.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn letter(gen: Gen, exp: i8) -> Self {
        FreeWord { letters: vec![Letter::new(gen, exp)] }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.letters.clone();
        out.reserve(other.len());
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        FreeWord { letters: out }
    }

    /// In-place right multiplication.
    pub fn mul_assign(&mut self, other: &FreeWord) {
        for &l in &other.letters {
            push_reduced(&mut self.letters, l);
        }
    }

    pub fn push(&mut self, l: Letter) {
        push_reduced(&mut self.letters, l);
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Signed power `self^k`.
    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..k.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// `y^{-1} · self · y`.
    pub fn conjugate(&self, y: &FreeWord) -> FreeWord {
        y.invert().multiply(self).multiply(y)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.invert().multiply(&b.invert()).multiply(a).multiply(b)
    }

    /// Deletes every letter whose generator satisfies `kill`; the result is the
    /// image under the homomorphism sending those generators to the identity.
    pub fn kill<F: Fn(&Gen) -> bool>(&self, kill: F) -> FreeWord {
        FreeWord::reduce(self.letters.iter().copied().filter(|l| !kill(&l.gen)))
    }

    /// Replaces generators letter by letter (no reduction check on `f`).
    pub fn map_gens<F: Fn(Gen) -> Gen>(&self, f: F) -> FreeWord {
        FreeWord::reduce(self.letters.iter().map(|l| Letter::new(f(l.gen), l.exp)))
    }

    pub fn all_gens<F: Fn(&Gen) -> bool>(&self, pred: F) -> bool {
        self.letters.iter().all(|l| pred(&l.gen))
    }

    /// Sum of exponents of `gen`.
    pub fn exponent_sum(&self, gen: Gen) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.exp as i64).sum()
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if let Some(last) = out.last() {
        if last.cancels(&l) {
            out.pop();
            return;
        }
    }
    out.push(l);
}

impl FromIterator<Letter> for FreeWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FreeWord::reduce(iter)
    }
}

impl fmt::Display for FreeWord {
    /// Space-separated letters; the empty word prints as an empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A homomorphism of free groups given by generator images.
///
/// `compose(s1, s2)` is "first `s1`, then `s2`": applying it to `u` gives
/// `s2.apply(s1.apply(u))`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substitution {
    images: BTreeMap<Gen, FreeWord>,
}

impl Substitution {
    /// The identity on `x_1 .. x_m`.
    pub fn identity(m: u32) -> Self {
        let images = (1..=m).map(|i| (Gen::X(i), FreeWord::letter(Gen::X(i), 1))).collect();
        Substitution { images }
    }

    pub fn from_images<I: IntoIterator<Item = (Gen, FreeWord)>>(images: I) -> Self {
        Substitution { images: images.into_iter().collect() }
    }

    pub fn image(&self, g: &Gen) -> Option<&FreeWord> {
        self.images.get(g)
    }

    pub fn set(&mut self, g: Gen, w: FreeWord) {
        self.images.insert(g, w);
    }

    pub fn domain(&self) -> impl Iterator<Item = &Gen> {
        self.images.keys()
    }

    pub fn images(&self) -> impl Iterator<Item = (&Gen, &FreeWord)> {
        self.images.iter()
    }

    pub fn apply(&self, u: &FreeWord) -> Result<FreeWord> {
        let mut out = FreeWord::empty();
        for l in u.letters() {
            let img = self
                .images
                .get(&l.gen)
                .ok_or_else(|| Error::MissingImage(l.gen.to_string()))?;
            if l.exp > 0 {
                out.mul_assign(img);
            } else {
                out.mul_assign(&img.invert());
            }
        }
        Ok(out)
    }

    pub fn compose(first: &Substitution, then: &Substitution) -> Result<Substitution> {
        let images = first
            .images
            .iter()
            .map(|(g, w)| Ok((*g, then.apply(w)?)))
            .collect::<Result<_>>()?;
        Ok(Substitution { images })
    }

    /// True when every domain generator maps to itself.
    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|(g, w)| w.letters() == [Letter::new(*g, 1)])
    }
}
