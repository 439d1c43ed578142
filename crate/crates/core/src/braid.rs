//! Braid words, the Artin action on the free group, and the projection to the
//! symmetric group.
//!
//! The Artin action is the equality oracle for everything else in the crate:
//! `σ_i` sends `x_i ↦ x_i x_{i+1} x_i^{-1}`, `x_{i+1} ↦ x_i` and fixes the
//! other generators. Words act on the right, so `artin_auto(uv)` is
//! `compose(artin_auto(u), artin_auto(v))` ("first `u`, then `v`").

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freewords::{FreeWord, Gen, Letter, Substitution};

/// `σ_index^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub index: u32,
    pub exp: i8,
}

impl Crossing {
    pub fn new(index: u32, exp: i8) -> Self {
        Crossing { index, exp }
    }

    pub fn inverse(self) -> Self {
        Crossing { index: self.index, exp: -self.exp }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<Crossing>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<Crossing>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Index(format!("braid group needs at least 2 strands, got {strands}")));
        }
        if let Some(c) = letters.iter().find(|c| c.index == 0 || c.index >= strands) {
            return Err(Error::Index(format!("σ_{} on {strands} strands", c.index)));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: u32) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Builds from signed indices: `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
    pub fn from_signed(strands: u32, signed: &[i32]) -> Result<Self> {
        let letters = signed
            .iter()
            .map(|&s| Crossing::new(s.unsigned_abs(), if s < 0 { -1 } else { 1 }))
            .collect();
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[Crossing] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|c| c.inverse()).collect(),
        }
    }

    /// Same letters, viewed on more strands.
    pub fn widen(&self, strands: u32) -> Result<BraidWord> {
        BraidWord::new(strands, self.letters.clone())
    }

    pub fn push(&mut self, c: Crossing) {
        debug_assert!(c.index >= 1 && c.index < self.strands);
        self.letters.push(c);
    }

    pub fn extend(&mut self, other: &BraidWord) {
        debug_assert_eq!(self.strands, other.strands);
        self.letters.extend_from_slice(&other.letters);
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if c.exp < 0 {
                write!(f, "s{}^-1", c.index)?;
            } else {
                write!(f, "s{}", c.index)?;
            }
        }
        Ok(())
    }
}

/// A permutation of `{1..n}`; `images[k - 1]` is the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::Index(format!("not a permutation: {images:?}")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition `(i, i+1)` of `{1..n}`.
    pub fn adjacent(n: u32, i: u32) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i as usize - 1, i as usize);
        p
    }

    pub fn size(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, k: u32) -> u32 {
        self.images[k as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// Functional composition: `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.size(), other.size());
        Permutation { images: other.images.iter().map(|&k| self.apply(k)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = k as u32 + 1;
        }
        Permutation { images }
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let p = &self.images;
        let mut c = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    c += 1;
                }
            }
        }
        c
    }

    /// All permutations of `{1..n}` in lexicographic order of image lists.
    pub fn all(n: u32) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, n: u32, out: &mut Vec<Permutation>) {
            if prefix.len() == n as usize {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for v in 1..=n {
                if !used[v as usize - 1] {
                    used[v as usize - 1] = true;
                    prefix.push(v);
                    rec(prefix, used, n, out);
                    prefix.pop();
                    used[v as usize - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n as usize], n, &mut out);
        out
    }

    /// A reduced word `s_{i_1} … s_{i_l}` (indices in `1..n-1`) with
    /// `adjacent(i_1) ∘ … ∘ adjacent(i_l) = self`.
    pub fn reduced_word(&self) -> Vec<u32> {
        // Peel right descents: if p(i) > p(i+1) then p = (p ∘ s_i) ∘ s_i with shorter p ∘ s_i.
        let mut p = self.images.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..p.len().saturating_sub(1) {
                if p[i] > p[i + 1] {
                    p.swap(i, i + 1);
                    word.push(i as u32 + 1);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let n = self.images.len();
        let mut seen = vec![false; n];
        for start in 1..=n as u32 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            f.write_str("(")?;
            let mut k = start;
            let mut first = true;
            while !seen[k as usize - 1] {
                seen[k as usize - 1] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{k}")?;
                first = false;
                k = self.apply(k);
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

// Compact signed-integer free words used by the oracle: `+i` is `x_i`, `-i` is `x_i^{-1}`.
type Raw = Vec<i32>;

fn raw_push(out: &mut Raw, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn raw_concat(parts: &[(&Raw, bool)]) -> Raw {
    let mut out = Raw::with_capacity(parts.iter().map(|(w, _)| w.len()).sum());
    for (w, inv) in parts {
        if *inv {
            for &l in w.iter().rev() {
                raw_push(&mut out, -l);
            }
        } else {
            for &l in w.iter() {
                raw_push(&mut out, l);
            }
        }
    }
    out
}

/// Images of `x_1 .. x_m` under the Artin action of `w`.
///
/// Letters are folded in right to left so that only two images change per
/// letter: `artin(σ v)(x) = artin(v)(σ(x))`.
pub fn artin_images(w: &BraidWord) -> Vec<Raw> {
    let m = w.strands as usize;
    let mut images: Vec<Raw> = (1..=m as i32).map(|i| vec![i]).collect();
    for c in w.letters.iter().rev() {
        let i = c.index as usize - 1;
        let (a, b) = (&images[i], &images[i + 1]);
        let (new_a, new_b) = if c.exp > 0 {
            (raw_concat(&[(a, false), (b, false), (a, true)]), a.clone())
        } else {
            (b.clone(), raw_concat(&[(b, true), (a, false), (b, false)]))
        };
        images[i] = new_a;
        images[i + 1] = new_b;
    }
    images
}

fn raw_to_word(r: &Raw) -> FreeWord {
    FreeWord::reduce(r.iter().map(|&l| Letter::new(Gen::X(l.unsigned_abs()), if l < 0 { -1 } else { 1 })))
}

/// The substitution of `F_m` induced by `w`.
pub fn artin_auto(w: &BraidWord) -> Substitution {
    Substitution::from_images(
        artin_images(w)
            .iter()
            .enumerate()
            .map(|(k, r)| (Gen::X(k as u32 + 1), raw_to_word(r))),
    )
}

/// The substitution of `F_m` induced by a single crossing.
pub fn artin_generator(m: u32, c: Crossing) -> Result<Substitution> {
    Ok(artin_auto(&BraidWord::new(m, vec![c])?))
}

/// Equality in `B_m`, decided by comparing Artin images.
pub fn braid_eq(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands != v.strands {
        return Err(Error::StrandMismatch(u.strands, v.strands));
    }
    Ok(artin_images(u) == artin_images(v))
}

pub fn is_trivial(w: &BraidWord) -> bool {
    artin_images(w).iter().enumerate().all(|(k, r)| r.len() == 1 && r[0] == k as i32 + 1)
}

/// Image in `S_m`; `perm_of(uv) = perm_of(u) ∘ perm_of(v)`.
pub fn perm_of(w: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(w.strands);
    for c in &w.letters {
        p = p.compose(&Permutation::adjacent(w.strands, c.index));
    }
    p
}

pub fn is_pure(w: &BraidWord) -> bool {
    perm_of(w).is_identity()
}

/// `a_{ij} = σ_{j-1} … σ_{i+1} σ_i^2 σ_{i+1}^{-1} … σ_{j-1}^{-1}` in `B_m`.
pub fn a_gen(i: u32, j: u32, m: u32) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= m) {
        return Err(Error::Index(format!("a_{{{i},{j}}} needs 1 <= i < j <= {m}")));
    }
    let mut letters = Vec::with_capacity(2 * (j - i) as usize);
    for k in (i + 1..j).rev() {
        letters.push(Crossing::new(k, 1));
    }
    letters.push(Crossing::new(i, 1));
    letters.push(Crossing::new(i, 1));
    for k in i + 1..j {
        letters.push(Crossing::new(k, -1));
    }
    BraidWord::new(m, letters)
}

/// `τ_k = a_{k,g+1}` in `B_{g+n}`.
pub fn tau_gen(k: u32, g: u32, n: u32) -> Result<BraidWord> {
    if !(1 <= k && k <= g) {
        return Err(Error::Index(format!("τ_{k} needs 1 <= k <= g = {g}")));
    }
    a_gen(k, g + 1, g + n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(m: u32, s: &[i32]) -> BraidWord {
        BraidWord::from_signed(m, s).unwrap()
    }

    #[test]
    fn artin_of_sigma1() {
        let s = artin_auto(&bw(2, &[1]));
        let x = |i| FreeWord::letter(Gen::X(i), 1);
        assert_eq!(s.image(&Gen::X(1)).unwrap(), &x(1).multiply(&x(2)).multiply(&x(1).invert()));
        assert_eq!(s.image(&Gen::X(2)).unwrap(), &x(1));
        assert!(artin_auto(&bw(3, &[])).is_identity());
        assert!(artin_auto(&bw(3, &[1, -1])).is_identity());
    }

    #[test]
    fn artin_is_right_action() {
        let u = bw(4, &[1, -2, 3]);
        let v = bw(4, &[2, 2, -1]);
        let lhs = artin_auto(&u.multiply(&v).unwrap());
        let rhs = Substitution::compose(&artin_auto(&u), &artin_auto(&v)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_eq_examples() {
        assert!(braid_eq(&bw(3, &[1, 2, 1]), &bw(3, &[2, 1, 2])).unwrap());
        assert!(braid_eq(&bw(4, &[1, 3]), &bw(4, &[3, 1])).unwrap());
        assert!(!braid_eq(&bw(3, &[1, 2]), &bw(3, &[2, 1])).unwrap());
        assert!(braid_eq(&bw(3, &[1]), &bw(4, &[1])).is_err());
    }

    #[test]
    fn perm_examples() {
        assert_eq!(perm_of(&bw(3, &[1])), Permutation::from_images(vec![2, 1, 3]).unwrap());
        assert!(perm_of(&bw(3, &[1, 1])).is_identity());
        assert_eq!(perm_of(&bw(3, &[1, 2])), Permutation::from_images(vec![2, 3, 1]).unwrap());
    }

    #[test]
    fn a_gen_examples() {
        assert_eq!(a_gen(1, 2, 3).unwrap(), bw(3, &[1, 1]));
        assert_eq!(a_gen(1, 3, 3).unwrap(), bw(3, &[2, 1, 1, -2]));
        assert_eq!(a_gen(2, 4, 4).unwrap(), bw(4, &[3, 2, 2, -3]));
        assert!(a_gen(3, 2, 4).is_err());
        assert!(a_gen(1, 5, 4).is_err());
    }

    #[test]
    fn tau_gen_examples() {
        assert_eq!(tau_gen(1, 1, 2).unwrap(), bw(3, &[1, 1]));
        assert_eq!(tau_gen(2, 2, 1).unwrap(), bw(3, &[2, 2]));
        assert_eq!(tau_gen(1, 2, 2).unwrap(), bw(4, &[2, 1, 1, -2]));
        assert!(tau_gen(3, 2, 2).is_err());
    }

    #[test]
    fn purity() {
        assert!(is_pure(&bw(3, &[1, 1])));
        assert!(!is_pure(&bw(3, &[1])));
        assert!(is_pure(&a_gen(1, 3, 4).unwrap()));
    }

    #[test]
    fn a_gen_is_pure_everywhere() {
        for m in 2..=7 {
            for j in 2..=m {
                for i in 1..j {
                    assert!(is_pure(&a_gen(i, j, m).unwrap()));
                }
            }
        }
    }

    #[test]
    fn reduced_word_roundtrip() {
        for p in Permutation::all(4) {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.length());
            let mut q = Permutation::identity(4);
            for i in w {
                q = q.compose(&Permutation::adjacent(4, i));
            }
            assert_eq!(q, p);
        }
    }

    #[test]
    fn permutation_display() {
        assert_eq!(Permutation::identity(3).to_string(), "id");
        assert_eq!(Permutation::from_images(vec![2, 3, 1]).unwrap().to_string(), "(1 2 3)");
    }
}
