//! The handlebody braid group `B_{g,n}` inside `B_{g+n}`.
//!
//! Words are over `τ_1..τ_g` and `σ_{g+1}..σ_{g+n-1}`; `τ_k` embeds as
//! `a_{k,g+1}`. `φ` deletes the `τ` letters and `ψ` sends `σ_i` to the
//! transposition `(i-g, i-g+1)` of `{1..n}`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::braid::{braid_eq, is_trivial, perm_of, tau_gen, BraidWord, Crossing, Permutation};
use crate::combing::{check_pgn, comb_horizontal, comb_vertical};
use crate::conjrules::{conj_by_sigma, conj_top, PureLetter, PureWord, RuleInstance, RuleReport};
use crate::error::{Error, Result};
use crate::freewords::{FreeWord, Gen};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HLetter {
    Tau(u32, i8),
    Sigma(u32, i8),
}

impl HLetter {
    pub fn inverse(self) -> Self {
        match self {
            HLetter::Tau(k, e) => HLetter::Tau(k, -e),
            HLetter::Sigma(i, e) => HLetter::Sigma(i, -e),
        }
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, HLetter::Tau(..))
    }
}

impl fmt::Display for HLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, k, e) = match *self {
            HLetter::Tau(k, e) => ('t', k, e),
            HLetter::Sigma(i, e) => ('s', i, e),
        };
        if e < 0 {
            write!(f, "{c}{k}^-1")
        } else {
            write!(f, "{c}{k}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HandleWord {
    g: u32,
    n: u32,
    letters: Vec<HLetter>,
}

impl HandleWord {
    pub fn new(g: u32, n: u32, letters: Vec<HLetter>) -> Result<Self> {
        if n == 0 || g + n < 2 {
            return Err(Error::Index(format!("B_{{{g},{n}}} needs n >= 1 and g + n >= 2")));
        }
        for l in &letters {
            match *l {
                HLetter::Tau(k, e) if (1..=g).contains(&k) && e.abs() == 1 => {}
                HLetter::Sigma(i, e) if i > g && i < g + n && e.abs() == 1 => {}
                _ => return Err(Error::Index(format!("{l} is not a generator of B_{{{g},{n}}}"))),
            }
        }
        Ok(HandleWord { g, n, letters })
    }

    pub fn empty(g: u32, n: u32) -> Result<Self> {
        HandleWord::new(g, n, Vec::new())
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn letters(&self) -> &[HLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &HandleWord) -> Result<HandleWord> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::ParamMismatch(format!(
                "B_{{{},{}}} vs B_{{{},{}}}",
                self.g, self.n, other.g, other.n
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(HandleWord { letters, ..*self })
    }

    pub fn invert(&self) -> HandleWord {
        HandleWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect(), ..*self }
    }

    /// The braid on `g + n` strands.
    pub fn embed(&self) -> BraidWord {
        let m = self.g + self.n;
        let mut out = BraidWord::identity(m);
        for l in &self.letters {
            match *l {
                HLetter::Tau(k, e) => {
                    let t = tau_gen(k, self.g, self.n).expect("validated");
                    out.extend(&if e > 0 { t } else { t.invert() });
                }
                HLetter::Sigma(i, e) => out.push(Crossing::new(i, e)),
            }
        }
        out
    }

    /// Deletes the `τ` letters.
    pub fn phi(&self) -> HandleWord {
        HandleWord { letters: self.letters.iter().copied().filter(|l| !l.is_tau()).collect(), ..*self }
    }

    pub fn psi(&self) -> Permutation {
        let mut p = Permutation::identity(self.n);
        for l in &self.letters {
            if let HLetter::Sigma(i, _) = *l {
                p = p.compose(&Permutation::adjacent(self.n, i - self.g));
            }
        }
        p
    }

    /// `w · φ(w)^{-1}`.
    pub fn r_part(&self) -> HandleWord {
        self.multiply(&self.phi().invert()).expect("same parameters")
    }

    /// Writes `w = P · φ(w)` with `P` a pure braid in `P_{g,n}` whose letters all lie in rows `<= g`.
    pub fn split_pure(&self) -> Result<PureWord> {
        let m = self.g + self.n;
        let mut pure = FreeWord::empty();
        let mut sigmas: Vec<Crossing> = Vec::new();
        for l in &self.letters {
            match *l {
                HLetter::Sigma(i, e) => sigmas.push(Crossing::new(i, e)),
                HLetter::Tau(k, e) => {
                    // s a_{k,g+1} s^{-1}, innermost crossing first
                    let mut word = FreeWord::letter(Gen::A(k, self.g + 1), 1);
                    for c in sigmas.iter().rev() {
                        let mut next = FreeWord::empty();
                        for x in word.letters() {
                            let x = PureLetter::from_letter(x).expect("a-letter");
                            next.mul_assign(&conj_by_sigma(x, c.index, -c.exp, m)?);
                        }
                        word = next;
                    }
                    pure.mul_assign(&if e > 0 { word } else { word.invert() });
                }
            }
        }
        PureWord::from_free(m, &pure)
    }
}

impl fmt::Display for HandleWord {
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

fn hw(g: u32, n: u32, letters: &[HLetter]) -> HandleWord {
    HandleWord::new(g, n, letters.to_vec()).expect("generated in range")
}

/// Every instance of the five relation families of `B_{g,n}`, checked after embedding.
pub fn presentation_check(g: u32, n: u32) -> Result<RuleReport> {
    use HLetter::{Sigma as S, Tau as T};
    HandleWord::empty(g, n)?;
    let top = g + n - 1;
    let mut rels: Vec<(&'static str, HandleWord, HandleWord)> = Vec::new();
    for i in g + 1..=top {
        for j in i + 2..=top {
            rels.push(("far-commute", hw(g, n, &[S(i, 1), S(j, 1)]), hw(g, n, &[S(j, 1), S(i, 1)])));
        }
        if i + 1 <= top {
            rels.push((
                "braid",
                hw(g, n, &[S(i, 1), S(i + 1, 1), S(i, 1)]),
                hw(g, n, &[S(i + 1, 1), S(i, 1), S(i + 1, 1)]),
            ));
        }
    }
    for k in 1..=g {
        for i in g + 2..=top {
            rels.push(("tau-sigma", hw(g, n, &[T(k, 1), S(i, 1)]), hw(g, n, &[S(i, 1), T(k, 1)])));
        }
        if n >= 2 {
            let s = g + 1;
            rels.push((
                "tau-loop",
                hw(g, n, &[T(k, 1), S(s, 1), T(k, 1), S(s, 1)]),
                hw(g, n, &[S(s, 1), T(k, 1), S(s, 1), T(k, 1)]),
            ));
            for l in 1..=g - k {
                rels.push((
                    "tau-pair",
                    hw(g, n, &[T(k, 1), S(s, -1), T(k + l, 1), S(s, 1)]),
                    hw(g, n, &[S(s, -1), T(k + l, 1), S(s, 1), T(k, 1)]),
                ));
            }
        }
    }
    let instances = rels
        .into_iter()
        .map(|(name, l, r)| {
            Ok(RuleInstance {
                rule: name,
                m: g + n,
                lhs: l.to_string(),
                rhs: r.to_string(),
                holds: braid_eq(&l.embed(), &r.embed())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RuleReport { max_m: g + n, instances })
}

/// `m_{kl} = σ_{k-1} σ_{k-2} … σ_l` (local indices, empty unless `l < k`), shifted by `g`.
fn m_kl(g: u32, k: u32, l: u32) -> Vec<HLetter> {
    (l..k).rev().map(|i| HLetter::Sigma(i + g, 1)).collect()
}

/// The Schreier transversal `Λ_n`: all products `∏_{k=2}^{n} m_{k,j_k}`, `1 <= j_k <= k`.
pub fn lambda_set(g: u32, n: u32) -> Result<Vec<HandleWord>> {
    HandleWord::empty(g, n)?;
    let mut out = vec![Vec::new()];
    for k in 2..=n {
        let mut next = Vec::with_capacity(out.len() * k as usize);
        for prefix in &out {
            for j in 1..=k {
                let mut w: Vec<HLetter> = prefix.clone();
                w.extend(m_kl(g, k, j));
                next.push(w);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|ls| hw(g, n, &ls)).collect())
}

/// The element of `Λ_n` mapping to `p` under `ψ`.
pub fn coset_rep(g: u32, p: &Permutation) -> Result<HandleWord> {
    let n = p.size();
    // ψ(m_{k,j}) sends j to k and the earlier factors fix k, so j_k is read off from the top down.
    let mut letters = Vec::new();
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for k in (2..=n).rev() {
        let j = rest.inverse().apply(k);
        let mk = hw(g, n, &m_kl(g, k, j)).psi();
        rest = rest.compose(&mk.inverse());
        factors.push(j);
    }
    for (idx, j) in factors.iter().rev().enumerate() {
        letters.extend(m_kl(g, idx as u32 + 2, *j));
    }
    HandleWord::new(g, n, letters)
}

/// Components `ū_{g+1}, …, ū_{g+n}` (column words in `ker π_k`) and the `σ` tail `φ(w)`,
/// with `w = ū_{g+n} ⋯ ū_{g+1} · φ(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RDecomp {
    pub g: u32,
    pub n: u32,
    pub components: Vec<FreeWord>,
    pub tail: HandleWord,
}

impl RDecomp {
    /// `ū_k` for `g + 1 <= k <= g + n`.
    pub fn component(&self, k: u32) -> &FreeWord {
        &self.components[(k - self.g - 1) as usize]
    }

    pub fn pure_product(&self) -> PureWord {
        let mut w = FreeWord::empty();
        for c in self.components.iter().rev() {
            w.mul_assign(c);
        }
        PureWord::from_free(self.g + self.n, &w).expect("column words")
    }

    pub fn to_braid(&self) -> BraidWord {
        let mut b = self.pure_product().to_braid();
        b.extend(&self.tail.embed());
        b
    }

    /// Column alphabet and `π_k(ū_k) = 1` for every component.
    pub fn certify(&self) -> bool {
        let g = self.g;
        (g + 1..=g + self.n).all(|k| {
            let u = self.component(k);
            u.all_gens(|x| x.column() == Some(k)) && u.kill(|x| x.row().is_some_and(|i| i <= g)).is_empty()
        })
    }
}

impl fmt::Display for RDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in self.g + 1..=self.g + self.n {
            writeln!(f, "ubar{k} = {}", self.component(k))?;
        }
        write!(f, "tail = {}", self.tail)
    }
}

/// `R`-part decomposition of any word: components of `r_part(w)` plus the tail `φ(w)`.
pub fn decompose(w: &HandleWord) -> Result<RDecomp> {
    let (g, n) = (w.g, w.n);
    let p = w.split_pure()?;
    let f = comb_vertical(&p)?;
    let components = (g + 1..=g + n).map(|k| f.column(k).clone()).collect();
    Ok(RDecomp { g, n, components, tail: w.phi() })
}

/// Decomposition of an element of `R_{g,n} = ker φ`.
pub fn r_decompose(w: &HandleWord) -> Result<RDecomp> {
    if !is_trivial(&w.phi().embed()) {
        return Err(Error::NotInKernel);
    }
    let mut d = decompose(w)?;
    d.tail = HandleWord::empty(w.g, w.n)?;
    Ok(d)
}

/// How the shifted components are conjugated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShiftDirection {
    /// `ū^{x^{-1}} = x ū x^{-1}` where `x` is the product of the projections to the left.
    Inverse,
    /// `ū^{x} = x^{-1} ū x`.
    Direct,
}

/// `h = c_{g+1} c_{g+2} ⋯ c_{g+n} · w_{g+1} ⋯ w_{g+n}` for `h` in `P_{g,n}`, where
/// `h = u_{g+1} ⋯ u_{g+n}` is the ascending vertical form, `w_k = π_k(u_k)`,
/// and `c_k` is `ū_k = u_k w_k^{-1}` conjugated by `w_{g+1} ⋯ w_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftDecomp {
    pub g: u32,
    pub n: u32,
    pub components: Vec<FreeWord>,
    pub tail: FreeWord,
}

impl ShiftDecomp {
    pub fn recompose(&self) -> PureWord {
        let mut w = FreeWord::empty();
        for c in &self.components {
            w.mul_assign(c);
        }
        w.mul_assign(&self.tail);
        PureWord::from_free(self.g + self.n, &w).expect("a-letters")
    }

    pub fn certify(&self) -> bool {
        let g = self.g;
        self.components.iter().enumerate().all(|(idx, c)| {
            let k = g + 1 + idx as u32;
            c.all_gens(|x| x.column() == Some(k)) && c.kill(|x| x.row().is_some_and(|i| i <= g)).is_empty()
        }) && self.tail.all_gens(|x| x.row().is_some_and(|i| i > g))
    }
}

/// `u^{y}` for a column word `u` and `y` over letters of lower columns.
fn conj_column_word(u: &FreeWord, y: &FreeWord) -> Result<FreeWord> {
    let mut cur = u.clone();
    for yl in y.letters() {
        let by = PureLetter::from_letter(yl).expect("a-letter");
        let mut next = FreeWord::empty();
        for x in cur.letters() {
            next.mul_assign(&conj_top(PureLetter::from_letter(x).expect("a-letter"), by)?);
        }
        cur = next;
    }
    Ok(cur)
}

pub fn shift_decompose(h: &PureWord, g: u32, n: u32, dir: ShiftDirection) -> Result<ShiftDecomp> {
    check_pgn(h, g, n)?;
    // ascending form from the descending form of h^{-1}
    let f = comb_vertical(&h.invert())?;
    let mut components = Vec::new();
    let mut shifted = FreeWord::empty();
    for k in g + 1..=g + n {
        let u = f.column(k).invert();
        let w = u.kill(|x| x.row().is_some_and(|i| i <= g));
        let ubar = u.multiply(&w.invert());
        let y = match dir {
            ShiftDirection::Inverse => shifted.invert(),
            ShiftDirection::Direct => shifted.clone(),
        };
        components.push(conj_column_word(&ubar, &y)?);
        shifted.mul_assign(&w);
    }
    Ok(ShiftDecomp { g, n, components, tail: shifted })
}

#[derive(Debug, Clone, Serialize)]
pub struct RankWitness {
    pub n: u32,
    pub samples: usize,
    /// Generators seen in the row-1 components, sorted.
    pub alphabet: Vec<String>,
    pub ok: bool,
}

/// For `g = 1`, every sampled `r_part` combs horizontally into row 1 alone,
/// over `a_{12}, …, a_{1,n+1}`.
pub fn r1n_rank_witness<R: Rng>(n: u32, samples: usize, max_len: usize, rng: &mut R) -> Result<RankWitness> {
    let mut seen = std::collections::BTreeSet::new();
    let mut ok = true;
    for _ in 0..samples {
        let len = rng.gen_range(0..=max_len);
        let w = random_handle_word(1, n, len, rng)?;
        let h = comb_horizontal(&w.r_part().split_pure()?)?;
        ok &= h.components.iter().skip(1).all(|c| c.is_empty());
        ok &= h.row(1).all_gens(|x| matches!(x, Gen::A(1, j) if *j <= n + 1));
        for l in h.row(1).letters() {
            seen.insert(l.gen);
        }
    }
    Ok(RankWitness { n, samples, alphabet: seen.iter().map(|g| g.to_string()).collect(), ok })
}

/// A uniformly random word of length `len` over the generators of `B_{g,n}` and their inverses.
pub fn random_handle_word<R: Rng>(g: u32, n: u32, len: usize, rng: &mut R) -> Result<HandleWord> {
    let gens = g + n - 1;
    if gens == 0 {
        return HandleWord::empty(g, n);
    }
    let letters = (0..len)
        .map(|_| {
            let x = rng.gen_range(0..gens);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            if x < g {
                HLetter::Tau(x + 1, e)
            } else {
                HLetter::Sigma(x + 1, e)
            }
        })
        .collect();
    HandleWord::new(g, n, letters)
}

/// `ψ` agrees with the permutation of the embedded braid on the moving strands.
pub fn psi_matches_embedding(w: &HandleWord) -> bool {
    let full = perm_of(&w.embed());
    let g = w.g;
    (1..=g).all(|k| full.apply(k) == k) && (1..=w.n).all(|k| full.apply(k + g) - g == w.psi().apply(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use HLetter::{Sigma as S, Tau as T};

    fn a(i: u32, j: u32) -> FreeWord {
        FreeWord::letter(Gen::A(i, j), 1)
    }

    #[test]
    fn embed_examples() {
        assert_eq!(hw(1, 2, &[T(1, 1)]).embed(), BraidWord::from_signed(3, &[1, 1]).unwrap());
        assert_eq!(hw(1, 2, &[S(2, 1)]).embed(), BraidWord::from_signed(3, &[2]).unwrap());
        assert_eq!(hw(2, 2, &[T(1, 1), S(3, 1)]).embed(), BraidWord::from_signed(4, &[2, 1, 1, -2, 3]).unwrap());
        assert!(HandleWord::new(2, 2, vec![S(2, 1)]).is_err());
        assert!(HandleWord::new(1, 2, vec![T(2, 1)]).is_err());
    }

    #[test]
    fn presentation_examples() {
        for (g, n) in [(1, 2), (2, 2), (1, 3), (3, 4)] {
            let r = presentation_check(g, n).unwrap();
            assert_eq!(r.failures(), 0, "g={g} n={n}");
        }
        let r = presentation_check(2, 2).unwrap();
        assert!(r.instances.iter().any(|i| i.lhs == "t1 s3^-1 t2 s3"));
        let r = presentation_check(1, 3).unwrap();
        assert!(r.instances.iter().any(|i| i.lhs == "t1 s3" && i.holds));
    }

    #[test]
    fn psi_phi_examples() {
        assert!(hw(1, 2, &[T(1, 1)]).psi().is_identity());
        assert_eq!(hw(2, 3, &[S(3, 1)]).psi(), Permutation::adjacent(3, 1));
        let c = hw(0, 3, &[S(1, 1), S(2, 1)]).psi();
        assert_eq!(c.images(), &[2, 3, 1]);
        assert_eq!(hw(1, 2, &[T(1, 1), S(2, 1)]).phi(), hw(1, 2, &[S(2, 1)]));
        assert!(hw(2, 2, &[T(1, 1), T(2, -1)]).phi().is_empty());
        let w = hw(2, 3, &[S(3, 1), T(2, 1), S(4, -1)]);
        assert!(psi_matches_embedding(&w));
        assert_eq!(w.psi(), w.phi().psi());
    }

    #[test]
    fn coset_reps() {
        assert!(coset_rep(1, &Permutation::identity(3)).unwrap().is_empty());
        assert_eq!(coset_rep(1, &Permutation::adjacent(2, 1)).unwrap(), hw(1, 2, &[S(2, 1)]));
        for g in 0..=2 {
            for n in 2..=4 {
                if g + n < 2 {
                    continue;
                }
                let lam = lambda_set(g, n).unwrap();
                let mut perms: Vec<_> = lam.iter().map(|w| w.psi()).collect();
                perms.sort();
                perms.dedup();
                assert_eq!(perms.len(), lam.len());
                for p in Permutation::all(n) {
                    let w = coset_rep(g, &p).unwrap();
                    assert_eq!(w.psi(), p);
                    assert!(lam.contains(&w));
                }
            }
        }
        let three = Permutation::from_images(vec![2, 3, 1]).unwrap();
        let w = coset_rep(0, &three).unwrap();
        assert_eq!(lambda_set(0, 3).unwrap().iter().filter(|x| x.psi() == three).count(), 1);
        assert_eq!(w.psi(), three);
    }

    #[test]
    fn r_part_examples() {
        assert_eq!(hw(1, 2, &[T(1, 1)]).r_part(), hw(1, 2, &[T(1, 1)]));
        assert!(is_trivial(&hw(1, 2, &[S(2, 1)]).r_part().embed()));
        let r = hw(1, 2, &[T(1, 1), S(2, 1)]).r_part();
        assert!(braid_eq(&r.embed(), &hw(1, 2, &[T(1, 1)]).embed()).unwrap());
    }

    #[test]
    fn r_decompose_examples() {
        let d = r_decompose(&hw(1, 2, &[T(1, 1)])).unwrap();
        assert_eq!(d.component(2), &a(1, 2));
        assert!(d.component(3).is_empty());

        let w = hw(1, 2, &[S(2, 1), T(1, 1), S(2, -1)]);
        let d = r_decompose(&w).unwrap();
        assert_eq!(d.component(3), &a(1, 3));
        assert!(d.certify());
        assert!(braid_eq(&d.to_braid(), &w.embed()).unwrap());

        let d = r_decompose(&HandleWord::empty(2, 2).unwrap()).unwrap();
        assert!(d.components.iter().all(|c| c.is_empty()));

        assert_eq!(r_decompose(&hw(1, 2, &[T(1, 1), S(2, 1)])), Err(Error::NotInKernel));
    }

    #[test]
    fn decompose_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let g = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let len = rng.gen_range(0..=10);
            let w = random_handle_word(g, n, len, &mut rng).unwrap();
            let d = decompose(&w).unwrap();
            assert!(d.certify(), "{w}");
            assert!(braid_eq(&d.to_braid(), &w.embed()).unwrap(), "{w}");
            assert!(psi_matches_embedding(&w));
        }
    }

    #[test]
    fn shift_direction_is_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut direct_failures = 0;
        for _ in 0..200 {
            let (g, n) = (rng.gen_range(1..=2), rng.gen_range(2..=3));
            let m = g + n;
            let len = rng.gen_range(1..=8);
            let letters = (0..len)
                .map(|_| {
                    let j = rng.gen_range(g + 1..=m);
                    let i = rng.gen_range(1..j);
                    PureLetter::new(i, j, if rng.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect();
            let h = PureWord::new(m, letters).unwrap();
            let inv = shift_decompose(&h, g, n, ShiftDirection::Inverse).unwrap();
            assert!(inv.certify());
            assert!(braid_eq(&inv.recompose().to_braid(), &h.to_braid()).unwrap(), "{h}");
            let dir = shift_decompose(&h, g, n, ShiftDirection::Direct).unwrap();
            if !braid_eq(&dir.recompose().to_braid(), &h.to_braid()).unwrap() {
                direct_failures += 1;
            }
        }
        assert!(direct_failures > 0);
    }

    #[test]
    fn rank_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = r1n_rank_witness(1, 20, 8, &mut rng).unwrap();
        assert!(w.ok);
        assert_eq!(w.alphabet, vec!["a1.2"]);
        for n in 2..=3 {
            let w = r1n_rank_witness(n, 50, 10, &mut rng).unwrap();
            assert!(w.ok);
            assert!(w.alphabet.len() <= n as usize);
        }
    }

    #[test]
    fn top_block_closed_under_sigma_and_lambda() {
        for (g, n) in [(1, 3), (2, 3), (3, 2)] {
            let m = g + n;
            for alpha in lambda_set(g, n).unwrap() {
                for i in 1..=g {
                    for j in g + 1..=m {
                        // α^{-1} a_{ij} α
                        let w = alpha.invert().embed();
                        let mut b = w.clone();
                        b.extend(&crate::braid::a_gen(i, j, m).unwrap());
                        b.extend(&alpha.embed());
                        let sigma_part = HandleWord::new(g, n, alpha.letters().to_vec()).unwrap();
                        let mut word = FreeWord::letter(Gen::A(i, j), 1);
                        for l in sigma_part.letters() {
                            if let HLetter::Sigma(k, e) = *l {
                                let mut next = FreeWord::empty();
                                for x in word.letters() {
                                    next.mul_assign(&conj_by_sigma(PureLetter::from_letter(x).unwrap(), k, e, m).unwrap());
                                }
                                word = next;
                            }
                        }
                        assert!(word.all_gens(|x| x.row().is_some_and(|r| r <= g) && x.column().is_some_and(|c| c > g)));
                        let pw = PureWord::from_free(m, &word).unwrap();
                        assert!(braid_eq(&pw.to_braid(), &b).unwrap());
                        let h = comb_horizontal(&pw).unwrap();
                        assert!(h.components.iter().skip(g as usize).all(|c| c.is_empty()));
                    }
                }
            }
        }
    }

    #[test]
    fn row_g_closed_under_ptilde() {
        let (g, n) = (2, 3);
        let m = g + n;
        for j in g + 1..=m {
            for k in g + 1..m {
                for l in k + 1..=m {
                    for e in [1, -1] {
                        let c = crate::conjrules::conj_row(PureLetter::new(g, j, 1), PureLetter::new(k, l, e)).unwrap();
                        assert!(c.all_gens(|x| x.row() == Some(g)));
                    }
                }
            }
        }
    }
}
