//! Combed normal forms for `P_m` and `P_{g,n}`.
//!
//! Both decompositions are computed by the same peeling step. Given a normal
//! free factor `N` (a column `U_j` or a row `V_i`) and a word `w`, write
//! `w = u · p` with `u ∈ N` and `p` the word with the factor letters deleted.
//! Scanning `w` left to right we keep `u`, `p` and the automorphism
//! `c ↦ p c p^{-1}` of `N` as a table of images of its free generators;
//! appending a factor letter `c` multiplies `u` by the image of `c`, appending
//! any other letter `l` updates the table through the conjugation rules
//! (`p l c l^{-1} p^{-1}` is the old table applied to `l c l^{-1}`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::braid::braid_eq;
use crate::conjrules::{conj_row, conj_top, PureLetter, PureWord};
use crate::error::{Error, Result};
use crate::freewords::{FreeWord, Gen};

pub const DEFAULT_LENGTH_CAP: usize = 1_000_000;

/// Peeling configuration.
#[derive(Debug, Clone, Copy)]
pub struct Comber {
    pub length_cap: usize,
}

impl Default for Comber {
    fn default() -> Self {
        Comber { length_cap: DEFAULT_LENGTH_CAP }
    }
}

/// `P_m = U_m ⋉ (U_{m-1} ⋉ … ⋉ U_2)`; `components[0]` is `u_m`, the last is `u_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VerticalForm {
    pub m: u32,
    pub components: Vec<FreeWord>,
}

impl VerticalForm {
    /// `u_j` for `2 <= j <= m`.
    pub fn column(&self, j: u32) -> &FreeWord {
        &self.components[(self.m - j) as usize]
    }

    pub fn recompose(&self) -> PureWord {
        concat(self.m, &self.components)
    }

    pub fn alphabets_ok(&self) -> bool {
        (2..=self.m).all(|j| self.column(j).all_gens(|g| matches!(g, Gen::A(_, c) if *c == j)))
    }
}

impl fmt::Display for VerticalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, j) in (2..=self.m).rev().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "u{j} = {}", self.column(j))?;
        }
        Ok(())
    }
}

/// `P_m = V_1 ⋉ (V_2 ⋉ … ⋉ V_{m-1})`; `components[0]` is `v_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HorizontalForm {
    pub m: u32,
    pub components: Vec<FreeWord>,
}

impl HorizontalForm {
    /// `v_i` for `1 <= i <= m - 1`.
    pub fn row(&self, i: u32) -> &FreeWord {
        &self.components[(i - 1) as usize]
    }

    pub fn recompose(&self) -> PureWord {
        concat(self.m, &self.components)
    }

    pub fn alphabets_ok(&self) -> bool {
        (1..self.m).all(|i| self.row(i).all_gens(|g| matches!(g, Gen::A(r, _) if *r == i)))
    }
}

impl fmt::Display for HorizontalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..self.m {
            if i > 1 {
                f.write_str("\n")?;
            }
            write!(f, "v{i} = {}", self.row(i))?;
        }
        Ok(())
    }
}

fn concat(m: u32, parts: &[FreeWord]) -> PureWord {
    let letters = parts
        .iter()
        .flat_map(|w| w.letters().iter().map(|l| PureLetter::from_letter(l).expect("a-letter")))
        .collect();
    PureWord::new(m, letters).expect("components within P_m")
}

/// Splits `w = u · p` with `u` in the factor selected by `in_factor`.
fn peel(
    letters: &[PureLetter],
    factor_gens: &[Gen],
    in_factor: impl Fn(&PureLetter) -> bool,
    conj: impl Fn(PureLetter, PureLetter) -> Result<FreeWord>,
    cap: usize,
) -> Result<(FreeWord, Vec<PureLetter>)> {
    let mut images: BTreeMap<Gen, FreeWord> =
        factor_gens.iter().map(|&g| (g, FreeWord::letter(g, 1))).collect();
    let mut u = FreeWord::empty();
    let mut rest = Vec::new();
    for &l in letters {
        if in_factor(&l) {
            let img = &images[&l.gen()];
            if l.exp > 0 {
                u.mul_assign(img);
            } else {
                u.mul_assign(&img.invert());
            }
            if u.len() > cap {
                return Err(Error::LengthCap(cap));
            }
        } else {
            rest.push(l);
            let mut next = BTreeMap::new();
            for &g in factor_gens {
                let (i, j) = match g {
                    Gen::A(i, j) => (i, j),
                    _ => unreachable!(),
                };
                // l c l^{-1} = c^{l^{-1}}
                let moved = conj(PureLetter::new(i, j, 1), l.inverse())?;
                let mut img = FreeWord::empty();
                for ml in moved.letters() {
                    let base = &images[&ml.gen];
                    if ml.exp > 0 {
                        img.mul_assign(base);
                    } else {
                        img.mul_assign(&base.invert());
                    }
                }
                if img.len() > cap {
                    return Err(Error::LengthCap(cap));
                }
                next.insert(g, img);
            }
            images = next;
        }
    }
    Ok((u, rest))
}

fn letters_of(w: &PureWord) -> Vec<PureLetter> {
    w.letters().to_vec()
}

impl Comber {
    pub fn comb_vertical(&self, w: &PureWord) -> Result<VerticalForm> {
        let m = w.strands();
        let mut rest = letters_of(w);
        let mut components = Vec::with_capacity(m.saturating_sub(1) as usize);
        for j in (2..=m).rev() {
            let gens: Vec<Gen> = (1..j).map(|i| Gen::A(i, j)).collect();
            let (u, r) = peel(&rest, &gens, |l| l.j == j, conj_top, self.length_cap)?;
            components.push(u);
            rest = r;
        }
        debug_assert!(rest.is_empty());
        Ok(VerticalForm { m, components })
    }

    pub fn comb_horizontal(&self, w: &PureWord) -> Result<HorizontalForm> {
        let m = w.strands();
        let mut rest = letters_of(w);
        let mut components = Vec::with_capacity(m.saturating_sub(1) as usize);
        for i in 1..m {
            let gens: Vec<Gen> = (i + 1..=m).map(|j| Gen::A(i, j)).collect();
            let (v, r) = peel(&rest, &gens, |l| l.i == i, conj_row, self.length_cap)?;
            components.push(v);
            rest = r;
        }
        debug_assert!(rest.is_empty());
        Ok(HorizontalForm { m, components })
    }

    /// Vertical form of a word over the `P_{g,n}` generator table; columns `<= g` come out empty.
    pub fn comb_pgn_vertical(&self, w: &PureWord, g: u32, n: u32) -> Result<VerticalForm> {
        check_pgn(w, g, n)?;
        self.comb_vertical(w)
    }

    /// `P_{g,n} = V̄_{g,1} ⋉ (… ⋉ (V̄_{g,g} ⋉ P̃_n))`.
    pub fn comb_pgn_horizontal(&self, w: &PureWord, g: u32, n: u32) -> Result<PgnHorizontalForm> {
        check_pgn(w, g, n)?;
        let h = self.comb_horizontal(w)?;
        let rows = h.components[..g as usize].to_vec();
        let mut tail = h.components.clone();
        for c in tail.iter_mut().take(g as usize) {
            *c = FreeWord::empty();
        }
        Ok(PgnHorizontalForm { g, n, rows, tail: HorizontalForm { m: g + n, components: tail } })
    }
}

pub(crate) fn check_pgn(w: &PureWord, g: u32, n: u32) -> Result<()> {
    if w.strands() != g + n {
        return Err(Error::ParamMismatch(format!("word on {} strands, expected g + n = {}", w.strands(), g + n)));
    }
    if let Some(l) = w.letters().iter().find(|l| l.j <= g) {
        return Err(Error::OutsideTable(l.to_string()));
    }
    Ok(())
}

pub fn comb_vertical(w: &PureWord) -> Result<VerticalForm> {
    Comber::default().comb_vertical(w)
}

pub fn comb_horizontal(w: &PureWord) -> Result<HorizontalForm> {
    Comber::default().comb_horizontal(w)
}

pub fn comb_pgn_vertical(w: &PureWord, g: u32, n: u32) -> Result<VerticalForm> {
    Comber::default().comb_pgn_vertical(w, g, n)
}

pub fn comb_pgn_horizontal(w: &PureWord, g: u32, n: u32) -> Result<PgnHorizontalForm> {
    Comber::default().comb_pgn_horizontal(w, g, n)
}

/// Horizontal form of `P_{g,n}`: the row words `v̄_{g,1..g}` (row-`i` words over
/// `P_{g+n}` letters) and the horizontal form of the `P̃_n` part, stored on
/// `g + n` strands with rows `<= g` empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PgnHorizontalForm {
    pub g: u32,
    pub n: u32,
    pub rows: Vec<FreeWord>,
    pub tail: HorizontalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PgnCertificate {
    /// Row `i` uses only row-`i` letters.
    pub row_alphabets: bool,
    /// Killing the table letters `a_{i,j}` (`j > g`) inside the free group `V_i` trivializes `v̄_{g,i}`.
    pub kill_map_trivial: bool,
    /// The tail uses only `P̃_n` letters.
    pub tail_in_ptilde: bool,
}

impl PgnCertificate {
    pub fn ok(&self) -> bool {
        self.row_alphabets && self.kill_map_trivial && self.tail_in_ptilde
    }
}

impl PgnHorizontalForm {
    pub fn recompose(&self) -> PureWord {
        let mut parts = self.rows.clone();
        parts.extend(self.tail.components.iter().skip(self.g as usize).cloned());
        concat(self.g + self.n, &parts)
    }

    pub fn certify(&self) -> PgnCertificate {
        let g = self.g;
        let row_alphabets = self
            .rows
            .iter()
            .enumerate()
            .all(|(k, v)| v.all_gens(|x| x.row() == Some(k as u32 + 1)));
        let kill_map_trivial = self.rows.iter().all(|v| v.kill(|x| x.column().is_some_and(|j| j > g)).is_empty());
        let tail_in_ptilde = self.tail.components.iter().take(g as usize).all(|c| c.is_empty())
            && self.tail.components.iter().all(|c| c.all_gens(|x| x.row().is_some_and(|i| i > g)));
        PgnCertificate { row_alphabets, kill_map_trivial, tail_in_ptilde }
    }
}

impl fmt::Display for PgnHorizontalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.rows.iter().enumerate() {
            writeln!(f, "vbar{} = {}", k + 1, v)?;
        }
        for i in self.g + 1..self.g + self.n {
            writeln!(f, "v{} = {}", i, self.tail.row(i))?;
        }
        Ok(())
    }
}

/// Membership in `U_m^{(r)} = ⟨a_{ij} : j > r⟩`.
pub fn in_u_series(w: &PureWord, r: u32) -> Result<bool> {
    let f = comb_vertical(w)?;
    Ok((2..=f.m.min(r)).all(|j| f.column(j).is_empty()))
}

/// Membership in `V_m^{(r)} = ⟨a_{ij} : i < r⟩`.
pub fn in_v_series(w: &PureWord, r: u32) -> Result<bool> {
    let f = comb_horizontal(w)?;
    Ok((r.max(1)..f.m).all(|i| f.row(i).is_empty()))
}

/// Oracle check that a recomposed word equals the original.
pub fn recompose_matches(original: &PureWord, recomposed: &PureWord) -> Result<bool> {
    braid_eq(&original.to_braid(), &recomposed.widen(original.strands())?.to_braid())
}

impl PureWord {
    /// Same letters on more strands.
    pub fn widen(&self, m: u32) -> Result<PureWord> {
        PureWord::new(m, self.letters().to_vec())
    }
}

/// Deletes every letter `a_{ij}` with `i <= g` (forgetting the first `g` strands, without relabelling).
pub fn kill_rows_upto(w: &PureWord, g: u32) -> PureWord {
    PureWord::new(w.strands(), w.letters().iter().copied().filter(|l| l.i > g).collect()).expect("subword")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freewords::Letter;

    fn pw(m: u32, ls: &[(u32, u32, i8)]) -> PureWord {
        PureWord::new(m, ls.iter().map(|&(i, j, e)| PureLetter::new(i, j, e)).collect()).unwrap()
    }

    fn fw(ls: &[(u32, u32, i8)]) -> FreeWord {
        FreeWord::reduce(ls.iter().map(|&(i, j, e)| Letter::new(Gen::A(i, j), e)))
    }

    #[test]
    fn vertical_examples() {
        let f = comb_vertical(&pw(3, &[(1, 3, 1), (1, 2, 1)])).unwrap();
        assert_eq!(f.column(3), &fw(&[(1, 3, 1)]));
        assert_eq!(f.column(2), &fw(&[(1, 2, 1)]));

        let w = pw(3, &[(1, 2, 1), (1, 3, 1)]);
        let f = comb_vertical(&w).unwrap();
        assert_eq!(f.column(3), &fw(&[(2, 3, -1), (1, 3, 1), (2, 3, 1)]));
        assert_eq!(f.column(2), &fw(&[(1, 2, 1)]));
        assert!(recompose_matches(&w, &f.recompose()).unwrap());

        let f = comb_vertical(&PureWord::empty(4)).unwrap();
        assert!(f.components.iter().all(|c| c.is_empty()));
        assert_eq!(f.components.len(), 3);
    }

    #[test]
    fn horizontal_examples() {
        let f = comb_horizontal(&pw(3, &[(1, 2, 1), (2, 3, 1)])).unwrap();
        assert_eq!(f.row(1), &fw(&[(1, 2, 1)]));
        assert_eq!(f.row(2), &fw(&[(2, 3, 1)]));

        // a23 a13 = (a23 a13 a23^{-1}) a23; the row-1 word comes from the row-by-end rule at ε = -1.
        let w = pw(3, &[(2, 3, 1), (1, 3, 1)]);
        let f = comb_horizontal(&w).unwrap();
        assert_eq!(f.row(1), &fw(&[(1, 3, -1), (1, 2, -1), (1, 3, 1), (1, 2, 1), (1, 3, 1)]));
        assert_eq!(f.row(2), &fw(&[(2, 3, 1)]));
        assert!(recompose_matches(&w, &f.recompose()).unwrap());
        // The ε = +1 reading a12 a13 a12^{-1} does not recompose to w.
        let wrong = HorizontalForm { m: 3, components: vec![fw(&[(1, 2, 1), (1, 3, 1), (1, 2, -1)]), fw(&[(2, 3, 1)])] };
        assert!(!recompose_matches(&w, &wrong.recompose()).unwrap());

        let f = comb_horizontal(&PureWord::empty(3)).unwrap();
        assert!(f.components.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn pgn_vertical_examples() {
        let f = comb_pgn_vertical(&pw(4, &[(1, 3, 1)]), 2, 2).unwrap();
        assert!(f.column(4).is_empty());
        assert_eq!(f.column(3), &fw(&[(1, 3, 1)]));
        assert!(f.column(2).is_empty());

        let w = pw(4, &[(1, 3, 1), (1, 4, 1)]);
        let f = comb_pgn_vertical(&w, 2, 2).unwrap();
        assert!(recompose_matches(&w, &f.recompose()).unwrap());
        assert!(f.column(2).is_empty());

        let w = pw(4, &[(3, 4, 1), (1, 3, 1)]);
        let f = comb_pgn_vertical(&w, 2, 2).unwrap();
        assert_eq!(f.column(4), &fw(&[(3, 4, 1)]));
        assert!(recompose_matches(&w, &f.recompose()).unwrap());

        assert!(matches!(comb_pgn_vertical(&pw(4, &[(1, 2, 1)]), 2, 2), Err(Error::OutsideTable(_))));
    }

    #[test]
    fn pgn_horizontal_examples() {
        let f = comb_pgn_horizontal(&pw(4, &[(1, 3, 1)]), 2, 2).unwrap();
        assert_eq!(f.rows[0], fw(&[(1, 3, 1)]));
        assert!(f.rows[1].is_empty());
        assert!(f.certify().ok());

        let w = pw(4, &[(2, 3, 1), (1, 3, 1)]);
        let f = comb_pgn_horizontal(&w, 2, 2).unwrap();
        assert!(f.rows[0].letters().iter().any(|l| l.gen == Gen::A(1, 2)));
        assert!(f.certify().ok());
        assert!(recompose_matches(&w, &f.recompose()).unwrap());

        let f = comb_pgn_horizontal(&pw(4, &[(3, 4, 1)]), 2, 2).unwrap();
        assert!(f.rows.iter().all(|r| r.is_empty()));
        assert_eq!(f.tail.row(3), &fw(&[(3, 4, 1)]));
    }

    #[test]
    fn series_examples() {
        assert!(in_u_series(&pw(4, &[(3, 4, 1)]), 3).unwrap());
        assert!(!in_u_series(&pw(4, &[(1, 2, 1)]), 3).unwrap());
        assert!(in_u_series(&pw(4, &[(1, 2, 1), (3, 4, 1)]), 1).unwrap());
        assert!(in_v_series(&pw(4, &[(1, 4, 1), (2, 3, -1)]), 3).unwrap());
        assert!(!in_v_series(&pw(4, &[(3, 4, 1)]), 3).unwrap());
        assert!(in_v_series(&pw(4, &[(3, 4, 1)]), 4).unwrap());
    }

    #[test]
    fn length_cap_is_enforced() {
        let w = pw(4, &[(1, 2, 1), (2, 3, 1), (1, 3, -1), (1, 4, 1), (2, 4, 1), (3, 4, -1)].repeat(3));
        let tiny = Comber { length_cap: 4 };
        assert!(matches!(tiny.comb_vertical(&w), Err(Error::LengthCap(4))));
    }
}
