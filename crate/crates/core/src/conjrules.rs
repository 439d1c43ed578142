//! Conjugation rules for pure braid generators, stored as pattern/template
//! tables so every instance can be checked against the Artin oracle.
//!
//! Three tables:
//! - crossing rules: `σ_k^{-d} a_{ij} σ_k^{d}` for `d = +1` (the classical
//!   action) and the formally inverted table for `d = -1`;
//! - column rules: conjugation of a column-`j` letter by a letter whose top
//!   index is below `j`, result stays in column `j`;
//! - row rules: conjugation of a row-`i` letter by a letter whose first index
//!   exceeds `i`, result stays in row `i`.
//!
//! Every rule reads `y^{-ε} x y^{ε} = rhs(ε)` for `ε = ±1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{a_gen, BraidWord, Crossing};
use crate::error::{Error, Result};
use crate::freewords::{FreeWord, Gen, Letter};

/// `a_{ij}^{exp}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PureLetter {
    pub i: u32,
    pub j: u32,
    pub exp: i8,
}

impl PureLetter {
    pub fn new(i: u32, j: u32, exp: i8) -> Self {
        debug_assert!(i < j);
        PureLetter { i, j, exp }
    }

    pub fn inverse(self) -> Self {
        PureLetter { exp: -self.exp, ..self }
    }

    pub fn gen(&self) -> Gen {
        Gen::A(self.i, self.j)
    }

    pub fn to_letter(self) -> Letter {
        Letter::new(Gen::A(self.i, self.j), self.exp)
    }

    pub fn from_letter(l: &Letter) -> Option<Self> {
        match l.gen {
            Gen::A(i, j) => Some(PureLetter::new(i, j, l.exp)),
            _ => None,
        }
    }
}

impl fmt::Display for PureLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_letter().fmt(f)
    }
}

/// A word in the generators `a_{ij}` of `P_m` (not necessarily reduced).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureWord {
    m: u32,
    letters: Vec<PureLetter>,
}

impl PureWord {
    pub fn new(m: u32, letters: Vec<PureLetter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| !(1 <= l.i && l.i < l.j && l.j <= m)) {
            return Err(Error::Index(format!("{l} outside P_{m}")));
        }
        Ok(PureWord { m, letters })
    }

    pub fn empty(m: u32) -> Self {
        PureWord { m, letters: Vec::new() }
    }

    pub fn from_free(m: u32, w: &FreeWord) -> Result<Self> {
        let letters = w
            .letters()
            .iter()
            .map(|l| PureLetter::from_letter(l).ok_or_else(|| Error::Index(format!("{l} is not an a-letter"))))
            .collect::<Result<Vec<_>>>()?;
        PureWord::new(m, letters)
    }

    pub fn strands(&self) -> u32 {
        self.m
    }

    pub fn letters(&self) -> &[PureLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free(&self) -> FreeWord {
        FreeWord::reduce(self.letters.iter().map(|l| l.to_letter()))
    }

    pub fn multiply(&self, other: &PureWord) -> PureWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PureWord { m: self.m.max(other.m), letters }
    }

    pub fn invert(&self) -> PureWord {
        PureWord { m: self.m, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Expansion into crossings via `a_gen`.
    pub fn to_braid(&self) -> BraidWord {
        free_to_braid(self.m, &self.letters.iter().map(|l| l.to_letter()).collect::<Vec<_>>())
    }
}

impl fmt::Display for PureWord {
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

/// Expands a-letters (and `σ` letters given as `Gen::S`) into a braid word on `m` strands.
pub fn free_to_braid(m: u32, letters: &[Letter]) -> BraidWord {
    let mut out = BraidWord::identity(m);
    for l in letters {
        match l.gen {
            Gen::A(i, j) => {
                let a = a_gen(i, j, m).expect("a-letter within strands");
                if l.exp > 0 {
                    out.extend(&a);
                } else {
                    out.extend(&a.invert());
                }
            }
            Gen::S(k) => out.push(Crossing::new(k, l.exp)),
            other => panic!("cannot expand {other} as a braid"),
        }
    }
    out
}

// ---- template language -------------------------------------------------------

/// Pattern variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Var {
    I,
    J,
    K,
    N,
}

/// `var + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ix(pub Var, pub i32);

/// Exponent in a template, relative to the rule's `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ex {
    Plus,
    Minus,
    Eps,
    NegEps,
}

impl Ex {
    fn eval(self, eps: i8) -> i8 {
        match self {
            Ex::Plus => 1,
            Ex::Minus => -1,
            Ex::Eps => eps,
            Ex::NegEps => -eps,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum Tmpl {
    A(Ix, Ix, Ex),
    Seq(Vec<Tmpl>),
    Pow(Box<Tmpl>, Ex),
    /// `[a, b] = a^{-1} b^{-1} a b`
    Comm(Box<Tmpl>, Box<Tmpl>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Binding {
    vals: [Option<u32>; 4],
}

impl Binding {
    fn slot(v: Var) -> usize {
        match v {
            Var::I => 0,
            Var::J => 1,
            Var::K => 2,
            Var::N => 3,
        }
    }

    pub fn get(&self, v: Var) -> u32 {
        self.vals[Self::slot(v)].expect("bound variable")
    }

    pub fn with(mut self, v: Var, x: u32) -> Self {
        self.vals[Self::slot(v)] = Some(x);
        self
    }

    fn eval(&self, ix: Ix) -> i64 {
        self.get(ix.0) as i64 + ix.1 as i64
    }

    /// Unifies `ix` with the concrete value `v`.
    fn unify(&mut self, ix: Ix, v: u32) -> bool {
        let s = Self::slot(ix.0);
        match self.vals[s] {
            Some(b) => b as i64 + ix.1 as i64 == v as i64,
            None => {
                let b = v as i64 - ix.1 as i64;
                if b < 1 {
                    return false;
                }
                self.vals[s] = Some(b as u32);
                true
            }
        }
    }

    pub fn bound(&self, v: Var) -> Option<u32> {
        self.vals[Self::slot(v)]
    }
}

impl Tmpl {
    fn eval(&self, b: &Binding, eps: i8, out: &mut Vec<Letter>) -> Result<()> {
        match self {
            Tmpl::A(p, q, e) => {
                let (i, j) = (b.eval(*p), b.eval(*q));
                if i < 1 || i >= j {
                    return Err(Error::Index(format!("template produced a_({i},{j})")));
                }
                out.push(Letter::new(Gen::A(i as u32, j as u32), e.eval(eps)));
            }
            Tmpl::Seq(v) => {
                for t in v {
                    t.eval(b, eps, out)?;
                }
            }
            Tmpl::Pow(t, e) => {
                let mut inner = Vec::new();
                t.eval(b, eps, &mut inner)?;
                if e.eval(eps) > 0 {
                    out.extend(inner);
                } else {
                    out.extend(inner.into_iter().rev().map(|l| l.inverse()));
                }
            }
            Tmpl::Comm(x, y) => {
                let (mut xs, mut ys) = (Vec::new(), Vec::new());
                x.eval(b, eps, &mut xs)?;
                y.eval(b, eps, &mut ys)?;
                out.extend(xs.iter().rev().map(|l| l.inverse()));
                out.extend(ys.iter().rev().map(|l| l.inverse()));
                out.extend(xs);
                out.extend(ys);
            }
        }
        Ok(())
    }

    /// Evaluates and freely reduces.
    pub fn instantiate(&self, b: &Binding, eps: i8) -> Result<FreeWord> {
        let mut out = Vec::new();
        self.eval(b, eps, &mut out)?;
        Ok(FreeWord::reduce(out))
    }
}

fn a(p: Ix, q: Ix, e: Ex) -> Tmpl {
    Tmpl::A(p, q, e)
}
fn seq(v: Vec<Tmpl>) -> Tmpl {
    Tmpl::Seq(v)
}
fn pow(t: Tmpl, e: Ex) -> Tmpl {
    Tmpl::Pow(Box::new(t), e)
}
fn comm(x: Tmpl, y: Tmpl) -> Tmpl {
    Tmpl::Comm(Box::new(x), Box::new(y))
}
/// `c^{ε} x c^{-ε}`
fn conj_eps(c: Tmpl, x: Tmpl) -> Tmpl {
    seq(vec![pow(c.clone(), Ex::Eps), x, pow(c, Ex::NegEps)])
}

const I: Var = Var::I;
const J: Var = Var::J;
const K: Var = Var::K;
const N: Var = Var::N;

fn v(x: Var) -> Ix {
    Ix(x, 0)
}

// ---- rule tables ---------------------------------------------------------------

/// What the rule conjugates by.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum Conjugator {
    /// `σ_ix`; `dir = +1` reads `σ^{-1} x σ`, `dir = -1` reads `σ x σ^{-1}`.
    Sigma(Ix, i8),
    /// `a_{p,q}^{ε}` with both `ε = ±1`.
    Pure(Ix, Ix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Table {
    Crossing,
    Column,
    Row,
}

pub struct Rule {
    pub name: &'static str,
    pub table: Table,
    pub conjugator: Conjugator,
    pub target: (Ix, Ix),
    pub condition: fn(&Binding) -> bool,
    pub rhs: Tmpl,
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rule").field("name", &self.name).finish()
    }
}

impl Rule {
    /// Binds the pattern against a concrete target `a_{p,q}` and conjugator.
    fn bind(&self, target: (u32, u32), conj: ConjValue) -> Option<Binding> {
        let mut b = Binding::default();
        if !b.unify(self.target.0, target.0) || !b.unify(self.target.1, target.1) {
            return None;
        }
        match (self.conjugator, conj) {
            (Conjugator::Sigma(ix, dir), ConjValue::Sigma(k, d)) if dir == d => {
                if !b.unify(ix, k) {
                    return None;
                }
            }
            (Conjugator::Pure(p, q), ConjValue::Pure(r, s)) => {
                if !b.unify(p, r) || !b.unify(q, s) {
                    return None;
                }
            }
            _ => return None,
        }
        (self.condition)(&b).then_some(b)
    }
}

#[derive(Debug, Clone, Copy)]
enum ConjValue {
    Sigma(u32, i8),
    Pure(u32, u32),
}

fn crossing_rules() -> Vec<Rule> {
    use Ex::*;
    vec![
        // σ_k^{-1} a_{ij} σ_k = a_{ij}, k ∉ {i-1, i, j-1, j}
        Rule {
            name: "sigma-far",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(K), 1),
            target: (v(I), v(J)),
            condition: |b| {
                let (i, j, k) = (b.get(I), b.get(J), b.get(K));
                k + 1 != i && k != i && k + 1 != j && k != j
            },
            rhs: a(v(I), v(J), Plus),
        },
        Rule {
            name: "sigma-own",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(I), 1),
            target: (v(I), Ix(I, 1)),
            condition: |_| true,
            rhs: a(v(I), Ix(I, 1), Plus),
        },
        Rule {
            name: "sigma-below-i",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(Ix(I, -1), 1),
            target: (v(I), v(J)),
            condition: |_| true,
            rhs: a(Ix(I, -1), v(J), Plus),
        },
        Rule {
            name: "sigma-at-i",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(I), 1),
            target: (v(I), v(J)),
            condition: |b| b.get(J) != b.get(I) + 1,
            rhs: seq(vec![
                a(Ix(I, 1), v(J), Plus),
                comm(a(v(I), Ix(I, 1), Minus), a(v(I), v(J), Minus)),
            ]),
        },
        Rule {
            name: "sigma-below-j",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(Ix(J, -1), 1),
            target: (v(I), v(J)),
            condition: |b| b.get(J) - 1 > b.get(I),
            rhs: a(v(I), Ix(J, -1), Plus),
        },
        Rule {
            name: "sigma-at-j",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(J), 1),
            target: (v(I), v(J)),
            condition: |_| true,
            rhs: seq(vec![a(v(I), v(J), Plus), a(v(I), Ix(J, 1), Plus), a(v(I), v(J), Minus)]),
        },
        // Inverted table: σ_k a_{ij} σ_k^{-1}.
        Rule {
            name: "sigma-far-inv",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(K), -1),
            target: (v(I), v(J)),
            condition: |b| {
                let (i, j, k) = (b.get(I), b.get(J), b.get(K));
                k + 1 != i && k != i && k + 1 != j && k != j
            },
            rhs: a(v(I), v(J), Plus),
        },
        Rule {
            name: "sigma-own-inv",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(I), -1),
            target: (v(I), Ix(I, 1)),
            condition: |_| true,
            rhs: a(v(I), Ix(I, 1), Plus),
        },
        // inverse of sigma-below-i: σ_i a_{ij} σ_i^{-1} = a_{i+1,j}
        Rule {
            name: "sigma-below-i-inv",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(I), -1),
            target: (v(I), v(J)),
            condition: |b| b.get(J) > b.get(I) + 1,
            rhs: a(Ix(I, 1), v(J), Plus),
        },
        // inverse of sigma-at-i: σ_{i-1} a_{ij} σ_{i-1}^{-1} = a_{i-1,j} [a_{ij}^{-1}, a_{i-1,i}^{-1}]
        Rule {
            name: "sigma-at-i-inv",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(Ix(I, -1), -1),
            target: (v(I), v(J)),
            condition: |_| true,
            rhs: seq(vec![
                a(Ix(I, -1), v(J), Plus),
                comm(a(v(I), v(J), Minus), a(Ix(I, -1), v(I), Minus)),
            ]),
        },
        // inverse of sigma-below-j: σ_j a_{ij} σ_j^{-1} = a_{i,j+1}
        Rule {
            name: "sigma-below-j-inv",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(v(J), -1),
            target: (v(I), v(J)),
            condition: |_| true,
            rhs: a(v(I), Ix(J, 1), Plus),
        },
        // inverse of sigma-at-j: σ_{j-1} a_{ij} σ_{j-1}^{-1} = a_{ij}^{-1} a_{i,j-1} a_{ij}
        Rule {
            name: "sigma-at-j-inv",
            table: Table::Crossing,
            conjugator: Conjugator::Sigma(Ix(J, -1), -1),
            target: (v(I), v(J)),
            condition: |b| b.get(J) - 1 > b.get(I),
            rhs: seq(vec![a(v(I), v(J), Minus), a(v(I), Ix(J, -1), Plus), a(v(I), v(J), Plus)]),
        },
    ]
}

fn column_rules() -> Vec<Rule> {
    use Ex::*;
    vec![
        // a_{ik}^{-ε} a_{kj} a_{ik}^{ε} = (a_{ij} a_{kj})^ε a_{kj} (a_{ij} a_{kj})^{-ε}
        Rule {
            name: "column-from-left",
            table: Table::Column,
            conjugator: Conjugator::Pure(v(I), v(K)),
            target: (v(K), v(J)),
            condition: |b| b.get(I) < b.get(K) && b.get(K) < b.get(J),
            rhs: conj_eps(seq(vec![a(v(I), v(J), Plus), a(v(K), v(J), Plus)]), a(v(K), v(J), Plus)),
        },
        // a_{kn}^{-ε} a_{kj} a_{kn}^{ε} = (a_{kj} a_{nj})^ε a_{kj} (a_{kj} a_{nj})^{-ε}, n < j
        Rule {
            name: "column-from-row",
            table: Table::Column,
            conjugator: Conjugator::Pure(v(K), v(N)),
            target: (v(K), v(J)),
            condition: |b| b.get(K) < b.get(N) && b.get(N) < b.get(J),
            rhs: conj_eps(seq(vec![a(v(K), v(J), Plus), a(v(N), v(J), Plus)]), a(v(K), v(J), Plus)),
        },
        // a_{in}^{-ε} a_{kj} a_{in}^{ε} = [a_{ij}^{-ε}, a_{nj}^{-ε}]^ε a_{kj} [..]^{-ε}, i < k < n < j
        Rule {
            name: "column-nested",
            table: Table::Column,
            conjugator: Conjugator::Pure(v(I), v(N)),
            target: (v(K), v(J)),
            condition: |b| b.get(I) < b.get(K) && b.get(K) < b.get(N) && b.get(N) < b.get(J),
            rhs: conj_eps(comm(a(v(I), v(J), NegEps), a(v(N), v(J), NegEps)), a(v(K), v(J), Plus)),
        },
        // a_{in}^{-ε} a_{kj} a_{in}^{ε} = a_{kj}, k < i < n < j or n < k
        Rule {
            name: "column-commute",
            table: Table::Column,
            conjugator: Conjugator::Pure(v(I), v(N)),
            target: (v(K), v(J)),
            condition: |b| {
                let (i, j, k, n) = (b.get(I), b.get(J), b.get(K), b.get(N));
                (k < i && i < n && n < j) || (n < k && k < j)
            },
            rhs: a(v(K), v(J), Plus),
        },
    ]
}

fn row_rules() -> Vec<Rule> {
    use Ex::*;
    vec![
        // 1) a_{kj}^{-ε} a_{ik} a_{kj}^{ε} = (a_{ik} a_{ij})^ε a_{ik} (..)^{-ε}, i < k < j
        Rule {
            name: "row-by-end",
            table: Table::Row,
            conjugator: Conjugator::Pure(v(K), v(J)),
            target: (v(I), v(K)),
            condition: |b| b.get(I) < b.get(K) && b.get(K) < b.get(J),
            rhs: conj_eps(seq(vec![a(v(I), v(K), Plus), a(v(I), v(J), Plus)]), a(v(I), v(K), Plus)),
        },
        // 2) a_{jk}^{-ε} a_{ik} a_{jk}^{ε} = (a_{ij} a_{ik})^ε a_{ik} (..)^{-ε}, i < j < k
        Rule {
            name: "row-by-column",
            table: Table::Row,
            conjugator: Conjugator::Pure(v(J), v(K)),
            target: (v(I), v(K)),
            condition: |b| b.get(I) < b.get(J) && b.get(J) < b.get(K),
            rhs: conj_eps(seq(vec![a(v(I), v(J), Plus), a(v(I), v(K), Plus)]), a(v(I), v(K), Plus)),
        },
        // 3) a_{kn}^{-ε} a_{ij} a_{kn}^{ε} = [a_{ik}^{-ε}, a_{in}^{-ε}]^ε a_{ij} [..]^{-ε}, i < k < j < n
        Rule {
            name: "row-nested",
            table: Table::Row,
            conjugator: Conjugator::Pure(v(K), v(N)),
            target: (v(I), v(J)),
            condition: |b| b.get(I) < b.get(K) && b.get(K) < b.get(J) && b.get(J) < b.get(N),
            rhs: conj_eps(comm(a(v(I), v(K), NegEps), a(v(I), v(N), NegEps)), a(v(I), v(J), Plus)),
        },
        // 4) a_{in}^{-ε} a_{kj} a_{in}^{ε} = a_{kj}, k < i, n < j
        Rule {
            name: "row-commute-left",
            table: Table::Row,
            conjugator: Conjugator::Pure(v(I), v(N)),
            target: (v(K), v(J)),
            condition: |b| b.get(K) < b.get(I) && b.get(N) < b.get(J),
            rhs: a(v(K), v(J), Plus),
        },
        // 5) a_{kj}^{-ε} a_{in} a_{kj}^{ε} = a_{in}, n < k
        Rule {
            name: "row-commute-disjoint",
            table: Table::Row,
            conjugator: Conjugator::Pure(v(K), v(J)),
            target: (v(I), v(N)),
            condition: |b| b.get(N) < b.get(K),
            rhs: a(v(I), v(N), Plus),
        },
    ]
}

/// All rule tables.
pub struct RuleBook {
    pub crossing: Vec<Rule>,
    pub column: Vec<Rule>,
    pub row: Vec<Rule>,
}

impl RuleBook {
    pub fn standard() -> Self {
        RuleBook { crossing: crossing_rules(), column: column_rules(), row: row_rules() }
    }

    pub fn all(&self) -> impl Iterator<Item = &Rule> {
        self.crossing.iter().chain(&self.column).chain(&self.row)
    }
}

fn rulebook() -> &'static RuleBook {
    use std::sync::OnceLock;
    static BOOK: OnceLock<RuleBook> = OnceLock::new();
    BOOK.get_or_init(RuleBook::standard)
}

fn first_match<'a>(rules: &'a [Rule], target: (u32, u32), conj: ConjValue) -> Option<(&'a Rule, Binding)> {
    rules.iter().find_map(|r| r.bind(target, conj).map(|b| (r, b)))
}

fn finish(rhs: FreeWord, x_exp: i8) -> FreeWord {
    if x_exp > 0 {
        rhs
    } else {
        rhs.invert()
    }
}

/// `σ_k^{-e} x σ_k^{e}` as a reduced word in a-letters.
pub fn conj_by_sigma(x: PureLetter, k: u32, e: i8, m: u32) -> Result<FreeWord> {
    if x.j > m || k == 0 || k >= m {
        return Err(Error::Index(format!("σ_{k} and {x} in B_{m}")));
    }
    let (rule, b) = first_match(&rulebook().crossing, (x.i, x.j), ConjValue::Sigma(k, e))
        .ok_or_else(|| Error::NoRule(format!("σ_{k}^{e} on {x}")))?;
    let out = rule.rhs.instantiate(&b, 1)?;
    if out.letters().iter().any(|l| l.gen.column().unwrap_or(0) > m) {
        return Err(Error::Index(format!("σ_{k} on {x} leaves B_{m}")));
    }
    Ok(finish(out, x.exp))
}

/// `by^{-1} x by` for a column-`j` letter `x = a_{kj}^{±1}` and a conjugator
/// whose top index is below `j`; the result uses only column-`j` letters.
pub fn conj_top(x: PureLetter, by: PureLetter) -> Result<FreeWord> {
    if by.j >= x.j {
        return Err(Error::NoRule(format!("{by} is not below the column of {x}")));
    }
    let (rule, b) = first_match(&rulebook().column, (x.i, x.j), ConjValue::Pure(by.i, by.j))
        .ok_or_else(|| Error::NoRule(format!("column rule for {x} by {by}")))?;
    Ok(finish(rule.rhs.instantiate(&b, by.exp)?, x.exp))
}

/// `by^{-1} x by` for a row-`i` letter `x = a_{ij}^{±1}` and a conjugator
/// with first index above `i`; the result uses only row-`i` letters.
pub fn conj_row(x: PureLetter, by: PureLetter) -> Result<FreeWord> {
    if by.i <= x.i {
        return Err(Error::NoRule(format!("{by} does not start after row {}", x.i)));
    }
    let (rule, b) = first_match(&rulebook().row, (x.i, x.j), ConjValue::Pure(by.i, by.j))
        .ok_or_else(|| Error::NoRule(format!("row rule for {x} by {by}")))?;
    Ok(finish(rule.rhs.instantiate(&b, by.exp)?, x.exp))
}

/// The name of the rule `conj_top`/`conj_row`/`conj_by_sigma` would use.
pub fn rule_name_for_top(x: PureLetter, by: PureLetter) -> Option<&'static str> {
    first_match(&rulebook().column, (x.i, x.j), ConjValue::Pure(by.i, by.j)).map(|(r, _)| r.name)
}

// ---- exhaustive verification ------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct RuleInstance {
    pub rule: &'static str,
    pub m: u32,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleReport {
    pub max_m: u32,
    pub instances: Vec<RuleInstance>,
}

impl RuleReport {
    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.holds).count()
    }
}

fn rule_instances(rule: &Rule, m: u32) -> Vec<(Binding, i8)> {
    let mut out = Vec::new();
    let vars = [I, J, K, N];
    // Enumerate every assignment of the four variables in 1..=m (unused ones are fixed to 1).
    let used: Vec<Var> = vars.iter().copied().filter(|&x| uses_var(rule, x)).collect();
    let mut idx = vec![1u32; used.len()];
    loop {
        let mut b = Binding::default();
        for (x, &val) in used.iter().zip(&idx) {
            b = b.with(*x, val);
        }
        if instance_in_range(rule, &b, m) && (rule.condition)(&b) {
            match rule.conjugator {
                Conjugator::Sigma(..) => out.push((b, 1)),
                Conjugator::Pure(..) => {
                    out.push((b, 1));
                    out.push((b, -1));
                }
            }
        }
        // odometer
        let mut p = 0;
        loop {
            if p == idx.len() {
                return out;
            }
            idx[p] += 1;
            if idx[p] <= m {
                break;
            }
            idx[p] = 1;
            p += 1;
        }
    }
}

fn tmpl_vars(t: &Tmpl, acc: &mut Vec<Var>) {
    match t {
        Tmpl::A(p, q, _) => {
            acc.push(p.0);
            acc.push(q.0);
        }
        Tmpl::Seq(v) => v.iter().for_each(|x| tmpl_vars(x, acc)),
        Tmpl::Pow(x, _) => tmpl_vars(x, acc),
        Tmpl::Comm(x, y) => {
            tmpl_vars(x, acc);
            tmpl_vars(y, acc);
        }
    }
}

fn uses_var(rule: &Rule, x: Var) -> bool {
    let mut acc = vec![rule.target.0 .0, rule.target.1 .0];
    match rule.conjugator {
        Conjugator::Sigma(ix, _) => acc.push(ix.0),
        Conjugator::Pure(p, q) => {
            acc.push(p.0);
            acc.push(q.0);
        }
    }
    tmpl_vars(&rule.rhs, &mut acc);
    acc.contains(&x)
}

fn pair_ok(b: &Binding, p: Ix, q: Ix, m: u32) -> bool {
    let (i, j) = (b.eval(p), b.eval(q));
    1 <= i && i < j && j <= m as i64
}

fn tmpl_in_range(t: &Tmpl, b: &Binding, m: u32) -> bool {
    match t {
        Tmpl::A(p, q, _) => pair_ok(b, *p, *q, m),
        Tmpl::Seq(v) => v.iter().all(|x| tmpl_in_range(x, b, m)),
        Tmpl::Pow(x, _) => tmpl_in_range(x, b, m),
        Tmpl::Comm(x, y) => tmpl_in_range(x, b, m) && tmpl_in_range(y, b, m),
    }
}

fn instance_in_range(rule: &Rule, b: &Binding, m: u32) -> bool {
    let conj_ok = match rule.conjugator {
        Conjugator::Sigma(ix, _) => {
            let k = b.eval(ix);
            1 <= k && k < m as i64
        }
        Conjugator::Pure(p, q) => pair_ok(b, p, q, m),
    };
    conj_ok && pair_ok(b, rule.target.0, rule.target.1, m) && tmpl_in_range(&rule.rhs, b, m)
}

/// Checks one rule instance against the Artin oracle.
pub fn verify_instance(rule: &Rule, b: &Binding, eps: i8, m: u32) -> Result<RuleInstance> {
    let (ti, tj) = (b.eval(rule.target.0) as u32, b.eval(rule.target.1) as u32);
    let x = a_gen(ti, tj, m)?;
    let (lhs, lhs_text) = match rule.conjugator {
        Conjugator::Sigma(ix, dir) => {
            let k = b.eval(ix) as u32;
            let s = BraidWord::new(m, vec![Crossing::new(k, 1)])?;
            let (pre, post) = if dir > 0 { (s.invert(), s) } else { (s.clone(), s.invert()) };
            let text = if dir > 0 { format!("s{k}^-1 a{ti}.{tj} s{k}") } else { format!("s{k} a{ti}.{tj} s{k}^-1") };
            (pre.multiply(&x)?.multiply(&post)?, text)
        }
        Conjugator::Pure(p, q) => {
            let (ci, cj) = (b.eval(p) as u32, b.eval(q) as u32);
            let y = a_gen(ci, cj, m)?;
            let (pre, post) = if eps > 0 { (y.invert(), y) } else { (y.clone(), y.invert()) };
            let e = if eps > 0 { "" } else { "^-1" };
            let ne = if eps > 0 { "^-1" } else { "" };
            (pre.multiply(&x)?.multiply(&post)?, format!("a{ci}.{cj}{ne} a{ti}.{tj} a{ci}.{cj}{e}"))
        }
    };
    let rhs = rule.rhs.instantiate(b, eps)?;
    let rhs_braid = free_to_braid(m, rhs.letters());
    Ok(RuleInstance {
        rule: rule.name,
        m,
        lhs: lhs_text,
        rhs: rhs.to_string(),
        holds: crate::braid::braid_eq(&lhs, &rhs_braid)?,
    })
}

/// Every instance of every rule, in every `B_m` with `m <= max_m`, checked by the oracle.
pub fn verify_all(max_m: u32) -> Result<RuleReport> {
    use rayon::prelude::*;
    let book = rulebook();
    let mut jobs = Vec::new();
    for rule in book.all() {
        for m in 2..=max_m {
            for (b, eps) in rule_instances(rule, m) {
                jobs.push((rule, b, eps, m));
            }
        }
    }
    let instances = jobs
        .par_iter()
        .map(|(rule, b, eps, m)| verify_instance(rule, b, *eps, *m))
        .collect::<Result<Vec<_>>>()?;
    Ok(RuleReport { max_m, instances })
}

/// The defining relations of `P_m`, every index pattern, checked by the oracle.
pub fn verify_pure_relations(m: u32) -> Result<RuleReport> {
    let a = |i: u32, j: u32, e: i8| PureLetter::new(i, j, e);
    let mut rels: Vec<(&'static str, Vec<PureLetter>, Vec<PureLetter>)> = Vec::new();
    for i in 1..=m {
        for k in i + 1..=m {
            for j in k + 1..=m {
                rels.push(("triangle-left", vec![a(i, k, 1), a(i, j, 1), a(k, j, 1)], vec![a(k, j, 1), a(i, k, 1), a(i, j, 1)]));
            }
        }
    }
    for k in 1..=m {
        for n in k + 1..=m {
            for j in n + 1..=m {
                rels.push(("triangle-right", vec![a(n, j, 1), a(k, n, 1), a(k, j, 1)], vec![a(k, j, 1), a(n, j, 1), a(k, n, 1)]));
                for i in 1..k {
                    let c = [a(k, n, 1), a(k, j, 1), a(k, n, -1)];
                    let mut lhs = c.to_vec();
                    lhs.push(a(i, n, 1));
                    let mut rhs = vec![a(i, n, 1)];
                    rhs.extend(c);
                    rels.push(("nested", lhs, rhs));
                }
            }
        }
    }
    for k in 1..=m {
        for j in k + 1..=m {
            for i in 1..=m {
                for n in i + 1..=m {
                    if (k < i && n < j) || n < k {
                        rels.push(("commute", vec![a(k, j, 1), a(i, n, 1)], vec![a(i, n, 1), a(k, j, 1)]));
                    }
                }
            }
        }
    }
    let instances = rels
        .into_iter()
        .map(|(name, lhs, rhs)| {
            let (l, r) = (PureWord::new(m, lhs)?, PureWord::new(m, rhs)?);
            Ok(RuleInstance {
                rule: name,
                m,
                lhs: l.to_string(),
                rhs: r.to_string(),
                holds: crate::braid::braid_eq(&l.to_braid(), &r.to_braid())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RuleReport { max_m: m, instances })
}
