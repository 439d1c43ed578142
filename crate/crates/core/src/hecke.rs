//! `H_n(q)` on the basis `T_w`, and a rewriting engine for `H_{g,n}(q)`.
//!
//! `H_{g,n}(q)` is the group algebra of `B_{g,n}` over `ℤ[q^{±1}]` modulo
//! `s_i^2 = (q-1) s_i + q`. Terms are words over loop letters `t_{ab}^{±1}`
//! (`a <= g < b`) and positive crossings `s_i`; `s_i^{-1}` is replaced by
//! `q^{-1} s_i + (q^{-1} - 1)` as soon as it appears. Reduction pushes every
//! `s` to the right, sorts loop letters by column, and expands the trailing
//! `s`-word in the basis of `H_n(q)`.
//!
//! Two loop families are supported:
//! * [`Basis::Positive`]: `t_{a,g+1} = t_a`, `t_{a,b} = s_{b-1} t_{a,b-1} s_{b-1}`;
//! * [`Basis::Prime`]: `t_{a,b} = s_{b-1} t_{a,b-1} s_{b-1}^{-1}`, the image of `a_{ab}`.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::Permutation;
use crate::conjrules::{conj_top, PureLetter};
use crate::error::{Error, Result};
use crate::freewords::{FreeWord, Gen, Letter};
use crate::laurent::Laurent;
use crate::wreath::WreathElement;

// ---- H_n(q) ---------------------------------------------------------------------

/// An element `Σ c_w T_w` of `H_n(q)`.
pub type HnElem = BTreeMap<Permutation, Laurent>;

fn add_to<K: Ord>(map: &mut BTreeMap<K, Laurent>, k: K, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let v = map.entry(k).or_default();
    *v += c;
    if v.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

pub fn hn_basis(p: Permutation) -> HnElem {
    BTreeMap::from([(p, Laurent::one())])
}

/// `x · s_i` (`1 <= i < n`).
pub fn hn_mul_gen(x: &HnElem, i: u32) -> HnElem {
    let mut out = HnElem::new();
    for (w, c) in x {
        let ws = w.compose(&Permutation::adjacent(w.size(), i));
        if w.apply(i) < w.apply(i + 1) {
            add_to(&mut out, ws, c);
        } else {
            add_to(&mut out, w.clone(), &(c * &Laurent::q_minus_one()));
            add_to(&mut out, ws, &(c * &Laurent::q()));
        }
    }
    out
}

/// `s_i · x`.
pub fn hn_lmul_gen(i: u32, x: &HnElem) -> HnElem {
    let mut out = HnElem::new();
    for (w, c) in x {
        let sw = Permutation::adjacent(w.size(), i).compose(w);
        let inv = w.inverse();
        if inv.apply(i) < inv.apply(i + 1) {
            add_to(&mut out, sw, c);
        } else {
            add_to(&mut out, w.clone(), &(c * &Laurent::q_minus_one()));
            add_to(&mut out, sw, &(c * &Laurent::q()));
        }
    }
    out
}

/// Expands a word `s_{i_1}^{e_1} ⋯` (local indices) in the basis.
pub fn hn_reduce(n: u32, word: &[(u32, i8)]) -> HnElem {
    let mut x = hn_basis(Permutation::identity(n));
    for &(i, e) in word {
        let xs = hn_mul_gen(&x, i);
        if e > 0 {
            x = xs;
        } else {
            // s^{-1} = q^{-1} s + (q^{-1} - 1)
            let mut out = HnElem::new();
            for (w, c) in xs {
                add_to(&mut out, w, &(&c * &Laurent::monomial(1, -1)));
            }
            for (w, c) in &x {
                add_to(&mut out, w.clone(), &(c * &Laurent::qinv_minus_one()));
            }
            x = out;
        }
    }
    x
}

pub fn hn_mul(x: &HnElem, y: &HnElem) -> HnElem {
    let mut out = HnElem::new();
    for (w, c) in y {
        let mut part = x.clone();
        for i in w.reduced_word() {
            part = hn_mul_gen(&part, i);
        }
        for (v, d) in part {
            add_to(&mut out, v, &(&d * c));
        }
    }
    out
}

pub fn hn_specialize_q1(x: &HnElem) -> BTreeMap<Permutation, i128> {
    x.iter().map(|(w, c)| (w.clone(), c.eval_q1())).filter(|(_, c)| *c != 0).collect()
}

// ---- letters and words --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Positive,
    Prime,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Positive => "positive",
            Basis::Prime => "prime",
        })
    }
}

/// A letter of a pending term. Crossings are kept positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sym {
    T { a: u32, b: u32, e: i8 },
    S(u32),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sym::T { a, b, e } => write!(f, "t{a}.{b}{}", if e < 0 { "^-1" } else { "" }),
            Sym::S(i) => write!(f, "s{i}"),
        }
    }
}

/// An input letter: a loop letter of the chosen basis or a crossing with sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HeckeLetter {
    T { a: u32, b: u32, e: i8 },
    S { i: u32, e: i8 },
}

impl fmt::Display for HeckeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HeckeLetter::T { a, b, e } => Sym::T { a, b, e }.fmt(f),
            HeckeLetter::S { i, e } => write!(f, "s{i}{}", if e < 0 { "^-1" } else { "" }),
        }
    }
}

/// A formal combination of input words.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HeckeExpr {
    pub terms: Vec<(Laurent, Vec<HeckeLetter>)>,
}

impl HeckeExpr {
    pub fn word(letters: Vec<HeckeLetter>) -> Self {
        HeckeExpr { terms: vec![(Laurent::one(), letters)] }
    }

    pub fn check(&self, g: u32, n: u32) -> Result<()> {
        for (_, w) in &self.terms {
            for l in w {
                let ok = match *l {
                    HeckeLetter::T { a, b, e } => a >= 1 && a <= g && b > g && b <= g + n && e.abs() == 1,
                    HeckeLetter::S { i, e } => i > g && i < g + n && e.abs() == 1,
                };
                if !ok {
                    return Err(Error::Index(format!("{l} is not a letter of H_{{{g},{n}}}")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for HeckeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(Laurent, String)> = self
            .terms
            .iter()
            .map(|(c, w)| (c.clone(), w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        write_combination(f, &parts)
    }
}

/// `c1*[w1] + c2*[w2] …` with unit coefficients omitted and signs pulled out.
fn write_combination(f: &mut fmt::Formatter<'_>, parts: &[(Laurent, String)]) -> fmt::Result {
    if parts.is_empty() {
        return f.write_str("0");
    }
    for (k, (c, w)) in parts.iter().enumerate() {
        let single = c.terms().count() == 1;
        let (neg, mag) = match c.terms().next() {
            Some((_, x)) if single && x < 0 => (true, -c.clone()),
            _ => (false, c.clone()),
        };
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        if mag.is_one() {
            write!(f, "[{w}]")?;
        } else if single {
            write!(f, "{mag}*[{w}]")?;
        } else {
            write!(f, "({mag})*[{w}]")?;
        }
    }
    Ok(())
}

/// The word realizing `t_{ij}` in terms of `t_i` and crossings.
pub fn t_elem(i: u32, j: u32, g: u32, basis: Basis) -> Vec<HeckeLetter> {
    let mut w: Vec<HeckeLetter> = (g + 1..j).rev().map(|k| HeckeLetter::S { i: k, e: 1 }).collect();
    w.push(HeckeLetter::T { a: i, b: g + 1, e: 1 });
    let e = if basis == Basis::Positive { 1 } else { -1 };
    w.extend((g + 1..j).map(|k| HeckeLetter::S { i: k, e }));
    w
}

// ---- normal forms ---------------------------------------------------------------

/// `u_1 u_2 ⋯ u_n T_w`; column `c` is a reduced word over `t_{1,g+c}, …, t_{g,g+c}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SigmaWord {
    pub columns: Vec<FreeWord>,
    pub tail: Permutation,
}

impl SigmaWord {
    /// Letters as printed: loop letters column by column, then a reduced word for the tail.
    pub fn render(&self, g: u32) -> String {
        let mut parts: Vec<String> = Vec::new();
        for c in &self.columns {
            parts.extend(c.letters().iter().map(|l| l.to_string()));
        }
        parts.extend(self.tail.reduced_word().iter().map(|i| format!("s{}", i + g)));
        parts.join(" ")
    }

    /// Loop letters as `(row, column, exponent)` in order.
    pub fn loop_letters(&self) -> Vec<(u32, u32, i8)> {
        self.columns
            .iter()
            .flat_map(|c| c.letters().iter())
            .map(|l| match l.gen {
                Gen::T(a, b) => (a, b, l.exp),
                _ => unreachable!(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgnElement {
    pub g: u32,
    pub n: u32,
    pub basis: Basis,
    pub terms: BTreeMap<SigmaWord, Laurent>,
}

impl Serialize for HgnElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<(String, String)> =
            self.terms.iter().map(|(w, c)| (c.to_string(), w.render(self.g))).collect();
        let mut st = s.serialize_struct("HgnElement", 5)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

impl HgnElement {
    pub fn specialize_q1(&self) -> BTreeMap<WreathElement, i128> {
        let mut out: BTreeMap<WreathElement, i128> = BTreeMap::new();
        for (w, c) in &self.terms {
            let cols = w
                .columns
                .iter()
                .map(|col| {
                    col.map_gens(|x| match x {
                        Gen::T(a, b) => Gen::B(a, b),
                        o => o,
                    })
                })
                .collect();
            let we = WreathElement { g: self.g, n: self.n, columns: cols, perm: w.tail.clone() };
            *out.entry(we).or_insert(0) += c.eval_q1();
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Every term has the ordered shape `t_{i_1}^{k_1} ⋯ t_{i_r}^{k_r} σ` with strictly increasing columns
    /// and one letter per column (the `g = 1` basis shapes).
    pub fn has_g1_shape(&self) -> bool {
        self.g == 1
            && self.terms.keys().all(|w| {
                w.columns.iter().all(|c| {
                    let gens: Vec<Gen> = c.letters().iter().map(|l| l.gen).collect();
                    gens.windows(2).all(|p| p[0] == p[1])
                        && c.letters().windows(2).all(|p| p[0].exp == p[1].exp)
                })
            })
    }
}

impl fmt::Display for HgnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(Laurent, String)> = self.terms.iter().map(|(w, c)| (c.clone(), w.render(self.g))).collect();
        write_combination(f, &parts)
    }
}

// ---- rewriting --------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Rewrite the leftmost redex of each term first.
    Leftmost,
    /// Rewrite the rightmost redex of each term first.
    Rightmost,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReduceConfig {
    pub basis: Basis,
    pub strategy: Strategy,
    /// Maximum number of rule applications.
    pub budget: usize,
    /// Maximum length of a pending term.
    pub max_term_len: usize,
}

const COEFF_BOUND: u128 = 1 << 60;

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig { basis: Basis::Positive, strategy: Strategy::Leftmost, budget: 20_000, max_term_len: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    BudgetExhausted,
    TermTooLong,
    /// A coefficient left the range where `i128` arithmetic is safe.
    CoefficientBound,
    NoRule(String),
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::BudgetExhausted => f.write_str("step budget exhausted"),
            FailureReason::TermTooLong => f.write_str("term length limit exceeded"),
            FailureReason::CoefficientBound => f.write_str("coefficient bound exceeded"),
            FailureReason::NoRule(m) => write!(f, "no rule: {m}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReduceFailure {
    pub reason: FailureReason,
    pub steps: usize,
    pub pending_terms: usize,
    /// A few of the unfinished terms.
    pub stuck: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reduced {
    pub element: HgnElement,
    pub steps: usize,
}

type Combo = Vec<(Laurent, Vec<Sym>)>;

fn one(w: Vec<Sym>) -> Combo {
    vec![(Laurent::one(), w)]
}

/// `s_i · t_{a,b}^e` rewritten with the crossing on the right.
pub fn push_rule(basis: Basis, i: u32, a: u32, b: u32, e: i8) -> Combo {
    let t = |b: u32, e: i8| Sym::T { a, b, e };
    let q = Laurent::q;
    let qi = || Laurent::monomial(1, -1);
    if i != b && i + 1 != b {
        return one(vec![t(b, e), Sym::S(i)]);
    }
    match (basis, i == b, e > 0) {
        // s_b t_{ab} = t_{a,b+1} s_b^{-1}
        (Basis::Positive, true, true) => vec![
            (qi(), vec![t(b + 1, 1), Sym::S(b)]),
            (Laurent::qinv_minus_one(), vec![t(b + 1, 1)]),
        ],
        // s_{b-1} t_{ab} = s_{b-1}^2 t_{a,b-1} s_{b-1}
        (Basis::Positive, false, true) => vec![
            (Laurent::q_minus_one(), vec![t(b, 1)]),
            (q(), vec![t(b - 1, 1), Sym::S(i)]),
        ],
        // s_b t_{ab}^{-1} = s_b^2 t_{a,b+1}^{-1} s_b
        (Basis::Positive, true, false) => vec![
            (Laurent::q_minus_one(), vec![t(b, -1)]),
            (q(), vec![t(b + 1, -1), Sym::S(b)]),
        ],
        // s_{b-1} t_{ab}^{-1} = t_{a,b-1}^{-1} s_{b-1}^{-1}
        (Basis::Positive, false, false) => vec![
            (qi(), vec![t(b - 1, -1), Sym::S(i)]),
            (Laurent::qinv_minus_one(), vec![t(b - 1, -1)]),
        ],
        // s_b t_{ab}^{±1} s_b^{-1} = t_{a,b+1}^{±1}
        (Basis::Prime, true, _) => one(vec![t(b + 1, e), Sym::S(b)]),
        // s_{b-1} t_{ab}^{±1} = s_{b-1}^2 t_{a,b-1}^{±1} s_{b-1}^{-1}
        (Basis::Prime, false, _) => vec![
            (Laurent::q_minus_one(), vec![t(b, e)]),
            (Laurent::one_minus_q(), vec![t(b - 1, e)]),
            (Laurent::one(), vec![t(b - 1, e), Sym::S(i)]),
        ],
    }
}

/// Product of combinations.
fn expand(factors: Vec<Combo>) -> Combo {
    let mut acc: Combo = one(Vec::new());
    for f in factors {
        let mut next = Combo::new();
        for (c1, w1) in &acc {
            for (c2, w2) in &f {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                next.push((c1 * c2, w));
            }
        }
        acc = next;
    }
    acc
}

/// `s_i^{-1} = q^{-1} s_i + (q^{-1} - 1)`.
fn s_inverse(i: u32) -> Combo {
    vec![(Laurent::monomial(1, -1), vec![Sym::S(i)]), (Laurent::qinv_minus_one(), Vec::new())]
}

/// `a_{kl}^{e}` as signed crossings.
fn pure_letter_crossings(k: u32, l: u32, e: i8) -> Vec<(u32, i8)> {
    let mut crossings: Vec<(u32, i8)> = (k + 1..l).rev().map(|x| (x, 1)).collect();
    crossings.push((k, 1));
    crossings.push((k, 1));
    crossings.extend((k + 1..l).map(|x| (x, -1)));
    if e < 0 {
        crossings = crossings.into_iter().rev().map(|(x, s)| (x, -s)).collect();
    }
    crossings
}

/// The crossing word of `a_{kl}^{e}` (`g < k < l`), inverses expanded.
fn moving_pure_letter(k: u32, l: u32, e: i8) -> Combo {
    expand(
        pure_letter_crossings(k, l, e)
            .into_iter()
            .map(|(x, s)| if s > 0 { one(vec![Sym::S(x)]) } else { s_inverse(x) })
            .collect(),
    )
}

/// `y x` with `x` in a lower column than `y`, rewritten to start with `x`.
pub fn reorder_rule(basis: Basis, g: u32, y: (u32, u32, i8), x: (u32, u32, i8)) -> Result<Combo> {
    let (ya, yb, ye) = y;
    let (xa, xb, xe) = x;
    debug_assert!(yb > xb);
    let xs = Sym::T { a: xa, b: xb, e: xe };
    match basis {
        Basis::Positive if ya == xa => Ok(one(vec![xs, Sym::T { a: ya, b: yb, e: ye }])),
        Basis::Positive => Err(Error::NoRule(format!("reordering t{ya}.{yb} past t{xa}.{xb} in the positive family"))),
        Basis::Prime => {
            // y x = x (x^{-1} y x) in P_{g+n}; letters of rows > g are crossing words
            let c = conj_top(PureLetter::new(ya, yb, ye), PureLetter::new(xa, xb, xe))?;
            let mut factors = vec![one(vec![xs])];
            for l in c.letters() {
                let p = PureLetter::from_letter(l).expect("a-letter");
                if p.i <= g {
                    factors.push(one(vec![Sym::T { a: p.i, b: p.j, e: p.exp }]));
                } else {
                    factors.push(moving_pure_letter(p.i, p.j, p.exp));
                }
            }
            Ok(expand(factors))
        }
    }
}

enum Redex {
    Push(usize),
    Reorder(usize),
    Cancel(usize),
}

fn redex_at(w: &[Sym], p: usize) -> Option<Redex> {
    match (w[p], w[p + 1]) {
        (Sym::S(_), Sym::T { .. }) => Some(Redex::Push(p)),
        (Sym::T { a, b, e }, Sym::T { a: a2, b: b2, e: e2 }) => {
            if a == a2 && b == b2 && e == -e2 {
                Some(Redex::Cancel(p))
            } else if b > b2 {
                Some(Redex::Reorder(p))
            } else {
                None
            }
        }
        _ => None,
    }
}

fn find_redex(w: &[Sym], strategy: Strategy) -> Option<Redex> {
    if w.len() < 2 {
        return None;
    }
    match strategy {
        Strategy::Leftmost => (0..w.len() - 1).find_map(|p| redex_at(w, p)),
        Strategy::Rightmost => (0..w.len() - 1).rev().find_map(|p| redex_at(w, p)),
    }
}

fn finalize(g: u32, n: u32, w: &[Sym], c: &Laurent, out: &mut BTreeMap<SigmaWord, Laurent>) {
    let split = w.iter().position(|s| matches!(s, Sym::S(_))).unwrap_or(w.len());
    let mut columns = vec![FreeWord::empty(); n as usize];
    for s in &w[..split] {
        if let Sym::T { a, b, e } = *s {
            columns[(b - g - 1) as usize].push(Letter::new(Gen::T(a, b), e));
        }
    }
    let tail: Vec<(u32, i8)> = w[split..]
        .iter()
        .map(|s| match s {
            Sym::S(i) => (i - g, 1),
            _ => unreachable!("loop letter after a crossing in a normal term"),
        })
        .collect();
    for (perm, d) in hn_reduce(n, &tail) {
        add_to(out, SigmaWord { columns: columns.clone(), tail: perm }, &(c * &d));
    }
}

/// Expands inverse crossings in the input.
fn input_terms(expr: &HeckeExpr) -> Combo {
    let mut out = Combo::new();
    for (c, w) in &expr.terms {
        let factors = w
            .iter()
            .map(|l| match *l {
                HeckeLetter::T { a, b, e } => one(vec![Sym::T { a, b, e }]),
                HeckeLetter::S { i, e } if e > 0 => one(vec![Sym::S(i)]),
                HeckeLetter::S { i, .. } => s_inverse(i),
            })
            .collect();
        for (d, v) in expand(factors) {
            out.push((c * &d, v));
        }
    }
    out
}

/// Rewrites `expr` into the span of the ordered words.
pub fn sigma_reduce(
    expr: &HeckeExpr,
    g: u32,
    n: u32,
    cfg: &ReduceConfig,
) -> Result<std::result::Result<Reduced, ReduceFailure>> {
    if n == 0 {
        return Err(Error::Index("n must be positive".into()));
    }
    expr.check(g, n)?;
    let mut pending: BTreeMap<Vec<Sym>, Laurent> = BTreeMap::new();
    for (c, w) in input_terms(expr) {
        add_to(&mut pending, w, &c);
    }
    let mut done = BTreeMap::new();
    let mut steps = 0usize;
    let fail = |reason, steps, pending: &BTreeMap<Vec<Sym>, Laurent>| {
        let stuck = pending
            .iter()
            .take(5)
            .map(|(w, c)| format!("({c})*[{}]", w.iter().map(Sym::to_string).collect::<Vec<_>>().join(" ")))
            .collect();
        Ok(Err(ReduceFailure { reason, steps, pending_terms: pending.len(), stuck }))
    };
    while let Some((w, c)) = pending.pop_first() {
        let Some(redex) = find_redex(&w, cfg.strategy) else {
            finalize(g, n, &w, &c, &mut done);
            continue;
        };
        if steps >= cfg.budget {
            pending.insert(w, c);
            return fail(FailureReason::BudgetExhausted, steps, &pending);
        }
        steps += 1;
        let (p, replacement) = match redex {
            Redex::Cancel(p) => (p, one(Vec::new())),
            Redex::Push(p) => {
                let (Sym::S(i), Sym::T { a, b, e }) = (w[p], w[p + 1]) else { unreachable!() };
                (p, push_rule(cfg.basis, i, a, b, e))
            }
            Redex::Reorder(p) => {
                let (Sym::T { a: ya, b: yb, e: ye }, Sym::T { a: xa, b: xb, e: xe }) = (w[p], w[p + 1]) else {
                    unreachable!()
                };
                match reorder_rule(cfg.basis, g, (ya, yb, ye), (xa, xb, xe)) {
                    Ok(r) => (p, r),
                    Err(Error::NoRule(msg)) => {
                        pending.insert(w, c);
                        return fail(FailureReason::NoRule(msg), steps, &pending);
                    }
                    Err(other) => return Err(other),
                }
            }
        };
        for (d, mid) in replacement {
            let mut nw = Vec::with_capacity(w.len() + mid.len());
            nw.extend_from_slice(&w[..p]);
            nw.extend_from_slice(&mid);
            nw.extend_from_slice(&w[p + 2..]);
            if nw.len() > cfg.max_term_len {
                pending.insert(w.clone(), c.clone());
                return fail(FailureReason::TermTooLong, steps, &pending);
            }
            let cd = &c * &d;
            if cd.max_abs() > COEFF_BOUND {
                pending.insert(w.clone(), c.clone());
                return fail(FailureReason::CoefficientBound, steps, &pending);
            }
            add_to(&mut pending, nw, &cd);
        }
    }
    Ok(Ok(Reduced { element: HgnElement { g, n, basis: cfg.basis, terms: done }, steps }))
}

/// Evaluation of `expr` in the group algebra of `G_{g,n}` (`q = 1`).
pub fn wreath_eval(expr: &HeckeExpr, g: u32, n: u32) -> Result<BTreeMap<WreathElement, i128>> {
    expr.check(g, n)?;
    let mut out: BTreeMap<WreathElement, i128> = BTreeMap::new();
    for (c, w) in &expr.terms {
        let mut acc = WreathElement::identity(g, n);
        for l in w {
            let x = match *l {
                HeckeLetter::T { a, b, e } => WreathElement::loop_at(g, n, a, b - g, e),
                HeckeLetter::S { i, .. } => WreathElement::transposition(g, n, i - g),
            };
            acc = acc.multiply(&x)?;
        }
        *out.entry(acc).or_insert(0) += c.eval_q1();
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

// ---- conjecture probe -------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSample {
    pub word: String,
    pub status: String,
    pub steps: usize,
    pub result: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub g: u32,
    pub n: u32,
    pub max_len: usize,
    pub basis: Basis,
    pub budget: usize,
    pub seed: u64,
    pub total: usize,
    pub reduced: usize,
    pub failed: usize,
    /// Words whose two reduction strategies both finish with different results.
    pub collisions: usize,
    pub budget_exhausted: usize,
    pub no_rule: usize,
    /// Reduced words whose `q = 1` value disagrees with the wreath evaluation.
    pub q1_mismatches: usize,
    pub success_rate: f64,
    pub samples: Vec<ProbeSample>,
}

/// All freely reduced words of length `<= max_len` over `t_k^{±1}` and `s_i^{±1}`.
pub fn generator_words(g: u32, n: u32, max_len: usize) -> Vec<Vec<HeckeLetter>> {
    let mut gens = Vec::new();
    for k in 1..=g {
        for e in [1, -1] {
            gens.push(HeckeLetter::T { a: k, b: g + 1, e });
        }
    }
    for i in g + 1..g + n {
        for e in [1, -1] {
            gens.push(HeckeLetter::S { i, e });
        }
    }
    let inverse = |l: HeckeLetter| match l {
        HeckeLetter::T { a, b, e } => HeckeLetter::T { a, b, e: -e },
        HeckeLetter::S { i, e } => HeckeLetter::S { i, e: -e },
    };
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &x in &gens {
                if w.last().is_some_and(|&l: &HeckeLetter| inverse(l) == x) {
                    continue;
                }
                let mut v: Vec<HeckeLetter> = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

struct Outcome {
    word: String,
    status: &'static str,
    steps: usize,
    result: Option<String>,
    collision: bool,
    mismatch: bool,
}

fn probe_word(w: &[HeckeLetter], g: u32, n: u32, cfg: &ReduceConfig) -> Result<Outcome> {
    let expr = HeckeExpr::word(w.to_vec());
    let word = w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
    let left = sigma_reduce(&expr, g, n, &ReduceConfig { strategy: Strategy::Leftmost, ..*cfg })?;
    let mut out = Outcome { word, status: "reduced", steps: 0, result: None, collision: false, mismatch: false };
    match left {
        Ok(r) => {
            out.steps = r.steps;
            out.mismatch = r.element.specialize_q1() != wreath_eval(&expr, g, n)?;
            let right = sigma_reduce(&expr, g, n, &ReduceConfig { strategy: Strategy::Rightmost, ..*cfg })?;
            if let Ok(r2) = right {
                out.collision = r2.element != r.element;
            }
            out.result = Some(r.element.to_string());
        }
        Err(f) => {
            out.steps = f.steps;
            out.status = match f.reason {
                FailureReason::BudgetExhausted => "budget_exhausted",
                FailureReason::TermTooLong => "term_too_long",
                FailureReason::CoefficientBound => "coefficient_bound",
                FailureReason::NoRule(_) => "no_rule",
            };
        }
    }
    Ok(out)
}

/// Runs `sigma_reduce` on every generator word up to `max_len` and cross-checks successes at `q = 1`.
pub fn conjecture_probe(g: u32, n: u32, max_len: usize, cfg: &ReduceConfig, seed: u64, sample_size: usize) -> Result<ProbeReport> {
    let words = generator_words(g, n, max_len);
    let outcomes = words.par_iter().map(|w| probe_word(w, g, n, cfg)).collect::<Result<Vec<_>>>()?;
    let total = outcomes.len();
    let reduced = outcomes.iter().filter(|o| o.status == "reduced").count();
    let count = |s: &str| outcomes.iter().filter(|o| o.status == s).count();
    let mut picks: Vec<usize> = (0..total).collect();
    picks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    picks.truncate(sample_size);
    // always show anomalies first
    let mut shown: Vec<usize> =
        (0..total).filter(|&k| outcomes[k].collision || outcomes[k].mismatch).take(sample_size).collect();
    shown.extend((0..total).filter(|&k| outcomes[k].status != "reduced").take(sample_size.div_ceil(2)));
    shown.extend(picks);
    let mut seen = std::collections::BTreeSet::new();
    shown.retain(|k| seen.insert(*k));
    shown.truncate(sample_size.max(1) * 2);
    let samples = shown
        .into_iter()
        .map(|k| {
            let o = &outcomes[k];
            let status = if o.mismatch {
                "q1_mismatch"
            } else if o.collision {
                "collision"
            } else {
                o.status
            };
            ProbeSample { word: o.word.clone(), status: status.to_string(), steps: o.steps, result: o.result.clone() }
        })
        .collect();
    Ok(ProbeReport {
        g,
        n,
        max_len,
        basis: cfg.basis,
        budget: cfg.budget,
        seed,
        total,
        reduced,
        failed: total - reduced,
        collisions: outcomes.iter().filter(|o| o.collision).count(),
        budget_exhausted: count("budget_exhausted"),
        no_rule: count("no_rule"),
        q1_mismatches: outcomes.iter().filter(|o| o.mismatch).count(),
        success_rate: if total == 0 { 1.0 } else { reduced as f64 / total as f64 },
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{a_gen, braid_eq, BraidWord};
    use crate::handlebody::{HLetter, HandleWord};

    fn t(a: u32, b: u32, e: i8) -> HeckeLetter {
        HeckeLetter::T { a, b, e }
    }

    fn s(i: u32, e: i8) -> HeckeLetter {
        HeckeLetter::S { i, e }
    }

    fn reduce(w: Vec<HeckeLetter>, g: u32, n: u32, basis: Basis, strategy: Strategy) -> HgnElement {
        let cfg = ReduceConfig { basis, strategy, ..ReduceConfig::default() };
        sigma_reduce(&HeckeExpr::word(w), g, n, &cfg).unwrap().unwrap().element
    }

    fn perm(images: &[u32]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn hn_quadratic_and_braid() {
        let e = hn_basis(Permutation::identity(3));
        let s1 = hn_mul_gen(&e, 1);
        let sq = hn_mul_gen(&s1, 1);
        let expected = BTreeMap::from([
            (Permutation::identity(3), Laurent::q()),
            (Permutation::adjacent(3, 1), Laurent::q_minus_one()),
        ]);
        assert_eq!(sq, expected);
        assert_eq!(hn_reduce(3, &[(1, 1), (2, 1), (1, 1)]), hn_reduce(3, &[(2, 1), (1, 1), (2, 1)]));
        assert_eq!(hn_reduce(3, &[(1, 1), (1, -1)]), e);
        assert_eq!(hn_reduce(3, &[(2, -1), (2, 1)]), e);
        // s1 s2 s1 is the longest element
        assert_eq!(hn_reduce(3, &[(1, 1), (2, 1), (1, 1)]), hn_basis(perm(&[3, 2, 1])));
    }

    #[test]
    fn hn_products_oracle() {
        // T_u T_v = T_{uv} when lengths add; every product specializes to the group product at q = 1
        for n in 2..=4 {
            let all = Permutation::all(n);
            for u in &all {
                let tu = hn_basis(u.clone());
                for v in &all {
                    let p = hn_mul(&tu, &hn_basis(v.clone()));
                    let uv = u.compose(v);
                    if uv.length() == u.length() + v.length() {
                        assert_eq!(p, hn_basis(uv.clone()));
                    }
                    assert_eq!(hn_specialize_q1(&p), BTreeMap::from([(uv, 1)]));
                }
            }
        }
    }

    #[test]
    fn hn_associative_and_left_mult() {
        let all = Permutation::all(3);
        for u in &all {
            for v in &all {
                for w in &all {
                    let (a, b, c) = (hn_basis(u.clone()), hn_basis(v.clone()), hn_basis(w.clone()));
                    assert_eq!(hn_mul(&hn_mul(&a, &b), &c), hn_mul(&a, &hn_mul(&b, &c)));
                }
                for i in 1..3 {
                    let x = hn_mul(&hn_basis(u.clone()), &hn_basis(v.clone()));
                    assert_eq!(hn_lmul_gen(i, &x), hn_mul(&hn_basis(Permutation::adjacent(3, i)), &x));
                }
            }
        }
    }

    #[test]
    fn pure_letter_crossings_match_a_gen() {
        for m in 3..=6 {
            for k in 1..m {
                for l in k + 1..=m {
                    for e in [1, -1] {
                        let signed: Vec<i32> =
                            pure_letter_crossings(k, l, e).iter().map(|&(x, s)| x as i32 * s as i32).collect();
                        let w = BraidWord::from_signed(m, &signed).unwrap();
                        let a = a_gen(k, l, m).unwrap();
                        let a = if e > 0 { a } else { a.invert() };
                        assert!(braid_eq(&w, &a).unwrap());
                    }
                }
            }
        }
    }

    fn handle(g: u32, n: u32, w: &[HeckeLetter]) -> HandleWord {
        let letters = w
            .iter()
            .map(|l| match *l {
                HeckeLetter::T { a, e, .. } => HLetter::Tau(a, e),
                HeckeLetter::S { i, e } => HLetter::Sigma(i, e),
            })
            .collect();
        HandleWord::new(g, n, letters).unwrap()
    }

    #[test]
    fn commuting_cases_hold_in_the_group() {
        for basis in [Basis::Positive, Basis::Prime] {
            for g in 1..=2 {
                for n in 2..=4 {
                    for a in 1..=g {
                        for b in g + 1..=g + n {
                            let tw = t_elem(a, b, g, basis);
                            for i in g + 1..g + n {
                                if i == b || i + 1 == b {
                                    continue;
                                }
                                let mut lhs = vec![s(i, 1)];
                                lhs.extend(&tw);
                                let mut rhs = tw.clone();
                                rhs.push(s(i, 1));
                                let (x, y) = (handle(g, n, &lhs).embed(), handle(g, n, &rhs).embed());
                                assert!(braid_eq(&x, &y).unwrap(), "{basis} s{i} t{a}.{b}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prime_letters_are_pure_generators() {
        for g in 1..=2 {
            for n in 1..=3 {
                for a in 1..=g {
                    for b in g + 1..=g + n {
                        let w = handle(g, n, &t_elem(a, b, g, Basis::Prime)).embed();
                        assert!(braid_eq(&w, &a_gen(a, b, g + n).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn defining_words_reduce_to_letters() {
        for basis in [Basis::Positive, Basis::Prime] {
            for g in 1..=2 {
                for b in g + 1..=g + 3 {
                    for strategy in [Strategy::Leftmost, Strategy::Rightmost] {
                        let r = reduce(t_elem(1, b, g, basis), g, 3, basis, strategy);
                        assert_eq!(r.to_string(), format!("[t1.{b}]"), "{basis} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn printed_examples() {
        let r = reduce(vec![s(2, 1), t(1, 2, 1)], 1, 2, Basis::Positive, Strategy::Leftmost);
        assert_eq!(r.to_string(), "(-1 + q^-1)*[t1.3] + q^-1*[t1.3 s2]");
        let r = reduce(vec![s(2, 1), s(2, 1)], 1, 2, Basis::Positive, Strategy::Leftmost);
        assert_eq!(r.to_string(), "q*[] + (q - 1)*[s2]");
        let r = reduce(vec![s(2, 1), t(1, 2, 1)], 1, 2, Basis::Prime, Strategy::Leftmost);
        assert_eq!(r.to_string(), "[t1.3 s2]");
        let r = reduce(vec![s(2, 1), t(1, 3, -1)], 1, 2, Basis::Prime, Strategy::Leftmost);
        assert_eq!(r.to_string(), "(q - 1)*[t1.3^-1] + (-q + 1)*[t1.2^-1] + [t1.2^-1 s2]");
    }

    #[test]
    fn positive_cross_row_reorder_has_no_rule() {
        let cfg = ReduceConfig::default();
        let expr = HeckeExpr::word(vec![t(1, 4, 1), t(2, 3, 1)]);
        let out = sigma_reduce(&expr, 2, 2, &cfg).unwrap();
        let f = out.unwrap_err();
        assert!(matches!(f.reason, FailureReason::NoRule(_)));
        assert_eq!(f.pending_terms, 1);
    }

    #[test]
    fn budget_is_reported() {
        let w: Vec<HeckeLetter> = (0..6).flat_map(|_| [s(2, 1), t(1, 2, 1)]).collect();
        let cfg = ReduceConfig { budget: 3, ..ReduceConfig::default() };
        let f = sigma_reduce(&HeckeExpr::word(w), 1, 2, &cfg).unwrap().unwrap_err();
        assert_eq!(f.reason, FailureReason::BudgetExhausted);
        assert_eq!(f.steps, 3);
        assert!(!f.stuck.is_empty());
    }

    #[test]
    fn bad_letters_rejected() {
        let cfg = ReduceConfig::default();
        assert!(sigma_reduce(&HeckeExpr::word(vec![s(1, 1)]), 1, 2, &cfg).is_err());
        assert!(sigma_reduce(&HeckeExpr::word(vec![t(2, 2, 1)]), 1, 2, &cfg).is_err());
    }

    #[test]
    fn genus_one_confluent_and_sound() {
        for n in 2..=3 {
            let r = conjecture_probe(1, n, 4, &ReduceConfig::default(), 7, 3).unwrap();
            assert_eq!(r.reduced, r.total, "n={n}");
            assert_eq!(r.collisions, 0);
            assert_eq!(r.q1_mismatches, 0);
        }
    }

    #[test]
    fn prime_family_sound_where_it_finishes() {
        let cfg = ReduceConfig { basis: Basis::Prime, budget: 2000, ..ReduceConfig::default() };
        let r = conjecture_probe(1, 2, 4, &cfg, 7, 3).unwrap();
        assert!(r.reduced > 0 && r.reduced < r.total);
        assert_eq!(r.collisions, 0);
        assert_eq!(r.q1_mismatches, 0);
    }

    #[test]
    fn genus_zero_is_hn() {
        let r = conjecture_probe(0, 3, 6, &ReduceConfig::default(), 1, 0).unwrap();
        assert_eq!(r.reduced, r.total);
        let mut tails = std::collections::BTreeSet::new();
        for w in generator_words(0, 3, 6) {
            for k in reduce(w, 0, 3, Basis::Positive, Strategy::Leftmost).terms.keys() {
                tails.insert(k.tail.clone());
            }
        }
        assert_eq!(tails.len(), 6);
    }

    #[test]
    fn q1_example() {
        let w = vec![t(1, 2, 1), s(2, 1), t(1, 2, 1), s(2, 1)];
        let r = reduce(w, 1, 2, Basis::Positive, Strategy::Leftmost);
        let x = WreathElement::loop_at(1, 2, 1, 1, 1).multiply(&WreathElement::loop_at(1, 2, 1, 2, 1)).unwrap();
        assert_eq!(r.specialize_q1(), BTreeMap::from([(x, 1)]));
    }

    #[test]
    fn genus_one_shape() {
        let w = vec![t(1, 2, 1), s(2, 1), t(1, 2, -1), s(2, -1), t(1, 2, 1), s(2, 1)];
        for strategy in [Strategy::Leftmost, Strategy::Rightmost] {
            let r = reduce(w.clone(), 1, 2, Basis::Positive, strategy);
            assert!(r.has_g1_shape(), "{r}");
        }
    }

    #[test]
    fn generator_word_count() {
        // 2g + 2(n - 1) generators, freely reduced words: 1 + k + k(k-1) + …
        let words = generator_words(1, 2, 3);
        assert_eq!(words.len(), 1 + 4 + 4 * 3 + 4 * 9);
    }

    #[test]
    fn probe_is_seeded() {
        let cfg = ReduceConfig { basis: Basis::Prime, ..ReduceConfig::default() };
        let a = conjecture_probe(2, 2, 3, &cfg, 11, 4).unwrap();
        let b = conjecture_probe(2, 2, 3, &cfg, 11, 4).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
