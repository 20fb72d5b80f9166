//! Words of dilogarithm factors and their rewriting calculus.
//!
//! A word `[n_1]_{a_1,b_1} ⋯ [n_k]_{a_k,b_k}` stands for the product
//! `Ψ_{a_1,b_1}[n_1] ⋯ Ψ_{a_k,b_k}[n_k]` in `G`. Rewrites are local and
//! index-addressed; they never search.

pub mod catalog;
mod reordering;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::liegroup::{apply_word, evaluate_product, generator_images, DilogElem, GroupElem};
use crate::liegroup::{ParallelElem, ParallelForm, PsiFactor};
use crate::scalar::{fmt_rational, int, parse_rational, scaled_exponent, RatFunc, Rational};

pub use reordering::{reordering_relation, RelationParams, ReorderingRelation};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    factors: Vec<DilogElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// JSON shape of one factor; rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub n: Vec<i64>,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl Word {
    pub fn new(factors: Vec<DilogElem>) -> Self {
        Word { factors }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn factors(&self) -> &[DilogElem] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<DilogElem> {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, d: DilogElem) {
        self.factors.push(d);
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        Word::new(f)
    }

    /// Drops factors whose vector has degree above `cutoff`.
    pub fn truncated(&self, cutoff: u32) -> Word {
        Word::new(
            self.factors
                .iter()
                .filter(|d| d.n.degree() <= cutoff as i64)
                .cloned()
                .collect(),
        )
    }

    /// Merges adjacent factors with equal `n`, `a`, `b` into one power and
    /// drops factors whose exponent becomes zero.
    pub fn merged(&self) -> Word {
        let mut out: Vec<DilogElem> = Vec::with_capacity(self.factors.len());
        for d in &self.factors {
            match out.last_mut() {
                Some(l) if l.n == d.n && l.a == d.a && l.b == d.b => {
                    l.c = &l.c + &d.c;
                    if l.c.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(d.clone()),
            }
        }
        Word::new(out)
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.factors.iter().rev().map(DilogElem::inverse).collect())
    }

    pub fn validate(&self, fd: &FixedData) -> Result<()> {
        self.factors.iter().try_for_each(|d| d.validate(fd))
    }

    pub fn to_json(&self) -> Vec<FactorJson> {
        self.factors
            .iter()
            .map(|d| FactorJson {
                n: d.n.coords().to_vec(),
                a: fmt_rational(&d.a),
                b: fmt_rational(&d.b),
                c: match d.c.as_constant() {
                    Some(k) => fmt_rational(&k),
                    None => d.c.to_string(),
                },
            })
            .collect()
    }

    pub fn from_json(fs: &[FactorJson]) -> Result<Word> {
        let mut out = Word::empty();
        for f in fs {
            let d = DilogElem::new(
                LatticeVec::new(&f.n),
                parse_rational(&f.a)?,
                parse_rational(&f.b)?,
            )
            .with_exponent(RatFunc::from(parse_rational(&f.c)?));
            out.push(d);
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len()
            && (self.s[self.i].is_ascii_whitespace() || self.s[self.i] == b'*')
        {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{}' at offset {}",
                c as char, self.i
            )))
        }
    }

    /// A signed integer or `p/q` rational.
    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.i;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == b'-' || c == b'+' || c == b'/' {
                self.i += 1;
            } else {
                break;
            }
        }
        let tok =
            std::str::from_utf8(&self.s[start..self.i]).map_err(|e| Error::Parse(e.to_string()))?;
        if tok.is_empty() {
            return Err(Error::Parse(format!("expected a number at offset {start}")));
        }
        parse_rational(tok)
    }

    fn integer(&mut self) -> Result<i64> {
        use num_traits::ToPrimitive;
        let r = self.number()?;
        if !r.is_integer() {
            return Err(Error::Parse(format!(
                "expected an integer, got {}",
                fmt_rational(&r)
            )));
        }
        r.to_integer()
            .to_i64()
            .ok_or_else(|| Error::Parse("integer out of range".into()))
    }

    /// `{x}` or a bare number.
    fn braced_numbers(&mut self) -> Result<Vec<Rational>> {
        if self.eat(b'{') {
            let mut out = vec![self.number()?];
            while self.eat(b',') {
                out.push(self.number()?);
            }
            self.expect(b'}')?;
            Ok(out)
        } else {
            Ok(vec![self.number()?])
        }
    }

    fn factor(&mut self) -> Result<DilogElem> {
        self.expect(b'[')?;
        let mut coords = vec![self.integer()?];
        while self.eat(b',') {
            coords.push(self.integer()?);
        }
        self.expect(b']')?;
        let (a, b) = if self.eat(b'_') {
            let xs = self.braced_numbers()?;
            match xs.len() {
                1 => (xs[0].clone(), Rational::zero()),
                2 => (xs[0].clone(), xs[1].clone()),
                _ => return Err(Error::Parse("too many subscript entries".into())),
            }
        } else {
            (Rational::one(), Rational::zero())
        };
        let mut d = DilogElem::new(LatticeVec::new(&coords), a, b);
        if self.eat(b'^') {
            let xs = self.braced_numbers()?;
            if xs.len() != 1 {
                return Err(Error::Parse("exponent must be a single number".into()));
            }
            d = d.with_exponent(RatFunc::from(xs[0].clone()));
        }
        Ok(d)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `[n1,n2]_{a,b}^{c}` factors separated by whitespace. `_{a}` means
    /// `b = 0`; a missing subscript means `a = 1, b = 0`; `^c` defaults to 1.
    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::empty();
        if s.trim() == "1" {
            return Ok(w);
        }
        let mut cur = Cursor {
            s: s.as_bytes(),
            i: 0,
        };
        loop {
            cur.skip_ws();
            if cur.peek().is_none() {
                break;
            }
            w.push(cur.factor()?);
        }
        Ok(w)
    }
}

fn pair_at(w: &Word, i: usize) -> Result<(&DilogElem, &DilogElem)> {
    match (w.factors.get(i), w.factors.get(i + 1)) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::NotApplicable(format!(
            "no adjacent pair at index {i}"
        ))),
    }
}

fn splice(w: &Word, i: usize, len: usize, with: Vec<DilogElem>) -> Word {
    let mut f = w.factors[..i].to_vec();
    f.extend(with);
    f.extend(w.factors[i + len..].iter().cloned());
    Word::new(f)
}

/// Swaps factors `i` and `i + 1` when their vectors are skew-orthogonal.
pub fn rewrite_commute(w: &Word, i: usize, fd: &FixedData) -> Result<Word> {
    let (x, y) = pair_at(w, i)?;
    if !fd.skew_pair(&x.n, &y.n).is_zero() {
        return Err(Error::NotApplicable(format!(
            "{{{},{}}} is not zero",
            x.n, y.n
        )));
    }
    Ok(splice(w, i, 2, vec![y.clone(), x.clone()]))
}

/// `Ψ_{c,b₂}[n₂] Ψ_{c,b₁}[n₁] = Ψ_{c,b₁}[n₁] Ψ_{c,b₁+b₂}[n₁+n₂] Ψ_{c,b₂}[n₂]` for `{n₂,n₁} = c`.
pub fn rewrite_pentagon(w: &Word, i: usize, dir: Direction, fd: &FixedData) -> Result<Word> {
    let unit = |d: &DilogElem| d.c.is_one();
    match dir {
        Direction::Forward => {
            let (x2, x1) = pair_at(w, i)?;
            if !unit(x2) || !unit(x1) {
                return Err(Error::NotApplicable("pentagon needs unit exponents".into()));
            }
            let c = fd.skew_pair(&x2.n, &x1.n);
            if !c.is_positive() || x2.a != c || x1.a != c {
                return Err(Error::NotApplicable(format!(
                    "intervals {}, {} do not equal {{n2,n1}} = {}",
                    fmt_rational(&x2.a),
                    fmt_rational(&x1.a),
                    fmt_rational(&c)
                )));
            }
            let mid = DilogElem::new(x1.n.add(&x2.n), c, &x1.b + &x2.b);
            Ok(splice(w, i, 2, vec![x1.clone(), mid, x2.clone()]))
        }
        Direction::Backward => {
            let t = w
                .factors
                .get(i..i + 3)
                .ok_or_else(|| Error::NotApplicable(format!("no triple at index {i}")))?;
            let (x1, m, x2) = (&t[0], &t[1], &t[2]);
            if !t.iter().all(unit) {
                return Err(Error::NotApplicable("pentagon needs unit exponents".into()));
            }
            let c = fd.skew_pair(&x2.n, &x1.n);
            let ok = c.is_positive()
                && x1.a == c
                && x2.a == c
                && m.a == c
                && m.n == x1.n.add(&x2.n)
                && m.b == &x1.b + &x2.b;
            if !ok {
                return Err(Error::NotApplicable(
                    "triple does not match the pentagon pattern".into(),
                ));
            }
            Ok(splice(w, i, 3, vec![x2.clone(), x1.clone()]))
        }
    }
}

fn check_sign(sign: i64) -> Result<Rational> {
    match sign {
        1 | -1 => Ok(int(sign)),
        _ => Err(Error::NotApplicable(format!("sign must be ±1, got {sign}"))),
    }
}

/// `Ψ_{a,b}[n] = ∏_{t=1}^p Ψ_{pa, b ± (2t−p−1)a}[n]`.
pub fn rewrite_fission(w: &Word, i: usize, p: u32, sign: i64, fd: &FixedData) -> Result<Word> {
    let s = check_sign(sign)?;
    let d = w
        .factors
        .get(i)
        .ok_or_else(|| Error::NotApplicable(format!("no factor at index {i}")))?;
    if !d.c.is_one() || p == 0 {
        return Err(Error::NotApplicable(
            "fission needs unit exponent and p ≥ 1".into(),
        ));
    }
    let p = p as i64;
    let pa = &d.a * int(p);
    let parts = (1..=p)
        .map(|t| {
            DilogElem::new(
                d.n.clone(),
                pa.clone(),
                &d.b + &s * &d.a * int(2 * t - p - 1),
            )
        })
        .collect::<Vec<_>>();
    parts.iter().try_for_each(|x| x.validate(fd))?;
    Ok(splice(w, i, 1, parts))
}

/// `∏_{t=1}^p Ψ_{a, b ± (2t−p−1)a/p}[n] = Ψ_{a/p,b}[n]` on factors `i..i+p`.
pub fn rewrite_fusion(w: &Word, i: usize, p: u32, sign: i64, fd: &FixedData) -> Result<Word> {
    let s = check_sign(sign)?;
    let pu = p as usize;
    let run = w
        .factors
        .get(i..i + pu)
        .filter(|r| !r.is_empty())
        .ok_or_else(|| Error::NotApplicable(format!("fewer than {p} factors at index {i}")))?;
    let p = p as i64;
    let first = &run[0];
    let step = &first.a / int(p);
    scaled_exponent(&step, fd.delta0())?;
    let b = &first.b - &s * &step * int(1 - p);
    for (t, d) in run.iter().enumerate() {
        let t = t as i64 + 1;
        let want = &b + &s * &step * int(2 * t - p - 1);
        if d.n != first.n || d.a != first.a || !d.c.is_one() || d.b != want {
            return Err(Error::NotApplicable(format!(
                "factor {} does not match the fusion pattern",
                i + t as usize - 1
            )));
        }
    }
    Ok(splice(
        w,
        i,
        pu,
        vec![DilogElem::new(first.n.clone(), step, b)],
    ))
}

/// Product in `G`, left to right, modulo `G^{>cutoff}`.
pub fn evaluate(w: &Word, fd: &FixedData, cutoff: u32) -> Result<GroupElem> {
    evaluate_product(w.truncated(cutoff).factors(), fd, cutoff)
}

/// Groups runs of parallel factors into single parallel-subgroup elements.
pub fn compile(w: &Word, fd: &FixedData, cutoff: u32) -> Result<Vec<ParallelElem>> {
    let mut out: Vec<ParallelElem> = Vec::new();
    for d in w.truncated(cutoff).factors() {
        let e = ParallelElem::from_dilog(d, fd, cutoff)?;
        if let Some(last) = out.last_mut() {
            if last.n0 == e.n0 {
                *last = merge_parallel(last, &e, fd, cutoff);
                continue;
            }
        }
        out.push(e);
    }
    Ok(out)
}

fn merge_parallel(x: &ParallelElem, y: &ParallelElem, fd: &FixedData, cutoff: u32) -> ParallelElem {
    match (&x.form, &y.form) {
        (ParallelForm::Factors(a), ParallelForm::Factors(b)) => {
            let mut f: Vec<PsiFactor> = a.clone();
            f.extend(b.iter().cloned());
            ParallelElem::from_factors(x.n0.clone(), f)
        }
        _ => {
            let top = (cutoff as i64 / x.n0.degree()) as usize;
            let (lx, ly) = (x.levels(fd, top), y.levels(fd, top));
            ParallelElem::from_log(
                x.n0.clone(),
                lx.iter().zip(&ly).map(|(a, b)| a + b).collect(),
            )
        }
    }
}

/// Images of the generators `x^(f_i,0)` under the word, modulo degree `> cutoff`.
pub fn word_action(w: &Word, fd: &FixedData, cutoff: u32) -> Result<Vec<crate::qtorus::XSeries>> {
    let elems = compile(w, fd, cutoff)?;
    Ok(generator_images(fd, cutoff)
        .par_iter()
        .map(|s| apply_word(&elems, s, fd))
        .collect())
}

/// Equality of both sides modulo `G^{>cutoff}`, decided by their actions on the
/// generators `x^(f_i,0)`, which determine an element of `G` uniquely.
pub fn verify_relation(lhs: &Word, rhs: &Word, fd: &FixedData, cutoff: u32) -> Result<bool> {
    let (l, r) = rayon::join(
        || word_action(lhs, fd, cutoff),
        || word_action(rhs, fd, cutoff),
    );
    Ok(l? == r?)
}

fn det(x: &LatticeVec, y: &LatticeVec) -> Result<i64> {
    if x.rank() != 2 || y.rank() != 2 {
        return Err(Error::RankUnsupported {
            expected: 2,
            got: x.rank().max(y.rank()),
        });
    }
    let (a, b) = (x.coords(), y.coords());
    Ok(a[1] * b[0] - a[0] * b[1])
}

fn adjacent_pairs(w: &Word, ok: impl Fn(i64) -> bool) -> Result<bool> {
    if let Some(d) = w.factors.iter().find(|d| d.n.rank() != 2) {
        return Err(Error::RankUnsupported {
            expected: 2,
            got: d.n.rank(),
        });
    }
    for p in w.factors.windows(2) {
        if !ok(det(&p[0].n, &p[1].n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjacent pairs `[n'][n]` satisfy `n'_2 n_1 − n'_1 n_2 ≤ 0`.
pub fn is_ordered(w: &Word) -> Result<bool> {
    adjacent_pairs(w, |d| d <= 0)
}

/// Adjacent pairs `[n'][n]` satisfy `n'_2 n_1 − n'_1 n_2 ≥ 0`.
pub fn is_antiordered(w: &Word) -> Result<bool> {
    adjacent_pairs(w, |d| d >= 0)
}
