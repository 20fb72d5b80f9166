//! Parameterized relations between ordered and anti-ordered words for a pair
//! `n, n'` with `{n',n} = c > 0`, built from the pentagon relation together
//! with fission and fusion. Infinite products are truncated by the degree of
//! the factor vector; factors above the cutoff act trivially modulo `G^{>ℓ}`.

use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::liegroup::DilogElem;
use crate::scalar::{fmt_rational, int, Rational};

use super::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReorderingRelation {
    /// `[n']_{c/2}[n]_c` reordered, four factors on the right.
    Nn1a,
    /// `[n']_c[n]_{c/2}` reordered, four factors on the right.
    Nn1b,
    /// Finite version of `LemA3a` with bound `L`.
    LemA2a,
    LemA2b,
    /// `[n']_{c/2}` moved through the infinite product of `[n+2pn']_c`.
    LemA3a,
    LemA3b,
    /// `[n']_{c/2}[n]_{c/2}` fully ordered, with the central tower on `n+n'`.
    ThmNn3,
    /// Finite version of `LemA6a` with bound `L`.
    LemA5a,
    LemA5b,
    /// `[n']_c` moved through the infinite product of `[n+pn']_{c/2}`.
    LemA6a,
    LemA6b,
    /// `[n']_{c/4}[n]_c` fully ordered, with the central tower on `n+2n'`.
    ThmNn5,
    /// `ThmNn3` at `n = e₁, n' = e₂, c = 1, b = b' = 0`.
    A115,
    /// `ThmNn5` at `n = e₁, n' = e₂, c = 1, b = b' = 0`.
    A227,
}

impl ReorderingRelation {
    pub const ALL: [ReorderingRelation; 14] = [
        ReorderingRelation::Nn1a,
        ReorderingRelation::Nn1b,
        ReorderingRelation::LemA2a,
        ReorderingRelation::LemA2b,
        ReorderingRelation::LemA3a,
        ReorderingRelation::LemA3b,
        ReorderingRelation::ThmNn3,
        ReorderingRelation::LemA5a,
        ReorderingRelation::LemA5b,
        ReorderingRelation::LemA6a,
        ReorderingRelation::LemA6b,
        ReorderingRelation::ThmNn5,
        ReorderingRelation::A115,
        ReorderingRelation::A227,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReorderingRelation::Nn1a => "nn1a",
            ReorderingRelation::Nn1b => "nn1b",
            ReorderingRelation::LemA2a => "lemA2a",
            ReorderingRelation::LemA2b => "lemA2b",
            ReorderingRelation::LemA3a => "lemA3a",
            ReorderingRelation::LemA3b => "lemA3b",
            ReorderingRelation::ThmNn3 => "thm_nn3",
            ReorderingRelation::LemA5a => "lemA5a",
            ReorderingRelation::LemA5b => "lemA5b",
            ReorderingRelation::LemA6a => "lemA6a",
            ReorderingRelation::LemA6b => "lemA6b",
            ReorderingRelation::ThmNn5 => "thm_nn5",
            ReorderingRelation::A115 => "a115",
            ReorderingRelation::A227 => "a227",
        }
    }

    /// Whether the finite bound `L` is used.
    pub fn is_finite(self) -> bool {
        matches!(
            self,
            ReorderingRelation::LemA2a
                | ReorderingRelation::LemA2b
                | ReorderingRelation::LemA5a
                | ReorderingRelation::LemA5b
        )
    }

    /// Whether the relation has a `±` choice.
    pub fn has_sign(self) -> bool {
        matches!(
            self,
            ReorderingRelation::LemA2a
                | ReorderingRelation::LemA2b
                | ReorderingRelation::LemA3a
                | ReorderingRelation::LemA3b
                | ReorderingRelation::LemA5a
                | ReorderingRelation::LemA5b
                | ReorderingRelation::LemA6a
                | ReorderingRelation::LemA6b
        )
    }
}

impl FromStr for ReorderingRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReorderingRelation::ALL
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("relation {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationParams {
    pub n: LatticeVec,
    pub n2: LatticeVec,
    pub c: Rational,
    pub b: Rational,
    pub b2: Rational,
    /// `+1` or `−1`.
    pub sign: i64,
    pub cutoff: u32,
    pub bound: u32,
}

impl RelationParams {
    /// `n = e₁, n' = e₂, c = 1, b = b' = 0`, sign `+`, bound 0.
    pub fn standard(cutoff: u32) -> Self {
        RelationParams {
            n: LatticeVec::new(&[1, 0]),
            n2: LatticeVec::new(&[0, 1]),
            c: Rational::one(),
            b: Rational::zero(),
            b2: Rational::zero(),
            sign: 1,
            cutoff,
            bound: 0,
        }
    }
}

struct Builder<'a> {
    p: &'a RelationParams,
    s: Rational,
}

impl Builder<'_> {
    /// `[i n + j n']_{a, i b + j b' + shift}`.
    fn f(&self, i: i64, j: i64, a: Rational, shift: Rational) -> DilogElem {
        let n = self.p.n.scale(i).add(&self.p.n2.scale(j));
        let b = &self.p.b * int(i) + &self.p.b2 * int(j) + shift;
        DilogElem::new(n, a, b)
    }

    fn c(&self, num: i64, den: i64) -> Rational {
        &self.p.c * Rational::new(num.into(), den.into())
    }

    /// `±k c/den`.
    fn pm(&self, k: i64, den: i64) -> Rational {
        &self.s * self.c(k, den)
    }

    fn within(&self, i: i64, j: i64) -> bool {
        let n = self.p.n.scale(i).add(&self.p.n2.scale(j));
        n.degree() <= self.p.cutoff as i64
    }

    /// Largest `p ≥ from` for which `(i(p), j(p))` stays within the cutoff,
    /// assuming degrees grow with `p`.
    fn last(&self, from: i64, idx: impl Fn(i64) -> (i64, i64)) -> i64 {
        let mut p = from;
        while {
            let (i, j) = idx(p);
            self.within(i, j)
        } {
            p += 1;
        }
        p - 1
    }
}

/// Both sides of the named relation, truncated at `params.cutoff`.
pub fn reordering_relation(
    rel: ReorderingRelation,
    params: &RelationParams,
    fd: &FixedData,
) -> Result<(Word, Word)> {
    let std;
    let p = match rel {
        ReorderingRelation::A115 | ReorderingRelation::A227 => {
            std = RelationParams::standard(params.cutoff);
            &std
        }
        _ => params,
    };
    if p.sign != 1 && p.sign != -1 {
        return Err(Error::NotApplicable(format!(
            "sign must be ±1, got {}",
            p.sign
        )));
    }
    let skew = fd.skew_pair(&p.n2, &p.n);
    if !p.c.is_positive() || skew != p.c {
        return Err(Error::NotApplicable(format!(
            "need {{n',n}} = c > 0, got {{n',n}} = {} and c = {}",
            fmt_rational(&skew),
            fmt_rational(&p.c)
        )));
    }
    let bl = Builder { p, s: int(p.sign) };
    let z = Rational::zero;
    let (c1, c2, c4) = (bl.c(1, 1), bl.c(1, 2), bl.c(1, 4));
    let big_l = p.bound as i64;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    match rel {
        ReorderingRelation::Nn1a => {
            lhs = vec![bl.f(0, 1, c2.clone(), z()), bl.f(1, 0, c1.clone(), z())];
            rhs = vec![
                bl.f(1, 0, c1.clone(), z()),
                bl.f(1, 1, c2.clone(), z()),
                bl.f(1, 2, c1.clone(), z()),
                bl.f(0, 1, c2.clone(), z()),
            ];
        }
        ReorderingRelation::Nn1b => {
            lhs = vec![bl.f(0, 1, c1.clone(), z()), bl.f(1, 0, c2.clone(), z())];
            rhs = vec![
                bl.f(1, 0, c2.clone(), z()),
                bl.f(2, 1, c1.clone(), z()),
                bl.f(1, 1, c2.clone(), z()),
                bl.f(0, 1, c1.clone(), z()),
            ];
        }
        ReorderingRelation::LemA2a | ReorderingRelation::LemA3a => {
            let finite = rel == ReorderingRelation::LemA2a;
            let top = if finite {
                big_l
            } else {
                bl.last(0, |q| (1, 2 * q))
            };
            lhs.push(bl.f(0, 1, c2.clone(), z()));
            for q in 0..=top {
                lhs.push(bl.f(1, 2 * q, c1.clone(), bl.pm(q, 1)));
            }
            rhs.push(bl.f(1, 0, c1.clone(), z()));
            let top_r = if finite {
                2 * big_l + 1
            } else {
                bl.last(1, |q| (1, q))
            };
            for q in 1..=top_r {
                rhs.push(bl.f(1, q, c2.clone(), bl.pm(q - 1, 2)));
            }
            if finite {
                rhs.push(bl.f(1, 2 * big_l + 2, c1.clone(), bl.pm(big_l, 1)));
            }
            rhs.push(bl.f(0, 1, c2.clone(), z()));
        }
        ReorderingRelation::LemA2b | ReorderingRelation::LemA3b => {
            let finite = rel == ReorderingRelation::LemA2b;
            let top = if finite {
                big_l
            } else {
                bl.last(0, |q| (2 * q, 1))
            };
            for q in (0..=top).rev() {
                lhs.push(bl.f(2 * q, 1, c1.clone(), bl.pm(q, 1)));
            }
            lhs.push(bl.f(1, 0, c2.clone(), z()));
            rhs.push(bl.f(1, 0, c2.clone(), z()));
            if finite {
                rhs.push(bl.f(2 * big_l + 2, 1, c1.clone(), bl.pm(big_l, 1)));
            }
            let top_r = if finite {
                2 * big_l + 1
            } else {
                bl.last(1, |q| (q, 1))
            };
            for q in (1..=top_r).rev() {
                rhs.push(bl.f(q, 1, c2.clone(), bl.pm(q - 1, 2)));
            }
            rhs.push(bl.f(0, 1, c1.clone(), z()));
        }
        ReorderingRelation::LemA5a | ReorderingRelation::LemA6a => {
            let finite = rel == ReorderingRelation::LemA5a;
            let top = if finite {
                big_l
            } else {
                bl.last(0, |q| (1, q))
            };
            lhs.push(bl.f(0, 1, c1.clone(), z()));
            for q in 0..=top {
                lhs.push(bl.f(1, q, c2.clone(), bl.pm(q, 2)));
            }
            rhs.push(bl.f(1, 0, c2.clone(), z()));
            let top_r = if finite {
                big_l
            } else {
                bl.last(1, |q| (1, q))
            };
            for q in 1..=top_r {
                rhs.push(bl.f(2, 2 * q - 1, c1.clone(), bl.pm(q - 1, 1)));
                rhs.push(bl.f(1, q, c4.clone(), bl.pm(2 * q - 1, 4)));
            }
            if finite {
                rhs.push(bl.f(2, 2 * big_l + 1, c1.clone(), bl.pm(big_l, 1)));
                rhs.push(bl.f(1, big_l + 1, c2.clone(), bl.pm(big_l, 2)));
            }
            rhs.push(bl.f(0, 1, c1.clone(), z()));
        }
        ReorderingRelation::LemA5b | ReorderingRelation::LemA6b => {
            let finite = rel == ReorderingRelation::LemA5b;
            let top = if finite {
                big_l
            } else {
                bl.last(0, |q| (q, 1))
            };
            for q in (0..=top).rev() {
                lhs.push(bl.f(q, 1, c2.clone(), bl.pm(q, 2)));
            }
            lhs.push(bl.f(1, 0, c1.clone(), z()));
            rhs.push(bl.f(1, 0, c1.clone(), z()));
            if finite {
                rhs.push(bl.f(big_l + 1, 1, c2.clone(), bl.pm(big_l, 2)));
                rhs.push(bl.f(2 * big_l + 1, 2, c1.clone(), bl.pm(big_l, 1)));
            }
            let top_r = if finite {
                big_l
            } else {
                bl.last(1, |q| (q, 1))
            };
            for q in (1..=top_r).rev() {
                rhs.push(bl.f(q, 1, c4.clone(), bl.pm(2 * q - 1, 4)));
                rhs.push(bl.f(2 * q - 1, 2, c1.clone(), bl.pm(q - 1, 1)));
            }
            rhs.push(bl.f(0, 1, c2.clone(), z()));
        }
        ReorderingRelation::ThmNn3 | ReorderingRelation::A115 => {
            lhs = vec![bl.f(0, 1, c2.clone(), z()), bl.f(1, 0, c2.clone(), z())];
            for q in 0..=bl.last(0, |q| (q + 1, q)) {
                rhs.push(bl.f(q + 1, q, c2.clone(), z()));
            }
            push_tower(&bl, &mut rhs, 1);
            for q in (0..=bl.last(0, |q| (q, q + 1))).rev() {
                rhs.push(bl.f(q, q + 1, c2.clone(), z()));
            }
        }
        ReorderingRelation::ThmNn5 | ReorderingRelation::A227 => {
            lhs = vec![bl.f(0, 1, c4.clone(), z()), bl.f(1, 0, c1.clone(), z())];
            for q in 0..=bl.last(0, |q| (q + 1, 2 * q + 1)) {
                rhs.push(bl.f(2 * q + 1, 4 * q, c1.clone(), z()));
                rhs.push(bl.f(q + 1, 2 * q + 1, c4.clone(), z()));
            }
            rhs.push(bl.f(1, 2, c2.clone(), z()));
            push_tower(&bl, &mut rhs, 2);
            for q in (0..=bl.last(0, |q| (q, 2 * q + 1))).rev() {
                rhs.push(bl.f(2 * q + 1, 4 * q + 4, c1.clone(), z()));
                rhs.push(bl.f(q, 2 * q + 1, c4.clone(), z()));
            }
        }
    }
    let cutoff = p.cutoff;
    let (lhs, rhs) = (
        Word::new(lhs).truncated(cutoff),
        Word::new(rhs).truncated(cutoff),
    );
    lhs.validate(fd)?;
    rhs.validate(fd)?;
    Ok((lhs, rhs))
}

/// `∏_{p≥0} [2^p(n+kn')]_{2^(p−1)c, 2^p(b+kb') ∓ 2^(p−1)c}`, minus sign first.
fn push_tower(bl: &Builder<'_>, out: &mut Vec<DilogElem>, k: i64) {
    let mut t = 1i64;
    while bl.within(t, k * t) {
        let a = bl.c(t, 2);
        out.push(bl.f(t, k * t, a.clone(), -a.clone()));
        out.push(bl.f(t, k * t, a.clone(), a));
        t *= 2;
    }
}
