//! Comparison of completed diagrams with the known finite and affine rank-2 cases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::pentagon::catalog::known_relation;
use crate::pentagon::compile;
use crate::scalar::{fmt_rational, int, rat, RatFunc, Rational};

use super::{complete, top_level, Diagram, Wall};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownType {
    A2,
    B2,
    G2,
    A1Affine,
    A2Affine,
}

impl KnownType {
    pub const ALL: [KnownType; 5] = [
        KnownType::A2,
        KnownType::B2,
        KnownType::G2,
        KnownType::A1Affine,
        KnownType::A2Affine,
    ];

    pub fn deltas(self) -> (i64, i64) {
        match self {
            KnownType::A2 => (1, 1),
            KnownType::B2 => (1, 2),
            KnownType::G2 => (1, 3),
            KnownType::A1Affine => (2, 2),
            KnownType::A2Affine => (1, 4),
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(self, KnownType::A1Affine | KnownType::A2Affine)
    }

    fn relation(self) -> &'static str {
        match self {
            KnownType::A2 => "pent0",
            KnownType::B2 => "pent3",
            KnownType::G2 => "pent4",
            KnownType::A1Affine => "a115",
            KnownType::A2Affine => "a227",
        }
    }
}

impl fmt::Display for KnownType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KnownType::A2 => "A2",
            KnownType::B2 => "B2",
            KnownType::G2 => "G2",
            KnownType::A1Affine => "A1affine",
            KnownType::A2Affine => "A2affine",
        };
        f.write_str(s)
    }
}

impl FromStr for KnownType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KnownType::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("type {s}")))
    }
}

#[derive(Clone, Debug)]
pub struct KnownComparison {
    pub kind: KnownType,
    pub cutoff: u32,
    pub diagram: Diagram,
    /// Rays whose wall differs from the reference word, with a description.
    pub mismatches: Vec<String>,
    /// Affine types only: disagreements of the `q → 1` limits with the classical walls.
    pub classical_mismatches: Vec<String>,
}

impl KnownComparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty() && self.classical_mismatches.is_empty()
    }
}

pub fn compare_known(kind: KnownType, cutoff: u32) -> Result<KnownComparison> {
    let (d1, d2) = kind.deltas();
    let fd = FixedData::rank2(d1, d2)?;
    let diagram = complete(&fd, cutoff)?;
    let mut mismatches = Vec::new();

    let rel = known_relation(kind.relation(), Some(cutoff))?;
    let mut reference: BTreeMap<LatticeVec, Vec<RatFunc>> = BTreeMap::new();
    for e in compile(&rel.rhs, &fd, cutoff)? {
        if reference.contains_key(&e.n0) {
            mismatches.push(format!("reference word revisits ray {}", e.n0));
            continue;
        }
        reference.insert(e.n0.clone(), e.levels(&fd, top_level(&e.n0, cutoff)));
    }
    reference.retain(|_, r| r.iter().any(|x| !x.is_zero()));
    for w in &diagram.walls {
        match reference.remove(&w.n0) {
            Some(r) if r == w.levels => {}
            Some(_) => mismatches.push(format!("wall {} differs from the reference", w.n0)),
            None => mismatches.push(format!("unexpected wall {}", w.n0)),
        }
    }
    for n0 in reference.keys() {
        mismatches.push(format!("missing wall {n0}"));
    }

    let classical_mismatches = if kind.is_affine() {
        classical_compare(kind, &diagram)
    } else {
        Vec::new()
    };
    Ok(KnownComparison {
        kind,
        cutoff,
        diagram,
        mismatches,
        classical_mismatches,
    })
}

/// Classical walls `Ψ[n]^c` up to degree `cutoff`.
pub fn classical_walls(kind: KnownType, cutoff: u32) -> Vec<(LatticeVec, Rational)> {
    let l = cutoff as i64;
    let v = |a: i64, b: i64| LatticeVec::new(&[a, b]);
    let mut out = Vec::new();
    let mut push = |n: LatticeVec, c: Rational| {
        if n.degree() <= l {
            out.push((n, c));
        }
    };
    match kind {
        KnownType::A1Affine => {
            push(v(1, 0), int(2));
            push(v(0, 1), int(2));
            for p in 1..=l {
                push(v(p + 1, p), int(2));
                push(v(p, p + 1), int(2));
            }
            let mut j = 0;
            while 2 * (1 << j) <= l {
                push(v(1 << j, 1 << j), rat(4, 1 << j));
                j += 1;
            }
        }
        KnownType::A2Affine => {
            push(v(1, 0), int(1));
            push(v(0, 1), int(4));
            for p in 1..=l {
                push(v(2 * p + 1, 4 * p), int(1));
                push(v(p, 2 * p - 1), int(4));
                push(v(2 * p - 1, 4 * p), int(1));
                push(v(p, 2 * p + 1), int(4));
            }
            push(v(1, 2), int(6));
            let mut j = 1;
            while 3 * (1 << j) <= l {
                push(v(1 << j, 2 << j), rat(4, 1 << j));
                j += 1;
            }
        }
        _ => {}
    }
    out
}

/// `Ψ[n]^c` has logarithm `c Σ_k (−1)^(k+1)/k² X_(kn)` in the limit.
fn classical_compare(kind: KnownType, d: &Diagram) -> Vec<String> {
    let l = d.cutoff as i64;
    let mut want: BTreeMap<LatticeVec, Rational> = BTreeMap::new();
    for (n, c) in classical_walls(kind, d.cutoff) {
        let mut k = 1;
        while k * n.degree() <= l {
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            *want.entry(n.scale(k)).or_insert_with(Rational::zero) += sign * &c / int(k * k);
            k += 1;
        }
    }
    want.retain(|_, c| !c.is_zero());
    let mut got: BTreeMap<LatticeVec, Rational> = BTreeMap::new();
    let mut out = Vec::new();
    for w in &d.walls {
        for (i, r) in w.levels.iter().enumerate() {
            let n = w.n0.scale(i as i64 + 1);
            match r.limit_at_one() {
                Ok(x) if x.is_zero() => {}
                Ok(x) => {
                    got.insert(n, x);
                }
                Err(_) => out.push(format!("pole at q = 1 on {n}")),
            }
        }
    }
    for (n, c) in &want {
        match got.remove(n) {
            Some(x) if &x == c => {}
            Some(x) => out.push(format!(
                "{n}: limit {} but expected {}",
                fmt_rational(&x),
                fmt_rational(c)
            )),
            None => out.push(format!("{n}: missing, expected {}", fmt_rational(c))),
        }
    }
    for (n, x) in got {
        out.push(format!("{n}: unexpected limit {}", fmt_rational(&x)));
    }
    out
}

/// Exponents `c_j` with `lim_(q→1) g = ∏_j Ψ[j n0]^(c_j)`, lowest level first.
pub fn classical_exponents(w: &Wall) -> Result<Vec<(LatticeVec, Rational)>> {
    let lim: Vec<Rational> = w
        .levels
        .iter()
        .map(RatFunc::limit_at_one)
        .collect::<Result<_>>()?;
    let mut e: Vec<Rational> = vec![Rational::zero(); lim.len()];
    for j in 1..=lim.len() {
        let mut x = lim[j - 1].clone();
        for jp in 1..j {
            if j % jp == 0 {
                let k = (j / jp) as i64;
                let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                x -= sign * &e[jp - 1] / int(k * k);
            }
        }
        e[j - 1] = x;
    }
    Ok(e.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (w.n0.scale(i as i64 + 1), c))
        .collect())
}
