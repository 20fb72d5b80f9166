//! Canonical factorization of parallel wall elements into
//! `Ψ_{1/δ(n),b}[n]^c` with integer `c`, and positivity verdicts.

mod closed_forms;
mod generating;

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::liegroup::{DilogElem, PsiFactor};
use crate::scalar::{fmt_rational, int, qnum_scaled, rat, scaled_exponent, RatFunc, Rational};
use crate::scatter::{Diagram, Wall};

pub use closed_forms::{
    displayed_factors, expected_degree_factors, to_canonical, unfused_factors, ExpectedFactor,
    ScaledProduct,
};
pub use generating::{
    a_k, a_k_sum, b_k, bk_closed_form, product_ratio, resummation_check, resummation_forms,
    Resummation, ResummationForms, XPoly,
};

/// Factors at one level `n = j·n0`: `Ψ_{a,b}[n]^c` for each `b ↦ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFactors {
    pub j: u32,
    pub n: LatticeVec,
    pub a: Rational,
    pub spectrum: BTreeMap<Rational, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFactorization {
    pub n0: LatticeVec,
    /// Nonempty levels only, ascending in `j`.
    pub levels: Vec<LevelFactors>,
}

impl CanonicalFactorization {
    pub fn level(&self, j: u32) -> Option<&LevelFactors> {
        self.levels.iter().find(|l| l.j == j)
    }

    /// Spectrum at level `j`; empty if absent.
    pub fn spectrum(&self, j: u32) -> BTreeMap<Rational, i64> {
        self.level(j)
            .map(|l| l.spectrum.clone())
            .unwrap_or_default()
    }

    /// The factors as a word, by level then by `b`.
    pub fn factors(&self) -> Vec<DilogElem> {
        let mut out = Vec::new();
        for l in &self.levels {
            for (b, &c) in &l.spectrum {
                out.push(
                    DilogElem::new(l.n.clone(), l.a.clone(), b.clone())
                        .with_exponent(RatFunc::from(c)),
                );
            }
        }
        out
    }

    /// Level coefficients `r_1..r_top` of the logarithm of the product.
    pub fn log_levels(&self, fd: &FixedData, top: usize) -> Result<Vec<RatFunc>> {
        let d0 = fd.delta0();
        let mut fs = Vec::new();
        for l in &self.levels {
            let a = scaled_exponent(&l.a, d0)?;
            for (b, &c) in &l.spectrum {
                fs.push(PsiFactor {
                    j: l.j as i64,
                    a,
                    b: scaled_exponent(b, d0)?,
                    c,
                });
            }
        }
        Ok(crate::liegroup::ParallelElem::from_factors(self.n0.clone(), fs).levels(fd, top))
    }
}

/// `1/δ(n)` scaled by `δ₀`.
pub fn canonical_interval_scaled(n: &LatticeVec, fd: &FixedData) -> Result<i64> {
    let a = fd.norm_factor(n)?.recip() * int(fd.delta0());
    a.to_integer()
        .to_i64()
        .filter(|_| a.is_integer())
        .ok_or_else(|| Error::NonRepresentable {
            value: fmt_rational(&(a / int(fd.delta0()))),
            delta0: fd.delta0(),
        })
}

/// Factors the parallel element with logarithm `Σ_j r_j X_(j n0)`, lowest level first.
pub fn factor_levels(
    n0: &LatticeVec,
    r: &[RatFunc],
    fd: &FixedData,
) -> Result<CanonicalFactorization> {
    let d0 = fd.delta0();
    // (j, a, b, c) scaled by δ₀
    let mut fixed: Vec<(i64, i64, i64, i64)> = Vec::new();
    let mut levels = Vec::new();
    for (idx, rj) in r.iter().enumerate() {
        let j = idx as i64 + 1;
        let mut rho = rj.clone();
        for &(jp, ap, bp, c) in &fixed {
            if j % jp != 0 {
                continue;
            }
            let k = j / jp;
            let sign = if k % 2 == 1 { c } else { -c };
            let x = qnum_scaled(k * ap, d0)
                .scale(&int(k))
                .inv()?
                .shift(k * bp)
                .scale(&int(sign));
            rho = &rho - &x;
        }
        if rho.is_zero() {
            continue;
        }
        let n = n0.scale(j);
        let a = canonical_interval_scaled(&n, fd)?;
        let p = &rho * &qnum_scaled(a, d0);
        let non_integral = || Error::NonIntegral {
            n0: n0.to_string(),
            level: j as u32,
        };
        let poly = p.as_laurent().ok_or_else(non_integral)?;
        let mut spectrum = BTreeMap::new();
        for (e, c) in poly.terms() {
            if !c.is_integer() {
                return Err(non_integral());
            }
            let c = c.to_integer().to_i64().ok_or_else(non_integral)?;
            spectrum.insert(rat(e, d0), c);
            fixed.push((j, a, e, c));
        }
        levels.push(LevelFactors {
            j: j as u32,
            n,
            a: rat(a, d0),
            spectrum,
        });
    }
    Ok(CanonicalFactorization {
        n0: n0.clone(),
        levels,
    })
}

pub fn canonical_factor(w: &Wall, fd: &FixedData) -> Result<CanonicalFactorization> {
    factor_levels(&w.n0, &w.levels, fd)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: LatticeVec,
    #[serde(with = "crate::scalar::rational_str")]
    pub b: Rational,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonIntegralLevel {
    pub n0: LatticeVec,
    pub level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub deltas: Vec<i64>,
    pub degree: u32,
    pub positive: bool,
    pub violations: Vec<Violation>,
    pub nonintegral: Vec<NonIntegralLevel>,
}

/// Canonically factors every outgoing wall; positive up to the cutoff when no
/// exponent is negative and every level factors.
pub fn is_positive(d: &Diagram) -> PositivityReport {
    let mut violations = Vec::new();
    let mut nonintegral = Vec::new();
    for w in d.walls.iter().filter(|w| !w.incoming) {
        match canonical_factor(w, &d.fixed) {
            Ok(cf) => {
                for l in &cf.levels {
                    for (b, &c) in &l.spectrum {
                        if c < 0 {
                            violations.push(Violation {
                                n: l.n.clone(),
                                b: b.clone(),
                                c,
                            });
                        }
                    }
                }
            }
            Err(Error::NonIntegral { level, .. }) => nonintegral.push(NonIntegralLevel {
                n0: w.n0.clone(),
                level,
            }),
            Err(_) => nonintegral.push(NonIntegralLevel {
                n0: w.n0.clone(),
                level: 0,
            }),
        }
    }
    PositivityReport {
        deltas: d.fixed.deltas().to_vec(),
        degree: d.cutoff,
        positive: violations.is_empty() && nonintegral.is_empty(),
        violations,
        nonintegral,
    }
}

/// `δ₁ | δ₂` or `δ₂ | δ₁`.
pub fn degree2_criterion(d1: i64, d2: i64) -> bool {
    d1 > 0 && d2 > 0 && (d2 % d1 == 0 || d1 % d2 == 0)
}

/// The divisibility condition for every pair `i ≠ j` with `b_ij ≠ 0`.
pub fn corollary_check(fd: &FixedData) -> bool {
    let b = fd.exchange_matrix();
    let r = fd.rank();
    (0..r).all(|i| {
        (0..r).all(|j| i == j || b[i][j] == 0 || degree2_criterion(fd.delta(i), fd.delta(j)))
    })
}

/// Spectrum helper: `b ↦ c` from `(b, c)` pairs, adding repeated keys and
/// dropping zeros.
pub fn spectrum_of<I: IntoIterator<Item = (Rational, i64)>>(pairs: I) -> BTreeMap<Rational, i64> {
    let mut out: BTreeMap<Rational, i64> = BTreeMap::new();
    for (b, c) in pairs {
        *out.entry(b).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests;
