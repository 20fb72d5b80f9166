//! Closed-form factor products on the low-degree rays for `δ₂ = kδ₁`, and
//! their conversion to the canonical interval `1/δ(n)`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::scalar::{qnum_scaled, rat, LaurentPoly, Rational};

use super::canonical_interval_scaled;

/// Product `∏ Ψ_{a,b}[n]^c` with `a`, `b` scaled by `δ₀ = kδ₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledProduct {
    pub n: LatticeVec,
    pub a: i64,
    pub spectrum: BTreeMap<i64, i64>,
}

impl ScaledProduct {
    fn new(n: (i64, i64), a: i64) -> Self {
        ScaledProduct {
            n: LatticeVec::new(&[n.0, n.1]),
            a,
            spectrum: BTreeMap::new(),
        }
    }

    fn push(&mut self, b: i64) {
        self.push_c(b, 1);
    }

    fn push_c(&mut self, b: i64, c: i64) {
        let x = self.spectrum.entry(b).or_insert(0);
        *x += c;
        if *x == 0 {
            self.spectrum.remove(&b);
        }
    }

    fn poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.spectrum
                .iter()
                .filter(|(_, &c)| c != 0)
                .map(|(&e, &c)| (e, rat(c, 1))),
        )
    }
}

/// Factors of one ray level in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFactor {
    pub n: LatticeVec,
    pub a: Rational,
    pub spectrum: BTreeMap<Rational, i64>,
}

fn check(d1: i64, k: i64, degree: u32) -> Result<()> {
    if d1 < 1 || k < 1 {
        return Err(Error::InvalidFixedData(format!(
            "need δ₁ ≥ 1 and k ≥ 1, got {d1}, {k}"
        )));
    }
    if !(2..=4).contains(&degree) {
        return Err(Error::Unknown(format!(
            "closed forms exist for degrees 2 to 4, not {degree}"
        )));
    }
    Ok(())
}

/// The products in their fused form, `n = (1,1)` through `(1,3)` at the given degree.
pub fn displayed_factors(d1: i64, k: i64, degree: u32) -> Result<Vec<ScaledProduct>> {
    check(d1, k, degree)?;
    let d = k * d1;
    let mut out = Vec::new();
    match degree {
        2 => {
            let mut p = ScaledProduct::new((1, 1), 1);
            for i in 1..=d1 {
                p.push(k * (d1 + 1 - 2 * i));
            }
            out.push(p);
        }
        3 => {
            let mut p = ScaledProduct::new((2, 1), 1);
            for i in 1..d1 {
                for t in 1..=i {
                    p.push(k * (-2 * d1 + 2 * i + 2 * t));
                }
            }
            out.push(p);
            out.push(if d % 2 == 1 {
                let mut p = ScaledProduct::new((1, 2), 1);
                for i in 1..=d1 {
                    for t in 1..=(d - 1) / 2 {
                        p.push(k - 1 - 2 * k * i + 4 * t);
                    }
                }
                p
            } else if k % 2 == 1 {
                // δ₁ even, k odd: refined to the interval 1/(kδ₁)
                let mut p = ScaledProduct::new((1, 2), 1);
                for i in 1..=d1 / 2 {
                    for t in 1..=(k + 1) / 2 {
                        p.push(k - 1 - 4 * k * i + 4 * t);
                        p.push(k + 2 * d - 5 - 4 * k * i + 4 * t);
                    }
                    for (t, c) in signed_range(d - k - 2) {
                        p.push_c(3 * k + 1 - 4 * k * i + 2 * t, c);
                    }
                }
                p
            } else {
                let mut p = ScaledProduct::new((1, 2), 2);
                for i in 1..=d1 {
                    for t in 1..d {
                        p.push(k - 2 * k * i + 2 * t);
                    }
                }
                p
            });
        }
        _ => {
            let mut p = ScaledProduct::new((3, 1), 1);
            for i in 1..=d1 - 2 {
                for t in 1..=i {
                    for s in 1..=t {
                        p.push(k * (-3 * d1 + 3 + 2 * i + 2 * t + 2 * s));
                    }
                }
            }
            out.push(p);

            let mut p = ScaledProduct::new((2, 2), if d % 2 == 0 { 2 } else { 1 });
            for i in 1..d1 {
                for t in 1..=i {
                    if d % 2 == 0 {
                        for s in 1..d {
                            let b = -3 * d + 2 * s + 2 * k * i + 2 * k * t;
                            p.push(b - d);
                            p.push(b + d);
                        }
                    } else {
                        for s in 1..=(d - 1) / 2 {
                            let b = -3 * d - 1 + 4 * s + 2 * k * i + 2 * k * t;
                            p.push(b - d);
                            p.push(b + d);
                        }
                    }
                }
            }
            out.push(p);

            out.push(one_three(d1, k));
        }
    }
    Ok(out)
}

/// `∏_(t=1)^m` as `(t, ±1)`, with `∏_(t=1)^m = (∏_(t=m+1)^0)⁻¹` for `m < 0`.
fn signed_range(m: i64) -> Vec<(i64, i64)> {
    if m >= 0 {
        (1..=m).map(|t| (t, 1)).collect()
    } else {
        (m + 1..=0).map(|t| (t, -1)).collect()
    }
}

/// The `(1,3)` product, split by `kδ₁` modulo 6.
fn one_three(d1: i64, k: i64) -> ScaledProduct {
    let d = k * d1;
    if d % 3 == 0 {
        let mut p = ScaledProduct::new((1, 3), 3);
        for i in 1..=d1 {
            for t in 1..=d - 2 {
                for s in 1..=t {
                    p.push(-d + k + 2 - 2 * k * i + 2 * t + 2 * s);
                }
            }
        }
        return p;
    }
    let mut p = ScaledProduct::new((1, 3), 1);
    for i in 1..=d1 {
        match d % 6 {
            1 | 2 => {
                let (top, second, run) = if d % 6 == 1 {
                    ((d - 1) / 6, -6, d - 4)
                } else {
                    ((d - 2) / 6, -4, d - 3)
                };
                for t in 1..=top {
                    p.push(-d + k - 4 - 2 * k * i + 12 * t);
                    p.push(d + k + second - 2 * k * i + 12 * t);
                    for s in 1..=run {
                        p.push(-d + k - 2 - 2 * k * i + 12 * t + 2 * s);
                    }
                }
            }
            4 => {
                for t in 1..=(d - 2) / 2 {
                    for s in 1..=(d - 1) / 3 {
                        p.push(-d + k - 2 - 2 * k * i + 4 * t + 6 * s);
                    }
                }
            }
            _ => {
                for t in 1..=(d - 2) / 3 {
                    for s in 1..=(d - 1) / 2 {
                        p.push(-d + k - 2 - 2 * k * i + 6 * t + 4 * s);
                    }
                }
            }
        }
    }
    p
}

/// The same products before fusion, as runs of factors with interval 1.
pub fn unfused_factors(d1: i64, k: i64, degree: u32) -> Result<Vec<ScaledProduct>> {
    check(d1, k, degree)?;
    let d = k * d1;
    let mut out = Vec::new();
    match degree {
        2 => {
            let mut p = ScaledProduct::new((1, 1), d);
            for j in 1..=d {
                for i in 1..=d1 {
                    p.push(2 * d + 1 + k - 2 * j - 2 * k * i);
                }
            }
            out.push(p);
        }
        3 => {
            let mut p = ScaledProduct::new((2, 1), d);
            for j in 1..=d {
                for i in 1..d1 {
                    for t in 1..=i {
                        p.push(-d + 1 - 2 * j + 2 * k * i + 2 * k * t);
                    }
                }
            }
            out.push(p);
            let mut p = ScaledProduct::new((1, 2), d);
            for j in 1..d {
                for i in 1..=d1 {
                    for t in 1..=d - j {
                        p.push(d + k - 2 * j - 2 * k * i + 2 * t);
                    }
                }
            }
            out.push(p);
        }
        _ => {
            let mut p = ScaledProduct::new((3, 1), d);
            for j in 1..=d {
                for i in 1..=d1 - 2 {
                    for t in 1..=i {
                        for s in 1..=t {
                            p.push(-2 * d + 3 * k + 1 - 2 * j + 2 * k * i + 2 * k * t + 2 * k * s);
                        }
                    }
                }
            }
            out.push(p);
            let mut p = ScaledProduct::new((2, 2), d);
            for j in 1..=d {
                for s in 1..j {
                    for i in 1..d1 {
                        for t in 1..=i {
                            let b = -2 * j - 2 * s + 2 * k * i + 2 * k * t + 2;
                            p.push(b - d);
                            p.push(b + d);
                        }
                    }
                }
            }
            out.push(p);
            let mut p = ScaledProduct::new((1, 3), d);
            for j in 1..=d - 2 {
                for i in 1..=d1 {
                    for t in 1..=d - j - 1 {
                        for s in 1..=t {
                            p.push(k + 1 - 2 * j - 2 * k * i + 2 * t + 2 * s);
                        }
                    }
                }
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// Rewrites `∏_b Ψ_{a,b}[n]^(c_b)` at the interval `1/δ(n)`, using that the
/// product's logarithm at `X_n` is `Σ c_b q^b / [a]_q`.
pub fn to_canonical(p: &ScaledProduct, fd: &FixedData) -> Result<ExpectedFactor> {
    let d0 = fd.delta0();
    let ac = canonical_interval_scaled(&p.n, fd)?;
    let poly = p.poly();
    let conv =
        &(&crate::scalar::RatFunc::from(poly) * &qnum_scaled(ac, d0)) / &qnum_scaled(p.a, d0);
    let inexact = || {
        Error::InexactDivision(format!(
            "{} from interval {}/{} to {}/{}",
            p.n, p.a, d0, ac, d0
        ))
    };
    let q = conv.as_laurent().ok_or_else(inexact)?;
    let mut spectrum = BTreeMap::new();
    for (e, c) in q.terms() {
        if !c.is_integer() {
            return Err(inexact());
        }
        spectrum.insert(rat(e, d0), c.to_integer().to_i64().ok_or_else(inexact)?);
    }
    Ok(ExpectedFactor {
        n: p.n.clone(),
        a: rat(ac, d0),
        spectrum,
    })
}

/// The degree-`degree` factors for `(δ₁, kδ₁)` in canonical form.
pub fn expected_degree_factors(d1: i64, k: i64, degree: u32) -> Result<Vec<ExpectedFactor>> {
    let fd = FixedData::rank2(d1, k * d1)?;
    displayed_factors(d1, k, degree)?
        .iter()
        .map(|p| to_canonical(p, &fd))
        .collect()
}
