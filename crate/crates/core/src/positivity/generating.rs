//! Generating polynomials of the quantum data on the `(1,3)` ray for
//! `δ = (3, 3k)`, and the resummations behind the closed factor products.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{int, LaurentPoly};

/// Integer Laurent polynomial in `x` as exponent ↦ coefficient, zeros dropped.
pub type XPoly = BTreeMap<i64, i64>;

fn to_poly(p: &XPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().map(|(&e, &c)| (e, int(c))))
}

fn from_poly(p: &LaurentPoly) -> Result<XPoly> {
    let mut out = XPoly::new();
    for (e, c) in p.terms() {
        if !c.is_integer() {
            return Err(Error::InexactDivision(format!("coefficient {c} at x^{e}")));
        }
        out.insert(
            e,
            i64::try_from(c.to_integer()).map_err(|e| Error::InexactDivision(e.to_string()))?,
        );
    }
    Ok(out)
}

fn add(p: &mut XPoly, e: i64, c: i64) {
    let x = p.entry(e).or_insert(0);
    *x += c;
    if *x == 0 {
        p.remove(&e);
    }
}

fn one_minus(e: i64) -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::v_pow(e)
}

/// `x^shift ∏(1 − x^a) / ∏(1 − x^b)`, which must be a Laurent polynomial.
pub fn product_ratio(shift: i64, nums: &[i64], dens: &[i64]) -> Result<XPoly> {
    let num = nums
        .iter()
        .fold(LaurentPoly::v_pow(shift), |acc, &e| &acc * &one_minus(e));
    let den = dens
        .iter()
        .fold(LaurentPoly::one(), |acc, &e| &acc * &one_minus(e));
    let q = num.div_exact(&den).ok_or_else(|| {
        Error::InexactDivision(format!("x^{shift} ∏(1−x^{nums:?}) / ∏(1−x^{dens:?})"))
    })?;
    from_poly(&q)
}

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidFixedData(format!(
            "k must be positive, got {k}"
        )));
    }
    Ok(())
}

/// `A_k = (1−x^(6k−4))(1−x^(6k−2))(1−x^(6k)) / ((1−x²)(1−x⁴)(1−x^(2k)))`.
pub fn a_k(k: i64) -> Result<XPoly> {
    check_k(k)?;
    product_ratio(0, &[6 * k - 4, 6 * k - 2, 6 * k], &[2, 4, 2 * k])
}

/// `A_k` from its defining triple sum.
pub fn a_k_sum(k: i64) -> Result<XPoly> {
    check_k(k)?;
    let mut p = XPoly::new();
    for i in 1..=3 {
        for t in 1..=3 * k - 2 {
            for s in 1..=t {
                add(&mut p, -2 * k * i + 2 * t + 2 * s + 6 * k - 4, 1);
            }
        }
    }
    Ok(p)
}

/// `B_k = A_k / (1 + x² + x⁴)`.
pub fn b_k(k: i64) -> Result<XPoly> {
    let a = to_poly(&a_k(k)?);
    let d = LaurentPoly::from_int_coeffs(0, &[1, 0, 1, 0, 1]);
    let q = a
        .div_exact(&d)
        .ok_or_else(|| Error::InexactDivision(format!("A_{k} by 1 + x² + x⁴")))?;
    from_poly(&q)
}

/// `Σ_(t=1)^m` as `(t, ±1)`, with `Σ_(t=1)^m = −Σ_(t=m+1)^0` for `m < 0`.
fn signed_range(m: i64) -> Vec<(i64, i64)> {
    if m >= 0 {
        (1..=m).map(|t| (t, 1)).collect()
    } else {
        (m + 1..=0).map(|t| (t, -1)).collect()
    }
}

/// Explicit coefficient list for `B_k`, by the residue of `k` modulo 6.
pub fn bk_closed_form(k: i64) -> Result<XPoly> {
    check_k(k)?;
    if k % 3 == 0 {
        return Err(Error::BadResidue(format!("k = {k} is divisible by 3")));
    }
    let (p, res) = (k / 6, k % 6);
    let mut r = XPoly::new();
    let sg = 1;
    let mut put = |c: i64, es: &[i64]| {
        for &e in es {
            add(&mut r, e, c);
        }
    };
    match res {
        1 => {
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 16, -12 * t - 4 * s + 16 + 96 * p],
                    );
                }
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t - 1),
                        &[12 * t + 4 * s - 16 + 12 * p, -12 * t - 4 * s + 16 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t),
                    &[12 * t - 4 + 12 * p, -12 * t + 4 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p) {
                put(sg * (3 * p + t), &[4 * t - 4 + 24 * p, -4 * t + 4 + 72 * p]);
            }
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t),
                        &[12 * t + 4 * s - 16 + 36 * p, -12 * t - 4 * s + 16 + 60 * p],
                    );
                }
            }
            put(sg * (7 * p + 1), &[48 * p]);
            for (t, sg) in signed_range(p - 1) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 10, -12 * t - 4 * s + 10 + 96 * p],
                    );
                }
            }
            for (t, sg) in signed_range(p + 1) {
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t - 2),
                        &[12 * t + 4 * s - 22 + 12 * p, -12 * t - 4 * s + 22 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t - 1),
                    &[12 * t - 10 + 12 * p, -12 * t + 10 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p - 2) {
                put(
                    sg * (3 * p + t + 1),
                    &[4 * t + 2 + 24 * p, -4 * t - 2 + 72 * p],
                );
            }
            put(
                sg * (6 * p),
                &[36 * p - 2, 36 * p + 2, 60 * p - 2, 60 * p + 2],
            );
            for (t, sg) in signed_range(p - 1) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t),
                        &[12 * t + 4 * s - 10 + 36 * p, -12 * t - 4 * s + 10 + 60 * p],
                    );
                }
            }
            put(
                sg * (7 * p),
                &[48 * p - 6, 48 * p - 2, 48 * p + 2, 48 * p + 6],
            );
        }
        2 => {
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 16, -12 * t - 4 * s + 32 + 96 * p],
                    );
                }
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t),
                        &[12 * t + 4 * s - 12 + 12 * p, -12 * t - 4 * s + 28 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t - 1),
                    &[12 * t - 12 + 12 * p, -12 * t + 28 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p + 1) {
                put(
                    sg * (3 * p + t),
                    &[4 * t - 4 + 24 * p, -4 * t + 20 + 72 * p],
                );
            }
            put(
                sg * (6 * p + 2),
                &[36 * p + 4, 36 * p + 8, 60 * p + 8, 60 * p + 12],
            );
            for (t, sg) in signed_range(p - 1) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t + 2),
                        &[12 * t + 4 * s - 4 + 36 * p, -12 * t - 4 * s + 20 + 60 * p],
                    );
                }
            }
            put(
                sg * (7 * p + 2),
                &[48 * p, 48 * p + 4, 48 * p + 8, 48 * p + 12, 48 * p + 16],
            );
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 10, -12 * t - 4 * s + 26 + 96 * p],
                    );
                }
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t),
                        &[12 * t + 4 * s - 6 + 12 * p, -12 * t - 4 * s + 22 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t - 1),
                    &[12 * t - 6 + 12 * p, -12 * t + 22 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p) {
                put(
                    sg * (3 * p + t),
                    &[4 * t + 2 + 24 * p, -4 * t + 14 + 72 * p],
                );
            }
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t),
                        &[12 * t + 4 * s - 10 + 36 * p, -12 * t - 4 * s + 26 + 60 * p],
                    );
                }
            }
            put(sg * (7 * p + 1), &[48 * p + 6, 48 * p + 10]);
        }
        4 => {
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 16, -12 * t - 4 * s + 64 + 96 * p],
                    );
                }
            }
            for (t, sg) in signed_range(p + 1) {
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t - 1),
                        &[12 * t + 4 * s - 16 + 12 * p, -12 * t - 4 * s + 64 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t),
                    &[12 * t - 4 + 12 * p, -12 * t + 52 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p + 1) {
                put(
                    sg * (3 * p + t + 2),
                    &[4 * t + 8 + 24 * p, -4 * t + 40 + 72 * p],
                );
            }
            put(
                sg * (6 * p + 4),
                &[36 * p + 16, 36 * p + 20, 60 * p + 28, 60 * p + 32],
            );
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t + 4),
                        &[12 * t + 4 * s + 8 + 36 * p, -12 * t - 4 * s + 40 + 60 * p],
                    );
                }
            }
            put(sg * (7 * p + 5), &[48 * p + 24]);
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 10, -12 * t - 4 * s + 58 + 96 * p],
                    );
                }
            }
            for (t, sg) in signed_range(p + 1) {
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t - 1),
                        &[12 * t + 4 * s - 10 + 12 * p, -12 * t - 4 * s + 58 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t),
                    &[12 * t + 2 + 12 * p, -12 * t + 46 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p) {
                put(
                    sg * (3 * p + t + 2),
                    &[4 * t + 14 + 24 * p, -4 * t + 34 + 72 * p],
                );
            }
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t + 2),
                        &[12 * t + 4 * s + 2 + 36 * p, -12 * t - 4 * s + 46 + 60 * p],
                    );
                }
            }
            put(
                sg * (7 * p + 3),
                &[48 * p + 18, 48 * p + 22, 48 * p + 26, 48 * p + 30],
            );
        }
        _ => {
            for (t, sg) in signed_range(p + 1) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 16, -12 * t - 4 * s + 80 + 96 * p],
                    );
                }
            }
            for (t, sg) in signed_range(p) {
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t + 1),
                        &[12 * t + 4 * s + 12 * p, -12 * t - 4 * s + 64 + 84 * p],
                    );
                }
                put(sg * (p + 2 * t), &[12 * t + 12 * p, -12 * t + 64 + 84 * p]);
            }
            for (t, sg) in signed_range(3 * p + 3) {
                put(
                    sg * (3 * p + t + 1),
                    &[4 * t + 8 + 24 * p, -4 * t + 56 + 72 * p],
                );
            }
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t + 4),
                        &[12 * t + 4 * s + 8 + 36 * p, -12 * t - 4 * s + 56 + 60 * p],
                    );
                }
            }
            put(
                sg * (7 * p + 5),
                &[
                    48 * p + 24,
                    48 * p + 28,
                    48 * p + 32,
                    48 * p + 36,
                    48 * p + 40,
                ],
            );
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * t,
                        &[12 * t + 4 * s - 10, -12 * t - 4 * s + 74 + 96 * p],
                    );
                }
            }
            for (t, sg) in signed_range(p + 1) {
                for s in 1..=2 {
                    put(
                        sg * (p + 2 * t),
                        &[12 * t + 4 * s - 6 + 12 * p, -12 * t - 4 * s + 70 + 84 * p],
                    );
                }
                put(
                    sg * (p + 2 * t - 1),
                    &[12 * t - 6 + 12 * p, -12 * t + 70 + 84 * p],
                );
            }
            for (t, sg) in signed_range(3 * p + 2) {
                put(
                    sg * (3 * p + t + 2),
                    &[4 * t + 14 + 24 * p, -4 * t + 50 + 72 * p],
                );
            }
            put(sg * (6 * p + 4), &[36 * p + 26, 60 * p + 38]);
            for (t, sg) in signed_range(p) {
                for s in 1..=3 {
                    put(
                        sg * (6 * p + t + 4),
                        &[12 * t + 4 * s + 14 + 36 * p, -12 * t - 4 * s + 50 + 60 * p],
                    );
                }
            }
            put(sg * (7 * p + 5), &[48 * p + 30, 48 * p + 34]);
        }
    }
    Ok(r)
}

/// Summation whose three forms are compared by [`resummation_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resummation {
    /// Double sum on the `(1,2)` ray.
    Deg3,
    /// Double sum on the `(2,2)` ray.
    Deg4_22,
    /// Triple sum on the `(1,3)` ray.
    Deg4_13,
}

impl Resummation {
    pub const ALL: [Resummation; 3] = [
        Resummation::Deg3,
        Resummation::Deg4_22,
        Resummation::Deg4_13,
    ];
}

impl fmt::Display for Resummation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resummation::Deg3 => "deg3",
            Resummation::Deg4_22 => "deg4_22",
            Resummation::Deg4_13 => "deg4_13",
        })
    }
}

impl FromStr for Resummation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Resummation::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::Unknown(format!("resummation {s}")))
    }
}

/// The nested sum, its product form and its branch form for one `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResummationForms {
    pub sum: XPoly,
    pub product: XPoly,
    pub branch: XPoly,
}

impl ResummationForms {
    pub fn agree(&self) -> bool {
        self.sum == self.product && self.sum == self.branch
    }
}

pub fn resummation_forms(p: i64, which: Resummation) -> Result<ResummationForms> {
    if p < 1 {
        return Err(Error::InvalidFixedData(format!(
            "p must be positive, got {p}"
        )));
    }
    let mut sum = XPoly::new();
    let mut branch = XPoly::new();
    let product = match which {
        Resummation::Deg3 => {
            for j in 1..p {
                for t in 1..=p - j {
                    add(&mut sum, -2 * j + 2 * t, 1);
                }
            }
            if p % 2 == 0 {
                for j in 1..=p / 2 {
                    for t in 1..p {
                        add(&mut branch, 2 - 4 * j + 2 * t, 1);
                    }
                }
            } else {
                for j in 1..=p {
                    for t in 1..=(p - 1) / 2 {
                        add(&mut branch, -2 * j + 4 * t, 1);
                    }
                }
            }
            product_ratio(-2 * p + 4, &[2 * p - 2, 2 * p], &[2, 4])?
        }
        Resummation::Deg4_22 => {
            for j in 1..=p {
                for s in 1..j {
                    add(&mut sum, -2 * j - 2 * s, 1);
                }
            }
            if p % 2 == 0 {
                for j in 1..=p / 2 {
                    for s in 1..p {
                        add(&mut branch, -2 * p - 4 * j + 2 * s, 1);
                    }
                }
            } else {
                for j in 1..=p {
                    for s in 1..=(p - 1) / 2 {
                        add(&mut branch, -2 * p - 2 - 2 * j + 4 * s, 1);
                    }
                }
            }
            product_ratio(-4 * p + 2, &[2 * p - 2, 2 * p], &[2, 4])?
        }
        Resummation::Deg4_13 => {
            for j in 1..=p - 2 {
                for t in 1..=p - j - 1 {
                    for s in 1..=t {
                        add(&mut sum, -2 * j + 2 * t + 2 * s, 1);
                    }
                }
            }
            match p % 6 {
                0 | 3 => {
                    for j in 1..=p / 3 {
                        for t in 1..=p - 2 {
                            for s in 1..=t {
                                add(&mut branch, 4 - 6 * j + 2 * t + 2 * s, 1);
                            }
                        }
                    }
                }
                1 | 2 => {
                    let (second, run) = if p % 6 == 1 {
                        (2 * p - 2, p - 4)
                    } else {
                        (2 * p, p - 3)
                    };
                    for j in 1..=p {
                        for t in 1..=p / 6 {
                            let base = -2 * p - 6 + 2 * j + 12 * t;
                            add(&mut branch, base, 1);
                            add(&mut branch, base + second, 1);
                            for s in 1..=run {
                                add(&mut branch, base + 2 + 2 * s, 1);
                            }
                        }
                    }
                }
                4 => {
                    for j in 1..=p {
                        for t in 1..=(p - 2) / 2 {
                            for s in 1..=(p - 1) / 3 {
                                add(&mut branch, -2 * p - 4 + 2 * j + 4 * t + 6 * s, 1);
                            }
                        }
                    }
                }
                _ => {
                    for j in 1..=p {
                        for t in 1..=(p - 2) / 3 {
                            for s in 1..=(p - 1) / 2 {
                                add(&mut branch, -2 * p - 4 + 2 * j + 6 * t + 4 * s, 1);
                            }
                        }
                    }
                }
            }
            product_ratio(-2 * p + 8, &[2 * p - 4, 2 * p - 2, 2 * p], &[2, 4, 6])?
        }
    };
    Ok(ResummationForms {
        sum,
        product,
        branch,
    })
}

pub fn resummation_check(p: i64, which: Resummation) -> Result<bool> {
    Ok(resummation_forms(p, which)?.agree())
}
