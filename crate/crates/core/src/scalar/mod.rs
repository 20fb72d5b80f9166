//! Exact scalars: rationals, Laurent polynomials in `v = q^(1/δ₀)` and the
//! rational function field they generate.
//!
//! Every exponent of `q` that appears downstream is an integer exponent of `v`
//! once `δ₀` is fixed, so the only variable in this module is `v`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod cyclotomic;
mod ratfunc;

pub use ratfunc::RatFunc;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q`, or just `p` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `δ₀·x` as an integer, or `NonRepresentable`.
pub fn scaled_exponent(x: &Rational, delta0: i64) -> Result<i64> {
    let y = x * int(delta0);
    if !y.is_integer() {
        return Err(Error::NonRepresentable {
            value: fmt_rational(x),
            delta0,
        });
    }
    y.to_integer()
        .to_i64()
        .ok_or_else(|| Error::NonRepresentable {
            value: fmt_rational(x),
            delta0,
        })
}

/// Serde adaptor writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Dense Laurent polynomial `Σ coeffs[i]·v^(low+i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                low: exp,
                coeffs: vec![c],
            }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, Rational::one())
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Sum of `c·v^e` over the given terms; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    pub fn highest_exponent(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.low < 0 {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let p = self.low;
        let xp = if p >= 0 {
            pow_rat(x, p as u64)
        } else {
            pow_rat(x, (-p) as u64).recip()
        };
        Ok(acc * xp)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Substitute `v ↦ v^k` for `k ≥ 1`.
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k >= 1);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// Substitute `v ↦ v^{-1}`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d` when `d` divides `self` in `ℚ[v^±]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = poly_divrem(&self.coeffs, &d.coeffs);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - d.low, q))
    }

    /// Coefficient-wise `add_assign` of `c·v^k·other`.
    pub fn add_scaled_shifted(&mut self, other: &LaurentPoly, c: &Rational, k: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let olow = other.low + k;
        if self.is_zero() {
            self.low = olow;
            self.coeffs = other.coeffs.iter().map(|x| x * c).collect();
            return;
        }
        let ohigh = olow + other.coeffs.len() as i64 - 1;
        if olow < self.low {
            let pad = (self.low - olow) as usize;
            let mut v = vec![Rational::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = olow;
        }
        let need = (ohigh - self.low + 1) as usize;
        if need > self.coeffs.len() {
            self.coeffs.resize(need, Rational::zero());
        }
        let off = (olow - self.low) as usize;
        if c.is_one() {
            for (i, x) in other.coeffs.iter().enumerate() {
                self.coeffs[off + i] += x;
            }
        } else {
            for (i, x) in other.coeffs.iter().enumerate() {
                self.coeffs[off + i] += x * c;
            }
        }
        self.trim();
    }
}

fn pow_rat(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let cs = fmt_rational(&a);
            match (e, a.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{cs}*v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{cs}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_scaled_shifted(o, &Rational::one(), 0);
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_scaled_shifted(o, &-Rational::one(), 0);
        r
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        self.add_scaled_shifted(o, &Rational::one(), 0);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if o.coeffs.len() == 1 {
            return self.scale(&o.coeffs[0]).shift(o.low);
        }
        if self.coeffs.len() == 1 {
            return o.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.low + o.low, out)
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);

/// Division with remainder of dense polynomials (constant term first).
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = &b[db];
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / lb;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                if !bi.is_zero() {
                    r[k + i] -= &c * bi;
                }
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    (q, r)
}

fn make_monic(p: &mut [Rational]) {
    if let Some(l) = p.last().cloned() {
        if !l.is_one() {
            for c in p.iter_mut() {
                *c /= &l;
            }
        }
    }
}

/// Monic gcd of two dense polynomials.
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a: Vec<Rational> = a.to_vec();
    let mut b: Vec<Rational> = b.to_vec();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let (_, mut r) = poly_divrem(&a, &b);
        make_monic(&mut r);
        a = b;
        b = r;
    }
    make_monic(&mut a);
    a
}

/// `q^b` as the monomial `v^(δ₀·b)`.
pub fn qpow(b: &Rational, delta0: i64) -> Result<LaurentPoly> {
    Ok(LaurentPoly::v_pow(scaled_exponent(b, delta0)?))
}

/// `[α]_q = (q^α − q^(−α))/(q − q^(−1))`.
pub fn qnum(alpha: &Rational, delta0: i64) -> Result<RatFunc> {
    Ok(qnum_scaled(scaled_exponent(alpha, delta0)?, delta0))
}

/// `[k/δ₀]_q` for an integer `k`.
pub fn qnum_scaled(k: i64, delta0: i64) -> RatFunc {
    if k == 0 {
        return RatFunc::zero();
    }
    if k == delta0 {
        return RatFunc::one();
    }
    // (v^k − v^(−k)) / (v^(−δ₀)(v^(2δ₀) − 1))
    let num = &LaurentPoly::v_pow(k + delta0) - &LaurentPoly::v_pow(delta0 - k);
    RatFunc::from_cyclotomic(num, cyclotomic::binomial(2 * delta0 as u32))
}

/// `q − q^(−1)`.
pub fn q_minus_qinv(delta0: i64) -> RatFunc {
    (&LaurentPoly::v_pow(delta0) - &LaurentPoly::v_pow(-delta0)).into()
}

/// Value at `q = 1`; `Pole` if the denominator vanishes there.
pub fn limit_at_one(f: &RatFunc) -> Result<Rational> {
    f.limit_at_one()
}

/// Least common multiple of positive integers.
pub fn lcm_all(xs: &[i64]) -> i64 {
    xs.iter().fold(1i64, |a, &b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(low, c)
    }

    fn rf(n: LaurentPoly, d: LaurentPoly) -> RatFunc {
        RatFunc::new(n, d).unwrap()
    }

    #[test]
    fn product_of_linear_factors() {
        let a: RatFunc = lp(0, &[-1, 1]).into();
        let b: RatFunc = lp(0, &[1, 1]).into();
        assert_eq!(&a * &b, lp(0, &[-1, 0, 1]).into());
    }

    #[test]
    fn common_factor_cancels() {
        let f = rf(lp(0, &[-1, 0, 1]), lp(0, &[-1, 1]));
        assert_eq!(f, lp(0, &[1, 1]).into());
        assert!(f.is_laurent());
    }

    #[test]
    fn half_powers_multiply_to_q() {
        let h = qpow(&rat(1, 2), 2).unwrap();
        assert_eq!(&h * &h, LaurentPoly::v_pow(2));
    }

    #[test]
    fn qpow_cases() {
        assert_eq!(qpow(&int(0), 6).unwrap(), LaurentPoly::one());
        assert_eq!(qpow(&rat(-1, 3), 6).unwrap(), LaurentPoly::v_pow(-2));
        assert!(matches!(
            qpow(&rat(1, 4), 6),
            Err(Error::NonRepresentable { .. })
        ));
    }

    #[test]
    fn qnum_cases() {
        assert!(qnum(&int(1), 3).unwrap().is_one());
        assert_eq!(qnum(&int(2), 1).unwrap(), lp(-1, &[1, 0, 1]).into());
        for a in [rat(1, 2), int(3), rat(-5, 6)] {
            assert_eq!(limit_at_one(&qnum(&a, 6).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn qnum_is_odd() {
        for k in -12..=12 {
            let a = qnum_scaled(k, 6);
            let b = qnum_scaled(-k, 6);
            assert_eq!(a, -&b);
        }
    }

    #[test]
    fn limits() {
        let two = qnum(&int(2), 1).unwrap();
        assert_eq!(limit_at_one(&two).unwrap(), int(2));
        let one = rf(lp(0, &[-1, 1]), lp(0, &[-1, 1]));
        assert_eq!(limit_at_one(&one).unwrap(), int(1));
        let pole = rf(lp(0, &[1]), lp(0, &[-1, 1]));
        assert!(matches!(limit_at_one(&pole), Err(Error::Pole(_))));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn normal_form_denominator() {
        // v^3 / (2v^2 - 2v^4) normalizes to a monic denominator with constant term.
        let f = rf(lp(3, &[1]), lp(2, &[2, 0, -2]));
        assert_eq!(f.den().lowest_exponent(), 0);
        assert!(f.den().leading_coeff().unwrap().is_one());
        assert!(!f.den().coeff(0).is_zero());
        let g = rf(lp(1, &[-1, 0, 0]), lp(0, &[-2, 0, 2]));
        let back = &f * &rf(lp(0, &[1, 0, -1]), lp(0, &[1]));
        assert_eq!(back, rf(lp(1, &[1]), lp(0, &[2])));
        assert_eq!(g, rf(lp(1, &[1]), lp(0, &[2, 0, -2])));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(fmt_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(fmt_rational(&int(4)), "4");
        assert_eq!(parse_rational(" -1/2 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn power_series_expansion() {
        // 1/(1 - v) = 1 + v + v^2 + ...
        let f = rf(lp(0, &[1]), lp(0, &[1, -1]));
        let (low, c) = f.expand_at_zero(5);
        assert_eq!(low, 0);
        assert!(c.iter().all(|x| x.is_one()));
    }

    #[test]
    fn display() {
        assert_eq!(lp(-1, &[1, 0, -2]).to_string(), "v^-1 - 2*v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
