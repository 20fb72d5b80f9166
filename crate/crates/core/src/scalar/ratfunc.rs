use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclotomic::{self, Cyc};
use super::{poly_divrem, poly_gcd, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Element of `ℚ(v)` in canonical form. The denominator is kept factored as
/// `∏ Φ_k^e · rest` with `rest` monic, free of cyclotomic factors and
/// normally 1; numerator and denominator are coprime.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    cyc: Cyc,
    rest: LaurentPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            cyc: Cyc::new(),
            rest: LaurentPoly::one(),
        }
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c).into()
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        super::int(c).into()
    }
}

fn monic_rest(p: Vec<Rational>) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, p)
}

impl RatFunc {
    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        LaurentPoly::v_pow(k).into()
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_fraction(num, den, true))
    }

    /// `num / ∏ Φ_k^e`.
    pub(super) fn from_cyclotomic(num: LaurentPoly, cyc: Cyc) -> Self {
        Self::reduce(num, cyc, LaurentPoly::one())
    }

    fn from_fraction(mut num: LaurentPoly, den: LaurentPoly, coprime_check: bool) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        num.low -= den.low;
        let mut d = den.coeffs;
        let lc = d.last().unwrap().clone();
        if !lc.is_one() {
            num = num.scale(&lc.recip());
            for c in d.iter_mut() {
                *c /= &lc;
            }
        }
        let (cyc, rest) = cyclotomic::split(d);
        if coprime_check {
            Self::reduce(num, cyc, monic_rest(rest))
        } else {
            RatFunc {
                num,
                cyc,
                rest: monic_rest(rest),
            }
        }
    }

    /// Cancels common factors between `num` and the factored denominator.
    fn reduce(mut num: LaurentPoly, mut cyc: Cyc, mut rest: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        for (k, e) in cyc.iter_mut() {
            let phi = cyclotomic::cyclotomic(*k);
            while *e > 0 {
                match cyclotomic::div_exact_monic(&num.coeffs, &phi) {
                    Some(q) => {
                        num = LaurentPoly::from_coeffs(num.low, q);
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        cyc.retain(|(_, e)| *e > 0);
        if !rest.is_one() {
            let g = poly_gcd(&num.coeffs, &rest.coeffs);
            if g.len() > 1 {
                num = LaurentPoly::from_coeffs(num.low, poly_divrem(&num.coeffs, &g).0);
                rest = monic_rest(poly_divrem(&rest.coeffs, &g).0);
            }
        }
        RatFunc { num, cyc, rest }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// The expanded denominator: monic, lowest exponent 0, nonzero constant term.
    pub fn den(&self) -> LaurentPoly {
        if self.cyc.is_empty() {
            return self.rest.clone();
        }
        LaurentPoly::from_coeffs(0, cyclotomic::mul_cyc(&self.rest.coeffs, &self.cyc))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.is_laurent()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.cyc.is_empty() && self.rest.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// The value as a rational constant, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.is_laurent() && self.num.low == 0 && self.num.coeffs.len() == 1)
            .then(|| self.num.coeffs[0].clone())
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        RatFunc {
            num: self.num.shift(k),
            cyc: self.cyc.clone(),
            rest: self.rest.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            cyc: self.cyc.clone(),
            rest: self.rest.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_fraction(self.den(), self.num.clone(), false))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Value at `v = 1`; `Pole` if the denominator vanishes there.
    pub fn limit_at_one(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        // The reduced numerator is prime to Φ_1 = v − 1 whenever Φ_1 divides the
        // denominator, and `rest` is prime to every Φ_k.
        if self.cyc.first().is_some_and(|&(k, _)| k == 1) {
            return Err(Error::Pole(self.to_string()));
        }
        let mut d = self.rest.eval_at_one();
        for &(k, e) in &self.cyc {
            d *= Rational::from_integer(cyclotomic::value_at_one(k).pow(e).into());
        }
        Ok(self.num.eval_at_one() / d)
    }

    /// Laurent expansion around `v = 0`, returned as `(lowest exponent, coefficients)`
    /// with `len` coefficients.
    pub fn expand_at_zero(&self, len: usize) -> (i64, Vec<Rational>) {
        // den has a nonzero constant term, so it is invertible as a power series.
        let den = self.den();
        let d = &den.coeffs;
        let mut inv = vec![Rational::zero(); len];
        if len > 0 {
            inv[0] = d[0].recip();
        }
        for k in 1..len {
            let mut acc = Rational::zero();
            for i in 1..=k.min(d.len() - 1) {
                acc += &d[i] * &inv[k - i];
            }
            inv[k] = -acc * &inv[0];
        }
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.num.coeffs.iter().enumerate().take(len) {
            for k in 0..len - i {
                out[i + k] += a * &inv[k];
            }
        }
        (self.num.low, out)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den())
        }
    }
}

/// `p · ∏ Φ_k^e` as a Laurent polynomial with the same lowest exponent.
fn times_cyc(p: &LaurentPoly, cyc: &[(u32, u32)]) -> LaurentPoly {
    if cyc.is_empty() || p.is_zero() {
        return p.clone();
    }
    LaurentPoly::from_coeffs(p.low, cyclotomic::mul_cyc(&p.coeffs, cyc))
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.is_laurent() && o.is_laurent() {
            return (&self.num + &o.num).into();
        }
        if self.cyc == o.cyc && self.rest == o.rest {
            return RatFunc::reduce(&self.num + &o.num, self.cyc.clone(), self.rest.clone());
        }
        let cyc = cyclotomic::merge(&self.cyc, &o.cyc, 0);
        let (rest, fa, fb) = if self.rest == o.rest {
            (self.rest.clone(), LaurentPoly::one(), LaurentPoly::one())
        } else if self.rest.is_one() {
            (o.rest.clone(), o.rest.clone(), LaurentPoly::one())
        } else if o.rest.is_one() {
            (self.rest.clone(), LaurentPoly::one(), self.rest.clone())
        } else {
            let g = poly_gcd(&self.rest.coeffs, &o.rest.coeffs);
            let fa = monic_rest(poly_divrem(&o.rest.coeffs, &g).0);
            let fb = monic_rest(poly_divrem(&self.rest.coeffs, &g).0);
            (&self.rest * &fa, fa, fb)
        };
        let na = times_cyc(&(&self.num * &fa), &cyclotomic::merge(&cyc, &self.cyc, -1));
        let nb = times_cyc(&(&o.num * &fb), &cyclotomic::merge(&cyc, &o.cyc, -1));
        RatFunc::reduce(&na + &nb, cyc, rest)
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, o: &RatFunc) {
        if o.is_zero() {
            return;
        }
        if self.is_laurent() && o.is_laurent() {
            self.num += &o.num;
            return;
        }
        *self = &*self + o;
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            cyc: self.cyc.clone(),
            rest: self.rest.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let num = &self.num * &o.num;
        if self.is_laurent() && o.is_laurent() {
            return num.into();
        }
        let cyc = cyclotomic::merge(&self.cyc, &o.cyc, 1);
        let rest = if o.rest.is_one() {
            self.rest.clone()
        } else if self.rest.is_one() {
            o.rest.clone()
        } else {
            &self.rest * &o.rest
        };
        RatFunc::reduce(num, cyc, rest)
    }
}

/// Panics on a zero divisor; use [`RatFunc::checked_div`] to get an error instead.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero")
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
forward_owned!(RatFunc, Add, add);
forward_owned!(RatFunc, Sub, sub);
forward_owned!(RatFunc, Mul, mul);
forward_owned!(RatFunc, Div, div);
