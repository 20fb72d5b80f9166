//! The structure group modulo `G^{>ℓ}`.
//!
//! Elements are stored by their logarithm `Σ c_n X_n`. Products are computed
//! exactly through the embedding `X_n ↦ Y_n = T^n/(q − q⁻¹)` into the
//! corrector torus, where `[Y_n, Y_n'] = [{n,n'}]_q Y_(n+n')` and `X_n` acts as
//! the inner derivation `ad Y_n`; the group element `exp X` is then the
//! unipotent series `exp Y` and multiplication is the torus product.

mod parallel;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::qtorus::{quantum_dilog_log, Series, TorusKind, YSeries};
use crate::scalar::{
    fmt_rational, int, limit_at_one, q_minus_qinv, qnum_scaled, scaled_exponent, LaurentPoly,
    RatFunc, Rational,
};

pub use parallel::{apply_word, generator_images, ParallelElem, ParallelForm, PsiFactor};

/// Truncated element `Σ c_n X_n` of the completed Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    coeffs: BTreeMap<LatticeVec, RatFunc>,
    cutoff: u32,
}

impl LieSeries {
    pub fn new(cutoff: u32) -> Self {
        LieSeries {
            coeffs: BTreeMap::new(),
            cutoff,
        }
    }

    /// `c·X_n`.
    pub fn basis(n: LatticeVec, c: RatFunc, cutoff: u32) -> Self {
        let mut s = Self::new(cutoff);
        s.add_term(n, &c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticeVec, RatFunc)>>(
        terms: I,
        cutoff: u32,
    ) -> Self {
        let mut s = Self::new(cutoff);
        for (n, c) in terms {
            s.add_term(n, &c);
        }
        s
    }

    pub fn add_term(&mut self, n: LatticeVec, c: &RatFunc) {
        if c.is_zero() || n.degree() > self.cutoff as i64 {
            return;
        }
        let slot = self.coeffs.entry(n.clone()).or_insert_with(RatFunc::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn coeffs(&self) -> &BTreeMap<LatticeVec, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, n: &LatticeVec) -> RatFunc {
        self.coeffs.get(n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &LieSeries) -> Result<LieSeries> {
        if self.cutoff != o.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, o.cutoff));
        }
        let mut out = self.clone();
        for (n, c) in &o.coeffs {
            out.add_term(n.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> LieSeries {
        LieSeries::from_terms(
            self.coeffs.iter().map(|(n, x)| (n.clone(), x * c)),
            self.cutoff,
        )
    }

    pub fn truncate(&self, cutoff: u32) -> LieSeries {
        LieSeries::from_terms(
            self.coeffs
                .iter()
                .filter(|(n, _)| n.degree() <= cutoff as i64)
                .map(|(n, c)| (n.clone(), c.clone())),
            cutoff,
        )
    }

    /// `[X, X']` from `[X_n, X_n'] = [{n,n'}]_q X_(n+n')`.
    pub fn bracket(&self, o: &LieSeries, fd: &FixedData) -> Result<LieSeries> {
        if self.cutoff != o.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, o.cutoff));
        }
        let mut out = LieSeries::new(self.cutoff);
        for (n, c) in &self.coeffs {
            for (m, d) in &o.coeffs {
                if n.degree() + m.degree() > self.cutoff as i64 {
                    break;
                }
                let k = fd.skew_pair_scaled(n, m);
                if k != 0 {
                    out.add_term(n.add(m), &(&(c * d) * &qnum_scaled(k, fd.delta0())));
                }
            }
        }
        Ok(out)
    }

    /// `Some(n0)` when every term is a multiple of one primitive vector.
    pub fn parallel_direction(&self) -> Option<LatticeVec> {
        let mut dir: Option<LatticeVec> = None;
        for n in self.coeffs.keys() {
            let (p, _) = n.primitive_part();
            match &dir {
                None => dir = Some(p),
                Some(d) if *d == p => {}
                Some(_) => return None,
            }
        }
        dir
    }
}

/// The image `Σ c_n T^n/(q − q⁻¹)` of a Lie series in the corrector torus.
pub fn embed(x: &LieSeries, fd: &FixedData) -> YSeries {
    let inv = q_minus_qinv(fd.delta0()).inv().expect("q - 1/q is nonzero");
    YSeries::from_terms(
        LatticeVec::zero(fd.rank()),
        x.coeffs.iter().map(|(n, c)| (n.clone(), c * &inv)),
        x.cutoff,
    )
}

/// Inverse of [`embed`] on its image.
pub fn unembed(y: &YSeries, fd: &FixedData) -> Result<LieSeries> {
    let f = q_minus_qinv(fd.delta0());
    let mut out = LieSeries::new(y.cutoff());
    for (n, c) in y.terms() {
        if n.is_zero() {
            return Err(Error::InternalInconsistency(
                "constant term in a Lie series image".into(),
            ));
        }
        out.add_term(n.clone(), &(c * &f));
    }
    Ok(out)
}

/// Element of `G^{≤ℓ}`, stored as its logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElem {
    log: LieSeries,
}

impl GroupElem {
    pub fn identity(cutoff: u32) -> Self {
        GroupElem {
            log: LieSeries::new(cutoff),
        }
    }

    pub fn from_log(log: LieSeries) -> Self {
        GroupElem { log }
    }

    pub fn log(&self) -> &LieSeries {
        &self.log
    }

    pub fn cutoff(&self) -> u32 {
        self.log.cutoff
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    /// `exp(embed(log g))`, the unipotent torus element acting on the tori by
    /// conjugation exactly as `g` does.
    pub fn unipotent(&self, fd: &FixedData) -> Result<YSeries> {
        embed(&self.log, fd).exp(fd)
    }

    pub fn from_unipotent(u: &YSeries, fd: &FixedData) -> Result<Self> {
        Ok(GroupElem {
            log: unembed(&u.log(fd)?, fd)?,
        })
    }

    /// `g·h`, acting as `x ↦ g(h(x))`.
    pub fn mul(&self, h: &GroupElem, fd: &FixedData) -> Result<GroupElem> {
        if self.cutoff() != h.cutoff() {
            return Err(Error::CutoffMismatch(self.cutoff(), h.cutoff()));
        }
        if self.is_identity() {
            return Ok(h.clone());
        }
        if h.is_identity() {
            return Ok(self.clone());
        }
        if let (Some(a), Some(b)) = (self.log.parallel_direction(), h.log.parallel_direction()) {
            if a == b {
                return Ok(GroupElem {
                    log: self.log.add(&h.log)?,
                });
            }
        }
        let u = self.unipotent(fd)?.mul(&h.unipotent(fd)?, fd)?;
        Self::from_unipotent(&u, fd)
    }

    pub fn inverse(&self) -> GroupElem {
        GroupElem {
            log: self.log.scale(&RatFunc::from(-1)),
        }
    }

    /// `g^c = exp(c·log g)`.
    pub fn gpower(&self, c: &RatFunc) -> GroupElem {
        GroupElem {
            log: self.log.scale(c),
        }
    }

    /// Equality modulo `G^{>ℓ'}`.
    pub fn eq_mod(&self, o: &GroupElem, cutoff: u32) -> bool {
        assert!(
            cutoff <= self.cutoff() && cutoff <= o.cutoff(),
            "comparison cutoff exceeds series cutoff"
        );
        self.log.truncate(cutoff) == o.log.truncate(cutoff)
    }

    /// Coefficient-wise limit `q → 1` of the logarithm.
    pub fn classical_limit(&self) -> Result<BTreeMap<LatticeVec, Rational>> {
        let mut out = BTreeMap::new();
        for (n, c) in &self.log.coeffs {
            let l = limit_at_one(c).map_err(|_| Error::Pole(n.to_string()))?;
            if !l.is_zero() {
                out.insert(n.clone(), l);
            }
        }
        Ok(out)
    }

    pub fn act_y(&self, s: &YSeries, fd: &FixedData) -> Result<YSeries> {
        act(&self.log, s, fd)
    }

    pub fn act_x(
        &self,
        s: &crate::qtorus::XSeries,
        fd: &FixedData,
    ) -> Result<crate::qtorus::XSeries> {
        act(&self.log, s, fd)
    }
}

/// `X(M T^m) = Σ_n c_n (q^(2W) − 1)/(q − q⁻¹) · M T^m T^n` with `W` the weight of `M T^m`.
pub fn derivation<K: TorusKind>(x: &LieSeries, s: &Series<K>, fd: &FixedData) -> Result<Series<K>> {
    if x.cutoff != s.cutoff() {
        return Err(Error::CutoffMismatch(x.cutoff, s.cutoff()));
    }
    let d0 = fd.delta0();
    let denom = q_minus_qinv(d0);
    let l = s.cutoff() as i64;
    let mut out = Series::new(s.base().clone(), s.cutoff());
    for (n, c) in &x.coeffs {
        let wb = K::weight_scaled(fd, s.base(), n);
        for (m, sm) in s.terms() {
            if n.degree() + m.degree() > l {
                continue;
            }
            let w = wb + fd.skew_pair_scaled(n, m);
            if w == 0 {
                continue;
            }
            let f = RatFunc::new(
                &LaurentPoly::v_pow(2 * w) - &LaurentPoly::one(),
                LaurentPoly::one(),
            )?;
            let coef = &(&(c * sm) * &f) / &denom;
            out.add_term(m.add(n), &coef.shift(fd.skew_pair_scaled(m, n)));
        }
    }
    Ok(out)
}

/// `exp(X)` acting on a series: `Σ_k X^k(s)/k!`.
pub fn act<K: TorusKind>(x: &LieSeries, s: &Series<K>, fd: &FixedData) -> Result<Series<K>> {
    let mut acc = s.clone();
    let mut term = s.clone();
    for k in 1..=s.cutoff() as i64 {
        term = derivation(x, &term, fd)?.scale(&RatFunc::from(Rational::new(1.into(), k.into())));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `Ψ_{a,b}[n]^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilogElem {
    pub n: LatticeVec,
    pub a: Rational,
    pub b: Rational,
    pub c: RatFunc,
}

impl DilogElem {
    pub fn new(n: LatticeVec, a: Rational, b: Rational) -> Self {
        DilogElem {
            n,
            a,
            b,
            c: RatFunc::one(),
        }
    }

    pub fn with_exponent(mut self, c: RatFunc) -> Self {
        self.c = c;
        self
    }

    /// Integer exponent, if `c` is one.
    pub fn int_exponent(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        let k = self.c.as_constant()?;
        if k.is_integer() {
            k.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Checks `δ₀a ∈ ℤ_{>0}`, `δ₀b ∈ ℤ` and `n ∈ N⁺`.
    pub fn validate(&self, fd: &FixedData) -> Result<()> {
        crate::fixeddata::deg(&self.n)?;
        let a = scaled_exponent(&self.a, fd.delta0())?;
        if a <= 0 {
            return Err(Error::NonRepresentable {
                value: fmt_rational(&self.a),
                delta0: fd.delta0(),
            });
        }
        scaled_exponent(&self.b, fd.delta0())?;
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        let mut d = self.clone();
        d.c = -&d.c;
        d
    }
}

impl fmt::Display for DilogElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.n.coords().iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "[{}]_{{{},{}}}",
            coords.join(","),
            fmt_rational(&self.a),
            fmt_rational(&self.b)
        )?;
        if !self.c.is_one() {
            match self.c.as_constant() {
                Some(k) => write!(f, "^{{{}}}", fmt_rational(&k))?,
                None => write!(f, "^{{{}}}", self.c)?,
            }
        }
        Ok(())
    }
}

/// `log Ψ_{a,b}[n]^c`: coefficient `c(−1)^(j+1) q^(jb)/(j[ja]_q)` at `X_(jn)`.
pub fn dilog_lie(d: &DilogElem, fd: &FixedData, cutoff: u32) -> Result<LieSeries> {
    d.validate(fd)?;
    let d0 = fd.delta0();
    let a = scaled_exponent(&d.a, d0)?;
    let b = scaled_exponent(&d.b, d0)?;
    let mut out = LieSeries::new(cutoff);
    if d.c.is_zero() {
        return Ok(out);
    }
    let dn = d.n.degree();
    let mut j = 1i64;
    while j * dn <= cutoff as i64 {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = &qnum_scaled(j * a, d0)
            .scale(&int(j))
            .inv()?
            .shift(j * b)
            .scale(&int(sign))
            * &d.c;
        out.add_term(d.n.scale(j), &c);
        j += 1;
    }
    Ok(out)
}

pub fn dilog_elem(d: &DilogElem, fd: &FixedData, cutoff: u32) -> Result<GroupElem> {
    Ok(GroupElem::from_log(dilog_lie(d, fd, cutoff)?))
}

/// `𝚿_{q^a}(q^b T^n)^c`, the unipotent image of `Ψ_{a,b}[n]^c`.
pub fn dilog_unipotent(d: &DilogElem, fd: &FixedData, cutoff: u32) -> Result<YSeries> {
    d.validate(fd)?;
    let log: YSeries = quantum_dilog_log(fd, &d.b, &d.n, &d.a, cutoff)?;
    log.scale(&d.c).exp(fd)
}

/// Product `d_1 d_2 ⋯ d_k` of dilogarithm elements.
pub fn evaluate_product(factors: &[DilogElem], fd: &FixedData, cutoff: u32) -> Result<GroupElem> {
    let mut u = YSeries::one(fd.rank(), cutoff);
    for d in factors {
        u = u.mul(&dilog_unipotent(d, fd, cutoff)?, fd)?;
    }
    GroupElem::from_unipotent(&u, fd)
}

/// Closed-form action of `Ψ_{a,b}[n]^(±1)` with `a = 1/(sδ(n))` on the monomial
/// `M_base`, as the finite product over `p = 1..|α|`.
pub fn fast_act_dilog<K: TorusKind>(
    d: &DilogElem,
    fd: &FixedData,
    base: &K::Base,
    cutoff: u32,
) -> Result<Series<K>> {
    d.validate(fd)?;
    let c = d
        .int_exponent()
        .filter(|c| c.abs() == 1)
        .ok_or_else(|| Error::BadInterval {
            a: format!("exponent {}", d.c),
            expected: "exponent ±1".into(),
        })?;
    let dn = fd.norm_factor(&d.n)?;
    let s = (d.a.clone() * &dn).recip();
    let ratio = Rational::from_integer(fd.delta0().into()) / &dn;
    if !s.is_integer() || s <= Rational::zero() || !(ratio / &s).is_integer() {
        return Err(Error::BadInterval {
            a: fmt_rational(&d.a),
            expected: format!("1/(s*{})", fmt_rational(&dn)),
        });
    }
    let elem = ParallelElem::from_dilog(&d.clone().with_exponent(RatFunc::from(c)), fd, cutoff)?;
    let m = Series::<K>::monomial(
        base.clone(),
        LatticeVec::zero(fd.rank()),
        RatFunc::one(),
        cutoff,
    );
    Ok(elem.apply(&m, fd, false))
}

#[cfg(test)]
mod tests;
