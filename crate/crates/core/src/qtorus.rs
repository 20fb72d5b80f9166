//! Truncated quantum tori.
//!
//! A series is stored as `M · Σ_n c_n T^n`: a base monomial `M` on the left and
//! correctors `T^n` indexed by `n ∈ N⁺ ∪ {0}`, truncated at `deg n > ℓ`.
//! The correctors always multiply as `T^n T^n' = q^{n,n'} T^(n+n')`; in the
//! y-torus `T^n = y^n`, in the principal x-torus `T^n = x^(p̃*(n))`.
//! The two tori differ only in how base monomials multiply and commute, which
//! is captured by [`TorusKind`].

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec, TildeVec};
use crate::scalar::{int, scaled_exponent, LaurentPoly, RatFunc, Rational};

/// How base monomials behave in a particular torus.
pub trait TorusKind: Clone + Debug + PartialEq + Eq {
    type Base: Clone + Debug + PartialEq + Eq;

    fn zero_base(rank: usize) -> Self::Base;
    fn base_is_zero(b: &Self::Base) -> bool;
    fn add_base(a: &Self::Base, b: &Self::Base) -> Self::Base;
    /// `δ₀·w` where `T^n M = q^(2w) M T^n`.
    fn weight_scaled(fd: &FixedData, base: &Self::Base, n: &LatticeVec) -> i64;
    /// `δ₀·β` where `M_a M_b = q^β M_(a+b)`.
    fn base_product_scaled(fd: &FixedData, a: &Self::Base, b: &Self::Base) -> i64;
}

/// The torus spanned by `y^n`, `n ∈ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YKind;

/// The principal torus spanned by `x^m̃`, `m̃ ∈ M̃°`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XKind;

impl TorusKind for YKind {
    type Base = LatticeVec;

    fn zero_base(rank: usize) -> LatticeVec {
        LatticeVec::zero(rank)
    }
    fn base_is_zero(b: &LatticeVec) -> bool {
        b.is_zero()
    }
    fn add_base(a: &LatticeVec, b: &LatticeVec) -> LatticeVec {
        a.add(b)
    }
    fn weight_scaled(fd: &FixedData, base: &LatticeVec, n: &LatticeVec) -> i64 {
        fd.skew_pair_scaled(n, base)
    }
    fn base_product_scaled(fd: &FixedData, a: &LatticeVec, b: &LatticeVec) -> i64 {
        fd.skew_pair_scaled(a, b)
    }
}

impl TorusKind for XKind {
    type Base = TildeVec;

    fn zero_base(rank: usize) -> TildeVec {
        TildeVec::zero(rank)
    }
    fn base_is_zero(b: &TildeVec) -> bool {
        b.is_zero()
    }
    fn add_base(a: &TildeVec, b: &TildeVec) -> TildeVec {
        a.add(b)
    }
    fn weight_scaled(fd: &FixedData, base: &TildeVec, n: &LatticeVec) -> i64 {
        fd.pair_nm_scaled(n, &base.m)
    }
    fn base_product_scaled(fd: &FixedData, a: &TildeVec, b: &TildeVec) -> i64 {
        -fd.skew_tilde_scaled(a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<K: TorusKind> {
    base: K::Base,
    terms: BTreeMap<LatticeVec, RatFunc>,
    cutoff: u32,
    _kind: PhantomData<K>,
}

pub type YSeries = Series<YKind>;
pub type XSeries = Series<XKind>;

impl<K: TorusKind> Series<K> {
    pub fn new(base: K::Base, cutoff: u32) -> Self {
        Series {
            base,
            terms: BTreeMap::new(),
            cutoff,
            _kind: PhantomData,
        }
    }

    pub fn one(rank: usize, cutoff: u32) -> Self {
        Self::monomial(
            K::zero_base(rank),
            LatticeVec::zero(rank),
            RatFunc::one(),
            cutoff,
        )
    }

    /// `c · M_base · T^n`.
    pub fn monomial(base: K::Base, n: LatticeVec, c: RatFunc, cutoff: u32) -> Self {
        let mut s = Self::new(base, cutoff);
        s.add_term(n, &c);
        s
    }

    /// `c · T^n` with zero base.
    pub fn corrector(rank: usize, n: LatticeVec, c: RatFunc, cutoff: u32) -> Self {
        Self::monomial(K::zero_base(rank), n, c, cutoff)
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticeVec, RatFunc)>>(
        base: K::Base,
        terms: I,
        cutoff: u32,
    ) -> Self {
        let mut s = Self::new(base, cutoff);
        for (n, c) in terms {
            s.add_term(n, &c);
        }
        s
    }

    /// Adds `c·T^n`; terms beyond the cutoff are dropped.
    pub fn add_term(&mut self, n: LatticeVec, c: &RatFunc) {
        if c.is_zero() || n.degree() > self.cutoff as i64 {
            return;
        }
        match self.terms.entry(n) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn base(&self) -> &K::Base {
        &self.base
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVec, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, n: &LatticeVec) -> RatFunc {
        self.terms.get(n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, cutoff: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(n, _)| n.degree() <= cutoff as i64)
            .map(|(n, c)| (n.clone(), c.clone()));
        Self::from_terms(self.base.clone(), terms, cutoff)
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.cutoff != o.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, o.cutoff));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        if self.base != o.base {
            return Err(Error::InternalInconsistency(
                "adding series with different base monomials".into(),
            ));
        }
        let mut out = self.clone();
        for (n, c) in &o.terms {
            out.add_term(n.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatFunc::from(-1))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let terms = self.terms.iter().map(|(n, x)| (n.clone(), x * c));
        Self::from_terms(self.base.clone(), terms, self.cutoff)
    }

    /// Exact product, truncated at the shared cutoff.
    pub fn mul(&self, o: &Self, fd: &FixedData) -> Result<Self> {
        self.check_compatible(o)?;
        let l = self.cutoff as i64;
        let beta = K::base_product_scaled(fd, &self.base, &o.base);
        let mut out = Self::new(K::add_base(&self.base, &o.base), self.cutoff);
        for (m, c) in &self.terms {
            let dm = m.degree();
            let w = K::weight_scaled(fd, &o.base, m);
            for (m2, d) in &o.terms {
                if dm + m2.degree() > l {
                    break;
                }
                let e = beta + 2 * w + fd.skew_pair_scaled(m, m2);
                out.add_term(m.add(m2), &(c * d).shift(e));
            }
        }
        Ok(out)
    }

    pub fn constant_term(&self) -> RatFunc {
        let r = self.terms.keys().next().map(|k| k.rank());
        match r {
            Some(r) => self.coeff(&LatticeVec::zero(r)),
            None => RatFunc::zero(),
        }
    }

    fn is_unital(&self) -> bool {
        K::base_is_zero(&self.base) && self.constant_term().is_one()
    }

    /// Two-sided inverse of a series with base 0 and constant term 1.
    pub fn inverse(&self, fd: &FixedData) -> Result<Self> {
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        let r = fd.rank();
        let l = self.cutoff as usize;
        // Solve s·t = 1 degree by degree.
        let mut buckets: Vec<Vec<(LatticeVec, RatFunc)>> = vec![Vec::new(); l + 1];
        buckets[0].push((LatticeVec::zero(r), RatFunc::one()));
        for d in 1..=l {
            let mut acc: BTreeMap<LatticeVec, RatFunc> = BTreeMap::new();
            for (m1, u) in &self.terms {
                let k = m1.degree() as usize;
                if k == 0 {
                    continue;
                }
                if k > d {
                    break;
                }
                for (m2, t) in &buckets[d - k] {
                    let e = fd.skew_pair_scaled(m1, m2);
                    let x = (u * t).shift(e);
                    let slot = acc.entry(m1.add(m2)).or_insert_with(RatFunc::zero);
                    *slot += &x;
                }
            }
            buckets[d] = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(n, c)| (n, -c))
                .collect();
        }
        let terms = buckets.into_iter().flatten();
        Ok(Self::from_terms(K::zero_base(r), terms, self.cutoff))
    }

    /// `exp(s)` for `s` with base 0 and constant term 0.
    pub fn exp(&self, fd: &FixedData) -> Result<Self> {
        if !K::base_is_zero(&self.base) || !self.constant_term().is_zero() {
            return Err(Error::NotNilpotent);
        }
        let r = fd.rank();
        let one = Self::one(r, self.cutoff);
        let mut acc = one.clone();
        for k in (1..=self.cutoff as i64).rev() {
            let t = self
                .mul(&acc, fd)?
                .scale(&RatFunc::from(Rational::new(1.into(), k.into())));
            acc = one.add(&t)?;
        }
        Ok(acc)
    }

    /// `log(s)` for `s` with base 0 and constant term 1.
    pub fn log(&self, fd: &FixedData) -> Result<Self> {
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        let r = fd.rank();
        let one = Self::one(r, self.cutoff);
        let u = self.sub(&one)?;
        let l = self.cutoff as i64;
        let coef = |k: i64| {
            RatFunc::from(Rational::new(
                if k % 2 == 1 { 1 } else { -1 }.into(),
                k.into(),
            ))
        };
        let mut acc = one.scale(&coef(l.max(1)));
        for k in (1..l).rev() {
            acc = one.scale(&coef(k)).add(&u.mul(&acc, fd)?)?;
        }
        u.mul(&acc, fd)
    }
}

/// `E·s·E⁻¹`.
pub fn adjoint<K: TorusKind>(e: &Series<K>, s: &Series<K>, fd: &FixedData) -> Result<Series<K>> {
    let inv = e.inverse(fd)?;
    e.mul(s, fd)?.mul(&inv, fd)
}

/// `Ψ_Q(x)` with `Q = q^sub_q` and `x = q^qshift · T^n`, in its exponential form
/// `exp(Σ_j (−1)^(j+1) x^j / (j (Q^j − Q^(−j))))`.
pub fn quantum_dilog<K: TorusKind>(
    fd: &FixedData,
    qshift: &Rational,
    n: &LatticeVec,
    sub_q: &Rational,
    cutoff: u32,
) -> Result<Series<K>> {
    let log = quantum_dilog_log::<K>(fd, qshift, n, sub_q, cutoff)?;
    log.exp(fd)
}

/// The exponent of [`quantum_dilog`].
pub fn quantum_dilog_log<K: TorusKind>(
    fd: &FixedData,
    qshift: &Rational,
    n: &LatticeVec,
    sub_q: &Rational,
    cutoff: u32,
) -> Result<Series<K>> {
    let d0 = fd.delta0();
    let s = scaled_exponent(qshift, d0)?;
    let k = scaled_exponent(sub_q, d0)?;
    if k == 0 {
        return Err(Error::NonRepresentable {
            value: "Q = 1".into(),
            delta0: d0,
        });
    }
    let r = fd.rank();
    let mut out = Series::new(K::zero_base(r), cutoff);
    if n.is_zero() {
        return Err(Error::NotPositive(n.to_string()));
    }
    let dn = n.degree();
    let mut j = 1i64;
    while j * dn <= cutoff as i64 {
        let den = (&LaurentPoly::v_pow(j * k) - &LaurentPoly::v_pow(-j * k)).scale(&int(j));
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = RatFunc::new(LaurentPoly::monomial(j * s, int(sign)), den)?;
        out.add_term(n.scale(j), &c);
        j += 1;
    }
    Ok(out)
}

/// `Ψ_Q(x) = Σ_k (−Q x)^k / ((1 − Q²)(1 − Q⁴)⋯(1 − Q^(2k)))`, the coefficient form
/// of the product `∏_(j≥0) (1 + Q^(2j+1) x)^(−1)`.
pub fn quantum_dilog_euler<K: TorusKind>(
    fd: &FixedData,
    qshift: &Rational,
    n: &LatticeVec,
    sub_q: &Rational,
    cutoff: u32,
) -> Result<Series<K>> {
    let d0 = fd.delta0();
    let s = scaled_exponent(qshift, d0)?;
    let k = scaled_exponent(sub_q, d0)?;
    let r = fd.rank();
    let mut out = Series::one(r, cutoff);
    let dn = n.degree();
    let mut den = LaurentPoly::one();
    let mut j = 1i64;
    while j * dn <= cutoff as i64 {
        den = &den * &(&LaurentPoly::one() - &LaurentPoly::v_pow(2 * j * k));
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let c = RatFunc::new(LaurentPoly::monomial(j * (k + s), int(sign)), den.clone())?;
        out.add_term(n.scale(j), &c);
        j += 1;
    }
    Ok(out)
}

impl<K: TorusKind> Series<K> {
    /// Replace every coefficient by its image under `f`.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self::from_terms(
            self.base.clone(),
            self.terms.iter().map(|(n, c)| (n.clone(), f(c))),
            self.cutoff,
        )
    }

    /// True when every coefficient is a Laurent polynomial with integer coefficients.
    pub fn is_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.as_laurent().is_some_and(|p| p.is_integral()))
    }
}

impl YSeries {
    pub fn y(n: LatticeVec, cutoff: u32) -> Self {
        let r = n.rank();
        Self::monomial(LatticeVec::zero(r), n, RatFunc::one(), cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v(c: &[i64]) -> LatticeVec {
        LatticeVec::new(c)
    }

    #[test]
    fn y_relation() {
        let fd = FixedData::rank2(1, 1).unwrap();
        let a = YSeries::y(v(&[0, 1]), 4);
        let b = YSeries::y(v(&[1, 0]), 4);
        let p = a.mul(&b, &fd).unwrap();
        assert_eq!(p, YSeries::corrector(2, v(&[1, 1]), RatFunc::v_pow(1), 4));
    }

    #[test]
    fn unit_and_equal_monomials() {
        let fd = FixedData::rank2(1, 2).unwrap();
        let s = YSeries::from_terms(
            v(&[1, 0]),
            [(v(&[0, 1]), RatFunc::from(3)), (v(&[0, 0]), RatFunc::one())],
            3,
        );
        assert_eq!(s.mul(&YSeries::one(2, 3), &fd).unwrap(), s);
        let mt = TildeVec {
            m: vec![1, -2],
            n: vec![0, 1],
        };
        let x = XSeries::monomial(mt.clone(), v(&[0, 0]), RatFunc::one(), 3);
        let xx = x.mul(&x, &fd).unwrap();
        assert_eq!(
            xx,
            XSeries::monomial(mt.scale(2), v(&[0, 0]), RatFunc::one(), 3)
        );
    }

    #[test]
    fn cutoff_mismatch() {
        let fd = FixedData::rank2(1, 1).unwrap();
        let a = YSeries::one(2, 3);
        let b = YSeries::one(2, 4);
        assert_eq!(a.mul(&b, &fd), Err(Error::CutoffMismatch(3, 4)));
    }

    #[test]
    fn geometric_inverse() {
        let fd = FixedData::rank2(1, 1).unwrap();
        let n = v(&[1, 1]);
        let s = YSeries::one(2, 6).add(&YSeries::y(n.clone(), 6)).unwrap();
        let inv = s.inverse(&fd).unwrap();
        let expect = YSeries::from_terms(
            v(&[0, 0]),
            (0..=3).map(|k| (n.scale(k), RatFunc::from(if k % 2 == 0 { 1 } else { -1 }))),
            6,
        );
        assert_eq!(inv, expect);
        assert!(YSeries::y(n, 6).inverse(&fd).is_err());
    }

    #[test]
    fn exp_log_round_trip() {
        let fd = FixedData::rank2(1, 2).unwrap();
        let s = YSeries::from_terms(
            v(&[0, 0]),
            [
                (v(&[1, 0]), RatFunc::from(2)),
                (v(&[0, 1]), RatFunc::v_pow(1)),
                (v(&[1, 1]), RatFunc::from(-1)),
            ],
            5,
        );
        let e = s.exp(&fd).unwrap();
        assert_eq!(e.log(&fd).unwrap(), s);
        assert!(e.exp(&fd).is_err());
        assert!(s.log(&fd).is_err());
    }

    #[test]
    fn dilog_zero_argument_and_functional_equation() {
        let fd = FixedData::rank2(1, 2).unwrap();
        let n = v(&[1, 1]);
        let q = rat(1, 2);
        // Q = q^(1/2), x = q^(1/2) y^n.
        let psi: YSeries = quantum_dilog(&fd, &q, &n, &q, 8).unwrap();
        assert_eq!(psi.constant_term(), RatFunc::one());
        // Ψ(Q²x) = (1 + Q x) Ψ(x).
        let shifted: YSeries = quantum_dilog(&fd, &rat(3, 2), &n, &q, 8).unwrap();
        let factor = YSeries::one(2, 8)
            .add(&YSeries::corrector(2, n, RatFunc::v_pow(2), 8))
            .unwrap();
        assert_eq!(shifted, factor.mul(&psi, &fd).unwrap());
    }

    #[test]
    fn dilog_euler_matches_exp_form() {
        let fd = FixedData::rank2(2, 3).unwrap();
        for (s, k) in [(0, 1), (1, 2), (-2, 3), (3, 6)] {
            let qs = rat(s, 6);
            let sq = rat(k, 6);
            let a: YSeries = quantum_dilog(&fd, &qs, &v(&[1, 0]), &sq, 8).unwrap();
            let b: YSeries = quantum_dilog_euler(&fd, &qs, &v(&[1, 0]), &sq, 8).unwrap();
            assert_eq!(a, b);
        }
    }
}
