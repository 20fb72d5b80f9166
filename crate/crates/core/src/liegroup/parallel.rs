//! Actions of elements of a parallel subgroup `G_{n0}^∥`.
//!
//! For `g = exp(Σ_j r_j X_(j n0))` and a monomial `M` of weight `w`
//! (`T^n M = q^(2w(n)) M T^n`), `g(M) = M · Φ(z)` with `z = T^n0` and
//! `Φ = exp(Σ_j r_j (q^(2j w(n0)) − 1)/(q − q⁻¹) z^j)`. `Φ` depends only on the
//! integer `δ₀·w(n0)`. When `g` is a product of `Ψ_{a,b}[j n0]^c` with integer
//! `c` and `w(j n0)/a ∈ ℤ`, `Φ` is a finite product of binomials and stays in
//! `ℤ[v^±]`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec, TildeVec};
use crate::qtorus::{Series, TorusKind, XSeries};
use crate::scalar::{
    int, q_minus_qinv, qnum_scaled, scaled_exponent, LaurentPoly, RatFunc, Rational,
};

use super::{dilog_lie, DilogElem, LieSeries};

/// `Ψ_{a,b}[j n0]^c` with `a`, `b` scaled by `δ₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiFactor {
    pub j: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParallelForm {
    /// `r_j` at index `j − 1`.
    Log(Vec<RatFunc>),
    Factors(Vec<PsiFactor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelElem {
    pub n0: LatticeVec,
    pub form: ParallelForm,
}

type Uni = Vec<RatFunc>;

fn uni_one(len: usize) -> Uni {
    let mut v = vec![RatFunc::zero(); len + 1];
    v[0] = RatFunc::one();
    v
}

fn uni_mul(a: &Uni, b: &Uni) -> Uni {
    let n = a.len().min(b.len());
    let mut out = vec![RatFunc::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (k, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + k] += &(x * y);
            }
        }
    }
    out
}

/// `exp(e)` for `e_0 = 0`, via `t φ_t = Σ_k k e_k φ_(t−k)`.
fn uni_exp(e: &Uni) -> Uni {
    let n = e.len();
    let mut out = uni_one(n - 1);
    for t in 1..n {
        let mut acc = RatFunc::zero();
        for k in 1..=t {
            if !e[k].is_zero() && !out[t - k].is_zero() {
                acc += &(&e[k] * &out[t - k]).scale(&int(k as i64));
            }
        }
        out[t] = acc.scale(&Rational::new(1.into(), (t as i64).into()));
    }
    out
}

/// Multiply by `(1 + v^e z^j)^c`.
fn mul_binomial(phi: &mut Uni, e: i64, j: usize, c: i64) {
    let len = phi.len();
    if j >= len {
        return;
    }
    if c > 0 {
        for _ in 0..c {
            for t in (j..len).rev() {
                if !phi[t - j].is_zero() {
                    let x = phi[t - j].shift(e);
                    phi[t] += &x;
                }
            }
        }
    } else {
        for _ in 0..(-c) {
            for t in j..len {
                if !phi[t - j].is_zero() {
                    let x = -phi[t - j].shift(e);
                    phi[t] += &x;
                }
            }
        }
    }
}

impl ParallelElem {
    pub fn from_log(n0: LatticeVec, levels: Vec<RatFunc>) -> Self {
        ParallelElem {
            n0,
            form: ParallelForm::Log(levels),
        }
    }

    pub fn from_factors(n0: LatticeVec, factors: Vec<PsiFactor>) -> Self {
        ParallelElem {
            n0,
            form: ParallelForm::Factors(factors),
        }
    }

    /// From a Lie series supported on multiples of one primitive vector.
    pub fn from_lie(x: &LieSeries) -> Result<Self> {
        let n0 = x
            .parallel_direction()
            .ok_or_else(|| Error::InternalInconsistency("Lie series is not parallel".into()))?;
        let top = (x.cutoff() as i64 / n0.degree()) as usize;
        let levels = (1..=top).map(|j| x.coeff(&n0.scale(j as i64))).collect();
        Ok(Self::from_log(n0, levels))
    }

    pub fn from_dilog(d: &DilogElem, fd: &FixedData, cutoff: u32) -> Result<Self> {
        d.validate(fd)?;
        let (n0, j) = d.n.primitive_part();
        match d.int_exponent() {
            Some(c) => {
                let a = scaled_exponent(&d.a, fd.delta0())?;
                let b = scaled_exponent(&d.b, fd.delta0())?;
                Ok(Self::from_factors(n0, vec![PsiFactor { j, a, b, c }]))
            }
            None => {
                let x = dilog_lie(d, fd, cutoff)?;
                let top = (cutoff as i64 / n0.degree()) as usize;
                let levels = (1..=top).map(|k| x.coeff(&n0.scale(k as i64))).collect();
                Ok(Self::from_log(n0, levels))
            }
        }
    }

    /// Level coefficients `r_1..r_top` of the logarithm.
    pub fn levels(&self, fd: &FixedData, top: usize) -> Vec<RatFunc> {
        match &self.form {
            ParallelForm::Log(r) => (0..top)
                .map(|i| r.get(i).cloned().unwrap_or_else(RatFunc::zero))
                .collect(),
            ParallelForm::Factors(fs) => {
                let mut r = vec![RatFunc::zero(); top];
                for f in fs {
                    let mut k = 1i64;
                    while (k * f.j) as usize <= top {
                        let sign = if k % 2 == 1 { f.c } else { -f.c };
                        let x = qnum_scaled(k * f.a, fd.delta0())
                            .scale(&int(k))
                            .inv()
                            .expect("nonzero");
                        r[(k * f.j) as usize - 1] += &x.shift(k * f.b).scale(&int(sign));
                        k += 1;
                    }
                }
                r
            }
        }
    }

    /// `Φ` for a monomial with `δ₀·w(n0) = w`, up to `z^len`.
    pub fn phi(&self, fd: &FixedData, w: i64, len: usize, inverse: bool) -> Vec<RatFunc> {
        if w == 0 || len == 0 {
            return uni_one(len);
        }
        match &self.form {
            ParallelForm::Log(r) => {
                let e = log_exponent(r, fd, w, len, inverse);
                uni_exp(&e)
            }
            ParallelForm::Factors(fs) => {
                let mut phi = uni_one(len);
                for f in fs {
                    let c = if inverse { -f.c } else { f.c };
                    let jw = f.j * w;
                    if jw % f.a == 0 {
                        let alpha = jw / f.a;
                        let ju = f.j as usize;
                        if alpha > 0 {
                            for p in 1..=alpha {
                                mul_binomial(&mut phi, (2 * p - 1) * f.a + f.b, ju, c);
                            }
                        } else {
                            for p in 1..=-alpha {
                                mul_binomial(&mut phi, -(2 * p - 1) * f.a + f.b, ju, -c);
                            }
                        }
                    } else {
                        let single = ParallelElem::from_factors(self.n0.clone(), vec![f.clone()]);
                        let r = single.levels(fd, len);
                        let e = log_exponent(&r, fd, w, len, inverse);
                        phi = uni_mul(&phi, &uni_exp(&e));
                    }
                }
                phi
            }
        }
    }

    /// `g(s)` (or `g⁻¹(s)`), truncated at the cutoff of `s`.
    pub fn apply<K: TorusKind>(&self, s: &Series<K>, fd: &FixedData, inverse: bool) -> Series<K> {
        let dn = self.n0.degree();
        let l = s.cutoff() as i64;
        let top = (l / dn) as usize;
        let mut cache: HashMap<i64, Vec<RatFunc>> = HashMap::new();
        let wb = K::weight_scaled(fd, s.base(), &self.n0);
        let phi_b = self.phi(fd, wb, top, inverse);
        let mut out = Series::new(s.base().clone(), s.cutoff());
        for (m, sm) in s.terms() {
            let lm = ((l - m.degree()) / dn) as usize;
            let sigma = fd.skew_pair_scaled(&self.n0, m);
            let psi = cache
                .entry(sigma)
                .or_insert_with(|| self.phi(fd, sigma, top, inverse));
            for t in 0..=lm {
                let mut chi = RatFunc::zero();
                for i in 0..=t {
                    let (a, b) = (&phi_b[i], &psi[t - i]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    chi += &(a * b).shift((2 * i as i64 - t as i64) * sigma);
                }
                if !chi.is_zero() {
                    out.add_term(m.add(&self.n0.scale(t as i64)), &(sm * &chi));
                }
            }
        }
        out
    }
}

/// `±Σ_j r_j (v^(2jw) − 1)/(q − q⁻¹) z^j`.
fn log_exponent(r: &[RatFunc], fd: &FixedData, w: i64, len: usize, inverse: bool) -> Uni {
    let denom = q_minus_qinv(fd.delta0()).inv().expect("nonzero");
    let mut e = vec![RatFunc::zero(); len + 1];
    for j in 1..=len.min(r.len()) {
        if r[j - 1].is_zero() {
            continue;
        }
        let f: RatFunc = (&LaurentPoly::v_pow(2 * j as i64 * w) - &LaurentPoly::one()).into();
        let x = &(&r[j - 1] * &f) * &denom;
        e[j] = if inverse { -x } else { x };
    }
    e
}

/// The generator monomials `x^(f_i, 0)`; the `x^(0, e_i)` are fixed by every element.
pub fn generator_images(fd: &FixedData, cutoff: u32) -> Vec<XSeries> {
    let r = fd.rank();
    (0..r)
        .map(|i| {
            XSeries::monomial(
                TildeVec::f(r, i),
                LatticeVec::zero(r),
                RatFunc::one(),
                cutoff,
            )
        })
        .collect()
}

/// `w_1(w_2(⋯ w_k(s)))`, the action of the product `w_1 w_2 ⋯ w_k`.
pub fn apply_word<K: TorusKind>(word: &[ParallelElem], s: &Series<K>, fd: &FixedData) -> Series<K> {
    let mut cur = s.clone();
    for e in word.iter().rev() {
        cur = e.apply(&cur, fd, false);
    }
    cur
}
