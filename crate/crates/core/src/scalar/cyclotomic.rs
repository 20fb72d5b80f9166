//! Cyclotomic polynomials `Φ_k`, used to keep denominators in factored form.
//! Every denominator produced by quantum numbers `[α]_q` and by
//! `q^m − 1` is a product of cyclotomic polynomials in `v`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{ToPrimitive, Zero};
use smallvec::SmallVec;

use super::Rational;

/// Sorted `(k, e)` pairs with `e > 0`, standing for `∏ Φ_k^e`.
pub(super) type Cyc = SmallVec<[(u32, u32); 4]>;

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static C: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

pub(super) fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// `Φ_k`, constant term first.
pub(super) fn cyclotomic(k: u32) -> Arc<Vec<i64>> {
    if let Some(p) = cache().lock().unwrap().get(&k) {
        return p.clone();
    }
    // Φ_k = (v^k − 1) / ∏_{d | k, d < k} Φ_d
    let mut p = vec![0i64; k as usize + 1];
    p[0] = -1;
    p[k as usize] = 1;
    for d in divisors(k) {
        if d < k {
            let phi = cyclotomic(d);
            p = div_monic_int(&p, &phi);
        }
    }
    let p = Arc::new(p);
    cache().lock().unwrap().insert(k, p.clone());
    p
}

fn div_monic_int(p: &[i64], d: &[i64]) -> Vec<i64> {
    let dd = d.len() - 1;
    let mut r = p.to_vec();
    let mut q = vec![0i64; p.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, di) in d.iter().enumerate() {
                r[k + i] -= c * di;
            }
        }
    }
    q
}

/// `Φ_k(1)`: `p` for `k = p^m`, `0` for `k = 1`, `1` otherwise.
pub(super) fn value_at_one(k: u32) -> i64 {
    cyclotomic(k).iter().sum()
}

/// `p / d` for a monic integer `d`, if exact.
pub(super) fn div_exact_monic(p: &[Rational], d: &[i64]) -> Option<Vec<Rational>> {
    let dd = d.len() - 1;
    if p.len() <= dd {
        return None;
    }
    let mut r = p.to_vec();
    let mut q = vec![Rational::zero(); p.len() - dd];
    for k in (0..q.len()).rev() {
        let c = std::mem::take(&mut r[k + dd]);
        if !c.is_zero() {
            for (i, &di) in d.iter().enumerate().take(dd) {
                if di != 0 {
                    r[k + i] -= &c * Rational::from_integer(di.into());
                }
            }
        }
        q[k] = c;
    }
    r[..dd].iter().all(|c| c.is_zero()).then_some(q)
}

pub(super) fn mul_int(p: &[Rational], d: &[i64]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + d.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in d.iter().enumerate() {
            if b != 0 {
                out[i + j] += a * Rational::from_integer(b.into());
            }
        }
    }
    out
}

/// `p · ∏ Φ_k^e`.
pub(super) fn mul_cyc(p: &[Rational], cyc: &[(u32, u32)]) -> Vec<Rational> {
    let mut out = p.to_vec();
    for &(k, e) in cyc {
        let phi = cyclotomic(k);
        for _ in 0..e {
            out = mul_int(&out, &phi);
        }
    }
    out
}

/// Exponentwise `a + b` (`sign = 1`), `max(a, b)` (`sign = 0`) or `a − b`
/// clamped at zero (`sign = −1`).
pub(super) fn merge(a: &[(u32, u32)], b: &[(u32, u32)], sign: i32) -> Cyc {
    let mut out = Cyc::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (k, x, y) = match (a.get(i), b.get(j)) {
            (Some(&(ka, ea)), Some(&(kb, eb))) if ka == kb => {
                i += 1;
                j += 1;
                (ka, ea, eb)
            }
            (Some(&(ka, ea)), Some(&(kb, _))) if ka < kb => {
                i += 1;
                (ka, ea, 0)
            }
            (Some(&(ka, ea)), None) => {
                i += 1;
                (ka, ea, 0)
            }
            (_, Some(&(kb, eb))) => {
                j += 1;
                (kb, 0, eb)
            }
            (None, None) => unreachable!(),
        };
        let e = match sign {
            1 => x + y,
            0 => x.max(y),
            _ => x.saturating_sub(y),
        };
        if e > 0 {
            out.push((k, e));
        }
    }
    out
}

/// `v^m − 1 = ∏_{d | m} Φ_d`.
pub(super) fn binomial(m: u32) -> Cyc {
    divisors(m).into_iter().map(|d| (d, 1)).collect()
}

fn totients(n: usize) -> Arc<Vec<u32>> {
    static T: OnceLock<Mutex<Arc<Vec<u32>>>> = OnceLock::new();
    let m = T.get_or_init(|| Mutex::new(Arc::new(Vec::new())));
    let mut g = m.lock().unwrap();
    if g.len() <= n {
        let size = (n + 1).max(2 * g.len());
        let mut phi: Vec<u32> = (0..size as u32).collect();
        for i in 2..size {
            if phi[i] == i as u32 {
                let mut j = i;
                while j < size {
                    phi[j] -= phi[j] / i as u32;
                    j += i;
                }
            }
        }
        *g = Arc::new(phi);
    }
    g.clone()
}

/// All `k` with `φ(k) ≤ deg`, ascending. Uses `φ(k) ≥ √(k/2)`.
fn candidates(deg: usize) -> Arc<Vec<u32>> {
    static C: OnceLock<Mutex<HashMap<usize, Arc<Vec<u32>>>>> = OnceLock::new();
    let c = C.get_or_init(Default::default);
    if let Some(v) = c.lock().unwrap().get(&deg) {
        return v.clone();
    }
    let bound = 2 * deg * deg + 2;
    let phi = totients(bound);
    let v: Arc<Vec<u32>> = Arc::new(
        (1..=bound as u32)
            .filter(|&k| phi[k as usize] as usize <= deg)
            .collect(),
    );
    c.lock().unwrap().insert(deg, v.clone());
    v
}

/// `|p(ζ_k)|` is small relative to the coefficient size.
fn maybe_root(pf: &[f64], scale: f64, k: u32) -> bool {
    let t = std::f64::consts::TAU / k as f64;
    let (c, s) = (t.cos(), t.sin());
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for &a in pf.iter().rev() {
        let r = re * c - im * s + a;
        im = re * s + im * c;
        re = r;
    }
    (re * re + im * im).sqrt() <= 1e-7 * scale
}

/// Splits a monic polynomial with nonzero constant term into its cyclotomic
/// part and a cyclotomic-free cofactor.
pub(super) fn split(p: Vec<Rational>) -> (Cyc, Vec<Rational>) {
    let mut rest = p;
    let mut cyc = Cyc::new();
    if rest.len() <= 1 {
        return (cyc, rest);
    }
    let deg = rest.len() - 1;
    let phi = totients(2 * deg * deg + 2);
    let floats = |p: &[Rational]| -> (Vec<f64>, f64) {
        let pf: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
        let scale = pf.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        (pf, scale)
    };
    let (mut pf, mut scale) = floats(&rest);
    for &k in candidates(deg).iter() {
        if phi[k as usize] as usize > rest.len() - 1 || !maybe_root(&pf, scale, k) {
            continue;
        }
        let d = cyclotomic(k);
        let mut e = 0;
        while let Some(q) = div_exact_monic(&rest, &d) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            cyc.push((k, e));
            if rest.len() == 1 {
                break;
            }
            (pf, scale) = floats(&rest);
        }
    }
    (cyc, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(105).len() - 1, 48);
        assert_eq!(value_at_one(9), 3);
        assert_eq!(value_at_one(10), 1);
    }

    #[test]
    fn split_finds_all_factors() {
        // (v^6 − 1)(v^7 − 1)(v^2 + v + 3)
        let mut p = mul_cyc(&[int(3), int(1), int(1)], &binomial(6));
        p = mul_cyc(&p, &binomial(7));
        let (cyc, rest) = split(p);
        let want = merge(&binomial(6), &binomial(7), 1);
        assert_eq!(cyc, want);
        assert_eq!(rest, vec![int(3), int(1), int(1)]);
    }
}
