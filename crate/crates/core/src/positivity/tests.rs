use super::*;
use crate::scalar::{rat, scaled_exponent};
use crate::scatter::complete;

fn fd(d1: i64, d2: i64) -> FixedData {
    FixedData::rank2(d1, d2).unwrap()
}

fn v(a: i64, b: i64) -> LatticeVec {
    LatticeVec::new(&[a, b])
}

#[test]
fn degree_two_spectra() {
    let d = complete(&fd(2, 3), 2).unwrap();
    let cf = canonical_factor(d.wall(&v(1, 1)).unwrap(), &d.fixed).unwrap();
    assert_eq!(cf.levels.len(), 1);
    assert_eq!(cf.levels[0].a, rat(1, 6));
    assert_eq!(
        cf.spectrum(1),
        spectrum_of([(rat(-1, 3), 1), (rat(0, 1), -1), (rat(1, 3), 1)])
    );

    let d = complete(&fd(3, 3), 2).unwrap();
    let cf = canonical_factor(d.wall(&v(1, 1)).unwrap(), &d.fixed).unwrap();
    assert_eq!(cf.levels[0].a, rat(1, 3));
    assert_eq!(
        cf.spectrum(1),
        spectrum_of([(rat(-2, 3), 1), (rat(0, 1), 1), (rat(2, 3), 1)])
    );
}

#[test]
fn zero_element_has_no_factors() {
    let cf = factor_levels(&v(1, 1), &[RatFunc::zero(), RatFunc::zero()], &fd(1, 1)).unwrap();
    assert!(cf.levels.is_empty());
}

#[test]
fn non_integral_level_is_an_error() {
    let half = RatFunc::from(rat(1, 2));
    assert!(matches!(
        factor_levels(&v(1, 1), &[half], &fd(1, 1)),
        Err(Error::NonIntegral { level: 1, .. })
    ));
}

#[test]
fn round_trip_through_logarithm() {
    for (d1, d2) in [(2, 2), (2, 3), (1, 4)] {
        let d = complete(&fd(d1, d2), 6).unwrap();
        for w in &d.walls {
            let cf = canonical_factor(w, &d.fixed).unwrap();
            assert_eq!(cf.log_levels(&d.fixed, w.levels.len()).unwrap(), w.levels);
        }
    }
}

#[test]
fn verdicts_at_degree_two() {
    let r = is_positive(&complete(&fd(2, 3), 2).unwrap());
    assert!(!r.positive);
    assert_eq!(
        r.violations,
        vec![Violation {
            n: v(1, 1),
            b: rat(0, 1),
            c: -1
        }]
    );
    let r = is_positive(&complete(&fd(3, 4), 2).unwrap());
    assert!(!r.positive);
    let bs: Vec<_> = r.violations.iter().map(|x| (x.b.clone(), x.c)).collect();
    assert_eq!(bs, vec![(rat(-1, 3), -1), (rat(1, 3), -1)]);
    assert!(is_positive(&complete(&fd(2, 4), 2).unwrap()).positive);
}

#[test]
fn divisibility_criteria() {
    assert!(!degree2_criterion(2, 3));
    assert!(degree2_criterion(2, 4));
    assert!(degree2_criterion(3, 1));
    let z = rat(0, 1);
    let skew = vec![
        vec![z.clone(), z.clone(), rat(1, 1)],
        vec![z.clone(), z.clone(), rat(1, 1)],
        vec![rat(-1, 1), rat(-1, 1), z],
    ];
    let f = FixedData::new(vec![2, 3, 6], skew).unwrap();
    assert_eq!(f.exchange_matrix()[0][1], 0);
    assert!(corollary_check(&f));
    assert!(!corollary_check(&fd(2, 3)));
}

/// Canonical spectrum on `n` read off a completed diagram.
fn computed_spectrum(d: &Diagram, n: &LatticeVec) -> BTreeMap<Rational, i64> {
    let (n0, j) = n.primitive_part();
    d.wall(&n0)
        .map(|w| canonical_factor(w, &d.fixed).unwrap().spectrum(j as u32))
        .unwrap_or_default()
}

const KD_PAIRS: [(i64, i64); 8] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
];

#[test]
fn closed_forms_match_scattering() {
    for (d1, k) in KD_PAIRS {
        let d = complete(&fd(d1, k * d1), 4).unwrap();
        assert!(is_positive(&d).positive, "({d1},{k})");
        for deg in 2..=4 {
            for e in expected_degree_factors(d1, k, deg).unwrap() {
                let want: BTreeMap<_, _> =
                    e.spectrum.into_iter().filter(|(_, c)| *c != 0).collect();
                assert_eq!(computed_spectrum(&d, &e.n), want, "({d1},{k}) on {}", e.n);
                assert_eq!(
                    canonical_interval_scaled(&e.n, &d.fixed).unwrap(),
                    scaled_exponent(&e.a, d.fixed.delta0()).unwrap()
                );
            }
        }
    }
}

#[test]
fn fused_and_unfused_forms_agree() {
    for (d1, k) in KD_PAIRS.into_iter().chain([(4, 1), (2, 5), (4, 3), (1, 7)]) {
        let f = fd(d1, k * d1);
        for deg in 2..=4 {
            let a = displayed_factors(d1, k, deg).unwrap();
            let b = unfused_factors(d1, k, deg).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(
                    to_canonical(x, &f).unwrap(),
                    to_canonical(y, &f).unwrap(),
                    "({d1},{k}) on {}",
                    x.n
                );
            }
        }
    }
}

#[test]
fn generating_polynomial() {
    for k in 1..=8 {
        assert_eq!(a_k(k).unwrap(), a_k_sum(k).unwrap(), "k = {k}");
    }
    for k in [1, 2, 4, 5, 7, 8] {
        assert!(b_k(k).unwrap().values().all(|&c| c > 0));
    }
    assert!(matches!(b_k(3), Err(Error::InexactDivision(_))));
    for k in [1, 2, 4, 5, 7, 8, 10, 11, 13, 14] {
        assert_eq!(b_k(k).unwrap(), bk_closed_form(k).unwrap(), "k = {k}");
    }
    assert!(matches!(bk_closed_form(6), Err(Error::BadResidue(_))));
}

#[test]
fn resummations() {
    for p in 1..=12 {
        for r in Resummation::ALL {
            let f = resummation_forms(p, r).unwrap();
            assert!(f.agree(), "{r} at p = {p}: {f:?}");
        }
    }
}

#[test]
fn negative_exponents_cancel_in_the_classical_limit() {
    let d = complete(&fd(2, 3), 2).unwrap();
    let e = crate::scatter::classical_exponents(d.wall(&v(1, 1)).unwrap()).unwrap();
    assert_eq!(e, vec![(v(1, 1), rat(6, 1))]);
}

#[test]
fn equal_deltas_are_positive() {
    for d1 in 1..=3 {
        let r = is_positive(&complete(&fd(d1, d1), 6).unwrap());
        assert!(r.positive, "({d1},{d1}): {r:?}");
    }
}
