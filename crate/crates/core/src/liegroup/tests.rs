use super::*;
use crate::fixeddata::TildeVec;
use crate::qtorus::{adjoint, quantum_dilog, XSeries};
use crate::scalar::{qnum, rat};

fn v(c: &[i64]) -> LatticeVec {
    LatticeVec::new(c)
}

fn psi(n: &[i64], a: Rational, b: Rational) -> DilogElem {
    DilogElem::new(v(n), a, b)
}

#[test]
fn dilog_coefficients() {
    let fd = FixedData::rank2(1, 1).unwrap();
    let x = dilog_lie(&psi(&[1, 0], int(1), int(0)), &fd, 2).unwrap();
    assert_eq!(x.coeff(&v(&[1, 0])), RatFunc::one());
    let two = qnum(&int(2), 1).unwrap();
    let expect = two.scale(&int(2)).inv().unwrap().scale(&int(-1));
    assert_eq!(x.coeff(&v(&[2, 0])), expect);
    assert_eq!(x.coeffs().len(), 2);
}

#[test]
fn zero_exponent_is_identity() {
    let fd = FixedData::rank2(1, 1).unwrap();
    let d = psi(&[1, 1], int(1), int(0)).with_exponent(RatFunc::zero());
    assert!(dilog_elem(&d, &fd, 5).unwrap().is_identity());
}

#[test]
fn classical_limit_of_dilog() {
    let fd = FixedData::rank2(2, 3).unwrap();
    for (a, b) in [
        (rat(1, 6), rat(-1, 3)),
        (rat(1, 2), int(0)),
        (int(1), rat(1, 2)),
    ] {
        let g = dilog_elem(&psi(&[1, 1], a.clone(), b), &fd, 8).unwrap();
        let lim = g.classical_limit().unwrap();
        for j in 1..=4i64 {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            assert_eq!(lim[&v(&[j, j])], a.recip() * rat(sign, j * j));
        }
    }
    assert!(GroupElem::identity(4).classical_limit().unwrap().is_empty());
}

#[test]
fn derivation_vanishes_on_commuting_monomial() {
    let fd = FixedData::rank2(1, 1).unwrap();
    let x = LieSeries::basis(v(&[1, 1]), RatFunc::one(), 4);
    let y = YSeries::corrector(2, v(&[2, 2]), RatFunc::one(), 4);
    assert!(derivation(&x, &y, &fd).unwrap().is_zero());
}

#[test]
fn mutation_formula() {
    // Ψ_{c,b}[n](y^n') = y^n'(1 + q^(c+b) y^n) when {n,n'} = c.
    let fd = FixedData::rank2(1, 1).unwrap();
    let d = psi(&[0, 1], int(1), int(2));
    let g = dilog_elem(&d, &fd, 6).unwrap();
    let s = YSeries::monomial(v(&[1, 0]), v(&[0, 0]), RatFunc::one(), 6);
    let out = g.act_y(&s, &fd).unwrap();
    let expect = YSeries::from_terms(
        v(&[1, 0]),
        [
            (v(&[0, 0]), RatFunc::one()),
            (v(&[0, 1]), RatFunc::v_pow(3)),
        ],
        6,
    );
    assert_eq!(out, expect);
    assert_eq!(
        fast_act_dilog::<crate::qtorus::YKind>(&d, &fd, &v(&[1, 0]), 6).unwrap(),
        expect
    );
}

#[test]
fn fast_action_matches_generic_and_adjoint() {
    let fd = FixedData::rank2(1, 2).unwrap();
    let d = psi(&[0, 1], rat(1, 2), int(0));
    let base = v(&[1, 0]);
    let s = YSeries::monomial(base.clone(), v(&[0, 0]), RatFunc::one(), 8);
    let generic = dilog_elem(&d, &fd, 8).unwrap().act_y(&s, &fd).unwrap();
    let fast = fast_act_dilog::<crate::qtorus::YKind>(&d, &fd, &base, 8).unwrap();
    assert_eq!(generic, fast);
    let e: YSeries = quantum_dilog(&fd, &d.b, &d.n, &d.a, 8).unwrap();
    assert_eq!(adjoint(&e, &s, &fd).unwrap(), fast);
    let inv = fast_act_dilog::<crate::qtorus::YKind>(&d.inverse(), &fd, &base, 8).unwrap();
    let generic_inv = dilog_elem(&d, &fd, 8)
        .unwrap()
        .inverse()
        .act_y(&s, &fd)
        .unwrap();
    assert_eq!(inv, generic_inv);
}

#[test]
fn fast_action_rejects_bad_interval() {
    let fd = FixedData::rank2(1, 2).unwrap();
    // δ(e₂) = 2, so a must be 1/(2s) with s | 1.
    let d = psi(&[0, 1], int(1), int(0));
    assert!(matches!(
        fast_act_dilog::<crate::qtorus::YKind>(&d, &fd, &v(&[1, 0]), 4),
        Err(Error::BadInterval { .. })
    ));
}

#[test]
fn x_action_closed_forms() {
    let fd = FixedData::rank2(1, 3).unwrap();
    let d = psi(&[1, 1], rat(1, 3), rat(1, 3));
    let g = dilog_elem(&d, &fd, 6).unwrap();
    for m in [vec![1, 0], vec![0, 1], vec![2, -1], vec![-1, 1], vec![0, 0]] {
        let mt = TildeVec { m, n: vec![1, 0] };
        let s = XSeries::monomial(mt.clone(), v(&[0, 0]), RatFunc::one(), 6);
        let fast = fast_act_dilog::<crate::qtorus::XKind>(&d, &fd, &mt, 6).unwrap();
        assert_eq!(g.act_x(&s, &fd).unwrap(), fast);
    }
}

#[test]
fn identity_and_parallel_products() {
    let fd = FixedData::rank2(1, 2).unwrap();
    let g = dilog_elem(&psi(&[1, 1], rat(1, 2), int(1)), &fd, 6).unwrap();
    let h = dilog_elem(&psi(&[2, 2], int(1), int(-1)), &fd, 6).unwrap();
    assert_eq!(g.mul(&GroupElem::identity(6), &fd).unwrap(), g);
    let gh = g.mul(&h, &fd).unwrap();
    assert_eq!(gh.log(), &g.log().add(h.log()).unwrap());
    // Cross-check the shortcut against the torus product.
    let u = g
        .unipotent(&fd)
        .unwrap()
        .mul(&h.unipotent(&fd).unwrap(), &fd)
        .unwrap();
    assert_eq!(GroupElem::from_unipotent(&u, &fd).unwrap(), gh);
}

#[test]
fn pentagon_by_products() {
    let fd = FixedData::rank2(1, 1).unwrap();
    let one = int(1);
    let zero = int(0);
    let lhs = evaluate_product(
        &[
            psi(&[0, 1], one.clone(), zero.clone()),
            psi(&[1, 0], one.clone(), zero.clone()),
        ],
        &fd,
        8,
    )
    .unwrap();
    let rhs = evaluate_product(
        &[
            psi(&[1, 0], one.clone(), zero.clone()),
            psi(&[1, 1], one.clone(), zero.clone()),
            psi(&[0, 1], one, zero),
        ],
        &fd,
        8,
    )
    .unwrap();
    assert!(lhs.eq_mod(&rhs, 8));
}

#[test]
fn shifts_are_distinguished() {
    let fd = FixedData::rank2(1, 1).unwrap();
    let a = dilog_elem(&psi(&[1, 1], int(1), int(0)), &fd, 4).unwrap();
    let b = dilog_elem(&psi(&[1, 1], int(1), int(1)), &fd, 4).unwrap();
    assert!(!a.eq_mod(&b, 2));
    assert!(a.eq_mod(&a, 4));
}

#[test]
fn inverse_round_trip() {
    let fd = FixedData::rank2(2, 3).unwrap();
    let g = evaluate_product(
        &[
            psi(&[0, 1], rat(1, 3), int(0)),
            psi(&[1, 0], rat(1, 2), int(0)),
        ],
        &fd,
        5,
    )
    .unwrap();
    assert!(g.mul(&g.inverse(), &fd).unwrap().is_identity());
}

#[test]
fn parallel_action_matches_generic() {
    let fd = FixedData::rank2(2, 3).unwrap();
    let x = LieSeries::from_terms(
        [
            (v(&[1, 1]), RatFunc::v_pow(1)),
            (v(&[2, 2]), RatFunc::from(rat(1, 3))),
            (v(&[3, 3]), RatFunc::v_pow(-2)),
        ],
        6,
    );
    let elem = ParallelElem::from_lie(&x).unwrap();
    let g = GroupElem::from_log(x);
    for s in generator_images(&fd, 6) {
        let s = s
            .add(&XSeries::monomial(
                s.base().clone(),
                v(&[1, 0]),
                RatFunc::from(2),
                6,
            ))
            .unwrap();
        assert_eq!(elem.apply(&s, &fd, false), g.act_x(&s, &fd).unwrap());
        assert_eq!(
            elem.apply(&s, &fd, true),
            g.inverse().act_x(&s, &fd).unwrap()
        );
    }
}

#[test]
fn factor_form_agrees_with_log_form() {
    let fd = FixedData::rank2(2, 2).unwrap();
    let factors = vec![
        PsiFactor {
            j: 1,
            a: 1,
            b: -1,
            c: 1,
        },
        PsiFactor {
            j: 2,
            a: 2,
            b: 2,
            c: -2,
        },
    ];
    let f = ParallelElem::from_factors(v(&[1, 1]), factors);
    let l = ParallelElem::from_log(v(&[1, 1]), f.levels(&fd, 4));
    for s in generator_images(&fd, 8) {
        assert_eq!(f.apply(&s, &fd, false), l.apply(&s, &fd, false));
    }
}

#[test]
fn jacobi_on_basis() {
    let fd = FixedData::rank2(1, 3).unwrap();
    let x = LieSeries::basis(v(&[1, 0]), RatFunc::one(), 6);
    let y = LieSeries::basis(v(&[0, 1]), RatFunc::one(), 6);
    let z = LieSeries::basis(v(&[1, 2]), RatFunc::one(), 6);
    let t1 = x.bracket(&y.bracket(&z, &fd).unwrap(), &fd).unwrap();
    let t2 = y.bracket(&z.bracket(&x, &fd).unwrap(), &fd).unwrap();
    let t3 = z.bracket(&x.bracket(&y, &fd).unwrap(), &fd).unwrap();
    assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
}
