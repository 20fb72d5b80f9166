//! Randomized invariants shared by the property tests and the acceptance suite.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qcsd_core::fixeddata::{FixedData, LatticeVec, TildeVec};
use qcsd_core::liegroup::{evaluate_product, generator_images, DilogElem, GroupElem};
use qcsd_core::pentagon::{
    rewrite_commute, rewrite_fission, rewrite_fusion, rewrite_pentagon, verify_relation, Direction,
    Word,
};
use qcsd_core::scalar::{int, rat, Rational};

pub const CASES: u32 = 100;

/// Cutoff for the invariants that multiply generic group elements.
const GROUP_CUTOFF: u32 = 4;

pub type Outcome = Result<(), TestCaseError>;

fn check(cond: bool, what: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn fixed() -> impl Strategy<Value = FixedData> {
    (1i64..=3, 1i64..=3).prop_map(|(a, b)| FixedData::rank2(a, b).unwrap())
}

pub fn positive_vec(max: i64) -> impl Strategy<Value = LatticeVec> {
    (0..=max, 0..=max)
        .prop_filter("nonzero", |(a, b)| a + b > 0)
        .prop_map(|(a, b)| LatticeVec::new(&[a, b]))
}

/// `Ψ_{s/δ₀, t/δ₀}[n]^(±1)` with `deg n ≤ 2`.
pub fn factor(d0: i64) -> impl Strategy<Value = DilogElem> {
    (positive_vec(2), 1i64..=3, -3i64..=3, any::<bool>()).prop_map(move |(n, s, t, inv)| {
        let d = DilogElem::new(n, rat(s, d0), rat(t, d0));
        if inv {
            d.inverse()
        } else {
            d
        }
    })
}

pub type Elements = (FixedData, Vec<DilogElem>, Vec<DilogElem>, Vec<DilogElem>);

pub fn elements() -> impl Strategy<Value = Elements> {
    fixed().prop_flat_map(|fd| {
        let d0 = fd.delta0();
        let w = || prop::collection::vec(factor(d0), 1..=2);
        (Just(fd), w(), w(), w())
    })
}

fn group(fs: &[DilogElem], fd: &FixedData) -> Result<GroupElem, TestCaseError> {
    ok(evaluate_product(fs, fd, GROUP_CUTOFF))
}

pub fn associativity((fd, a, b, c): Elements) -> Outcome {
    let (g, h, k) = (group(&a, &fd)?, group(&b, &fd)?, group(&c, &fd)?);
    let left = ok(ok(g.mul(&h, &fd))?.mul(&k, &fd))?;
    let right = ok(g.mul(&ok(h.mul(&k, &fd))?, &fd))?;
    check(left.eq_mod(&right, GROUP_CUTOFF), "(gh)k ≠ g(hk)")
}

pub fn inverse_round_trip((fd, a, _, _): Elements) -> Outcome {
    let g = group(&a, &fd)?;
    check(ok(g.mul(&g.inverse(), &fd))?.is_identity(), "g·g⁻¹ ≠ 1")?;
    check(ok(g.inverse().mul(&g, &fd))?.is_identity(), "g⁻¹·g ≠ 1")?;
    let inv: Vec<DilogElem> = a.iter().rev().map(DilogElem::inverse).collect();
    check(
        group(&inv, &fd)?.eq_mod(&g.inverse(), GROUP_CUTOFF),
        "reversed inverse word",
    )
}

pub fn homomorphism((fd, a, b, _): Elements) -> Outcome {
    let (g, h) = (group(&a, &fd)?, group(&b, &fd)?);
    let gh = ok(g.mul(&h, &fd))?;
    for s in generator_images(&fd, GROUP_CUTOFF) {
        let direct = ok(gh.act_x(&s, &fd))?;
        let composed = ok(g.act_x(&ok(h.act_x(&s, &fd))?, &fd))?;
        check(direct == composed, "(gh)(s) ≠ g(h(s))")?;
    }
    Ok(())
}

pub type Split = (FixedData, LatticeVec, i64, i64, u32, bool);

pub fn splits() -> impl Strategy<Value = Split> {
    (
        fixed(),
        positive_vec(2),
        1i64..=2,
        -2i64..=2,
        1u32..=3,
        any::<bool>(),
    )
}

pub fn fission_fusion((fd, n, s, t, p, plus): Split) -> Outcome {
    let sign = if plus { 1 } else { -1 };
    let d0 = fd.delta0();
    let w = Word::new(vec![DilogElem::new(n, rat(s, d0), rat(t, d0))]);
    let split = ok(rewrite_fission(&w, 0, p, sign, &fd))?;
    check(split.len() == p as usize, "fission length")?;
    check(
        ok(rewrite_fusion(&split, 0, p, sign, &fd))? == w,
        "fusion does not undo fission",
    )?;
    check(
        ok(verify_relation(&w, &split, &fd, 5))?,
        "fission changes the element",
    )
}

pub type Rewrite = (Vec<DilogElem>, Vec<DilogElem>, i64, i64, u32, usize);

pub fn rewrites() -> impl Strategy<Value = Rewrite> {
    let side = || prop::collection::vec(factor(2), 0..=2);
    (side(), side(), -2i64..=2, -2i64..=2, 2u32..=3, 0usize..3)
}

/// A pentagon pair between random factors, rewritten by the pentagon rule,
/// by fission, or by commuting two parallel factors in front of it.
pub fn rewrite_preserves((pre, post, b1, b2, p, which): Rewrite) -> Outcome {
    // {e₂, e₁} = 1 with δ₀ = 2.
    let fd = ok(ok(FixedData::rank2(1, 1))?.with_delta0(2))?;
    let i = pre.len();
    let mut fs = pre;
    if which == 2 {
        fs.push(DilogElem::new(LatticeVec::new(&[2, 2]), int(1), rat(1, 2)));
        fs.push(DilogElem::new(LatticeVec::new(&[1, 1]), rat(1, 2), int(0)));
    }
    fs.push(DilogElem::new(LatticeVec::new(&[0, 1]), int(1), rat(b2, 2)));
    fs.push(DilogElem::new(LatticeVec::new(&[1, 0]), int(1), rat(b1, 2)));
    fs.extend(post);
    let w = Word::new(fs);
    let r = match which {
        0 => ok(rewrite_pentagon(&w, i, Direction::Forward, &fd))?,
        1 => ok(rewrite_fission(&w, i, p, 1, &fd))?,
        _ => {
            let c = ok(rewrite_commute(&w, i, &fd))?;
            ok(rewrite_pentagon(&c, i + 2, Direction::Forward, &fd))?
        }
    };
    check(r != w, "rewrite changed nothing")?;
    check(
        ok(verify_relation(&w, &r, &fd, 5))?,
        "rewrite changes the element",
    )
}

pub type Norm = (i64, i64, LatticeVec, i64);

pub fn norms() -> impl Strategy<Value = Norm> {
    (1i64..=6, 1i64..=6, positive_vec(6), 1i64..=4)
}

/// `δ(n)n ∈ N°`, no proper fraction of `δ(n)` works, `δ(kn) = δ(n)/k`, `δ(e₁) = δ₁`.
pub fn normalization((d1, d2, n, k): Norm) -> Outcome {
    let fd = ok(FixedData::rank2(d1, d2))?;
    let t = ok(fd.norm_factor(&n))?;
    let inside = |t: &Rational| {
        n.coords()
            .iter()
            .zip([d1, d2])
            .all(|(&x, d)| (t * int(x) / int(d)).is_integer())
    };
    check(inside(&t), "δ(n)·n ∉ N°")?;
    for m in 2..=12 {
        check(!inside(&(&t / int(m))), "δ(n) is not minimal")?;
    }
    check(
        ok(fd.norm_factor(&n.scale(k)))? == &t / int(k),
        "δ(kn) ≠ δ(n)/k",
    )?;
    check(
        ok(fd.norm_factor(&LatticeVec::unit(2, 0)))? == int(d1),
        "δ(e₁) ≠ δ₁",
    )
}

pub type Dual = (FixedData, LatticeVec, Vec<i64>, Vec<i64>);

pub fn duals() -> impl Strategy<Value = Dual> {
    (
        fixed(),
        positive_vec(4),
        prop::collection::vec(-4i64..=4, 2),
        prop::collection::vec(-4i64..=4, 2),
    )
}

/// `−{p̃*(n), m̃}~ = {m̃, p̃*(n)}~ = ⟨n, m̃⟩`.
pub fn duality((fd, n, m, n2): Dual) -> Outcome {
    let mt = TildeVec { m, n: n2 };
    let p = fd.tilde_p_star(&n);
    let pairing = fd.pairing(&n, &mt);
    check(-fd.skew_tilde(&p, &mt) == pairing, "−{p̃*(n), m̃} ≠ ⟨n, m̃⟩")?;
    check(fd.skew_tilde(&mt, &p) == pairing, "{m̃, p̃*(n)} ≠ ⟨n, m̃⟩")
}

pub type Compat = (Vec<i64>, Vec<i64>);

pub fn compats() -> impl Strategy<Value = Compat> {
    (
        prop::collection::vec(1i64..=4, 3),
        prop::collection::vec(-3i64..=3, 3),
    )
}

pub fn compatible_pair((deltas, u): Compat) -> Outcome {
    let s = |x: i64| int(x);
    let skew = vec![
        vec![s(0), s(u[0]), s(u[1])],
        vec![s(-u[0]), s(0), s(u[2])],
        vec![s(-u[1]), s(-u[2]), s(0)],
    ];
    let fd = ok(FixedData::new(deltas.clone(), skew))?;
    check(fd.compatibility_check(), "rank 3 pair is not compatible")?;
    let r2 = ok(FixedData::rank2_with_skew(deltas[0], deltas[1], int(u[0])))?;
    check(r2.compatibility_check(), "rank 2 pair is not compatible")
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Outcome) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every invariant, each checked on `CASES` random inputs.
#[allow(dead_code)]
pub fn invariants() -> Vec<(&'static str, Box<dyn Fn() -> Result<(), String>>)> {
    vec![
        ("associativity", Box::new(|| run(elements(), associativity))),
        (
            "inverse round trip",
            Box::new(|| run(elements(), inverse_round_trip)),
        ),
        (
            "action homomorphism",
            Box::new(|| run(elements(), homomorphism)),
        ),
        (
            "fission and fusion",
            Box::new(|| run(splits(), fission_fusion)),
        ),
        (
            "rewrites preserve evaluation",
            Box::new(|| run(rewrites(), rewrite_preserves)),
        ),
        (
            "normalization factor",
            Box::new(|| run(norms(), normalization)),
        ),
        ("duality", Box::new(|| run(duals(), duality))),
        (
            "compatible pair",
            Box::new(|| run(compats(), compatible_pair)),
        ),
    ]
}
