//! Acceptance suite: one line per criterion with its wall time and limit.
//! Runs without the libtest harness so the report is always printed.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qcsd_core::fixeddata::{FixedData, LatticeVec};
use qcsd_core::pentagon::catalog::known_relation;
use qcsd_core::pentagon::{
    reordering_relation, verify_relation, RelationParams, ReorderingRelation, Word,
};
use qcsd_core::positivity::{
    b_k, bk_closed_form, canonical_factor, degree2_criterion, expected_degree_factors, is_positive,
    resummation_check, spectrum_of, Resummation,
};
use qcsd_core::scalar::{rat, Rational};
use qcsd_core::scatter::{
    classical_exponents, classical_walls, compare_known, complete, Diagram, KnownType,
};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fd(d1: i64, d2: i64) -> FixedData {
    FixedData::rank2(d1, d2).expect("valid deltas")
}

fn v(a: i64, b: i64) -> LatticeVec {
    LatticeVec::new(&[a, b])
}

fn word(s: &str) -> Word {
    s.parse().expect("valid word")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ordered_word(d: &Diagram) -> Result<Word, String> {
    d.ordered_word().map_err(err)
}

/// Canonical spectrum of `n` in `d`; empty if the ray carries nothing at that level.
fn spectrum(
    d: &Diagram,
    n: &LatticeVec,
) -> Result<(Option<Rational>, BTreeMap<Rational, i64>), String> {
    let (n0, j) = n.primitive_part();
    let Some(w) = d.wall(&n0) else {
        return Ok((None, BTreeMap::new()));
    };
    let cf = canonical_factor(w, &d.fixed).map_err(err)?;
    Ok(match cf.level(j as u32) {
        Some(l) => (Some(l.a.clone()), l.spectrum.clone()),
        None => (None, BTreeMap::new()),
    })
}

fn finite_type(rel: &str, d1: i64, d2: i64, walls: usize) -> Check {
    let k = known_relation(rel, Some(8)).map_err(err)?;
    ensure(
        verify_relation(&k.lhs, &k.rhs, &k.fixed, 8).map_err(err)?,
        || format!("{rel} does not hold"),
    )?;
    let d = complete(&fd(d1, d2), 8).map_err(err)?;
    ensure(d.walls.len() == walls, || {
        format!("{} walls instead of {walls}", d.walls.len())
    })?;
    let w = ordered_word(&d)?;
    ensure(w == k.rhs, || {
        format!("ordered word {w} differs from {}", k.rhs)
    })?;
    ensure(d.check_consistency().map_err(err)?, || {
        "diagram is not consistent".into()
    })
}

fn display_matches(name: &str, f: &FixedData) -> Check {
    let k = known_relation(name, None).map_err(err)?;
    let w = ordered_word(&complete(f, k.cutoff).map_err(err)?)?;
    ensure(w.merged() == k.rhs.merged(), || format!("{name}: got {w}"))
}

fn affine_a1() -> Check {
    display_matches("ordex1", &fd(2, 2))?;
    display_matches("ordex2", &fd(2, 2))?;
    let c = compare_known(KnownType::A1Affine, 15).map_err(err)?;
    ensure(c.mismatches.is_empty(), || format!("{:?}", c.mismatches))?;
    let d = &c.diagram;
    let half = spectrum_of([(rat(0, 1), 1)]);
    for p in 1..=7 {
        for n in [v(p + 1, p), v(p, p + 1)] {
            let s = spectrum(d, &n)?;
            ensure(s == (Some(rat(1, 2)), half.clone()), || {
                format!("side ray {n}: {s:?}")
            })?;
            let levels = canonical_factor(d.wall(&n).unwrap(), &d.fixed)
                .map_err(err)?
                .levels
                .len();
            ensure(levels == 1, || format!("side ray {n} has {levels} levels"))?;
        }
    }
    let central =
        canonical_factor(d.wall(&v(1, 1)).ok_or("no central wall")?, &d.fixed).map_err(err)?;
    let got: Vec<(u32, Rational, BTreeMap<Rational, i64>)> = central
        .levels
        .iter()
        .map(|l| (l.j, l.a.clone(), l.spectrum.clone()))
        .collect();
    let want: Vec<_> = [1i64, 2, 4]
        .into_iter()
        .map(|j| {
            (
                j as u32,
                rat(j, 2),
                spectrum_of([(rat(-j, 2), 1), (rat(j, 2), 1)]),
            )
        })
        .collect();
    ensure(got == want, || format!("central tower {got:?}"))
}

fn affine_a2() -> Check {
    display_matches("twisted_mod5", &fd(1, 4))?;
    display_matches("twisted_mod11", &fd(1, 4))?;
    let c = compare_known(KnownType::A2Affine, 11).map_err(err)?;
    ensure(c.mismatches.is_empty(), || format!("{:?}", c.mismatches))
}

fn classical_limits() -> Check {
    for t in [KnownType::A1Affine, KnownType::A2Affine] {
        let (d1, d2) = t.deltas();
        let d = complete(&fd(d1, d2), 11).map_err(err)?;
        let mut got = Vec::new();
        for w in &d.walls {
            got.extend(classical_exponents(w).map_err(err)?);
        }
        let mut want = classical_walls(t, 11);
        got.sort();
        want.sort();
        ensure(got == want, || format!("{t}: {got:?}"))?;
    }
    let a2 = classical_walls(KnownType::A2Affine, 11);
    ensure(
        a2.contains(&(v(1, 2), rat(6, 1))) && a2.contains(&(v(2, 4), rat(2, 1))),
        || "A2 central exponents".into(),
    )
}

fn degree_two_table() -> Check {
    for d1 in 1..=6 {
        for d2 in 1..=6 {
            let r = is_positive(&complete(&fd(d1, d2), 2).map_err(err)?);
            ensure(r.positive == degree2_criterion(d1, d2), || {
                format!("({d1},{d2}): {r:?}")
            })?;
        }
    }
    let fused = known_relation("delta23_mod2_fused", None).map_err(err)?;
    let cases = [
        ((2, 3), fused.rhs.to_string()),
        ((2, 4), "[1,0]_{1/2,0} [1,1]_{1/4,-1/2} [1,1]_{1/4,1/2} [0,1]_{1/4,0}".into()),
        ((3, 3), "[1,0]_{1/3,0} [1,1]_{1/3,-2/3} [1,1]_{1/3,0} [1,1]_{1/3,2/3} [0,1]_{1/3,0}".into()),
        (
            (4, 3),
            "[1,0]_{1/4,0} [1,1]_{1/12,-1/2} [1,1]_{1/12,-1/3}^{-1} [1,1]_{1/12,0} [1,1]_{1/12,1/3}^{-1} \
             [1,1]_{1/12,1/2} [0,1]_{1/3,0}"
                .into(),
        ),
    ];
    for ((d1, d2), display) in cases {
        let w = ordered_word(&complete(&fd(d1, d2), 2).map_err(err)?)?;
        ensure(w.merged() == word(&display).merged(), || {
            format!("({d1},{d2}): {w}")
        })?;
    }
    let a = spectrum(&complete(&fd(3, 4), 2).map_err(err)?, &v(1, 1))?;
    let b = spectrum(&complete(&fd(4, 3), 2).map_err(err)?, &v(1, 1))?;
    ensure(a == b, || {
        format!("(3,4) and (4,3) differ on (1,1): {a:?} {b:?}")
    })
}

const DEGREE_FOUR_PAIRS: [(i64, i64); 8] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
];

fn degree_four() -> Check {
    for (d1, k) in DEGREE_FOUR_PAIRS {
        let d = complete(&fd(d1, k * d1), 4).map_err(err)?;
        let r = is_positive(&d);
        ensure(r.positive, || format!("δ = ({d1},{}): {r:?}", k * d1))?;
        for deg in 2..=4 {
            for e in expected_degree_factors(d1, k, deg).map_err(err)? {
                let (a, s) = spectrum(&d, &e.n)?;
                let want: BTreeMap<_, _> =
                    e.spectrum.into_iter().filter(|(_, c)| *c != 0).collect();
                ensure(s == want, || {
                    format!("δ = ({d1},{}) on {}: {s:?} vs {want:?}", k * d1, e.n)
                })?;
                ensure(a.is_none() || a == Some(e.a.clone()), || {
                    format!("interval on {}", e.n)
                })?;
            }
        }
    }
    Ok(())
}

fn nonpositive_examples() -> Check {
    display_matches("delta15_mod6", &fd(1, 5))?;
    display_matches("delta24_mod4", &fd(2, 4))
}

fn reordering_relations() -> Check {
    let f = fd(1, 1).with_delta0(4).map_err(err)?;
    let shifts = [(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(-1, 2))];
    for rel in ReorderingRelation::ALL {
        if matches!(rel, ReorderingRelation::A115 | ReorderingRelation::A227) {
            continue;
        }
        let bounds: &[u32] = if rel.is_finite() { &[0, 1, 2] } else { &[0] };
        let signs: &[i64] = if rel.has_sign() { &[1, -1] } else { &[1] };
        for (b, b2) in &shifts {
            for &bound in bounds {
                for &sign in signs {
                    let mut p = RelationParams::standard(10);
                    p.b = b.clone();
                    p.b2 = b2.clone();
                    p.bound = bound;
                    p.sign = sign;
                    let (l, r) = reordering_relation(rel, &p, &f).map_err(err)?;
                    ensure(verify_relation(&l, &r, &f, 10).map_err(err)?, || {
                        format!(
                            "{} with b = {b}, b' = {b2}, L = {bound}, sign {sign}",
                            rel.name()
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn generating_polynomials() -> Check {
    for k in [1, 2, 4, 5, 7, 8, 10, 11] {
        let b = b_k(k).map_err(err)?;
        ensure(b.values().all(|&c| c >= 0), || {
            format!("B_{k} has a negative coefficient")
        })?;
        let c = bk_closed_form(k).map_err(err)?;
        ensure(b == c, || format!("B_{k} differs from its closed form"))?;
    }
    for p in 1..=12 {
        for r in Resummation::ALL {
            ensure(resummation_check(p, r).map_err(err)?, || {
                format!("{r} at p = {p}")
            })?;
        }
    }
    Ok(())
}

fn properties() -> Check {
    for (name, run) in common::invariants() {
        run().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, &str, u64, fn() -> Check)> = vec![
        ("1", "finite type A2 at degree 8", 5, || {
            finite_type("pent0", 1, 1, 3)
        }),
        ("1", "finite type B2 at degree 8", 5, || {
            finite_type("pent3", 1, 2, 4)
        }),
        ("1", "finite type G2 at degree 8", 5, || {
            finite_type("pent4", 1, 3, 6)
        }),
        ("2", "affine A1 up to degree 15", 60, affine_a1),
        ("3", "affine A2 twisted up to degree 11", 60, affine_a2),
        (
            "4",
            "classical limits of the affine walls",
            60,
            classical_limits,
        ),
        ("5", "positivity table at degree 2", 10, degree_two_table),
        ("6", "degree-4 spectra for δ₂ = kδ₁", 120, degree_four),
        (
            "7",
            "nonpositive ordered words (1,5) and (2,4)",
            60,
            nonpositive_examples,
        ),
        (
            "8",
            "reordering relations at degree 10",
            60,
            reordering_relations,
        ),
        (
            "9",
            "generating polynomials and resummations",
            10,
            generating_polynomials,
        ),
        ("10", "randomized invariants", 600, properties),
    ];
    let mut failed = 0;
    for (id, label, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let late = elapsed > Duration::from_secs(limit);
        let status = match (&result, late) {
            (Ok(()), false) => "PASS",
            _ => "FAIL",
        };
        println!(
            "criterion {id:>2}  {status}  {label}  ({:.2} s, limit {limit} s)",
            elapsed.as_secs_f64()
        );
        if let Err(e) = &result {
            println!("              {e}");
        } else if late {
            println!("              over the time limit");
        }
        if status == "FAIL" {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
