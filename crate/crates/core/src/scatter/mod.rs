//! Rank-2 scattering diagrams modulo `G^{>ℓ}`.
//!
//! The diagram is built degree by degree. With `A = Ψ[e₂]Ψ[e₁]` and `W` the
//! ordered product of the walls found so far, the discrepancy `W⁻¹A` is
//! trivial below degree `d`, so its degree-`d` part is central and can be
//! read off from its action on the generators `x^(f_i,0)`.

mod known;

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixeddata::{FixedData, LatticeVec};
use crate::liegroup::{generator_images, ParallelElem, PsiFactor};
use crate::pentagon::{FactorJson, Word};
use crate::positivity::canonical_factor;
use crate::qtorus::{TorusKind, XKind, XSeries};
use crate::scalar::{q_minus_qinv, LaurentPoly, RatFunc};

pub use known::{classical_exponents, classical_walls, compare_known, KnownComparison, KnownType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// Primitive normal vector.
    pub n0: LatticeVec,
    /// Primitive direction of the support; the whole line for incoming walls.
    pub ray: LatticeVec,
    /// `r_j`, the coefficient of `X_(j n0)` in the logarithm, at index `j − 1`.
    pub levels: Vec<RatFunc>,
    pub incoming: bool,
}

impl Wall {
    pub fn element(&self) -> ParallelElem {
        ParallelElem::from_log(self.n0.clone(), self.levels.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|r| r.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub fixed: FixedData,
    pub cutoff: u32,
    /// Ordered from `e₁` to `e₂`, one wall per ray.
    pub walls: Vec<Wall>,
}

/// Order of rays in an ordered product: increasing slope `n₂/n₁`.
pub fn slope_cmp(a: &LatticeVec, b: &LatticeVec) -> Ordering {
    let (x, y) = (a.coords(), b.coords());
    (x[1] * y[0]).cmp(&(y[1] * x[0]))
}

fn top_level(n0: &LatticeVec, cutoff: u32) -> usize {
    (cutoff as i64 / n0.degree()) as usize
}

/// `(e₁^⊥, Ψ_{1/δ₁}[e₁])` and `(e₂^⊥, Ψ_{1/δ₂}[e₂])`.
pub fn incoming(fd: &FixedData, cutoff: u32) -> Result<Vec<Wall>> {
    fd.require_rank2()?;
    (0..2)
        .map(|i| {
            let n0 = LatticeVec::unit(2, i);
            let a = fd.delta0() / fd.delta(i);
            let e = ParallelElem::from_factors(
                n0.clone(),
                vec![PsiFactor {
                    j: 1,
                    a,
                    b: 0,
                    c: 1,
                }],
            );
            Ok(Wall {
                ray: fd.ray_direction(&n0)?,
                levels: e.levels(fd, top_level(&n0, cutoff)),
                n0,
                incoming: true,
            })
        })
        .collect()
}

/// Order in which the corrections found at one degree are merged into the walls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MergeOrder {
    #[default]
    Ascending,
    Descending,
}

pub fn complete(fd: &FixedData, cutoff: u32) -> Result<Diagram> {
    complete_with(fd, cutoff, MergeOrder::Ascending)
}

pub fn complete_with(fd: &FixedData, cutoff: u32, order: MergeOrder) -> Result<Diagram> {
    fd.require_rank2()?;
    if cutoff == 0 {
        return Err(Error::InvalidFixedData("cutoff must be positive".into()));
    }
    // Slope order and the anti-ordered product below assume {e₂, e₁} > 0.
    if !fd.skew()[1][0].is_positive() {
        return Err(Error::InvalidFixedData(format!(
            "completion needs {{e₂, e₁}} > 0, got {}; swap e₁ and e₂",
            fd.skew()[1][0]
        )));
    }
    let inc = incoming(fd, cutoff)?;
    let gens = generator_images(fd, cutoff);
    // A acts as Ψ[e₂](Ψ[e₁](s)).
    let a_img: Vec<XSeries> = gens
        .par_iter()
        .map(|s| {
            inc[1]
                .element()
                .apply(&inc[0].element().apply(s, fd, false), fd, false)
        })
        .collect();
    let mut d = Diagram {
        fixed: fd.clone(),
        cutoff,
        walls: inc,
    };
    let denom = q_minus_qinv(fd.delta0());
    for deg in 2..=cutoff {
        let elems: Vec<ParallelElem> = d.walls.iter().map(Wall::element).collect();
        let disc: Vec<XSeries> = a_img
            .par_iter()
            .map(|s| {
                let mut cur = s.truncate(deg);
                for e in &elems {
                    cur = e.apply(&cur, fd, true);
                }
                cur
            })
            .collect();
        let mut found: Vec<(LatticeVec, RatFunc)> = Vec::new();
        for img in &disc {
            for (n, c) in img.terms() {
                let k = n.degree();
                if k == 0 {
                    if !c.is_one() {
                        return Err(Error::InternalInconsistency(format!(
                            "constant term {c} at degree {deg}"
                        )));
                    }
                    continue;
                }
                if k < deg as i64 {
                    return Err(Error::InternalInconsistency(format!(
                        "residual term at {n} below degree {deg}"
                    )));
                }
                let w = XKind::weight_scaled(fd, img.base(), n);
                if w == 0 || n.coords().contains(&0) {
                    return Err(Error::InternalInconsistency(format!(
                        "correction on axis direction {n}"
                    )));
                }
                let f: RatFunc = (&LaurentPoly::v_pow(2 * w) - &LaurentPoly::one()).into();
                let r = &(c * &denom) / &f;
                match found.iter().find(|(m, _)| m == n) {
                    Some((_, prev)) if *prev != r => {
                        return Err(Error::InternalInconsistency(format!(
                            "generators disagree on the correction at {n}"
                        )))
                    }
                    Some(_) => {}
                    None => found.push((n.clone(), r)),
                }
            }
        }
        if order == MergeOrder::Descending {
            found.reverse();
        }
        for (n, r) in found {
            d.merge(&n, &r)?;
        }
    }
    Ok(d)
}

impl Diagram {
    /// Adds `r·X_n` to the logarithm of the wall on the ray of `n`.
    fn merge(&mut self, n: &LatticeVec, r: &RatFunc) -> Result<()> {
        let (n0, j) = n.primitive_part();
        let pos = self.walls.binary_search_by(|w| slope_cmp(&w.n0, &n0));
        let idx = match pos {
            Ok(i) => i,
            Err(i) => {
                let top = top_level(&n0, self.cutoff);
                let wall = Wall {
                    ray: self.fixed.ray_direction(&n0)?,
                    levels: vec![RatFunc::zero(); top],
                    n0,
                    incoming: false,
                };
                self.walls.insert(i, wall);
                i
            }
        };
        let w = &mut self.walls[idx];
        w.levels[j as usize - 1] += r;
        if w.is_trivial() && !w.incoming {
            self.walls.remove(idx);
        }
        Ok(())
    }

    pub fn wall(&self, n0: &LatticeVec) -> Option<&Wall> {
        self.walls.iter().find(|w| &w.n0 == n0)
    }

    pub fn outgoing(&self) -> impl Iterator<Item = &Wall> {
        self.walls.iter().filter(|w| !w.incoming)
    }

    /// Drops the wall on the ray of `n0`, returning it.
    pub fn remove_wall(&mut self, n0: &LatticeVec) -> Option<Wall> {
        let i = self.walls.iter().position(|w| &w.n0 == n0)?;
        Some(self.walls.remove(i))
    }

    /// Canonical factors of each wall, `e₁` side first.
    pub fn ordered_word(&self) -> Result<Word> {
        let mut out = Word::empty();
        for w in &self.walls {
            for f in canonical_factor(w, &self.fixed)?.factors() {
                out.push(f);
            }
        }
        Ok(out)
    }

    /// Path-ordered product along a small counterclockwise loop around the
    /// origin, starting just above the positive first axis, compared with the
    /// identity through the action on the generators.
    pub fn check_consistency(&self) -> Result<bool> {
        let fd = &self.fixed;
        let mut crossings: Vec<(LatticeVec, usize, bool)> = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            crossings.push((w.ray.clone(), i, false));
            if w.incoming {
                crossings.push((w.ray.scale(-1), i, false));
            }
        }
        for c in crossings.iter_mut() {
            // γ' at the crossing point u is u turned by a quarter.
            let u = c.0.coords();
            let tangent = [-u[1], u[0]];
            let s = fd.pair_nm_scaled(&self.walls[c.1].n0, &tangent);
            if s == 0 {
                return Err(Error::InternalInconsistency(format!(
                    "loop tangent to the wall {}",
                    self.walls[c.1].n0
                )));
            }
            c.2 = s > 0;
        }
        crossings.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        let elems: Vec<ParallelElem> = self.walls.iter().map(Wall::element).collect();
        let gens = generator_images(fd, self.cutoff);
        let ok = gens.par_iter().all(|s| {
            let mut cur = s.clone();
            for (_, i, inverse) in &crossings {
                cur = elems[*i].apply(&cur, fd, *inverse);
            }
            &cur == s
        });
        Ok(ok)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut walls = Vec::new();
        for w in &self.walls {
            let factors = Word::new(canonical_factor(w, &self.fixed)?.factors()).to_json();
            walls.push(WallJson {
                n0: w.n0.clone(),
                ray: w.ray.clone(),
                incoming: w.incoming,
                factors,
            });
        }
        let doc = DiagramJson {
            deltas: self.fixed.deltas().to_vec(),
            degree: self.cutoff,
            walls,
        };
        serde_json::to_value(doc).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The ordered word, one factor per line.
    pub fn to_text(&self) -> Result<String> {
        let mut s = String::new();
        for f in self.ordered_word()?.factors() {
            writeln!(s, "{}", Word::new(vec![f.clone()])).expect("write to string");
        }
        Ok(s)
    }
}

#[derive(Serialize)]
struct WallJson {
    n0: LatticeVec,
    ray: LatticeVec,
    incoming: bool,
    factors: Vec<FactorJson>,
}

#[derive(Serialize)]
struct DiagramJson {
    deltas: Vec<i64>,
    degree: u32,
    walls: Vec<WallJson>,
}

/// Counterclockwise angle order on `(0, 2π]`.
fn angle_cmp(a: &LatticeVec, b: &LatticeVec) -> Ordering {
    let half = |u: &[i64]| {
        if u[1] > 0 || (u[1] == 0 && u[0] < 0) {
            0
        } else {
            1
        }
    };
    let (x, y) = (a.coords(), b.coords());
    half(x)
        .cmp(&half(y))
        .then_with(|| (y[0] * x[1]).cmp(&(x[0] * y[1])))
}
