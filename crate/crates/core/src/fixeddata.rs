//! Fixed data: the lattice `N` with its skew form, the multipliers `δ_i`, and
//! the derived pairings, `p*`, `p̃*` and exchange matrices.
//!
//! Coordinates of `N` are taken in the seed basis `e_i`; coordinates of `M°`
//! in the basis `f_i = e_i^*/δ_i`, so every pairing is a rational with
//! denominator dividing `δ₀`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{int, lcm_all, parse_rational, rat, Rational};

/// Integer vector in the seed basis of `N`.
///
/// Ordered by degree (coordinate sum) first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeVec(pub SmallVec<[i64; 4]>);

impl LatticeVec {
    pub fn new(coords: &[i64]) -> Self {
        LatticeVec(SmallVec::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVec(SmallVec::from_elem(0, rank))
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = 1;
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Coordinate sum, without the positivity check of [`deg`].
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Membership in `N⁺`.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && !self.is_zero()
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// `(n0, j)` with `self = j·n0` and `n0` primitive.
    pub fn primitive_part(&self) -> (LatticeVec, i64) {
        let g = self.content();
        if g == 0 {
            return (self.clone(), 0);
        }
        (LatticeVec(self.0.iter().map(|x| x / g).collect()), g)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, o: &LatticeVec) -> Self {
        LatticeVec(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeVec) -> Self {
        LatticeVec(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self ≥ o`.
    pub fn dominates(&self, o: &LatticeVec) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    /// `Some(j)` when `self = j·base` for an integer `j ≥ 1`.
    pub fn multiple_of(&self, base: &LatticeVec) -> Option<i64> {
        let i = base.0.iter().position(|&x| x != 0)?;
        if self.0[i] % base.0[i] != 0 {
            return None;
        }
        let j = self.0[i] / base.0[i];
        (j >= 1 && *self == base.scale(j)).then_some(j)
    }
}

impl serde::Serialize for LatticeVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl Ord for LatticeVec {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for LatticeVec {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Element `(m, n)` of `M̃° = M° ⊕ N`; `m` in f-coordinates, `n` in e-coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TildeVec {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
}

impl TildeVec {
    pub fn zero(rank: usize) -> Self {
        TildeVec {
            m: vec![0; rank],
            n: vec![0; rank],
        }
    }

    /// `(f_i, 0)`.
    pub fn f(rank: usize, i: usize) -> Self {
        let mut t = Self::zero(rank);
        t.m[i] = 1;
        t
    }

    /// `(0, e_i)`.
    pub fn e(rank: usize, i: usize) -> Self {
        let mut t = Self::zero(rank);
        t.n[i] = 1;
        t
    }

    pub fn add(&self, o: &TildeVec) -> Self {
        TildeVec {
            m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect(),
            n: self.n.iter().zip(&o.n).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        TildeVec {
            m: self.m.iter().map(|x| x * k).collect(),
            n: self.n.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().chain(&self.n).all(|&x| x == 0)
    }
}

/// Rank, skew form `{e_i, e_j}`, multipliers `δ_i` and `δ₀`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedData {
    deltas: Vec<i64>,
    delta0: i64,
    skew: Vec<Vec<Rational>>,
    /// `δ₀·{e_i, e_j}`.
    skew_scaled: Vec<Vec<i64>>,
}

impl FixedData {
    pub fn new(deltas: Vec<i64>, skew: Vec<Vec<Rational>>) -> Result<Self> {
        let r = deltas.len();
        if r == 0 {
            return Err(Error::InvalidFixedData("rank must be positive".into()));
        }
        if let Some(d) = deltas.iter().find(|&&d| d <= 0) {
            return Err(Error::InvalidFixedData(format!(
                "delta {d} is not positive"
            )));
        }
        if skew.len() != r || skew.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidFixedData(format!(
                "skew form must be {r}x{r}"
            )));
        }
        for i in 0..r {
            for j in 0..r {
                if skew[i][j] != -skew[j][i].clone() {
                    return Err(Error::InvalidFixedData(
                        "skew form is not skew-symmetric".into(),
                    ));
                }
                if !(&skew[i][j] * int(deltas[i])).is_integer() {
                    return Err(Error::InvalidFixedData(format!(
                        "delta_{} * {{e_{}, e_{}}} is not an integer",
                        i + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let delta0 = lcm_all(&deltas);
        let mut fd = FixedData {
            deltas,
            delta0,
            skew,
            skew_scaled: Vec::new(),
        };
        fd.rescale();
        Ok(fd)
    }

    /// Rank 2 with the convention `{e₂, e₁} = 1`.
    pub fn rank2(d1: i64, d2: i64) -> Result<Self> {
        Self::rank2_with_skew(d1, d2, Rational::from_integer(1.into()))
    }

    /// Rank 2 with `{e₂, e₁} = s`.
    pub fn rank2_with_skew(d1: i64, d2: i64, s: Rational) -> Result<Self> {
        let z = Rational::zero();
        Self::new(vec![d1, d2], vec![vec![z.clone(), -s.clone()], vec![s, z]])
    }

    /// Replace `δ₀` by a multiple of `lcm(δ_i)`.
    pub fn with_delta0(mut self, delta0: i64) -> Result<Self> {
        let l = lcm_all(&self.deltas);
        if delta0 <= 0 || delta0 % l != 0 {
            return Err(Error::InvalidFixedData(format!(
                "delta0 {delta0} is not a multiple of {l}"
            )));
        }
        self.delta0 = delta0;
        self.rescale();
        Ok(self)
    }

    fn rescale(&mut self) {
        let d0 = int(self.delta0);
        self.skew_scaled = self
            .skew
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        (x * &d0)
                            .to_integer()
                            .to_i64()
                            .expect("skew entry overflow")
                    })
                    .collect()
            })
            .collect();
    }

    pub fn rank(&self) -> usize {
        self.deltas.len()
    }

    pub fn deltas(&self) -> &[i64] {
        &self.deltas
    }

    pub fn delta(&self, i: usize) -> i64 {
        self.deltas[i]
    }

    pub fn delta0(&self) -> i64 {
        self.delta0
    }

    pub fn skew(&self) -> &[Vec<Rational>] {
        &self.skew
    }

    pub fn require_rank2(&self) -> Result<()> {
        if self.rank() != 2 {
            return Err(Error::RankUnsupported {
                expected: 2,
                got: self.rank(),
            });
        }
        Ok(())
    }

    /// `{n, n'}`.
    pub fn skew_pair(&self, n: &LatticeVec, n2: &LatticeVec) -> Rational {
        rat(self.skew_pair_scaled(n, n2), self.delta0)
    }

    /// `δ₀·{n, n'}`, always an integer.
    pub fn skew_pair_scaled(&self, n: &LatticeVec, n2: &LatticeVec) -> i64 {
        let mut acc = 0;
        for (i, a) in n.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let row = &self.skew_scaled[i];
            for (j, b) in n2.0.iter().enumerate() {
                acc += a * row[j] * b;
            }
        }
        acc
    }

    /// `⟨n, m⟩` for `m ∈ M°` in f-coordinates.
    pub fn pair_nm(&self, n: &LatticeVec, m: &[i64]) -> Rational {
        rat(self.pair_nm_scaled(n, m), self.delta0)
    }

    /// `δ₀·⟨n, m⟩`.
    pub fn pair_nm_scaled(&self, n: &LatticeVec, m: &[i64]) -> i64 {
        n.0.iter()
            .zip(m)
            .enumerate()
            .map(|(j, (a, b))| a * b * (self.delta0 / self.deltas[j]))
            .sum()
    }

    /// Canonical pairing `⟨n, m̃⟩ = ⟨n, m⟩` for `n ∈ N ⊂ Ñ`.
    pub fn pairing(&self, n: &LatticeVec, mt: &TildeVec) -> Rational {
        self.pair_nm(n, &mt.m)
    }

    /// `{m̃, m̃'} = {n, n'} + ⟨n', m⟩ − ⟨n, m'⟩`.
    pub fn skew_tilde(&self, a: &TildeVec, b: &TildeVec) -> Rational {
        rat(self.skew_tilde_scaled(a, b), self.delta0)
    }

    pub fn skew_tilde_scaled(&self, a: &TildeVec, b: &TildeVec) -> i64 {
        let na = LatticeVec::new(&a.n);
        let nb = LatticeVec::new(&b.n);
        self.skew_pair_scaled(&na, &nb) + self.pair_nm_scaled(&nb, &a.m)
            - self.pair_nm_scaled(&na, &b.m)
    }

    /// `p*(n) = {·, n}` in f-coordinates: entry `j` is `δ_j·{e_j, n}`.
    pub fn p_star(&self, n: &LatticeVec) -> TildeVec {
        let r = self.rank();
        let m = (0..r)
            .map(|j| {
                let v: Rational = (0..r)
                    .map(|k| &self.skew[j][k] * int(n.0[k]))
                    .sum::<Rational>()
                    * int(self.deltas[j]);
                v.to_integer().to_i64().expect("p_star overflow")
            })
            .collect();
        TildeVec { m, n: vec![0; r] }
    }

    /// `p̃*(n) = (p*(n), n)`.
    pub fn tilde_p_star(&self, n: &LatticeVec) -> TildeVec {
        let mut t = self.p_star(n);
        t.n = n.0.to_vec();
        t
    }

    /// `b_ij = {δ_i e_i, e_j}`.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        (&self.skew[i][j] * int(self.deltas[i]))
                            .to_integer()
                            .to_i64()
                            .expect("overflow")
                    })
                    .collect()
            })
            .collect()
    }

    /// `Λ` on the basis `(f_1..f_r, e_1..e_r)` of `M̃°`, i.e. minus the matrix of `{·,·}~`.
    pub fn lambda_matrix(&self) -> Vec<Vec<Rational>> {
        let basis = self.tilde_basis();
        basis
            .iter()
            .map(|a| basis.iter().map(|b| -self.skew_tilde(a, b)).collect())
            .collect()
    }

    fn tilde_basis(&self) -> Vec<TildeVec> {
        let r = self.rank();
        (0..r)
            .map(|i| TildeVec::f(r, i))
            .chain((0..r).map(|i| TildeVec::e(r, i)))
            .collect()
    }

    /// Checks `−Λ·B̃ = (D; O)` with `B̃ = (B; I)` and `D = diag(1/δ_i)`.
    pub fn compatibility_check(&self) -> bool {
        let r = self.rank();
        let lam = self.lambda_matrix();
        let b = self.exchange_matrix();
        let btilde = |k: usize, j: usize| -> Rational {
            if k < r {
                int(b[k][j])
            } else if k - r == j {
                int(1)
            } else {
                Rational::zero()
            }
        };
        for i in 0..2 * r {
            for j in 0..r {
                let v: Rational = (0..2 * r).map(|k| -&lam[i][k] * btilde(k, j)).sum();
                let expect = if i < r && i == j {
                    rat(1, self.deltas[i])
                } else {
                    Rational::zero()
                };
                if v != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Generators of the cone chosen for the monoid `P̃`: `(f_i, 0)` and `p̃*(e_i)`.
    pub fn principal_monoid_generators(&self) -> Vec<TildeVec> {
        let r = self.rank();
        (0..r)
            .map(|i| TildeVec::f(r, i))
            .chain((0..r).map(|i| self.tilde_p_star(&LatticeVec::unit(r, i))))
            .collect()
    }

    /// Primitive vector along `(δ₁n₂, −δ₂n₁)`: the outgoing ray `n^⊥` in the fourth quadrant.
    pub fn ray_direction(&self, n: &LatticeVec) -> Result<LatticeVec> {
        self.require_rank2()?;
        deg(n)?;
        let v = LatticeVec::new(&[self.deltas[0] * n.0[1], -self.deltas[1] * n.0[0]]);
        Ok(v.primitive_part().0)
    }

    /// `δ(n)`: the smallest `t > 0` with `t·n_i ∈ δ_i ℤ` for all `i`.
    ///
    /// `{t : t·n ∈ N°}` is the intersection of the cyclic groups `(δ_i/|n_i|)ℤ`,
    /// generated by the rational lcm of the `δ_i/|n_i|`.
    pub fn norm_factor(&self, n: &LatticeVec) -> Result<Rational> {
        deg(n)?;
        let (mut num, mut den) = (1i64, 0i64);
        for (i, &x) in n.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let g = self.deltas[i].gcd(&x);
            let (p, q) = (self.deltas[i] / g, x / g);
            num = num.lcm(&p);
            den = den.gcd(&q);
        }
        Ok(rat(num, den))
    }
}

/// `deg(n)`, requiring `n ∈ N⁺`.
pub fn deg(n: &LatticeVec) -> Result<i64> {
    if !n.is_positive() {
        return Err(Error::NotPositive(n.to_string()));
    }
    Ok(n.degree())
}

/// JSON configuration `{deltas: [...], skew: [[...]], delta0: ...}`.
#[derive(Deserialize, Debug)]
pub struct FixedDataConfig {
    pub deltas: Vec<i64>,
    #[serde(default)]
    pub skew: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub delta0: Option<i64>,
}

impl FixedDataConfig {
    pub fn build(&self) -> Result<FixedData> {
        let fd = match &self.skew {
            None if self.deltas.len() == 2 => FixedData::rank2(self.deltas[0], self.deltas[1])?,
            None => {
                return Err(Error::InvalidFixedData(
                    "a skew form is required for rank other than 2".into(),
                ))
            }
            Some(rows) => {
                let skew = rows
                    .iter()
                    .map(|row| row.iter().map(json_rational).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FixedData::new(self.deltas.clone(), skew)?
            }
        };
        match self.delta0 {
            Some(d0) => fd.with_delta0(d0),
            None => Ok(fd),
        }
    }
}

fn json_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(x) => x
            .as_i64()
            .map(int)
            .ok_or_else(|| Error::Parse(format!("skew entry {x} is not an integer"))),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad skew entry {other}"))),
    }
}
