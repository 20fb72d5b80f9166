//! Named relations between an anti-ordered word and an ordered word, each with
//! the fixed data it lives in and the cutoff at which it holds.

use crate::error::{Error, Result};
use crate::fixeddata::FixedData;

use super::reordering::{reordering_relation, RelationParams, ReorderingRelation};
use super::Word;

#[derive(Clone, Debug)]
pub struct KnownRelation {
    pub name: &'static str,
    pub fixed: FixedData,
    pub lhs: Word,
    pub rhs: Word,
    pub cutoff: u32,
}

/// `(name, δ₁, δ₂, cutoff, lhs, rhs)`; a cutoff of 0 means exact.
const WORDS: &[(&str, i64, i64, u32, &str, &str)] = &[
    ("pent0", 1, 1, 0, "[0,1]_{1,0} [1,0]_{1,0}", "[1,0]_{1,0} [1,1]_{1,0} [0,1]_{1,0}"),
    ("pent3", 1, 2, 0, "[0,1]_{1/2,0} [1,0]_{1,0}", "[1,0]_{1,0} [1,1]_{1/2,0} [1,2]_{1,0} [0,1]_{1/2,0}"),
    (
        "pent4",
        1,
        3,
        0,
        "[0,1]_{1/3,0} [1,0]_{1,0}",
        "[1,0]_{1,0} [1,1]_{1/3,0} [2,3]_{1,0} [1,2]_{1/3,0} [1,3]_{1,0} [0,1]_{1/3,0}",
    ),
    (
        "ordex1",
        2,
        2,
        3,
        "[0,1]_{1/2,0} [1,0]_{1/2,0}",
        "[1,0]_{1/2,0} [2,1]_{1/2,0} [1,1]_{1/2,-1/2} [1,1]_{1/2,1/2} [1,2]_{1/2,0} [0,1]_{1/2,0}",
    ),
    (
        "ordex2",
        2,
        2,
        7,
        "[0,1]_{1/2,0} [1,0]_{1/2,0}",
        "[1,0]_{1/2,0} [2,1]_{1/2,0} [3,2]_{1/2,0} [4,3]_{1/2,0} [1,1]_{1/2,-1/2} [1,1]_{1/2,1/2} \
         [2,2]_{1,-1} [2,2]_{1,1} [3,4]_{1/2,0} [2,3]_{1/2,0} [1,2]_{1/2,0} [0,1]_{1/2,0}",
    ),
    (
        "twisted_mod5",
        1,
        4,
        5,
        "[0,1]_{1/4,0} [1,0]_{1,0}",
        "[1,0]_{1,0} [1,1]_{1/4,0} [2,3]_{1/4,0} [1,2]_{1/2,-1/2} [1,2]_{1/2,0} [1,2]_{1/2,1/2} \
         [1,3]_{1/4,0} [1,4]_{1,0} [0,1]_{1/4,0}",
    ),
    (
        "twisted_mod11",
        1,
        4,
        11,
        "[0,1]_{1/4,0} [1,0]_{1,0}",
        "[1,0]_{1,0} [1,1]_{1/4,0} [3,4]_{1,0} [2,3]_{1/4,0} [3,5]_{1/4,0} [4,7]_{1/4,0} \
         [1,2]_{1/2,-1/2} [1,2]_{1/2,0} [1,2]_{1/2,1/2} [2,4]_{1,-1} [2,4]_{1,1} \
         [3,7]_{1/4,0} [2,5]_{1/4,0} [3,8]_{1,0} [1,3]_{1/4,0} [1,4]_{1,0} [0,1]_{1/4,0}",
    ),
    (
        "delta23_mod2",
        2,
        3,
        2,
        "[0,1]_{1/3,0} [1,0]_{1/2,0}",
        "[1,0]_{1/2,0} [1,1]_{1,-7/6} [1,1]_{1,-1/2} [1,1]_{1,-1/6} [1,1]_{1,1/6} [1,1]_{1,1/2} \
         [1,1]_{1,7/6} [0,1]_{1/3,0}",
    ),
    (
        "delta23_mod2_fused",
        2,
        3,
        2,
        "[0,1]_{1/3,0} [1,0]_{1/2,0}",
        "[1,0]_{1/2,0} [1,1]_{1/6,-1/3} [1,1]_{1/6,0}^{-1} [1,1]_{1/6,1/3} [0,1]_{1/3,0}",
    ),
    (
        "delta15_mod6",
        1,
        5,
        6,
        "[0,1]_{1/5,0} [1,0]_{1,0}",
        "[1,0]_{1,0} [1,1]_{1/5,0} [2,3]_{1/5,-2/5} [2,3]_{1/5,2/5} [1,2]_{1/5,-2/5} [1,2]_{1/5,2/5} \
         [2,4]_{2/5,-6/5} [2,4]_{2/5,-4/5} [2,4]_{2/5,4/5} [2,4]_{2/5,6/5} \
         [1,3]_{1/5,-2/5} [1,3]_{1/5,2/5} [1,4]_{1/5,0} [1,5]_{1,0} [0,1]_{1/5,0}",
    ),
    (
        "delta24_mod4",
        2,
        4,
        4,
        "[0,1]_{1/4,0} [1,0]_{1/2,0}",
        "[1,0]_{1/2,0} [2,1]_{1/4,0} [1,1]_{1/4,-1/2} [1,1]_{1/4,1/2} [2,2]_{1/2,-3/2} [2,2]_{1/2,-1} \
         [2,2]_{1/2,-1/2} [2,2]_{1/2,1/2} [2,2]_{1/2,1} [2,2]_{1/2,3/2} [1,2]_{1/2,-1} [1,2]_{1/2,-1/2} \
         [1,2]_{1/2,0} [1,2]_{1/2,0} [1,2]_{1/2,1/2} [1,2]_{1/2,1} [1,3]_{1/4,-1/2} [1,3]_{1/4,1/2} [0,1]_{1/4,0}",
    ),
];

pub fn names() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = WORDS.iter().map(|w| w.0).collect();
    out.extend(["a115", "a227"]);
    out
}

/// Looks up a named relation. `cutoff` overrides the default for exact
/// relations and for the two infinite ones; truncated displays keep theirs.
pub fn known_relation(name: &str, cutoff: Option<u32>) -> Result<KnownRelation> {
    if let Some(&(name, d1, d2, own, lhs, rhs)) = WORDS.iter().find(|w| w.0 == name) {
        let cutoff = if own == 0 { cutoff.unwrap_or(8) } else { own };
        return Ok(KnownRelation {
            name,
            fixed: FixedData::rank2(d1, d2)?,
            lhs: lhs.parse()?,
            rhs: rhs.parse()?,
            cutoff,
        });
    }
    let (rel, name, d, default) = match name {
        "a115" => (ReorderingRelation::A115, "a115", (2, 2), 15),
        "a227" => (ReorderingRelation::A227, "a227", (1, 4), 11),
        _ => return Err(Error::Unknown(format!("relation {name}"))),
    };
    let fixed = FixedData::rank2(d.0, d.1)?;
    let cutoff = cutoff.unwrap_or(default);
    let (lhs, rhs) = reordering_relation(rel, &RelationParams::standard(cutoff), &fixed)?;
    Ok(KnownRelation {
        name,
        fixed,
        lhs,
        rhs,
        cutoff,
    })
}
