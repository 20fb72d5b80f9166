use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde_json::{json, Value};

use qcsd_core::error::Error;
use qcsd_core::fixeddata::FixedData;
use qcsd_core::pentagon::catalog::{known_relation, names};
use qcsd_core::pentagon::{reordering_relation, RelationParams, ReorderingRelation};
use qcsd_core::pentagon::{
    rewrite_fission, rewrite_fusion, rewrite_pentagon, verify_relation, Direction, Word,
};
use qcsd_core::positivity::{
    b_k, bk_closed_form, is_positive, resummation_forms, Resummation, XPoly,
};
use qcsd_core::scalar::{fmt_rational, parse_rational, rat, Rational};
use qcsd_core::scatter::{classical_exponents, complete};

#[derive(Parser)]
#[command(
    name = "qcsd",
    version,
    about = "Rank-2 quantum cluster scattering diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete the diagram up to a degree and print its walls.
    Scatter {
        #[command(flatten)]
        fixed: FixedArgs,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check a named relation between an anti-ordered and an ordered word.
    Verify {
        /// Catalog name, `pentagon`, `fission`, `fusion`, `nn1`, `nn3`, `nn5`
        /// or one of the reordering relations (`lemA2a` ... `lemA6b`).
        name: String,
        #[arg(long)]
        degree: Option<u32>,
        /// Shift the last factor of the right-hand side by `1/δ₀`.
        #[arg(long)]
        perturb: bool,
        /// Number of pieces for fission and fusion.
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
        /// Shift of the second vector for the pentagon and reordering relations.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b2: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        /// Bound `L` of the finite reordering relations.
        #[arg(long, default_value_t = 0)]
        bound: u32,
        #[arg(long)]
        delta0: Option<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Canonical factorization of every wall and a positivity verdict.
    Positivity {
        #[command(flatten)]
        fixed: FixedArgs,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// `B_k = A_k / (1 + x² + x⁴)`, optionally compared with its closed form.
    Bk {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        closed_form: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare the three forms of a resummation identity.
    Resum {
        #[arg(long, value_enum)]
        which: Option<Which>,
        #[arg(long)]
        p: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classical exponents of the walls in the limit `q → 1`.
    Limit {
        #[command(flatten)]
        fixed: FixedArgs,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct FixedArgs {
    /// Comma-separated `δ_i`.
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present = "config",
        allow_hyphen_values = true
    )]
    delta: Vec<i64>,
    /// `{e₂, e₁}` for rank 2.
    #[arg(long, conflicts_with = "config", allow_hyphen_values = true)]
    skew: Option<String>,
    /// JSON file `{"deltas": [...], "skew": [[...]]}`; entries may be `"p/q"` strings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// A multiple of `lcm(δ_i)` to use as `δ₀`.
    #[arg(long)]
    delta0: Option<i64>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Deg3,
    #[value(name = "deg4_22")]
    Deg4_22,
    #[value(name = "deg4_13")]
    Deg4_13,
}

impl From<Which> for Resummation {
    fn from(w: Which) -> Self {
        match w {
            Which::Deg3 => Resummation::Deg3,
            Which::Deg4_22 => Resummation::Deg4_22,
            Which::Deg4_13 => Resummation::Deg4_13,
        }
    }
}

/// Exit 2 for bad input, 1 for engine failures.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidFixedData(_)
            | Error::RankUnsupported { .. }
            | Error::Unknown(_)
            | Error::Parse(_)
            | Error::BadResidue(_)
            | Error::NotApplicable(_)
            | Error::NonRepresentable { .. } => Failure::Usage(e.to_string()),
            e => Failure::Engine(e),
        }
    }
}

/// Rendered output and whether the command's check held.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let (out, result) = match cli.command {
        Command::Scatter { fixed, degree, out } => (out, scatter(&fixed, degree)),
        Command::Verify {
            name,
            degree,
            perturb,
            p,
            b,
            b2,
            sign,
            bound,
            delta0,
            out,
        } => {
            let opts = VerifyOpts {
                degree,
                perturb,
                p,
                b,
                b2,
                sign,
                bound,
                delta0,
            };
            (out, verify(&name, &opts))
        }
        Command::Positivity { fixed, degree, out } => (out, positivity(&fixed, degree)),
        Command::Bk {
            k,
            closed_form,
            out,
        } => (out, bk(k, closed_form)),
        Command::Resum { which, p, out } => (out, resum(which, p)),
        Command::Limit { fixed, degree, out } => (out, limit(&fixed, degree)),
    };
    match result.and_then(|r| emit(&r, &out).map(|_| r.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("engine error: {e}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(s) = std::env::var("QCSD_THREADS") else {
        return Ok(());
    };
    let n: usize = s
        .parse()
        .map_err(|_| format!("QCSD_THREADS must be a positive integer, got {s:?}"))?;
    if n == 0 {
        return Err("QCSD_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn emit(r: &Report, out: &OutArgs) -> Result<(), Failure> {
    let mut s = match out.format {
        Format::Text => r.text.clone(),
        Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable report"),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    match &out.out {
        Some(path) => fs::write(path, s)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn rational_entry(v: &Value) -> Result<Rational, Failure> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| rat(x, 1))
            .ok_or_else(|| Failure::Usage(format!("non-integer number {n}"))),
        Value::String(s) => Ok(parse_rational(s)?),
        _ => Err(Failure::Usage(format!("bad skew entry {v}"))),
    }
}

fn fixed_data(a: &FixedArgs) -> Result<FixedData, Failure> {
    let fd = if let Some(path) = &a.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let v: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad config: {e}")))?;
        let deltas: Vec<i64> = v["deltas"]
            .as_array()
            .ok_or_else(|| Failure::Usage("config needs a deltas array".into()))?
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| Failure::Usage(format!("bad delta {x}")))
            })
            .collect::<Result<_, _>>()?;
        match v.get("skew") {
            Some(Value::Array(rows)) => {
                let skew = rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .ok_or_else(|| Failure::Usage("skew rows must be arrays".into()))?
                            .iter()
                            .map(rational_entry)
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                FixedData::new(deltas, skew)?
            }
            None => rank2_from(&deltas, None)?,
            Some(other) => return Err(Failure::Usage(format!("bad skew {other}"))),
        }
    } else {
        rank2_from(&a.delta, a.skew.as_deref())?
    };
    Ok(match a.delta0 {
        Some(d0) => fd.with_delta0(d0)?,
        None => fd,
    })
}

fn rank2_from(deltas: &[i64], skew: Option<&str>) -> Result<FixedData, Failure> {
    if deltas.len() != 2 {
        return Err(Failure::Usage(format!(
            "expected two deltas, got {}",
            deltas.len()
        )));
    }
    Ok(match skew {
        Some(s) => FixedData::rank2_with_skew(deltas[0], deltas[1], parse_rational(s)?)?,
        None => FixedData::rank2(deltas[0], deltas[1])?,
    })
}

fn check_degree(degree: u32) -> Result<(), Failure> {
    if degree == 0 {
        return Err(Failure::Usage("degree must be at least 1".into()));
    }
    Ok(())
}

fn scatter(a: &FixedArgs, degree: u32) -> Result<Report, Failure> {
    check_degree(degree)?;
    let d = complete(&fixed_data(a)?, degree)?;
    Ok(Report {
        text: d.to_text()?,
        json: d.to_json()?,
        ok: true,
    })
}

struct VerifyOpts {
    degree: Option<u32>,
    perturb: bool,
    p: u32,
    b: String,
    b2: String,
    sign: i64,
    bound: u32,
    delta0: Option<i64>,
}

/// One relation instance: name, both sides, fixed data and cutoff.
type Instance = (String, Word, Word, FixedData, u32);

fn verify(name: &str, o: &VerifyOpts) -> Result<Report, Failure> {
    if let Some(d) = o.degree {
        check_degree(d)?;
    }
    let b = parse_rational(&o.b)?;
    let b2 = parse_rational(&o.b2)?;
    // Smallest δ₀ that represents both shifts.
    let shifts = i64::try_from(b.denom().lcm(b2.denom())).unwrap_or(1);
    let with_d0 = |fd: FixedData, default: i64| -> Result<FixedData, Failure> {
        Ok(fd.with_delta0(o.delta0.unwrap_or(default))?)
    };
    let mut instances: Vec<Instance> = Vec::new();
    match name {
        "pentagon" => {
            let fd = with_d0(FixedData::rank2(1, 1)?, shifts)?;
            let lhs = Word::new(vec![
                factor(&[0, 1], rat(1, 1), b2),
                factor(&[1, 0], rat(1, 1), b),
            ]);
            let rhs = rewrite_pentagon(&lhs, 0, Direction::Forward, &fd)?;
            instances.push((name.into(), lhs, rhs, fd, o.degree.unwrap_or(8)));
        }
        "fission" | "fusion" => {
            let p = i64::from(o.p.max(1));
            let fd = with_d0(FixedData::rank2(1, 1)?, 2 * p * shifts)?;
            let single = Word::new(vec![factor(&[1, 0], rat(1, p), b)]);
            let (lhs, rhs) = if name == "fission" {
                let r = rewrite_fission(&single, 0, o.p, o.sign, &fd)?;
                (single, r)
            } else {
                let pieces = rewrite_fission(&single, 0, o.p, o.sign, &fd)?;
                let r = rewrite_fusion(&pieces, 0, o.p, o.sign, &fd)?;
                (pieces, r)
            };
            instances.push((name.into(), lhs, rhs, fd, o.degree.unwrap_or(8)));
        }
        _ => {
            let relations: Vec<ReorderingRelation> = match name {
                "nn1" => vec![ReorderingRelation::Nn1a, ReorderingRelation::Nn1b],
                "nn3" => vec![ReorderingRelation::ThmNn3],
                "nn5" => vec![ReorderingRelation::ThmNn5],
                _ if names().contains(&name) => Vec::new(),
                _ => vec![name.parse::<ReorderingRelation>()?],
            };
            if relations.is_empty() {
                let k = known_relation(name, o.degree)?;
                let fd = match o.delta0 {
                    Some(d0) => k.fixed.clone().with_delta0(d0)?,
                    None => k.fixed.clone(),
                };
                let cutoff = o.degree.unwrap_or(k.cutoff);
                instances.push((name.into(), k.lhs, k.rhs, fd, cutoff));
            } else {
                let fd = with_d0(FixedData::rank2(1, 1)?, 4 * shifts)?;
                let cutoff = o.degree.unwrap_or(10);
                for rel in relations {
                    let mut params = RelationParams::standard(cutoff);
                    params.b = b.clone();
                    params.b2 = b2.clone();
                    params.sign = o.sign;
                    params.bound = o.bound;
                    let (lhs, rhs) = reordering_relation(rel, &params, &fd)?;
                    instances.push((rel.name().into(), lhs, rhs, fd.clone(), cutoff));
                }
            }
        }
    }

    let mut text = String::new();
    let mut results = Vec::new();
    let mut ok = true;
    for (rel, lhs, mut rhs, fd, cutoff) in instances {
        if o.perturb {
            rhs = perturbed(&rhs, &fd);
        }
        let holds = verify_relation(&lhs, &rhs, &fd, cutoff)?;
        ok &= holds;
        let verdict = if holds { "holds" } else { "FAILS" };
        text.push_str(&format!(
            "{rel}: {verdict} modulo degree > {cutoff}\n  lhs: {lhs}\n  rhs: {rhs}\n"
        ));
        results.push(json!({
            "relation": rel,
            "deltas": fd.deltas(),
            "delta0": fd.delta0(),
            "degree": cutoff,
            "holds": holds,
            "lhs": lhs.to_json(),
            "rhs": rhs.to_json(),
        }));
    }
    Ok(Report {
        text,
        json: Value::Array(results),
        ok,
    })
}

fn factor(n: &[i64], a: Rational, b: Rational) -> qcsd_core::liegroup::DilogElem {
    qcsd_core::liegroup::DilogElem::new(qcsd_core::fixeddata::LatticeVec::new(n), a, b)
}

/// The word with the shift of its last factor raised by `1/δ₀`.
fn perturbed(w: &Word, fd: &FixedData) -> Word {
    let mut fs = w.factors().to_vec();
    if let Some(f) = fs.last_mut() {
        f.b += rat(1, fd.delta0());
    }
    Word::new(fs)
}

fn positivity(a: &FixedArgs, degree: u32) -> Result<Report, Failure> {
    check_degree(degree)?;
    let d = complete(&fixed_data(a)?, degree)?;
    let r = is_positive(&d);
    let mut text = format!(
        "deltas {:?}, degree {}: {}\n",
        r.deltas,
        r.degree,
        if r.positive {
            "positive"
        } else {
            "not positive"
        }
    );
    for v in &r.violations {
        text.push_str(&format!(
            "  negative exponent {} on {} with shift {}\n",
            v.c,
            v.n,
            fmt_rational(&v.b)
        ));
    }
    for n in &r.nonintegral {
        text.push_str(&format!(
            "  level {} of {} does not factor\n",
            n.level, n.n0
        ));
    }
    let json =
        serde_json::to_value(&r).map_err(|e| Failure::Engine(Error::Parse(e.to_string())))?;
    Ok(Report {
        text,
        json,
        ok: true,
    })
}

fn poly_json(p: &XPoly) -> Value {
    Value::Array(p.iter().map(|(e, c)| json!([e, c])).collect())
}

fn poly_text(p: &XPoly) -> String {
    let terms: Vec<String> = p.iter().map(|(e, c)| format!("{c}x^{e}")).collect();
    terms.join(" + ")
}

fn bk(k: i64, closed_form: bool) -> Result<Report, Failure> {
    let b = b_k(k)?;
    let min = b.values().copied().min().unwrap_or(0);
    let mut ok = min >= 0;
    let mut text = format!("B_{k} = {}\nminimum coefficient {min}\n", poly_text(&b));
    let mut json = json!({ "k": k, "coefficients": poly_json(&b), "min_coefficient": min });
    if closed_form {
        let c = bk_closed_form(k)?;
        let equal = c == b;
        ok &= equal;
        text.push_str(if equal {
            "closed form: equal\n"
        } else {
            "closed form: DIFFERS\n"
        });
        if !equal {
            text.push_str(&format!("closed form gives {}\n", poly_text(&c)));
        }
        json["closed_form_equal"] = json!(equal);
        json["closed_form"] = poly_json(&c);
    }
    Ok(Report { text, json, ok })
}

fn resum(which: Option<Which>, p: i64) -> Result<Report, Failure> {
    let all: Vec<Resummation> = match which {
        Some(w) => vec![w.into()],
        None => Resummation::ALL.to_vec(),
    };
    let mut text = String::new();
    let mut out = Vec::new();
    let mut ok = true;
    for r in all {
        let f = resummation_forms(p, r)?;
        let agree = f.agree();
        ok &= agree;
        text.push_str(&format!(
            "{r} at p = {p}: {}\n",
            if agree {
                "all forms agree"
            } else {
                "forms DIFFER"
            }
        ));
        out.push(json!({
            "which": r.to_string(),
            "p": p,
            "agree": agree,
            "sum": poly_json(&f.sum),
            "product": poly_json(&f.product),
            "branch": poly_json(&f.branch),
        }));
    }
    Ok(Report {
        text,
        json: Value::Array(out),
        ok,
    })
}

fn limit(a: &FixedArgs, degree: u32) -> Result<Report, Failure> {
    check_degree(degree)?;
    let d = complete(&fixed_data(a)?, degree)?;
    let mut text = String::new();
    let mut walls = Vec::new();
    let mut ok = true;
    for w in &d.walls {
        match classical_exponents(w) {
            Ok(es) => {
                for (n, c) in &es {
                    text.push_str(&format!("{n} {}\n", fmt_rational(c)));
                }
                let es: Vec<Value> = es
                    .iter()
                    .map(|(n, c)| json!({ "n": n, "exponent": fmt_rational(c) }))
                    .collect();
                walls.push(json!({ "n0": w.n0, "exponents": es }));
            }
            Err(e @ Error::Pole(_)) => {
                ok = false;
                text.push_str(&format!("{} pole: {e}\n", w.n0));
                walls.push(json!({ "n0": w.n0, "error": e.to_string() }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let json = json!({ "deltas": d.fixed.deltas(), "degree": d.cutoff, "walls": walls });
    Ok(Report { text, json, ok })
}
