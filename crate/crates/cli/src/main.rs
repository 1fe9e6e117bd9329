mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use freeprod_core::geodesic::{
    exponential_lower_bound, polynomial_lower_bound, MetricParams, MAX_EXPONENTIAL_STEPS,
};
use freeprod_core::group_ring::{certify_u_minus_one_not_unit, CoefficientRing, LaurentPoly};
use freeprod_core::growth::{
    enumerate_elements, family_letters, gm_family, growth_rate_estimate, growth_table,
    necklace_count, verify_dihedral_relation, verify_free_subgroup, EnumerationConfig, GrowthError,
    GrowthTable, DEFAULT_DEPTH_CAP,
};
use freeprod_core::schema::{parse_group_spec, DescriptorFile};
use freeprod_core::{FreeProduct, NormalForm, Side};

use report::{envelope, parse_rational, rational_value, sig12, sig12_text, CliError, Output};

const MEMORY_ENV: &str = "FREEPROD_MAX_MEMORY_MB";
const MAX_NECKLACE_LENGTH: u32 = 4096;
const MAX_CURVE_POINTS: u32 = 100_000;
const MAX_RANDOM_POLYS: u64 = 10_000_000;

#[derive(Parser)]
#[command(name = "freeprod", version)]
#[command(about = "Normal forms, conjugacy classes and growth counts in free products G1 * G2")]
struct Cli {
    /// Add wall-clock timing to JSON reports (makes output non-reproducible)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct GroupArgs {
    /// Group-spec JSON file describing G1 * G2
    #[arg(long, conflicts_with = "cyclic")]
    spec: Option<PathBuf>,

    /// Shortcut for Z_m * Z_n with generators a, b (e.g. `2,3`; default)
    #[arg(long, value_delimiter = ',')]
    cyclic: Option<Vec<u32>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form, cyclic reduction and word length of a word
    Reduce {
        #[command(flatten)]
        group: GroupArgs,
        /// Whitespace-separated generators with optional ^k, e.g. "b a b^-1"
        word: String,
    },
    /// Decide whether two words are conjugate
    ConjugateTest {
        #[command(flatten)]
        group: GroupArgs,
        word1: String,
        word2: String,
    },
    /// Ball sizes G(k) and conjugacy class counts F(k)
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        max_k: u32,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        /// Worker threads for enumeration (results do not depend on it)
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Binary necklace counts against 2^r / r
    Necklaces {
        /// Largest length r
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// The family a b_{m1} a b_{m2} ... of pairwise non-conjugate words
    GmFamily {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        r: u32,
        /// Replace b2 by this element of the second factor (a one-letter word)
        #[arg(long)]
        b2: Option<String>,
        /// List every representative
        #[arg(long)]
        words: bool,
    },
    /// Check that x = a b1, y = a b2 generate a free subgroup up to a depth
    FreeSubgroupCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Check a t a^-1 = t^-1 in Z2 * Z2 with t = a b
    DihedralCheck,
    /// Certify that u - 1 is not a unit in Z[u, u^-1] or Z_N[u, u^-1]
    LaurentCheck {
        /// Coefficient ring Z_N; omit for the integers
        #[arg(long)]
        modulus: Option<u64>,
        /// Term `exponent:coefficient`, repeatable
        #[arg(long = "term", allow_hyphen_values = true)]
        terms: Vec<String>,
        /// Instead of --term, check this many random polynomials
        #[arg(long, conflicts_with = "terms")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Growth class of closed geodesics from a manifold descriptor file
    Classify { descriptor: PathBuf },
    /// Lower bounds for N(t): exponential (--L --L1) or polynomial (--k --r --lambda)
    Bound {
        #[arg(long = "L", requires = "l1", conflicts_with_all = ["k", "cover_order", "lambda"])]
        l: Option<String>,
        #[arg(long = "L1", requires = "l")]
        l1: Option<String>,
        #[arg(long, requires_all = ["cover_order", "lambda"])]
        k: Option<u32>,
        /// Degree of the cover
        #[arg(long = "r", id = "cover_order")]
        cover_order: Option<u64>,
        #[arg(long)]
        lambda: Option<String>,
        /// Length t (p/q or decimal)
        #[arg(long)]
        t: String,
        /// Sample the curve at this many evenly spaced points up to t
        #[arg(long)]
        points: Option<u32>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
}

fn load_group(args: &GroupArgs) -> Result<(FreeProduct, Value), CliError> {
    if let Some(path) = &args.spec {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        let fp = parse_group_spec(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        return Ok((fp, json!({ "spec": path.display().to_string() })));
    }
    let (m, n) = match args.cyclic.as_deref() {
        None => (2, 3),
        Some([m, n]) => (*m, *n),
        Some(_) => {
            return Err(CliError::Invalid(
                "--cyclic takes two orders, e.g. 2,3".into(),
            ))
        }
    };
    let fp = FreeProduct::cyclic_pair(m, n).map_err(CliError::invalid)?;
    Ok((fp, json!({ "cyclic": [m, n] })))
}

fn parse(fp: &FreeProduct, word: &str) -> Result<NormalForm, CliError> {
    fp.parse_word(word)
        .map_err(|e| CliError::Invalid(format!("word `{word}`: {e}")))
}

fn memory_budget() -> Result<Option<usize>, CliError> {
    match std::env::var(MEMORY_ENV) {
        Ok(v) => {
            let mb: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Invalid(format!("{MEMORY_ENV}={v}: expected megabytes")))?;
            Ok(Some(mb.saturating_mul(1 << 20)))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Invalid(format!("{MEMORY_ENV}: {e}"))),
    }
}

fn reduce(group: &GroupArgs, word: &str) -> Result<Output, CliError> {
    let (fp, gin) = load_group(group)?;
    let g = parse(&fp, word)?;
    let c = fp.cyclically_reduce(&g);
    Ok(Output::Json {
        inputs: json!({ "group": gin, "word": word }),
        outputs: json!({
            "normal_form": fp.render(&g),
            "syllable_length": g.len(),
            "word_length": fp.word_length(&g),
            "cyclically_reduced": fp.render(&c.result),
            "reduced_syllable_length": c.result.len(),
            "conjugator": fp.render(&c.conjugator),
            "weakly_reduced": fp.is_weakly_reduced(&g),
            "class_key": fp.render(&fp.canonical_class_key(&g).into_normal_form()),
        }),
        rules: vec![],
    })
}

fn conjugate_test(group: &GroupArgs, w1: &str, w2: &str) -> Result<Output, CliError> {
    let (fp, gin) = load_group(group)?;
    let (g, h) = (parse(&fp, w1)?, parse(&fp, w2)?);
    let key = |x: &NormalForm| fp.render(&fp.canonical_class_key(x).into_normal_form());
    Ok(Output::Json {
        inputs: json!({ "group": gin, "word1": w1, "word2": w2 }),
        outputs: json!({
            "conjugate": fp.are_conjugate(&g, &h),
            "normal_form1": fp.render(&g),
            "normal_form2": fp.render(&h),
            "class_key1": key(&g),
            "class_key2": key(&h),
        }),
        rules: vec![],
    })
}

/// `F(3r) ≥ 2^r / r` rows for every `3r` present in the table.
fn class_bound_rows(table: &GrowthTable) -> Vec<Value> {
    table
        .rows
        .iter()
        .filter(|row| row.k > 0 && row.k % 3 == 0)
        .map(|row| {
            let r = row.k / 3;
            let bound = BigRational::new(BigInt::one() << r as usize, BigInt::from(r));
            json!({
                "r": r,
                "k": row.k,
                "F": row.classes,
                "bound": rational_value(&bound),
                "holds": BigRational::from_integer(row.classes.into()) >= bound,
            })
        })
        .collect()
}

fn growth_csv(table: &GrowthTable) -> String {
    let mut out = String::from("k,G,F,F_bound\n");
    for row in &table.rows {
        let bound = if row.k > 0 && row.k % 3 == 0 {
            let r = row.k / 3;
            BigRational::new(BigInt::one() << r as usize, BigInt::from(r)).to_string()
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{},{},{},{bound}\n",
            row.k, row.elements, row.classes
        ));
    }
    out
}

fn growth_outputs(table: &GrowthTable, partial: bool) -> Value {
    let rate = growth_rate_estimate(table).ok().map(|r| {
        json!({
            "lambda_elements": sig12(r.lambda_elements),
            "lambda_classes": sig12(r.lambda_classes),
            "residual_elements": sig12(r.residual_elements),
            "residual_classes": sig12(r.residual_classes),
        })
    });
    json!({
        "rows": table.rows,
        "consistent": table.is_consistent(),
        "class_bound": class_bound_rows(table),
        "rate": rate,
        "partial": partial,
    })
}

fn growth(group: &GroupArgs, max_k: u32, emit: Emit, threads: usize) -> Result<Output, CliError> {
    let (fp, gin) = load_group(group)?;
    if threads == 0 {
        return Err(CliError::Invalid("--threads must be at least 1".into()));
    }
    let config = EnumerationConfig {
        max_k,
        depth_cap: DEFAULT_DEPTH_CAP,
        memory_budget: memory_budget()?,
        threads,
    };
    // Thread count is left out of the echo so reports match across --threads.
    let inputs = json!({ "group": gin, "max_k": max_k });
    match enumerate_elements(&fp, &config) {
        Ok(ball) => {
            let table = growth_table(&fp, &ball);
            Ok(match emit {
                Emit::Csv => Output::Csv(growth_csv(&table)),
                Emit::Json => Output::Json {
                    inputs,
                    outputs: growth_outputs(&table, false),
                    rules: vec![],
                },
            })
        }
        Err(GrowthError::MemoryBudget {
            budget_bytes,
            reached_depth,
            partial,
        }) => Err(CliError::Budget {
            message: format!(
                "memory budget of {budget_bytes} bytes exceeded; table complete up to k = {reached_depth}"
            ),
            partial: Some(Box::new(match emit {
                Emit::Csv => Output::Csv(growth_csv(&partial)),
                Emit::Json => Output::Json {
                    inputs,
                    outputs: growth_outputs(&partial, true),
                    rules: vec![],
                },
            })),
        }),
        Err(e) => Err(CliError::invalid(e)),
    }
}

fn necklaces(r_max: u32, emit: Emit) -> Result<Output, CliError> {
    if r_max == 0 || r_max > MAX_NECKLACE_LENGTH {
        return Err(CliError::Invalid(format!(
            "--r must be in 1..={MAX_NECKLACE_LENGTH}"
        )));
    }
    let mut rows = Vec::new();
    let mut csv = String::from("r,necklaces,two_pow_r_over_r,holds\n");
    for r in 1..=r_max {
        let count = necklace_count(r).map_err(CliError::invalid)?;
        let bound = BigRational::new(BigInt::one() << r as usize, BigInt::from(r));
        let holds = &count * r >= BigUint::one() << r as usize;
        csv.push_str(&format!("{r},{count},{bound},{holds}\n"));
        rows.push(json!({
            "r": r,
            "necklaces": count.to_string(),
            "bound": rational_value(&bound),
            "holds": holds,
        }));
    }
    Ok(match emit {
        Emit::Csv => Output::Csv(csv),
        Emit::Json => Output::Json {
            inputs: json!({ "r": r_max }),
            outputs: json!({ "rows": rows }),
            rules: vec![],
        },
    })
}

fn gm_family_cmd(
    group: &GroupArgs,
    r: u32,
    b2: Option<&str>,
    list: bool,
) -> Result<Output, CliError> {
    let (fp, gin) = load_group(group)?;
    let b2_value = match b2 {
        None => None,
        Some(text) => {
            let g = parse(&fp, text)?;
            match g.letters() {
                [l] if l.factor == Side::Second => Some(l.value.clone()),
                _ => {
                    return Err(CliError::Invalid(format!(
                        "--b2 `{text}` must be a single nontrivial element of the second factor"
                    )))
                }
            }
        }
    };
    let fam = gm_family(&fp, r, b2_value.as_ref()).map_err(CliError::invalid)?;
    let expected = necklace_count(r).map_err(CliError::invalid)?;
    let words: Vec<&NormalForm> = fam.representatives.iter().map(|(_, g)| g).collect();
    let max_wl = words.iter().map(|g| fp.word_length(g)).max().unwrap_or(0);
    let all_reduced = words.iter().all(|g| fp.is_cyclically_reduced(g));
    let mut outputs = json!({
        "a": fp.render_letter(&fam.letters.a),
        "b1": fp.render_letter(&fam.letters.b1),
        "b2": fp.render_letter(&fam.letters.b2),
        "b2_rule": fam.letters.rule,
        "words": words.len(),
        "necklaces": expected.to_string(),
        "distinct_classes": fam.distinct_classes,
        "all_cyclically_reduced": all_reduced,
        "max_word_length": max_wl,
        "word_length_bound": 3 * u64::from(r),
    });
    if list {
        outputs["representatives"] = fam
            .representatives
            .iter()
            .map(|(m, g)| {
                json!({
                    "m": m,
                    "word": fp.render(g),
                    "word_length": fp.word_length(g),
                })
            })
            .collect();
    }
    Ok(Output::Json {
        inputs: json!({ "group": gin, "r": r, "b2": b2 }),
        outputs,
        rules: vec![],
    })
}

fn free_subgroup(group: &GroupArgs, depth: u32) -> Result<Output, CliError> {
    let (fp, gin) = load_group(group)?;
    let letters = family_letters(&fp, None).map_err(CliError::invalid)?;
    let check = verify_free_subgroup(&fp, depth).map_err(CliError::invalid)?;
    let pair = |b| {
        fp.render(
            &fp.normal_form(vec![letters.a.clone(), b])
                .expect("alternating"),
        )
    };
    Ok(Output::Json {
        inputs: json!({ "group": gin, "depth": depth }),
        outputs: json!({
            "x": pair(letters.b1.clone()),
            "y": pair(letters.b2.clone()),
            "check": check,
        }),
        rules: vec![],
    })
}

fn dihedral() -> Output {
    let check = verify_dihedral_relation();
    Output::Json {
        inputs: json!({ "group": { "cyclic": [2, 2] }, "t": "a b" }),
        outputs: json!({ "holds": check.holds(), "check": check }),
        rules: vec![],
    }
}

fn parse_term(text: &str) -> Result<(i64, BigInt), CliError> {
    let bad = || CliError::Invalid(format!("--term `{text}`: expected exponent:coefficient"));
    let (e, c) = text.split_once(':').ok_or_else(bad)?;
    let e: i64 = e.trim().parse().map_err(|_| bad())?;
    let c: BigInt = c.trim().parse().map_err(|_| bad())?;
    Ok((e, c))
}

fn poly_terms(p: &LaurentPoly) -> Value {
    p.terms().map(|(e, c)| json!([e, c.to_string()])).collect()
}

fn laurent(
    modulus: Option<u64>,
    terms: &[String],
    random: Option<u64>,
    seed: u64,
) -> Result<Output, CliError> {
    let ring = match modulus {
        None => CoefficientRing::Integers,
        Some(n) => CoefficientRing::Modulo(n),
    };
    LaurentPoly::zero(ring).map_err(CliError::invalid)?;
    if let Some(count) = random {
        if count > MAX_RANDOM_POLYS {
            return Err(CliError::Invalid(format!(
                "--random is capped at {MAX_RANDOM_POLYS}"
            )));
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let mut failures = 0u64;
        let mut checked = 0u64;
        while checked < count {
            let n = rng.random_range(1..=8);
            let q = LaurentPoly::from_terms(
                ring,
                (0..n).map(|_| {
                    (
                        rng.random_range(-32..=32i64),
                        rng.random_range(-1000..=1000i64),
                    )
                }),
            )
            .map_err(CliError::invalid)?;
            if q.is_zero() {
                continue;
            }
            checked += 1;
            match certify_u_minus_one_not_unit(&q) {
                Ok(c) if !c.product.is_one() => {}
                _ => failures += 1,
            }
        }
        return Ok(Output::Json {
            inputs: json!({ "ring": ring.to_string(), "random": count, "seed": seed }),
            outputs: json!({ "checked": checked, "failures": failures, "non_unit": failures == 0 }),
            rules: vec![],
        });
    }
    if terms.is_empty() {
        return Err(CliError::Invalid(
            "give --term e:c at least once, or --random N".into(),
        ));
    }
    let parsed = terms
        .iter()
        .map(|t| parse_term(t))
        .collect::<Result<Vec<_>, _>>()?;
    let q = LaurentPoly::from_terms(ring, parsed).map_err(CliError::invalid)?;
    let cert = certify_u_minus_one_not_unit(&q).map_err(CliError::invalid)?;
    Ok(Output::Json {
        inputs: json!({ "ring": ring.to_string(), "terms": terms }),
        outputs: json!({
            "q": q.to_string(),
            "q_terms": poly_terms(&q),
            "product": cert.product.to_string(),
            "product_terms": poly_terms(&cert.product),
            "lowest": [cert.lowest.0, cert.lowest.1.to_string()],
            "highest": [cert.highest.0, cert.highest.1.to_string()],
            "product_is_one": cert.product.is_one(),
        }),
        rules: vec![],
    })
}

fn classify(path: &PathBuf) -> Result<Output, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let d = DescriptorFile::from_json(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let c = d.classify().map_err(CliError::invalid)?;
    Ok(Output::Json {
        inputs: json!({ "descriptor": path.display().to_string() }),
        outputs: json!({
            "growth": c.class,
            "rule": c.rule,
            "trace": c.trace,
        }),
        rules: c.trace.iter().map(|r| r.id.to_string()).collect(),
    })
}

enum BoundKind {
    Exponential(MetricParams),
    Polynomial {
        k: u32,
        cover: u64,
        lambda: BigRational,
    },
}

impl BoundKind {
    fn eval(&self, t: &BigRational) -> Result<(BigRational, Value), CliError> {
        match self {
            BoundKind::Exponential(p) => {
                let b = exponential_lower_bound(p, t).map_err(CliError::invalid)?;
                Ok((b.value, json!({ "r": b.r, "below_range": b.below_range })))
            }
            BoundKind::Polynomial { k, cover, lambda } => {
                let v = polynomial_lower_bound(*k, *cover, lambda, t).map_err(CliError::invalid)?;
                Ok((v, json!({})))
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn bound(
    l: Option<&str>,
    l1: Option<&str>,
    k: Option<u32>,
    cover: Option<u64>,
    lambda: Option<&str>,
    t: &str,
    points: Option<u32>,
    emit: Emit,
) -> Result<Output, CliError> {
    let num = |s: &str, name: &str| {
        parse_rational(s).map_err(|e| CliError::Invalid(format!("--{name}: {e}")))
    };
    let t_val = num(t, "t")?;
    let (kind, inputs, rule) = match (l, l1, k, cover, lambda) {
        (Some(l), Some(l1), None, None, None) => {
            let p = MetricParams::new(num(l, "L")?, num(l1, "L1")?).map_err(CliError::invalid)?;
            (
                BoundKind::Exponential(p),
                json!({ "L": l, "L1": l1, "t": t }),
                "exponential: N(t) >= 2^r L1 / (3 r^2 L), r = floor(t / 3L)",
            )
        }
        (None, None, Some(k), Some(cover), Some(lambda)) => (
            BoundKind::Polynomial {
                k,
                cover,
                lambda: num(lambda, "lambda")?,
            },
            json!({ "k": k, "r": cover, "lambda": lambda, "t": t }),
            "polynomial: N(t) >= (lambda / r) t^k",
        ),
        _ => {
            return Err(CliError::Invalid(
                "give either --L --L1 --t or --k --r --lambda --t".into(),
            ))
        }
    };
    let (value, extra) = kind.eval(&t_val)?;
    let mut outputs = json!({ "bound": rational_value(&value), "detail": extra });
    let points = match (points, emit) {
        (Some(p), _) => Some(p),
        (None, Emit::Csv) => Some(20),
        (None, Emit::Json) => None,
    };
    if let Some(p) = points {
        if p == 0 || p > MAX_CURVE_POINTS {
            return Err(CliError::Invalid(format!(
                "--points must be in 1..={MAX_CURVE_POINTS}"
            )));
        }
        if let BoundKind::Exponential(params) = &kind {
            // Every sample has r ≤ r(t); refuse curves whose last point is
            // already out of range before evaluating anything.
            let steps = (&t_val / (params.l() * BigRational::from_integer(3.into()))).floor();
            if steps > BigRational::from_integer(MAX_EXPONENTIAL_STEPS.into()) {
                return Err(CliError::Invalid("t / 3L too large for a curve".into()));
            }
        }
        let mut curve = Vec::new();
        let mut csv = String::from("t,bound\n");
        for i in 1..=p {
            let ti = &t_val * BigRational::new(BigInt::from(i), BigInt::from(p));
            let (v, _) = kind.eval(&ti)?;
            let (tf, vf) = (
                num_traits::ToPrimitive::to_f64(&ti).unwrap_or(f64::NAN),
                num_traits::ToPrimitive::to_f64(&v).unwrap_or(f64::INFINITY),
            );
            csv.push_str(&format!("{},{}\n", sig12_text(tf), sig12_text(vf)));
            curve.push(json!({ "t": ti.to_string(), "bound": rational_value(&v) }));
        }
        if emit == Emit::Csv {
            return Ok(Output::Csv(csv));
        }
        outputs["curve"] = Value::Array(curve);
    }
    Ok(Output::Json {
        inputs,
        outputs,
        rules: vec![rule.to_string()],
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Reduce { .. } => "reduce",
        Command::ConjugateTest { .. } => "conjugate-test",
        Command::Growth { .. } => "growth",
        Command::Necklaces { .. } => "necklaces",
        Command::GmFamily { .. } => "gm-family",
        Command::FreeSubgroupCheck { .. } => "free-subgroup-check",
        Command::DihedralCheck => "dihedral-check",
        Command::LaurentCheck { .. } => "laurent-check",
        Command::Classify { .. } => "classify",
        Command::Bound { .. } => "bound",
    }
}

fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Reduce { group, word } => reduce(group, word),
        Command::ConjugateTest {
            group,
            word1,
            word2,
        } => conjugate_test(group, word1, word2),
        Command::Growth {
            group,
            max_k,
            emit,
            threads,
        } => growth(group, *max_k, *emit, *threads),
        Command::Necklaces { r, emit } => necklaces(*r, *emit),
        Command::GmFamily {
            group,
            r,
            b2,
            words,
        } => gm_family_cmd(group, *r, b2.as_deref(), *words),
        Command::FreeSubgroupCheck { group, depth } => free_subgroup(group, *depth),
        Command::DihedralCheck => Ok(dihedral()),
        Command::LaurentCheck {
            modulus,
            terms,
            random,
            seed,
        } => laurent(*modulus, terms, *random, *seed),
        Command::Classify { descriptor } => classify(descriptor),
        Command::Bound {
            l,
            l1,
            k,
            cover_order,
            lambda,
            t,
            points,
            emit,
        } => bound(
            l.as_deref(),
            l1.as_deref(),
            *k,
            *cover_order,
            lambda.as_deref(),
            t,
            *points,
            *emit,
        ),
    }
}

fn print(name: &str, output: Output, elapsed_ms: Option<f64>) {
    let text = match output {
        Output::Csv(s) => s,
        Output::Json {
            inputs,
            outputs,
            rules,
        } => {
            let mut m = envelope(name, inputs, outputs, rules);
            if let Some(ms) = elapsed_ms {
                m.insert("timing_ms".into(), sig12(ms));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
            s.push('\n');
            s
        }
    };
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let start = Instant::now();
    let result = run(&cli.command);
    let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match result {
        Ok(output) => {
            print(name, output, elapsed);
            ExitCode::SUCCESS
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget { message, partial }) => {
            if let Some(p) = partial {
                print(name, *p, elapsed);
            }
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
