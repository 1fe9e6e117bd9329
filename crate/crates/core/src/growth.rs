//! Bounded enumeration of balls in `G₁ ∗ G₂` and the counting functions
//! `G(k)` (elements) and `F(k)` (conjugacy classes) built from it.
//!
//! Also hosts the exponential family of pairwise non-conjugate words
//! `a b_{m₁} a b_{m₂} ⋯ a b_{m_r}`, necklace counting, growth-rate fitting
//! and the free-subgroup and dihedral checks.

use std::collections::HashSet;
use std::mem::size_of;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::factor::{FactorElement, FactorGroup};
use crate::product::{ConjugacyClassKey, FreeProduct, Letter, NormalForm, Side};

/// Default and hard upper bound for enumeration depth.
pub const DEFAULT_DEPTH_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrowthError {
    #[error("requested depth {requested} exceeds the cap {cap}")]
    CapExceeded { requested: u32, cap: u32 },
    #[error(
        "memory budget of {budget_bytes} bytes exceeded after completing depth {reached_depth}"
    )]
    MemoryBudget {
        budget_bytes: usize,
        reached_depth: u32,
        partial: Box<GrowthTable>,
    },
    #[error("word family is not applicable: {0}")]
    FamilyInapplicable(String),
    #[error("necklace length must be positive")]
    ZeroLength,
    #[error("growth-rate fit needs at least 4 rows, got {0}")]
    TooFewRows(usize),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

/// Limits for ball enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_k: u32,
    pub depth_cap: u32,
    /// Approximate bound on bytes held by the enumeration; `None` = unbounded.
    pub memory_budget: Option<usize>,
    /// Worker count; `1` runs on the calling thread.
    pub threads: usize,
}

impl EnumerationConfig {
    pub fn new(max_k: u32) -> Self {
        EnumerationConfig {
            max_k,
            depth_cap: DEFAULT_DEPTH_CAP,
            memory_budget: None,
            threads: 1,
        }
    }
}

/// Elements grouped by exact word length: `spheres[k] = {g : w_E(g) = k}`.
#[derive(Debug, Clone, Default)]
pub struct Ball {
    pub spheres: Vec<Vec<NormalForm>>,
}

impl Ball {
    pub fn depth(&self) -> u32 {
        self.spheres.len().saturating_sub(1) as u32
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &NormalForm)> {
        self.spheres
            .iter()
            .enumerate()
            .flat_map(|(k, s)| s.iter().map(move |g| (k as u32, g)))
    }

    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub k: u32,
    /// `G(k)`: elements with `w_E ≤ k`.
    pub elements: u64,
    /// `F(k)`: conjugacy classes with a representative of `w_E ≤ k`.
    pub classes: u64,
}

/// Cumulative counts per depth, identity included at `k = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    pub fn row(&self, k: u32) -> Option<&GrowthRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// Whether both columns are nondecreasing, `F ≤ G`, and row 0 is `(1, 1)`.
    pub fn is_consistent(&self) -> bool {
        let first_ok = self
            .rows
            .first()
            .is_none_or(|r| r.k == 0 && r.elements == 1 && r.classes == 1);
        first_ok
            && self.rows.iter().all(|r| r.classes <= r.elements)
            && self.rows.windows(2).all(|w| {
                w[1].k == w[0].k + 1
                    && w[1].elements >= w[0].elements
                    && w[1].classes >= w[0].classes
            })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,G,F\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.k, r.elements, r.classes));
        }
        out
    }
}

fn footprint(g: &NormalForm) -> usize {
    let letters: usize = g
        .letters()
        .iter()
        .map(|l| {
            size_of::<Letter>()
                + match &l.value {
                    FactorElement::Word(w) => w.len() * size_of::<i32>(),
                    _ => 0,
                }
        })
        .sum();
    // Stored twice (sphere + seen set) plus hash-table slack.
    2 * (size_of::<NormalForm>() + letters) + 16
}

fn expand(
    fp: &FreeProduct,
    frontier: &[NormalForm],
    gens: &[Letter],
    parallel: bool,
) -> Vec<NormalForm> {
    let step = |g: &NormalForm| {
        gens.iter()
            .map(|s| fp.multiply_letter(g, s))
            .collect::<Vec<_>>()
    };
    if parallel {
        frontier.par_iter().flat_map_iter(step).collect()
    } else {
        frontier.iter().flat_map(step).collect()
    }
}

fn enumerate_inner(fp: &FreeProduct, config: &EnumerationConfig) -> Result<Ball, (Ball, usize)> {
    let gens = fp.generator_letters();
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let identity = NormalForm::identity();
    let mut used = footprint(&identity);
    seen.insert(identity.clone());
    let mut ball = Ball {
        spheres: vec![vec![identity]],
    };
    for _ in 0..config.max_k {
        let frontier = ball.spheres.last().expect("nonempty");
        let candidates = expand(fp, frontier, &gens, config.threads > 1);
        let mut next = Vec::new();
        for g in candidates {
            if seen.contains(&g) {
                continue;
            }
            used += footprint(&g);
            if config.memory_budget.is_some_and(|b| used > b) {
                return Err((ball, config.memory_budget.unwrap()));
            }
            seen.insert(g.clone());
            next.push(g);
        }
        ball.spheres.push(next);
    }
    Ok(ball)
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, GrowthError> {
    if threads <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| GrowthError::ThreadPool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Breadth-first enumeration of the ball of radius `config.max_k` in the
/// Cayley graph over `E ∪ E⁻¹`. Results do not depend on `threads`.
pub fn enumerate_elements(
    fp: &FreeProduct,
    config: &EnumerationConfig,
) -> Result<Ball, GrowthError> {
    if config.max_k > config.depth_cap {
        return Err(GrowthError::CapExceeded {
            requested: config.max_k,
            cap: config.depth_cap,
        });
    }
    match with_pool(config.threads, || enumerate_inner(fp, config))? {
        Ok(ball) => Ok(ball),
        Err((partial, budget_bytes)) => Err(GrowthError::MemoryBudget {
            budget_bytes,
            reached_depth: partial.depth(),
            partial: Box::new(growth_table(fp, &partial)),
        }),
    }
}

/// Counts `G(k)` and `F(k)` over an already enumerated ball.
pub fn growth_table(fp: &FreeProduct, ball: &Ball) -> GrowthTable {
    let mut classes: HashSet<ConjugacyClassKey> = HashSet::new();
    let mut elements = 0u64;
    let mut rows = Vec::with_capacity(ball.spheres.len());
    for (k, sphere) in ball.spheres.iter().enumerate() {
        elements += sphere.len() as u64;
        classes.extend(sphere.iter().map(|g| fp.canonical_class_key(g)));
        rows.push(GrowthRow {
            k: k as u32,
            elements,
            classes: classes.len() as u64,
        });
    }
    GrowthTable { rows }
}

/// `G(k)` and `F(k)` for `k = 0..=max_k`.
pub fn count_conjugacy_classes(
    fp: &FreeProduct,
    config: &EnumerationConfig,
) -> Result<GrowthTable, GrowthError> {
    let ball = enumerate_elements(fp, config)?;
    Ok(growth_table(fp, &ball))
}

/// How the second `b` letter of the family was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondLetterRule {
    /// `b₁² ≠ 1`, so `b₂ = b₁²`.
    Square,
    /// `b₁² = 1`, so `b₂` is the next generator of the same factor.
    OtherGenerator,
    /// Supplied by the caller.
    Override,
}

/// The letters `a`, `b₁`, `b₂` spanning the exponential word family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLetters {
    pub a: Letter,
    pub b1: Letter,
    pub b2: Letter,
    pub rule: SecondLetterRule,
}

fn pick_letters(fp: &FreeProduct, a_side: Side) -> Result<FamilyLetters, String> {
    let b_side = a_side.other();
    let fa = fp.factor(a_side);
    let fb = fp.factor(b_side);
    let a = Letter::new(a_side, fa.generators()[0].clone());
    let b1v = fb.generators()[0].clone();
    let b1 = Letter::new(b_side, b1v.clone());
    if let Some(sq) = fb.multiply(&b1v, &b1v) {
        return Ok(FamilyLetters {
            a,
            b1,
            b2: Letter::new(b_side, sq),
            rule: SecondLetterRule::Square,
        });
    }
    match fb.generators().iter().find(|e| **e != b1v) {
        Some(other) => Ok(FamilyLetters {
            a,
            b1,
            b2: Letter::new(b_side, other.clone()),
            rule: SecondLetterRule::OtherGenerator,
        }),
        None => Err(format!(
            "factor {b_side}: b1^2 = 1 and the generating set has no second element"
        )),
    }
}

/// Chooses `a ∈ E₁`, `b₁ ∈ E₂` and `b₂` (`b₁²` if nontrivial, else another
/// generator of `E₂`). If the second factor admits neither choice the roles
/// of the factors are swapped. `override_b2` replaces the rule for `b₂` in
/// the second factor.
pub fn family_letters(
    fp: &FreeProduct,
    override_b2: Option<&FactorElement>,
) -> Result<FamilyLetters, GrowthError> {
    if let Some(b2) = override_b2 {
        let fb = fp.factor(Side::Second);
        fb.validate(b2)
            .map_err(|e| GrowthError::FamilyInapplicable(format!("override b2: {e}")))?;
        let b1v = fb.generators()[0].clone();
        if fb.is_identity(b2) || *b2 == b1v {
            return Err(GrowthError::FamilyInapplicable(
                "override b2 must be nontrivial and differ from b1".into(),
            ));
        }
        return Ok(FamilyLetters {
            a: Letter::new(Side::First, fp.factor(Side::First).generators()[0].clone()),
            b1: Letter::new(Side::Second, b1v),
            b2: Letter::new(Side::Second, b2.clone()),
            rule: SecondLetterRule::Override,
        });
    }
    match pick_letters(fp, Side::First) {
        Ok(l) => Ok(l),
        Err(first) => pick_letters(fp, Side::Second)
            .map_err(|second| GrowthError::FamilyInapplicable(format!("{first}; {second}"))),
    }
}

/// Representatives `g(m₁,…,m_r)` of the exponential family, one per necklace.
#[derive(Debug, Clone)]
pub struct WordFamily {
    pub r: u32,
    pub letters: FamilyLetters,
    /// `(m₁,…,m_r)` with `m_j ∈ {1, 2}`, least among its rotations.
    pub representatives: Vec<(Vec<u8>, NormalForm)>,
    /// Number of distinct conjugacy-class keys among the representatives.
    pub distinct_classes: usize,
}

/// Tuples over `{1, 2}` of length `r` that are least among their rotations,
/// in lexicographic order.
pub fn necklace_representatives(r: u32) -> Vec<Vec<u8>> {
    let r = r as usize;
    let mut out = Vec::new();
    if r == 0 || r >= 63 {
        return out;
    }
    for mask in 0u64..(1u64 << r) {
        let tuple: Vec<u8> = (0..r)
            .map(|j| if mask >> (r - 1 - j) & 1 == 1 { 2 } else { 1 })
            .collect();
        let least = (1..r).all(|s| tuple[s..].iter().chain(&tuple[..s]).ge(tuple.iter()));
        if least {
            out.push(tuple);
        }
    }
    out
}

/// Largest family length accepted by [`gm_family`].
pub const MAX_FAMILY_LENGTH: u32 = 24;

/// Builds `a b_{m₁} a b_{m₂} ⋯ a b_{m_r}` for every necklace `(m_j)`.
pub fn gm_family(
    fp: &FreeProduct,
    r: u32,
    override_b2: Option<&FactorElement>,
) -> Result<WordFamily, GrowthError> {
    if r == 0 {
        return Err(GrowthError::ZeroLength);
    }
    if r > MAX_FAMILY_LENGTH {
        return Err(GrowthError::CapExceeded {
            requested: r,
            cap: MAX_FAMILY_LENGTH,
        });
    }
    let letters = family_letters(fp, override_b2)?;
    let mut keys = HashSet::new();
    let representatives: Vec<(Vec<u8>, NormalForm)> = necklace_representatives(r)
        .into_iter()
        .map(|m| {
            let word = m
                .iter()
                .flat_map(|&j| {
                    let b = if j == 1 { &letters.b1 } else { &letters.b2 };
                    [letters.a.clone(), b.clone()]
                })
                .collect();
            let g = fp
                .normal_form(word)
                .expect("alternating nontrivial letters form a normal form");
            keys.insert(fp.canonical_class_key(&g));
            (m, g)
        })
        .collect();
    Ok(WordFamily {
        r,
        letters,
        distinct_classes: keys.len(),
        representatives,
    })
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Number of binary necklaces of length `r`:
/// `(1/r) Σ_{d | r} φ(d) 2^{r/d}`.
pub fn necklace_count(r: u32) -> Result<BigUint, GrowthError> {
    if r == 0 {
        return Err(GrowthError::ZeroLength);
    }
    let mut sum = BigUint::zero();
    for d in (1..=r).filter(|d| r.is_multiple_of(*d)) {
        sum += BigUint::from(euler_phi(d as u64)) * (BigUint::one() << (r / d) as usize);
    }
    Ok(sum / BigUint::from(r))
}

/// Exponential growth rates fitted to a table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    pub lambda_elements: f64,
    pub lambda_classes: f64,
    /// Root-mean-square residual of the log-linear fit.
    pub residual_elements: f64,
    pub residual_classes: f64,
}

fn log_slope(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    (slope, (rss / n).sqrt())
}

/// Least-squares slope of `ln(count)` against `k` over the upper half of the
/// rows, exponentiated.
pub fn growth_rate_estimate(table: &GrowthTable) -> Result<RateEstimate, GrowthError> {
    let n = table.rows.len();
    if n < 4 {
        return Err(GrowthError::TooFewRows(n));
    }
    let upper = &table.rows[n / 2..];
    let pts = |f: fn(&GrowthRow) -> u64| -> Vec<(f64, f64)> {
        upper
            .iter()
            .map(|r| (r.k as f64, (f(r) as f64).ln()))
            .collect()
    };
    let (se, re) = log_slope(&pts(|r| r.elements));
    let (sc, rc) = log_slope(&pts(|r| r.classes));
    Ok(RateEstimate {
        lambda_elements: se.exp(),
        lambda_classes: sc.exp(),
        residual_elements: re,
        residual_classes: rc,
    })
}

/// Outcome of [`verify_free_subgroup`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeSubgroupCheck {
    pub holds: bool,
    pub depth: u32,
    pub words_checked: u64,
    /// A reduced word over `x = a b₁`, `y = a b₂` mapping to the identity or
    /// colliding with `collides_with`.
    pub witness: Option<String>,
    pub collides_with: Option<String>,
}

/// Largest depth accepted by [`verify_free_subgroup`].
pub const MAX_FREE_SUBGROUP_DEPTH: u32 = 12;

/// Checks that `x = a b₁` and `y = a b₂` freely generate a rank-two
/// subgroup up to reduced words of length `depth`: distinct reduced words
/// give distinct elements and no nonempty word gives the identity.
pub fn verify_free_subgroup(
    fp: &FreeProduct,
    depth: u32,
) -> Result<FreeSubgroupCheck, GrowthError> {
    if depth > MAX_FREE_SUBGROUP_DEPTH {
        return Err(GrowthError::CapExceeded {
            requested: depth,
            cap: MAX_FREE_SUBGROUP_DEPTH,
        });
    }
    let l = family_letters(fp, None)?;
    let x = fp
        .normal_form(vec![l.a.clone(), l.b1.clone()])
        .expect("alternating");
    let y = fp.normal_form(vec![l.a, l.b2]).expect("alternating");
    Ok(verify_free_pair(fp, &x, &y, depth))
}

/// Checks that reduced words of length `≤ depth` over `x`, `y` map
/// injectively into `G` and that no nonempty one maps to the identity.
pub fn verify_free_pair(
    fp: &FreeProduct,
    x: &NormalForm,
    y: &NormalForm,
    depth: u32,
) -> FreeSubgroupCheck {
    // Symbols 0 = x, 1 = x⁻¹, 2 = y, 3 = y⁻¹.
    let images = [x.clone(), fp.invert(x), y.clone(), fp.invert(y)];
    let name = |w: &[u8]| {
        w.iter()
            .map(|s| ["x", "x^-1", "y", "y^-1"][*s as usize])
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut seen: std::collections::HashMap<NormalForm, Vec<u8>> = std::collections::HashMap::new();
    seen.insert(NormalForm::identity(), Vec::new());
    let mut layer: Vec<(Vec<u8>, NormalForm)> = vec![(Vec::new(), NormalForm::identity())];
    let mut checked = 0u64;
    for _ in 0..depth {
        let mut next = Vec::new();
        for (w, g) in &layer {
            for s in 0u8..4 {
                if w.last().is_some_and(|&t| t ^ 1 == s) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(s);
                let g2 = fp.multiply(g, &images[s as usize]);
                checked += 1;
                if let Some(prev) = seen.get(&g2) {
                    return FreeSubgroupCheck {
                        holds: false,
                        depth,
                        words_checked: checked,
                        witness: Some(name(&w2)),
                        collides_with: Some(if prev.is_empty() {
                            "1".to_string()
                        } else {
                            name(prev)
                        }),
                    };
                }
                seen.insert(g2.clone(), w2.clone());
                next.push((w2, g2));
            }
        }
        layer = next;
    }
    FreeSubgroupCheck {
        holds: true,
        depth,
        words_checked: checked,
        witness: None,
        collides_with: None,
    }
}

/// Outcome of [`verify_dihedral_relation`] in `ℤ₂ ∗ ℤ₂ = ⟨a⟩ ∗ ⟨b⟩`, `t = ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DihedralCheck {
    /// `a t a⁻¹ = t⁻¹`.
    pub relation: bool,
    /// `a t² a⁻¹ = t⁻²`.
    pub squared: bool,
    /// `a t⁰ a⁻¹ = 1`.
    pub trivial_power: bool,
    /// `t` has infinite order on the checked range `t¹ … t^{max_power}`.
    pub t_infinite_order: bool,
    pub max_power: u32,
}

impl DihedralCheck {
    pub fn holds(&self) -> bool {
        self.relation && self.squared && self.trivial_power && self.t_infinite_order
    }
}

/// Verifies the dihedral relation `a t a⁻¹ = t⁻¹` and its consequences.
pub fn verify_dihedral_relation() -> DihedralCheck {
    let z2 = || FactorGroup::cyclic_standard(2).expect("order 2");
    let fp = FreeProduct::new(z2(), z2());
    let a = fp.parse_word("a").expect("generator a");
    let t = fp.parse_word("a b").expect("generators a b");
    let max_power = 16u32;
    let conj = |g: &NormalForm| fp.multiply(&fp.multiply(&a, g), &fp.invert(&a));
    let t2 = fp.power(&t, 2);
    DihedralCheck {
        relation: conj(&t) == fp.invert(&t),
        squared: conj(&t2) == fp.invert(&t2),
        trivial_power: conj(&fp.power(&t, 0)).is_identity(),
        t_infinite_order: (1..=max_power as i64).all(|n| !fp.power(&t, n).is_identity()),
        max_power,
    }
}
