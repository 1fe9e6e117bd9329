//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use freeprod_core::geodesic::{
    classify_connected_sum, classify_three_manifold, exponential_lower_bound,
    polynomial_lower_bound, rules, ConnectedSum, GrowthClass, ManifoldDescriptor, MetricParams,
    Pi1Class, Rule, Summand,
};
use freeprod_core::group_ring::{certify_u_minus_one_not_unit, CoefficientRing, LaurentPoly};
use freeprod_core::growth::{
    enumerate_elements, family_letters, gm_family, growth_rate_estimate, growth_table,
    necklace_count, verify_dihedral_relation, EnumerationConfig, SecondLetterRule,
};
use freeprod_core::{FreeProduct, NormalForm};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ball(fp: &FreeProduct, k: u32) -> Vec<NormalForm> {
    enumerate_elements(fp, &EnumerationConfig::new(k))
        .expect("small ball")
        .iter()
        .map(|(_, g)| g.clone())
        .collect()
}

fn ac1() -> Outcome {
    let fp = FreeProduct::cyclic_pair(2, 3).map_err(|e| e.to_string())?;
    let letters = family_letters(&fp, None).map_err(|e| e.to_string())?;
    ensure(letters.rule == SecondLetterRule::Square, || {
        format!("b2 rule is {:?}, expected b1 squared", letters.rule)
    })?;
    let table = growth_table(
        &fp,
        &enumerate_elements(&fp, &EnumerationConfig::new(12)).map_err(|e| e.to_string())?,
    );
    let mut cols = Vec::new();
    for r in 1..=4u32 {
        let f = table.row(3 * r).ok_or("missing row")?.classes;
        // F(3r) ≥ 2^r / r  ⇔  r·F(3r) ≥ 2^r.
        ensure(u64::from(r) * f >= 1 << r, || {
            format!("F({}) = {f} < 2^{r}/{r}", 3 * r)
        })?;
        cols.push(format!("F({})={f}>={}/{r}", 3 * r, 1 << r));
    }
    Ok(cols.join(" "))
}

fn ac2() -> Outcome {
    let fp = FreeProduct::cyclic_pair(2, 3).map_err(|e| e.to_string())?;
    let mut total = 0usize;
    for r in 1..=10u32 {
        let fam = gm_family(&fp, r, None).map_err(|e| e.to_string())?;
        let expected = necklace_count(r).map_err(|e| e.to_string())?;
        ensure(
            BigInt::from(fam.representatives.len()) == expected.clone().into(),
            || {
                format!(
                    "r={r}: {} words, {expected} necklaces",
                    fam.representatives.len()
                )
            },
        )?;
        ensure(fam.distinct_classes == fam.representatives.len(), || {
            format!("r={r}: class keys collide")
        })?;
        let words: Vec<&NormalForm> = fam.representatives.iter().map(|(_, g)| g).collect();
        for (i, g) in words.iter().enumerate() {
            ensure(fp.is_cyclically_reduced(g), || {
                format!("r={r}: {} not reduced", fp.render(g))
            })?;
            ensure(g.len() == 2 * r as usize, || {
                format!("r={r}: |g| = {}", g.len())
            })?;
            ensure(fp.word_length(g) <= 3 * u64::from(r), || {
                format!("r={r}: w_E({}) = {}", fp.render(g), fp.word_length(g))
            })?;
            for h in &words[i + 1..] {
                ensure(!fp.are_conjugate(g, h), || {
                    format!("r={r}: {} ~ {}", fp.render(g), fp.render(h))
                })?;
            }
        }
        total += words.len();
    }
    Ok(format!("{total} words over r=1..10"))
}

fn ac3() -> Outcome {
    let mut checked = 0usize;
    for (m, n) in [(2, 3), (2, 2)] {
        let fp = FreeProduct::cyclic_pair(m, n).map_err(|e| e.to_string())?;
        let elements = ball(&fp, 5);
        let conjugators = ball(&fp, 8);
        for g in &elements {
            let orbit: HashSet<NormalForm> =
                conjugators.iter().map(|h| fp.conjugate(h, g)).collect();
            for h in &elements {
                ensure(fp.are_conjugate(g, h) == orbit.contains(h), || {
                    format!(
                        "Z{m}*Z{n}: disagreement on {} / {}",
                        fp.render(g),
                        fp.render(h)
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs, 0 disagreements"))
}

fn ac4() -> Outcome {
    let fp = FreeProduct::cyclic_pair(2, 3).map_err(|e| e.to_string())?;
    let elements = ball(&fp, 7);
    for g in &elements {
        let c = fp.cyclically_reduce(g);
        ensure(fp.is_cyclically_reduced(&c.result), || {
            format!("{} -> {} not reduced", fp.render(g), fp.render(&c.result))
        })?;
        let back = fp.conjugate(&fp.invert(&c.conjugator), &c.result);
        ensure(&back == g, || {
            format!("{} does not round-trip", fp.render(g))
        })?;
        let len = c.result.len();
        ensure(len % 2 == 0 || len <= 1, || {
            format!("{} has odd length {len}", fp.render(g))
        })?;
    }
    Ok(format!("{} elements", elements.len()))
}

fn ac5() -> Outcome {
    let fp = FreeProduct::free_rank_two();
    let table = growth_table(
        &fp,
        &enumerate_elements(&fp, &EnumerationConfig::new(8)).map_err(|e| e.to_string())?,
    );
    for row in &table.rows {
        let expected = 2 * 3u64.pow(row.k) - 1;
        ensure(row.elements == expected, || {
            format!("G({}) = {} != {expected}", row.k, row.elements)
        })?;
    }
    Ok(format!(
        "G(8) = {}",
        table.row(8).ok_or("missing row")?.elements
    ))
}

fn ac6() -> Outcome {
    let check = verify_dihedral_relation();
    ensure(check.holds(), || format!("{check:?}"))?;
    let fp = FreeProduct::cyclic_pair(2, 2).map_err(|e| e.to_string())?;
    let table = growth_table(
        &fp,
        &enumerate_elements(&fp, &EnumerationConfig::new(12)).map_err(|e| e.to_string())?,
    );
    let f: Vec<u64> = table.rows.iter().map(|r| r.classes).collect();
    for k in 4..=10 {
        ensure(f[k + 2] - f[k] <= 2, || {
            format!("F({}) - F({k}) = {}", k + 2, f[k + 2] - f[k])
        })?;
    }
    Ok(format!("F = {f:?}"))
}

fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    loop {
        let ring = match rng.random_range(0..=11u64) {
            0 => CoefficientRing::Integers,
            n => CoefficientRing::Modulo(n + 1),
        };
        let terms: Vec<(i64, i64)> = (0..rng.random_range(1..=6))
            .map(|_| (rng.random_range(-20..=20), rng.random_range(-50..=50)))
            .collect();
        let q = LaurentPoly::from_terms(ring, terms).expect("valid ring");
        if !q.is_zero() {
            return q;
        }
    }
}

fn ac7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let trials = 100_000;
    for i in 0..trials {
        let q = random_poly(&mut rng);
        let cert = certify_u_minus_one_not_unit(&q).map_err(|e| format!("trial {i}: {e}"))?;
        let product = LaurentPoly::u_minus_one(q.ring())
            .and_then(|u| u.multiply(&q))
            .map_err(|e| e.to_string())?;
        ensure(!product.is_one() && product == cert.product, || {
            format!("trial {i}: q = {q}")
        })?;
        // Coefficient of u^e in (u − 1)q is q_{e−1} − q_e.
        let (lo, _) = q.lowest_term().expect("nonzero");
        let (hi, _) = q.highest_term().expect("nonzero");
        for e in lo..=hi + 1 {
            let mut c = q.coefficient(e - 1) - q.coefficient(e);
            if let CoefficientRing::Modulo(n) = q.ring() {
                let n = BigInt::from(n);
                c = ((c % &n) + &n) % n;
            }
            ensure(product.coefficient(e) == c, || {
                format!("trial {i}: coefficient of u^{e} in (u-1)({q})")
            })?;
        }
        ensure(
            product.lowest_term() == Some((cert.lowest.0, &cert.lowest.1))
                && product.highest_term() == Some((cert.highest.0, &cert.highest.1)),
            || format!("trial {i}: witness mismatch for q = {q}"),
        )?;
    }
    Ok(format!("{trials} polynomials over Z and Z_2..Z_12"))
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ac8() -> Outcome {
    let params = MetricParams::from_f64(1.0, 1.0).map_err(|e| e.to_string())?;
    let b = exponential_lower_bound(&params, &rational(30, 1)).map_err(|e| e.to_string())?;
    ensure(b.r == 10 && b.value == rational(1024, 300), || {
        format!("bound at t=30 is {} (r = {})", b.value, b.r)
    })?;
    let mut rng = StdRng::seed_from_u64(8);
    for i in 0..100 {
        let k: u32 = rng.random_range(1..=8);
        let r: u64 = rng.random_range(1..=12);
        let (ln, ld) = (rng.random_range(1..=1000i64), rng.random_range(1..=1000i64));
        let (tn, td) = (
            rng.random_range(1..=10_000i64),
            rng.random_range(1..=100i64),
        );
        let got = polynomial_lower_bound(k, r, &rational(ln, ld), &rational(tn, td))
            .map_err(|e| format!("input {i}: {e}"))?;
        // got · r · ld · td^k = ln · tn^k, all in integers.
        let lhs = got
            * BigRational::from_integer(
                BigInt::from(r) * ld * num_traits::pow(BigInt::from(td), k as usize),
            );
        let rhs = BigInt::from(ln) * num_traits::pow(BigInt::from(tn), k as usize);
        ensure(lhs.is_integer() && lhs.to_integer() == rhs, || {
            format!("input {i}: k={k} r={r} lambda={ln}/{ld} t={tn}/{td}")
        })?;
    }
    Ok("1024/300 exact; 100 polynomial inputs exact".into())
}

fn has_rule(trace: &[Rule], rule: Rule) -> bool {
    trace.iter().any(|r| r.id == rule.id)
}

fn ac9() -> Outcome {
    let prime = |group| Summand { group, b1: 0 };
    let manifold = |groups: &[Pi1Class]| ManifoldDescriptor {
        orientable: true,
        summands: groups.iter().map(|&g| prime(g)).collect(),
    };
    let three = [
        (
            manifold(&[Pi1Class::Z2, Pi1Class::Z2]),
            GrowthClass::PrimeLike,
            rules::RP3_RP3_PRIME_LIKE,
        ),
        (
            manifold(&[Pi1Class::Z2, Pi1Class::FiniteOther { order: 3 }]),
            GrowthClass::Exponential,
            rules::NONPRIME_EXPONENTIAL,
        ),
        (
            manifold(&[Pi1Class::InfiniteOther]),
            GrowthClass::AllPolynomial,
            rules::PRIME_NONSOLVABLE_ALL_POLYNOMIAL,
        ),
    ];
    for (d, class, rule) in &three {
        let c = classify_three_manifold(d).map_err(|e| e.to_string())?;
        ensure(c.class == *class && has_rule(&c.trace, *rule), || {
            format!("{d:?} gave {:?} via {}", c.class, c.rule.id)
        })?;
    }
    let sum = |group, b1, second| ConnectedSum {
        first: Summand { group, b1 },
        second,
        second_is_sphere: false,
    };
    let table = [
        (
            sum(Pi1Class::Z2, 0, Pi1Class::FiniteOther { order: 3 }),
            GrowthClass::Exponential,
            rules::SUM_BOTH_NONTRIVIAL_EXPONENTIAL,
        ),
        (
            sum(Pi1Class::Z2, 0, Pi1Class::Z2),
            GrowthClass::PrimeLike,
            rules::SUM_DIHEDRAL_PRIME_LIKE,
        ),
        (
            sum(Pi1Class::SolvableInfinite, 1, Pi1Class::Trivial),
            GrowthClass::PrimeLike,
            rules::SUM_BETTI_PRIME_LIKE,
        ),
        (
            sum(Pi1Class::InfiniteOther, 0, Pi1Class::Trivial),
            GrowthClass::Unknown,
            rules::SUM_REMAINING_CASE,
        ),
    ];
    for (s, class, rule) in &table {
        let c = classify_connected_sum(s).map_err(|e| e.to_string())?;
        ensure(c.class == *class && has_rule(&c.trace, *rule), || {
            format!("{s:?} gave {:?} via {}", c.class, c.rule.id)
        })?;
    }
    // An exponential verdict on finite summands should show up as class
    // growth on the matching free product.
    let fp = FreeProduct::cyclic_pair(2, 3).map_err(|e| e.to_string())?;
    let t = growth_table(
        &fp,
        &enumerate_elements(&fp, &EnumerationConfig::new(12)).map_err(|e| e.to_string())?,
    );
    let rate = growth_rate_estimate(&t).map_err(|e| e.to_string())?;
    ensure(rate.lambda_classes > 1.0, || {
        format!("lambda_classes = {}", rate.lambda_classes)
    })?;
    Ok(format!(
        "{} cases, rules matched; Z2*Z3 lambda_classes = {:.4}",
        three.len() + table.len(),
        rate.lambda_classes
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("AC1 class growth F(3r) >= 2^r/r", ac1),
        ("AC2 necklace word family", ac2),
        ("AC3 conjugacy vs conjugator search", ac3),
        ("AC4 cyclic reduction round-trip", ac4),
        ("AC5 free group ball sizes", ac5),
        ("AC6 dihedral relation and linear classes", ac6),
        ("AC7 u-1 non-unit certificates", ac7),
        ("AC8 exact bound formulas", ac8),
        ("AC9 classifier rules", ac9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{name}: PASS ({secs:.2}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{name}: FAIL ({secs:.2}s) {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
