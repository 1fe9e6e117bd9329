//! Lower-bound curves for the closed-geodesic counting function `N(t)` and
//! rule-based growth classification of connected sums and compact
//! 3-manifolds.
//!
//! Nothing here touches a metric: lengths and constants are user inputs, and
//! the classifier only encodes which growth conclusion is known for a given
//! shape of fundamental group.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{0} must be a finite positive number")]
    NonPositive(&'static str),
    #[error("L ({0}) must be at least L1 ({1})")]
    LengthOrder(String, String),
    #[error("{what} = {value} exceeds the supported maximum {max}")]
    TooLarge {
        what: &'static str,
        value: String,
        max: u64,
    },
}

/// Largest `r = ⌊t / 3L⌋` for which the exponential bound is evaluated.
pub const MAX_EXPONENTIAL_STEPS: u64 = 1 << 16;
/// Largest polynomial degree accepted.
pub const MAX_POLYNOMIAL_DEGREE: u32 = 1024;

/// Converts a finite positive `f64` to the exact rational it denotes.
pub fn exact(value: f64, name: &'static str) -> Result<BigRational, BoundError> {
    if !value.is_finite() || value <= 0.0 {
        return Err(BoundError::NonPositive(name));
    }
    BigRational::from_float(value).ok_or(BoundError::NonPositive(name))
}

fn positive(value: &BigRational, name: &'static str) -> Result<(), BoundError> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(BoundError::NonPositive(name))
    }
}

/// Length data of a metric: `L` bounds the shortest loops representing the
/// chosen generators, `L1` is the length of a shortest non-contractible
/// closed geodesic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricParams {
    l: BigRational,
    l1: BigRational,
}

impl MetricParams {
    pub fn new(l: BigRational, l1: BigRational) -> Result<Self, BoundError> {
        positive(&l, "L")?;
        positive(&l1, "L1")?;
        if l < l1 {
            return Err(BoundError::LengthOrder(l.to_string(), l1.to_string()));
        }
        Ok(MetricParams { l, l1 })
    }

    pub fn from_f64(l: f64, l1: f64) -> Result<Self, BoundError> {
        Self::new(exact(l, "L")?, exact(l1, "L1")?)
    }

    pub fn l(&self) -> &BigRational {
        &self.l
    }

    pub fn l1(&self) -> &BigRational {
        &self.l1
    }
}

/// Value of the exponential lower bound at some `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialBound {
    /// `r = ⌊t / 3L⌋`.
    pub r: u64,
    pub value: BigRational,
    /// `t < 3L`: no bound is available and `value` is zero.
    pub below_range: bool,
}

/// `N(t) ≥ 2^r L₁ / (3 r² L)` with `r = ⌊t / 3L⌋`, computed exactly.
///
/// `N` is nondecreasing and the bound holds at `t = 3rL`, so flooring `r` is
/// valid for every `t ≥ 3L`.
pub fn exponential_lower_bound(
    params: &MetricParams,
    t: &BigRational,
) -> Result<ExponentialBound, BoundError> {
    positive(t, "t")?;
    let three_l = &params.l * BigRational::from_integer(BigInt::from(3));
    let steps = (t / &three_l).floor().to_integer();
    if steps.is_zero() {
        return Ok(ExponentialBound {
            r: 0,
            value: BigRational::zero(),
            below_range: true,
        });
    }
    let r = steps
        .to_u64()
        .filter(|r| *r <= MAX_EXPONENTIAL_STEPS)
        .ok_or_else(|| BoundError::TooLarge {
            what: "t / 3L",
            value: steps.to_string(),
            max: MAX_EXPONENTIAL_STEPS,
        })?;
    Ok(ExponentialBound {
        r,
        value: exponential_bound_at(params, r),
        below_range: false,
    })
}

/// `2^r L₁ / (3 r² L)`, the bound at `t = 3rL` for `r ≥ 1`.
pub fn exponential_bound_at(params: &MetricParams, r: u64) -> BigRational {
    let numer = BigRational::from_integer(BigInt::one() << r as usize) * &params.l1;
    let denom = BigRational::from_integer(BigInt::from(3u64) * BigInt::from(r) * BigInt::from(r))
        * &params.l;
    numer / denom
}

/// `(λ̃_k / r) · t^k`, the count inherited from a degree-`r` cover whose
/// geodesics grow like `λ̃_k t^k`.
pub fn polynomial_lower_bound(
    k: u32,
    cover_order: u64,
    lambda_k: &BigRational,
    t: &BigRational,
) -> Result<BigRational, BoundError> {
    if k == 0 {
        return Err(BoundError::NonPositive("k"));
    }
    if k > MAX_POLYNOMIAL_DEGREE {
        return Err(BoundError::TooLarge {
            what: "k",
            value: k.to_string(),
            max: MAX_POLYNOMIAL_DEGREE as u64,
        });
    }
    if cover_order == 0 {
        return Err(BoundError::NonPositive("r"));
    }
    positive(lambda_k, "lambda")?;
    positive(t, "t")?;
    let r = BigRational::from_integer(BigInt::from(cover_order));
    Ok(lambda_k / r * num_traits::pow(t.clone(), k as usize))
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Coarse class of the fundamental group of a prime summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "pi1")]
pub enum Pi1Class {
    Trivial,
    Z2,
    FiniteOther { order: u64 },
    SolvableInfinite,
    InfiniteOther,
}

impl Pi1Class {
    pub fn is_trivial(self) -> bool {
        self == Pi1Class::Trivial
    }

    pub fn is_finite(self) -> bool {
        matches!(
            self,
            Pi1Class::Trivial | Pi1Class::Z2 | Pi1Class::FiniteOther { .. }
        )
    }
}

/// Asymptotic lower-bound shape for `N(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "class", content = "k")]
pub enum GrowthClass {
    /// `liminf log N(t) / t > 0`.
    Exponential,
    /// `liminf N(t) log t / t > 0`.
    PrimeLike,
    /// `liminf N(t) / t^k > 0`.
    PolynomialAtLeast(u32),
    /// `liminf N(t) / t^r > 0` for every `r ≥ 1`.
    AllPolynomial,
    /// Infinitely many closed geodesics for every metric, no rate known.
    InfinitelyMany,
    /// Only a generic-metric statement applies.
    GenericOnly,
    /// No known conclusion.
    Unknown,
}

/// Identifier and statement of a classification rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
}

pub mod rules {
    use super::Rule;

    pub const NONPRIME_EXPONENTIAL: Rule = Rule {
        id: "nonprime-exponential",
        statement: "not prime and not RP3#RP3: pi1 is a free product of two nontrivial groups, one of order >= 3, so conjugacy classes grow exponentially and log N(t)/t stays positive",
    };
    pub const RP3_RP3_PRIME_LIKE: Rule = Rule {
        id: "rp3-rp3-prime-like",
        statement: "M = RP3#RP3: pi1 = Z2*Z2 has an index-2 infinite cyclic subgroup, the double cover S1xS2 gives N(t) log t / t bounded below",
    };
    pub const PRIME_NONSOLVABLE_ALL_POLYNOMIAL: Rule = Rule {
        id: "prime-nonsolvable-all-polynomial",
        statement: "prime with pi1 neither finite nor solvable: virtual first Betti number is infinite, so N(t)/t^r stays positive for every r",
    };
    pub const PRIME_SOLVABLE_PRIME_LIKE: Rule = Rule {
        id: "prime-solvable-prime-like",
        statement: "prime with infinite solvable pi1: N(t) log t / t stays positive",
    };
    pub const VIRTUAL_BETTI_POLYNOMIAL: Rule = Rule {
        id: "virtual-betti-polynomial",
        statement:
            "first Betti number b >= 2 of a (virtual) cover: N(t)/t^k stays positive for k <= b",
    };
    pub const FINITE_GENERIC: Rule = Rule {
        id: "finite-pi1-generic-only",
        statement: "finite pi1: only a C4-generic Riemannian metric is known to satisfy N(t) log t / t bounded below",
    };
    pub const ORIENTATION_COVER: Rule = Rule {
        id: "orientation-double-cover",
        statement: "non-orientable: pass to the orientation double cover; infinite pi1 gives N(t) log t / t bounded below",
    };
    pub const SUM_BOTH_NONTRIVIAL_EXPONENTIAL: Rule = Rule {
        id: "connected-sum-exponential",
        statement: "pi1(M1) and pi1(M2) nontrivial and not both Z2: log N(t)/t stays positive",
    };
    pub const SUM_DIHEDRAL_PRIME_LIKE: Rule = Rule {
        id: "connected-sum-dihedral-prime-like",
        statement: "pi1(M1) = pi1(M2) = Z2: infinite dihedral pi1 with index-2 infinite cyclic subgroup, N(t) log t / t stays positive",
    };
    pub const SUM_BETTI_PRIME_LIKE: Rule = Rule {
        id: "connected-sum-betti-prime-like",
        statement: "b1(M1) >= 1 and M2 simply connected, not a sphere: u - 1 is not a unit in the group ring, N(t) log t / t stays positive",
    };
    pub const SUM_FINITE_INFINITELY_MANY: Rule = Rule {
        id: "connected-sum-finite-infinitely-many",
        statement: "pi1(M1) finite and M2 simply connected, not a sphere: the universal cover is a connected sum of simply connected non-spheres, so every metric has infinitely many closed geodesics",
    };
    pub const SUM_REMAINING_CASE: Rule = Rule {
        id: "connected-sum-remaining-case",
        statement:
            "M2 simply connected, pi1(M1) infinite with b1(M1) = 0: no positive answer is known",
    };
    pub const SUM_OUTSIDE_HYPOTHESES: Rule = Rule {
        id: "connected-sum-outside-hypotheses",
        statement: "pi1(M1) trivial or M2 a sphere: the connected-sum criteria do not apply",
    };
}

/// A classification together with the rules that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: GrowthClass,
    /// The deciding rule.
    pub rule: Rule,
    /// Every rule consulted, in order, ending with `rule`.
    pub trace: Vec<Rule>,
}

impl Classification {
    fn single(class: GrowthClass, rule: Rule) -> Self {
        Classification {
            class,
            rule,
            trace: vec![rule],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("descriptor has no summands")]
    NoSummands,
    #[error("summand {0}: finite fundamental group must have b1 = 0")]
    FiniteWithBetti(usize),
    #[error("summand {0}: finite_other order must be at least 3")]
    BadOrder(usize),
    #[error("dimension must be 3, got {0}")]
    Dimension(u32),
    #[error("both summands are simply connected and M2 is a sphere: not a genuine connected sum")]
    DegenerateSum,
}

/// One prime summand: the class of its fundamental group and its first
/// Betti number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    #[serde(flatten)]
    pub group: Pi1Class,
    #[serde(default)]
    pub b1: u32,
}

/// Prime decomposition of a compact 3-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDescriptor {
    pub orientable: bool,
    pub summands: Vec<Summand>,
}

impl ManifoldDescriptor {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if self.summands.is_empty() {
            return Err(ClassifyError::NoSummands);
        }
        for (i, s) in self.summands.iter().enumerate() {
            if let Pi1Class::FiniteOther { order } = s.group {
                if order < 3 {
                    return Err(ClassifyError::BadOrder(i));
                }
            }
            if s.group.is_finite() && s.b1 != 0 {
                return Err(ClassifyError::FiniteWithBetti(i));
            }
        }
        Ok(())
    }

    fn nontrivial(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| !s.group.is_trivial())
    }

    /// Whether `π₁` of the connected sum is infinite.
    pub fn has_infinite_pi1(&self) -> bool {
        self.nontrivial().count() >= 2 || self.summands.iter().any(|s| !s.group.is_finite())
    }
}

/// Growth class of `N(t)` for a compact 3-manifold given by its prime
/// decomposition.
pub fn classify_three_manifold(d: &ManifoldDescriptor) -> Result<Classification, ClassifyError> {
    use rules::*;
    d.validate()?;
    if !d.orientable {
        return Ok(if d.has_infinite_pi1() {
            Classification::single(GrowthClass::PrimeLike, ORIENTATION_COVER)
        } else {
            Classification {
                class: GrowthClass::GenericOnly,
                rule: FINITE_GENERIC,
                trace: vec![ORIENTATION_COVER, FINITE_GENERIC],
            }
        });
    }
    let nontrivial: Vec<&Summand> = d.nontrivial().collect();
    match nontrivial.as_slice() {
        [] => Ok(Classification::single(
            GrowthClass::GenericOnly,
            FINITE_GENERIC,
        )),
        [x, y] if x.group == Pi1Class::Z2 && y.group == Pi1Class::Z2 => Ok(Classification::single(
            GrowthClass::PrimeLike,
            RP3_RP3_PRIME_LIKE,
        )),
        [_, _, ..] => Ok(Classification::single(
            GrowthClass::Exponential,
            NONPRIME_EXPONENTIAL,
        )),
        [prime] => Ok(match prime.group {
            Pi1Class::InfiniteOther => {
                Classification::single(GrowthClass::AllPolynomial, PRIME_NONSOLVABLE_ALL_POLYNOMIAL)
            }
            Pi1Class::SolvableInfinite if prime.b1 >= 2 => Classification {
                class: GrowthClass::PolynomialAtLeast(prime.b1),
                rule: VIRTUAL_BETTI_POLYNOMIAL,
                trace: vec![PRIME_SOLVABLE_PRIME_LIKE, VIRTUAL_BETTI_POLYNOMIAL],
            },
            Pi1Class::SolvableInfinite => {
                Classification::single(GrowthClass::PrimeLike, PRIME_SOLVABLE_PRIME_LIKE)
            }
            _ => Classification::single(GrowthClass::GenericOnly, FINITE_GENERIC),
        }),
    }
}

/// Inputs for classifying `M₁ # M₂` in any dimension `≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectedSum {
    pub first: Summand,
    pub second: Pi1Class,
    #[serde(default)]
    pub second_is_sphere: bool,
}

/// Growth class of `N(t)` on a connected sum `M₁ # M₂`.
pub fn classify_connected_sum(sum: &ConnectedSum) -> Result<Classification, ClassifyError> {
    use rules::*;
    let first = sum.first.group;
    let second = sum.second;
    if sum.second_is_sphere && first.is_trivial() {
        return Err(ClassifyError::DegenerateSum);
    }
    if first.is_trivial() || sum.second_is_sphere {
        return Ok(Classification::single(
            GrowthClass::Unknown,
            SUM_OUTSIDE_HYPOTHESES,
        ));
    }
    if !second.is_trivial() {
        return Ok(if first == Pi1Class::Z2 && second == Pi1Class::Z2 {
            Classification::single(GrowthClass::PrimeLike, SUM_DIHEDRAL_PRIME_LIKE)
        } else {
            Classification::single(GrowthClass::Exponential, SUM_BOTH_NONTRIVIAL_EXPONENTIAL)
        });
    }
    // M₂ simply connected and not a sphere.
    Ok(if sum.first.b1 >= 1 {
        Classification::single(GrowthClass::PrimeLike, SUM_BETTI_PRIME_LIKE)
    } else if first.is_finite() {
        Classification::single(GrowthClass::InfinitelyMany, SUM_FINITE_INFINITELY_MANY)
    } else {
        Classification::single(GrowthClass::Unknown, SUM_REMAINING_CASE)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn summand(group: Pi1Class) -> Summand {
        Summand { group, b1: 0 }
    }

    fn orientable(groups: &[Pi1Class]) -> ManifoldDescriptor {
        ManifoldDescriptor {
            orientable: true,
            summands: groups.iter().map(|&g| summand(g)).collect(),
        }
    }

    #[test]
    fn exponential_bound_examples() {
        let p = MetricParams::from_f64(1.0, 1.0).unwrap();
        let b = exponential_lower_bound(&p, &q(30, 1)).unwrap();
        assert_eq!(b.r, 10);
        assert_eq!(b.value, q(1024, 300));
        let b = exponential_lower_bound(&p, &q(3, 1)).unwrap();
        assert_eq!(b.value, q(2, 3));
        let b = exponential_lower_bound(&p, &q(59, 20)).unwrap();
        assert!(b.below_range);
        assert!(b.value.is_zero());
        // Non-multiples floor r.
        assert_eq!(exponential_lower_bound(&p, &q(32, 1)).unwrap().r, 10);
    }

    #[test]
    fn exponential_bound_is_linear_in_l1() {
        let p1 = MetricParams::from_f64(4.0, 1.0).unwrap();
        let p2 = MetricParams::from_f64(4.0, 2.0).unwrap();
        for t in [12, 50, 100, 240] {
            let a = exponential_lower_bound(&p1, &q(t, 1)).unwrap().value;
            let b = exponential_lower_bound(&p2, &q(t, 1)).unwrap().value;
            assert_eq!(b, a * q(2, 1));
        }
    }

    #[test]
    fn metric_validation() {
        assert_eq!(
            MetricParams::from_f64(0.0, 1.0),
            Err(BoundError::NonPositive("L"))
        );
        assert_eq!(
            MetricParams::from_f64(1.0, f64::NAN),
            Err(BoundError::NonPositive("L1"))
        );
        assert!(matches!(
            MetricParams::from_f64(1.0, 2.0),
            Err(BoundError::LengthOrder(..))
        ));
        let p = MetricParams::from_f64(1.0, 1.0).unwrap();
        assert!(matches!(
            exponential_lower_bound(&p, &q(1 << 30, 1)),
            Err(BoundError::TooLarge { .. })
        ));
    }

    #[test]
    fn polynomial_bound_examples() {
        let one = q(1, 1);
        assert_eq!(
            polynomial_lower_bound(2, 1, &one, &q(10, 1)).unwrap(),
            q(100, 1)
        );
        assert_eq!(
            polynomial_lower_bound(2, 2, &one, &q(10, 1)).unwrap(),
            q(50, 1)
        );
        assert!(polynomial_lower_bound(0, 1, &one, &one).is_err());
        assert!(polynomial_lower_bound(1, 0, &one, &one).is_err());
        assert!(polynomial_lower_bound(1, 1, &q(-1, 1), &one).is_err());
    }

    #[test]
    fn three_manifold_classes() {
        use Pi1Class::*;
        let c = classify_three_manifold(&orientable(&[Z2, Z2])).unwrap();
        assert_eq!(
            (c.class, c.rule.id),
            (GrowthClass::PrimeLike, "rp3-rp3-prime-like")
        );
        let c = classify_three_manifold(&orientable(&[Z2, FiniteOther { order: 3 }])).unwrap();
        assert_eq!(c.class, GrowthClass::Exponential);
        let c = classify_three_manifold(&orientable(&[InfiniteOther])).unwrap();
        assert_eq!(c.class, GrowthClass::AllPolynomial);
        let c = classify_three_manifold(&orientable(&[Trivial])).unwrap();
        assert_eq!(c.class, GrowthClass::GenericOnly);
        // Trivial summands do not count.
        let c = classify_three_manifold(&orientable(&[Z2, Trivial, Z2])).unwrap();
        assert_eq!(c.class, GrowthClass::PrimeLike);
        let c = classify_three_manifold(&orientable(&[Z2, Z2, Z2])).unwrap();
        assert_eq!(c.class, GrowthClass::Exponential);
        let c = classify_three_manifold(&orientable(&[SolvableInfinite])).unwrap();
        assert_eq!(c.class, GrowthClass::PrimeLike);
        let torus = ManifoldDescriptor {
            orientable: true,
            summands: vec![Summand {
                group: SolvableInfinite,
                b1: 3,
            }],
        };
        let c = classify_three_manifold(&torus).unwrap();
        assert_eq!(c.class, GrowthClass::PolynomialAtLeast(3));
        assert_eq!(c.trace.len(), 2);
    }

    #[test]
    fn non_orientable_uses_double_cover() {
        let d = ManifoldDescriptor {
            orientable: false,
            summands: vec![summand(Pi1Class::InfiniteOther)],
        };
        let c = classify_three_manifold(&d).unwrap();
        assert_eq!(c.class, GrowthClass::PrimeLike);
        assert_eq!(c.rule.id, "orientation-double-cover");
    }

    #[test]
    fn descriptor_validation() {
        let empty = ManifoldDescriptor {
            orientable: true,
            summands: vec![],
        };
        assert_eq!(
            classify_three_manifold(&empty),
            Err(ClassifyError::NoSummands)
        );
        let bad = ManifoldDescriptor {
            orientable: true,
            summands: vec![Summand {
                group: Pi1Class::Z2,
                b1: 1,
            }],
        };
        assert_eq!(
            classify_three_manifold(&bad),
            Err(ClassifyError::FiniteWithBetti(0))
        );
        let bad = orientable(&[Pi1Class::FiniteOther { order: 2 }]);
        assert_eq!(
            classify_three_manifold(&bad),
            Err(ClassifyError::BadOrder(0))
        );
    }

    #[test]
    fn connected_sum_cases() {
        use Pi1Class::*;
        let sum = |g1, b1, g2, sphere| ConnectedSum {
            first: Summand { group: g1, b1 },
            second: g2,
            second_is_sphere: sphere,
        };
        let c = classify_connected_sum(&sum(Z2, 0, FiniteOther { order: 3 }, false)).unwrap();
        assert_eq!(c.class, GrowthClass::Exponential);
        let c = classify_connected_sum(&sum(Z2, 0, Z2, false)).unwrap();
        assert_eq!(c.class, GrowthClass::PrimeLike);
        let c = classify_connected_sum(&sum(InfiniteOther, 1, Trivial, false)).unwrap();
        assert_eq!(c.class, GrowthClass::PrimeLike);
        let c = classify_connected_sum(&sum(InfiniteOther, 0, Trivial, false)).unwrap();
        assert_eq!(
            (c.class, c.rule.id),
            (GrowthClass::Unknown, "connected-sum-remaining-case")
        );
        let c = classify_connected_sum(&sum(Z2, 0, Trivial, false)).unwrap();
        assert_eq!(c.class, GrowthClass::InfinitelyMany);
        assert_eq!(
            classify_connected_sum(&sum(Trivial, 0, Trivial, true)),
            Err(ClassifyError::DegenerateSum)
        );
        let c = classify_connected_sum(&sum(Z2, 0, Trivial, true)).unwrap();
        assert_eq!(c.class, GrowthClass::Unknown);
    }
}
