//! Laurent polynomials over `ℤ` and `ℤ_N`, i.e. the group rings `ℤ[u, u⁻¹]`
//! and `ℤ_N[u, u⁻¹]` of the infinite cyclic group, and a certificate that
//! `u − 1` is not a unit in them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRing {
    Integers,
    /// `ℤ_N`, `N ≥ 2`.
    Modulo(u64),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Modulo(n) => write!(f, "Z_{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(CoefficientRing, CoefficientRing),
    #[error("the zero polynomial has no certificate")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("certificate check failed: {0}")]
    CertificateMismatch(&'static str),
}

/// Finite sum `Σ cᵢ uⁱ` with integer (possibly negative) exponents.
///
/// Zero coefficients are never stored; over `ℤ_N` coefficients are kept in
/// `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: CoefficientRing,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    fn check_ring(ring: CoefficientRing) -> Result<(), RingError> {
        match ring {
            CoefficientRing::Modulo(n) if n < 2 => Err(RingError::BadModulus(n)),
            _ => Ok(()),
        }
    }

    fn reduce(ring: CoefficientRing, c: BigInt) -> BigInt {
        match ring {
            CoefficientRing::Integers => c,
            CoefficientRing::Modulo(n) => {
                let n = BigInt::from(n);
                ((c % &n) + &n) % n
            }
        }
    }

    pub fn zero(ring: CoefficientRing) -> Result<Self, RingError> {
        Self::check_ring(ring)?;
        Ok(LaurentPoly {
            ring,
            terms: BTreeMap::new(),
        })
    }

    /// Builds `Σ c uᵉ` from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(ring: CoefficientRing, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(ring)?;
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    pub fn one(ring: CoefficientRing) -> Result<Self, RingError> {
        Self::from_terms(ring, [(0, 1)])
    }

    /// `u − 1`.
    pub fn u_minus_one(ring: CoefficientRing) -> Result<Self, RingError> {
        Self::from_terms(ring, [(1, 1), (0, -1)])
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        let reduced = Self::reduce(self.ring, std::mem::take(entry));
        if reduced.is_zero() {
            self.terms.remove(&e);
        } else {
            *self.terms.get_mut(&e).expect("just inserted") = reduced;
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn lowest_term(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn highest_term(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self, RingError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(self.ring, other.ring));
        }
        let mut out = Self::zero(self.ring)?;
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.checked_add(*e2).ok_or(RingError::ExponentOverflow)?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(self.ring, other.ring));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    /// Coefficient `c` as the ring element `-c`, normalized.
    fn negate_coefficient(&self, c: &BigInt) -> BigInt {
        Self::reduce(self.ring, -c.clone())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "u")?,
                1 => write!(f, "{mag}u")?,
                _ if unit => write!(f, "u^{e}")?,
                _ => write!(f, "{mag}u^{e}")?,
            }
        }
        Ok(())
    }
}

/// Witness that `(u − 1)·q ≠ 1`: the product has a nonzero lowest term
/// `−a_r u^r` and a nonzero highest term `a_s u^{s+1}` with `s + 1 > r`, so it
/// has at least two terms and cannot be the monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnitCertificate {
    pub q: LaurentPoly,
    pub product: LaurentPoly,
    /// `(r, −a_r)`.
    pub lowest: (i64, BigInt),
    /// `(s + 1, a_s)`.
    pub highest: (i64, BigInt),
}

/// Computes `(u − 1)·q`, checks it against the predicted extreme terms and
/// returns the certificate.
pub fn certify_u_minus_one_not_unit(q: &LaurentPoly) -> Result<NonUnitCertificate, RingError> {
    let (r, a_r) = q.lowest_term().ok_or(RingError::ZeroPolynomial)?;
    let (s, a_s) = q.highest_term().expect("nonzero polynomial");
    let top = s.checked_add(1).ok_or(RingError::ExponentOverflow)?;
    let lowest = (r, q.negate_coefficient(a_r));
    let highest = (top, a_s.clone());
    let product = LaurentPoly::u_minus_one(q.ring)?.multiply(q)?;
    if lowest.1.is_zero() || highest.1.is_zero() {
        return Err(RingError::CertificateMismatch(
            "witness coefficient is zero",
        ));
    }
    if product.lowest_term() != Some((lowest.0, &lowest.1)) {
        return Err(RingError::CertificateMismatch("lowest term differs"));
    }
    if product.highest_term() != Some((highest.0, &highest.1)) {
        return Err(RingError::CertificateMismatch("highest term differs"));
    }
    if product.is_one() {
        return Err(RingError::CertificateMismatch("product equals 1"));
    }
    Ok(NonUnitCertificate {
        q: q.clone(),
        product,
        lowest,
        highest,
    })
}
