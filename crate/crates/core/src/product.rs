//! Normal-form calculus in a free product `G = G₁ ∗ G₂`.
//!
//! Every element has a unique normal form: an alternating sequence of
//! non-identity letters from the two factors. Multiplication cancels mutually
//! inverse boundary letters and consolidates same-factor boundary letters,
//! so equality of elements is equality of letter sequences.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FactorError, ProductError};
use crate::factor::{FactorElement, FactorGroup, FactorKind};

/// Which factor a letter belongs to. Orders `First < Second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::First => 0,
            Side::Second => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// A non-identity element of one factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub factor: Side,
    pub value: FactorElement,
}

impl Letter {
    pub fn new(factor: Side, value: FactorElement) -> Self {
        Letter { factor, value }
    }
}

/// Reduced alternating word; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    letters: Vec<Letter>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Syllable length `|g|`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        NormalForm { letters }
    }
}

/// `original = conjugator⁻¹ · result · conjugator`, equivalently
/// `result = conjugator · original · conjugator⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugation {
    pub conjugator: NormalForm,
    pub result: NormalForm,
}

/// Canonical representative of a conjugacy class.
///
/// Length ≥ 2: the lexicographically least rotation of the cyclically
/// reduced form. Length 1: the factor-conjugacy representative of the single
/// letter. Identity: empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyClassKey(Vec<Letter>);

impl ConjugacyClassKey {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_normal_form(self) -> NormalForm {
        NormalForm::from_letters_unchecked(self.0)
    }
}

/// Names used to read and print words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Naming {
    /// One name per generator of the factor, in generator order.
    pub generators: Vec<String>,
    /// Optional element labels for finite-table factors, indexed by id.
    pub elements: Option<Vec<String>>,
}

/// The free product of two factor groups with their generating sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeProduct {
    factors: [FactorGroup; 2],
    naming: [Naming; 2],
}

fn default_names(prefix: &str, count: usize) -> Vec<String> {
    if count == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=count).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// Generator names must be nonempty and free of whitespace and `^`.
pub fn is_valid_generator_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && name
            .chars()
            .all(|c| !c.is_whitespace() && c != '^' && !c.is_control())
}

impl FreeProduct {
    /// Free product with default generator names (`a…` for the first
    /// factor, `b…` for the second).
    pub fn new(first: FactorGroup, second: FactorGroup) -> Self {
        let naming = [
            Naming {
                generators: default_names("a", first.generators().len()),
                elements: None,
            },
            Naming {
                generators: default_names("b", second.generators().len()),
                elements: None,
            },
        ];
        FreeProduct {
            factors: [first, second],
            naming,
        }
    }

    /// Free product with explicit names. Fails on duplicate or malformed names
    /// or a name count that does not match the generating set.
    pub fn with_naming(
        first: FactorGroup,
        first_naming: Naming,
        second: FactorGroup,
        second_naming: Naming,
    ) -> Result<Self, String> {
        let mut seen = std::collections::HashSet::new();
        for (group, naming) in [(&first, &first_naming), (&second, &second_naming)] {
            if naming.generators.len() != group.generators().len() {
                return Err(format!(
                    "expected {} generator names, got {}",
                    group.generators().len(),
                    naming.generators.len()
                ));
            }
            for name in &naming.generators {
                if !is_valid_generator_name(name) {
                    return Err(format!("invalid generator name `{name}`"));
                }
                if !seen.insert(name.clone()) {
                    return Err(format!("duplicate generator name `{name}`"));
                }
            }
            if let Some(labels) = &naming.elements {
                if Some(labels.len() as u64) != group.order() {
                    return Err("element label count does not match the group order".into());
                }
            }
        }
        Ok(FreeProduct {
            factors: [first, second],
            naming: [first_naming, second_naming],
        })
    }

    /// `ℤ_m ∗ ℤ_n` with standard generators `a`, `b`.
    pub fn cyclic_pair(m: u32, n: u32) -> Result<Self, FactorError> {
        Ok(FreeProduct::new(
            FactorGroup::cyclic_standard(m)?,
            FactorGroup::cyclic_standard(n)?,
        ))
    }

    /// `ℤ ∗ ℤ`, the free group of rank two.
    pub fn free_rank_two() -> Self {
        FreeProduct::new(FactorGroup::integers(), FactorGroup::integers())
    }

    pub fn factor(&self, side: Side) -> &FactorGroup {
        &self.factors[side.index()]
    }

    pub fn naming(&self, side: Side) -> &Naming {
        &self.naming[side.index()]
    }

    /// Single-letter normal form, or the identity when `value` is trivial.
    pub fn element(&self, side: Side, value: FactorElement) -> Result<NormalForm, FactorError> {
        self.factor(side).validate(&value)?;
        if self.factor(side).is_identity(&value) {
            Ok(NormalForm::identity())
        } else {
            Ok(NormalForm::from_letters_unchecked(vec![Letter::new(
                side, value,
            )]))
        }
    }

    /// Builds a normal form from letters, checking every invariant.
    pub fn normal_form(&self, letters: Vec<Letter>) -> Result<NormalForm, ProductError> {
        for (index, letter) in letters.iter().enumerate() {
            let f = self.factor(letter.factor);
            f.validate(&letter.value)
                .map_err(|source| ProductError::Letter { index, source })?;
            if f.is_identity(&letter.value) {
                return Err(ProductError::IdentityLetter(index));
            }
            if index > 0 && letters[index - 1].factor == letter.factor {
                return Err(ProductError::NotAlternating(index - 1, index));
            }
        }
        Ok(NormalForm::from_letters_unchecked(letters))
    }

    pub fn validate(&self, g: &NormalForm) -> Result<(), ProductError> {
        self.normal_form(g.letters.clone()).map(|_| ())
    }

    /// The letters of `E ∪ E⁻¹` over both factors.
    pub fn generator_letters(&self) -> Vec<Letter> {
        [Side::First, Side::Second]
            .into_iter()
            .flat_map(|side| {
                self.factor(side)
                    .symmetric_generators()
                    .iter()
                    .map(move |v| Letter::new(side, v.clone()))
            })
            .collect()
    }

    /// Unique normal form of `g·h`.
    pub fn multiply(&self, g: &NormalForm, h: &NormalForm) -> NormalForm {
        let mut out = g.letters.clone();
        out.reserve(h.letters.len());
        let mut rest = h.letters.iter();
        let mut pending = rest.next();
        while let (Some(next), Some(last)) = (pending, out.last_mut()) {
            if last.factor != next.factor {
                break;
            }
            match self.factor(next.factor).multiply(&last.value, &next.value) {
                None => {
                    out.pop();
                    pending = rest.next();
                }
                Some(a) => {
                    last.value = a;
                    pending = rest.next();
                    break;
                }
            }
        }
        out.extend(pending.into_iter().cloned());
        out.extend(rest.cloned());
        NormalForm::from_letters_unchecked(out)
    }

    /// [`FreeProduct::multiply`] after validating both operands against this
    /// product's factors.
    pub fn checked_multiply(
        &self,
        g: &NormalForm,
        h: &NormalForm,
    ) -> Result<NormalForm, ProductError> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(self.multiply(g, h))
    }

    pub fn multiply_letter(&self, g: &NormalForm, letter: &Letter) -> NormalForm {
        self.multiply(g, &NormalForm::from_letters_unchecked(vec![letter.clone()]))
    }

    pub fn invert(&self, g: &NormalForm) -> NormalForm {
        let letters = g
            .letters
            .iter()
            .rev()
            .map(|l| Letter::new(l.factor, self.factor(l.factor).inverse(&l.value)))
            .collect();
        NormalForm::from_letters_unchecked(letters)
    }

    /// `h·g·h⁻¹`.
    pub fn conjugate(&self, h: &NormalForm, g: &NormalForm) -> NormalForm {
        self.multiply(&self.multiply(h, g), &self.invert(h))
    }

    /// `gᵏ` for any integer `k`.
    pub fn power(&self, g: &NormalForm, k: i64) -> NormalForm {
        let base = if k < 0 { self.invert(g) } else { g.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = NormalForm::identity();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.multiply(&sq, &sq);
            }
        }
        acc
    }

    /// `|g| ≤ 1`, or the first and last letters lie in different factors.
    pub fn is_cyclically_reduced(&self, g: &NormalForm) -> bool {
        match (g.letters.first(), g.letters.last()) {
            _ if g.len() <= 1 => true,
            (Some(first), Some(last)) => first.factor != last.factor,
            _ => true,
        }
    }

    /// `|g| ≤ 1`, or the first letter is not the inverse of the last.
    pub fn is_weakly_reduced(&self, g: &NormalForm) -> bool {
        if g.len() <= 1 {
            return true;
        }
        let first = &g.letters[0];
        let last = &g.letters[g.len() - 1];
        first.factor != last.factor
            || self
                .factor(first.factor)
                .multiply(&last.value, &first.value)
                .is_some()
    }

    /// Conjugates `g` to a cyclically reduced element.
    ///
    /// Mutually inverse boundary pairs `g₁ … g₁⁻¹` are stripped first. If the
    /// remaining core `c₁ … c_m` still starts and ends in the same factor, a
    /// final conjugation by `c₁` consolidates `c_m·c₁` into one letter.
    pub fn cyclically_reduce(&self, g: &NormalForm) -> Conjugation {
        let letters = &g.letters;
        let r = letters.len();
        let mut s = 0;
        while r - 2 * s >= 2 {
            let first = &letters[s];
            let last = &letters[r - 1 - s];
            if first.factor == last.factor
                && self
                    .factor(first.factor)
                    .multiply(&last.value, &first.value)
                    .is_none()
            {
                s += 1;
            } else {
                break;
            }
        }
        let core = &letters[s..r - s];
        let mut prefix: Vec<Letter> = letters[..s].to_vec();
        let result = if core.len() >= 2 && core[0].factor == core[core.len() - 1].factor {
            let first = &core[0];
            let last = &core[core.len() - 1];
            let merged = self
                .factor(first.factor)
                .multiply(&last.value, &first.value)
                .expect("weakly reduced core has a nontrivial boundary product");
            let mut out = core[1..core.len() - 1].to_vec();
            out.push(Letter::new(first.factor, merged));
            prefix.push(first.clone());
            out
        } else {
            core.to_vec()
        };
        // original = P · result · P⁻¹ with P = prefix; conjugator is P⁻¹.
        let prefix = NormalForm::from_letters_unchecked(prefix);
        Conjugation {
            conjugator: self.invert(&prefix),
            result: NormalForm::from_letters_unchecked(result),
        }
    }

    /// Decides whether `g` and `h` are conjugate in `G₁ ∗ G₂`.
    pub fn are_conjugate(&self, g: &NormalForm, h: &NormalForm) -> bool {
        let g = self.cyclically_reduce(g).result;
        let h = self.cyclically_reduce(h).result;
        if g.len() != h.len() {
            return false;
        }
        match g.len() {
            0 => true,
            1 => {
                let (x, y) = (&g.letters[0], &h.letters[0]);
                x.factor == y.factor && self.factor(x.factor).are_conjugate(&x.value, &y.value)
            }
            n => (0..n).any(|s| {
                g.letters[s..]
                    .iter()
                    .chain(&g.letters[..s])
                    .eq(h.letters.iter())
            }),
        }
    }

    /// Canonical key with `key(g) = key(h)` exactly when `g`, `h` are conjugate.
    pub fn canonical_class_key(&self, g: &NormalForm) -> ConjugacyClassKey {
        let reduced = self.cyclically_reduce(g).result;
        match reduced.len() {
            0 => ConjugacyClassKey(Vec::new()),
            1 => {
                let l = &reduced.letters[0];
                let rep = self.factor(l.factor).conjugacy_representative(&l.value);
                ConjugacyClassKey(vec![Letter::new(l.factor, rep)])
            }
            _ => ConjugacyClassKey(least_rotation(&reduced.letters)),
        }
    }

    /// `w_E(g)`: the sum of the factor word lengths of the letters.
    pub fn word_length(&self, g: &NormalForm) -> u64 {
        g.letters
            .iter()
            .map(|l| self.factor(l.factor).word_length(&l.value))
            .sum()
    }

    /// Human-readable rendering using the generator names.
    pub fn render(&self, g: &NormalForm) -> String {
        if g.is_identity() {
            return "1".to_string();
        }
        g.letters
            .iter()
            .map(|l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_letter(&self, letter: &Letter) -> String {
        let naming = self.naming(letter.factor);
        let factor = self.factor(letter.factor);
        let power = |name: &str, e: i64| {
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        };
        match (&factor.kind(), &letter.value) {
            (FactorKind::FiniteTable { .. }, FactorElement::Finite(id)) => {
                if let Some(labels) = &naming.elements {
                    return labels[*id as usize].clone();
                }
                if let Some(pos) = factor
                    .generators()
                    .iter()
                    .position(|e| *e == FactorElement::Finite(*id))
                {
                    return naming.generators[pos].clone();
                }
                format!("#{id}")
            }
            (FactorKind::FiniteCyclic { order }, FactorElement::Finite(id)) => {
                // Express as a power of the first generator when it is a unit.
                let gen = match factor.generators()[0] {
                    FactorElement::Finite(g) => g as i64,
                    _ => unreachable!(),
                };
                let n = *order as i64;
                match mod_inverse(gen, n) {
                    Some(inv) => power(&naming.generators[0], (*id as i64 * inv) % n),
                    None => format!("#{id}"),
                }
            }
            (FactorKind::InfiniteCyclic, FactorElement::Power(e)) => {
                power(&naming.generators[0], *e)
            }
            (FactorKind::Free { .. }, FactorElement::Word(w)) => {
                let parts: Vec<String> = w
                    .iter()
                    .map(|&l| {
                        power(
                            &naming.generators[l.unsigned_abs() as usize - 1],
                            l.signum() as i64,
                        )
                    })
                    .collect();
                if parts.len() == 1 {
                    parts.into_iter().next().unwrap()
                } else {
                    format!("({})", parts.join(" "))
                }
            }
            _ => format!("{}", letter.value),
        }
    }
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(n), n);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n))
}

/// Least rotation of a cyclic sequence under the `Ord` of its items.
pub(crate) fn least_rotation<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let n = items.len();
    let rotation = |s: usize| items[s..].iter().chain(&items[..s]);
    let mut best = 0;
    for s in 1..n {
        if rotation(s).cmp(rotation(best)) == Ordering::Less {
            best = s;
        }
    }
    rotation(best).cloned().collect()
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}
