//! Factor groups of a free product.
//!
//! A [`FactorGroup`] is one of the two non-trivial groups `G₁`, `G₂`. Four
//! kinds are supported: a finite group given by its multiplication table, a
//! finite cyclic group `ℤₙ`, the infinite cyclic group `ℤ`, and a free group
//! of finite rank. Each carries a generating set `E`; word length is measured
//! over `E ∪ E⁻¹`.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::FactorError;

/// Largest order accepted for a finite factor given by a table.
pub const MAX_TABLE_ORDER: usize = 4096;
/// Largest order accepted for a finite cyclic factor.
pub const MAX_CYCLIC_ORDER: u32 = 1 << 24;

const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_f00d;

/// The shape of a factor group, without its generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    FiniteTable { order: usize },
    FiniteCyclic { order: u32 },
    InfiniteCyclic,
    Free { rank: u32 },
}

/// An element of a factor group, encoded relative to its kind.
///
/// * finite kinds: an element id, `0` being the identity (for `ℤₙ`, id `k`
///   is `bᵏ`);
/// * infinite cyclic: the exponent of the generator;
/// * free: a freely reduced word, letter `±i` standing for `xᵢ^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorElement {
    Finite(u32),
    Power(i64),
    Word(Vec<i32>),
}

fn power_key(n: i64) -> (u64, bool) {
    (n.unsigned_abs(), n < 0)
}

fn free_letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for FactorElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use FactorElement::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Power(a), Power(b)) => power_key(*a).cmp(&power_key(*b)),
            (Word(a), Word(b)) => a.len().cmp(&b.len()).then_with(|| {
                a.iter()
                    .map(|&l| free_letter_key(l))
                    .cmp(b.iter().map(|&l| free_letter_key(l)))
            }),
            // Never compared in practice: both letters of a factor share a kind.
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for FactorElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FactorElement {
    fn rank(&self) -> u8 {
        match self {
            FactorElement::Finite(_) => 0,
            FactorElement::Power(_) => 1,
            FactorElement::Word(_) => 2,
        }
    }
}

impl fmt::Display for FactorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorElement::Finite(id) => write!(f, "#{id}"),
            FactorElement::Power(n) => write!(f, "^{n}"),
            FactorElement::Word(w) => {
                let parts: Vec<String> = w
                    .iter()
                    .map(|&l| {
                        if l > 0 {
                            format!("x{l}")
                        } else {
                            format!("x{}^-1", -l)
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[derive(Debug)]
enum Structure {
    Table {
        n: usize,
        table: Vec<u32>,
        inverse: Vec<u32>,
    },
    Cyclic {
        n: u32,
    },
    Integers,
    Free {
        rank: u32,
    },
}

/// One factor of the free product together with its generating set.
#[derive(Debug)]
pub struct FactorGroup {
    structure: Structure,
    generators: Vec<FactorElement>,
    symmetric: Vec<FactorElement>,
    lengths: OnceLock<Vec<u32>>,
    class_min: OnceLock<Vec<u32>>,
}

impl Clone for FactorGroup {
    fn clone(&self) -> Self {
        let structure = match &self.structure {
            Structure::Table { n, table, inverse } => Structure::Table {
                n: *n,
                table: table.clone(),
                inverse: inverse.clone(),
            },
            Structure::Cyclic { n } => Structure::Cyclic { n: *n },
            Structure::Integers => Structure::Integers,
            Structure::Free { rank } => Structure::Free { rank: *rank },
        };
        FactorGroup {
            structure,
            generators: self.generators.clone(),
            symmetric: self.symmetric.clone(),
            lengths: self.lengths.clone(),
            class_min: self.class_min.clone(),
        }
    }
}

impl PartialEq for FactorGroup {
    fn eq(&self, other: &Self) -> bool {
        let same_structure = match (&self.structure, &other.structure) {
            (Structure::Table { table: a, .. }, Structure::Table { table: b, .. }) => a == b,
            (Structure::Cyclic { n: a }, Structure::Cyclic { n: b }) => a == b,
            (Structure::Integers, Structure::Integers) => true,
            (Structure::Free { rank: a }, Structure::Free { rank: b }) => a == b,
            _ => false,
        };
        same_structure && self.generators == other.generators
    }
}

impl Eq for FactorGroup {}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FactorGroup {
    /// `ℤₙ` generated by the given exponents.
    pub fn cyclic(order: u32, generators: &[u32]) -> Result<Self, FactorError> {
        if order < 2 {
            return Err(FactorError::Trivial);
        }
        if order > MAX_CYCLIC_ORDER {
            return Err(FactorError::TooLarge(order as u64, MAX_CYCLIC_ORDER as u64));
        }
        if generators.is_empty() {
            return Err(FactorError::NoGenerators);
        }
        let mut g = order as u64;
        for (i, &e) in generators.iter().enumerate() {
            if e >= order {
                return Err(FactorError::OutOfRange(e.to_string()));
            }
            if e == 0 {
                return Err(FactorError::IdentityGenerator(i));
            }
            g = gcd(g, e as u64);
        }
        if g != 1 {
            return Err(FactorError::NotGenerating {
                reached: (order as u64 / g) as usize,
                order: order as usize,
            });
        }
        let gens = generators
            .iter()
            .map(|&e| FactorElement::Finite(e))
            .collect();
        Ok(Self::assemble(Structure::Cyclic { n: order }, gens))
    }

    /// `ℤₙ` with its standard generator `1`.
    pub fn cyclic_standard(order: u32) -> Result<Self, FactorError> {
        Self::cyclic(order, &[1])
    }

    /// `ℤ` with generator `t`.
    pub fn integers() -> Self {
        Self::assemble(Structure::Integers, vec![FactorElement::Power(1)])
    }

    /// The free group on `x₁,…,x_rank`.
    pub fn free(rank: u32) -> Result<Self, FactorError> {
        if rank == 0 {
            return Err(FactorError::ZeroRank);
        }
        let gens = (1..=rank as i32)
            .map(|i| FactorElement::Word(vec![i]))
            .collect();
        Ok(Self::assemble(Structure::Free { rank }, gens))
    }

    /// A finite group from a row-major Cayley table (`table[x][y] = x·y`),
    /// element `0` being the identity.
    pub fn from_table(table: Vec<Vec<u32>>, generators: &[u32]) -> Result<Self, FactorError> {
        let n = table.len();
        if n < 2 {
            return Err(FactorError::Trivial);
        }
        if n > MAX_TABLE_ORDER {
            return Err(FactorError::TooLarge(n as u64, MAX_TABLE_ORDER as u64));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(FactorError::TableShape { n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value as usize >= n {
                    return Err(FactorError::TableEntry { row, col, value });
                }
            }
            flat.extend_from_slice(entries);
        }
        let at = |x: usize, y: usize| flat[x * n + y] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(FactorError::IdentityLaw(x));
            }
        }
        let mut inverse = vec![0u32; n];
        for (x, slot) in inverse.iter_mut().enumerate() {
            match (0..n).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => *slot = y as u32,
                None => return Err(FactorError::NoInverse(x)),
            }
        }
        let associative = |x: usize, y: usize, z: usize| at(at(x, y), z) == at(x, at(y, z));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !associative(x, y, z) {
                            return Err(FactorError::NotAssociative(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (x, y, z) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if !associative(x, y, z) {
                    return Err(FactorError::NotAssociative(x, y, z));
                }
            }
        }
        if generators.is_empty() {
            return Err(FactorError::NoGenerators);
        }
        for (i, &g) in generators.iter().enumerate() {
            if g as usize >= n {
                return Err(FactorError::OutOfRange(g.to_string()));
            }
            if g == 0 {
                return Err(FactorError::IdentityGenerator(i));
            }
        }
        let structure = Structure::Table {
            n,
            table: flat,
            inverse,
        };
        let gens = generators
            .iter()
            .map(|&g| FactorElement::Finite(g))
            .collect();
        let group = Self::assemble(structure, gens);
        let reached = group
            .finite_lengths()
            .expect("table group is finite")
            .iter()
            .filter(|&&d| d != u32::MAX)
            .count();
        if reached != n {
            return Err(FactorError::NotGenerating { reached, order: n });
        }
        Ok(group)
    }

    fn assemble(structure: Structure, generators: Vec<FactorElement>) -> Self {
        let mut group = FactorGroup {
            structure,
            generators,
            symmetric: Vec::new(),
            lengths: OnceLock::new(),
            class_min: OnceLock::new(),
        };
        let mut symmetric: Vec<FactorElement> = Vec::new();
        for g in &group.generators {
            for e in [g.clone(), group.inverse(g)] {
                if !symmetric.contains(&e) {
                    symmetric.push(e);
                }
            }
        }
        group.symmetric = symmetric;
        group
    }

    pub fn kind(&self) -> FactorKind {
        match &self.structure {
            Structure::Table { n, .. } => FactorKind::FiniteTable { order: *n },
            Structure::Cyclic { n } => FactorKind::FiniteCyclic { order: *n },
            Structure::Integers => FactorKind::InfiniteCyclic,
            Structure::Free { rank } => FactorKind::Free { rank: *rank },
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match &self.structure {
            Structure::Table { n, .. } => Some(*n as u64),
            Structure::Cyclic { n } => Some(*n as u64),
            Structure::Integers | Structure::Free { .. } => None,
        }
    }

    /// The generating set `E`, in declaration order.
    pub fn generators(&self) -> &[FactorElement] {
        &self.generators
    }

    /// `E ∪ E⁻¹` without repetitions.
    pub fn symmetric_generators(&self) -> &[FactorElement] {
        &self.symmetric
    }

    pub fn identity(&self) -> FactorElement {
        match &self.structure {
            Structure::Table { .. } | Structure::Cyclic { .. } => FactorElement::Finite(0),
            Structure::Integers => FactorElement::Power(0),
            Structure::Free { .. } => FactorElement::Word(Vec::new()),
        }
    }

    pub fn is_identity(&self, x: &FactorElement) -> bool {
        match x {
            FactorElement::Finite(id) => *id == 0,
            FactorElement::Power(n) => *n == 0,
            FactorElement::Word(w) => w.is_empty(),
        }
    }

    /// Checks that `x` is a well-formed element of this factor.
    pub fn validate(&self, x: &FactorElement) -> Result<(), FactorError> {
        match (&self.structure, x) {
            (Structure::Table { n, .. }, FactorElement::Finite(id)) => {
                if (*id as usize) < *n {
                    Ok(())
                } else {
                    Err(FactorError::OutOfRange(id.to_string()))
                }
            }
            (Structure::Cyclic { n }, FactorElement::Finite(id)) => {
                if id < n {
                    Ok(())
                } else {
                    Err(FactorError::OutOfRange(id.to_string()))
                }
            }
            (Structure::Integers, FactorElement::Power(_)) => Ok(()),
            (Structure::Free { rank }, FactorElement::Word(w)) => {
                if let Some(&bad) = w.iter().find(|&&l| l == 0 || l.unsigned_abs() > *rank) {
                    return Err(FactorError::OutOfRange(bad.to_string()));
                }
                if w.windows(2).any(|p| p[0] == -p[1]) {
                    return Err(FactorError::NotReduced);
                }
                Ok(())
            }
            _ => Err(FactorError::KindMismatch),
        }
    }

    /// Exact product `x·y`; `None` when the product is the identity.
    ///
    /// Inputs must be valid for this factor (see [`FactorGroup::checked_multiply`]).
    pub fn multiply(&self, x: &FactorElement, y: &FactorElement) -> Option<FactorElement> {
        let product = match (&self.structure, x, y) {
            (
                Structure::Table { n, table, .. },
                FactorElement::Finite(a),
                FactorElement::Finite(b),
            ) => FactorElement::Finite(table[*a as usize * n + *b as usize]),
            (Structure::Cyclic { n }, FactorElement::Finite(a), FactorElement::Finite(b)) => {
                FactorElement::Finite(((*a as u64 + *b as u64) % *n as u64) as u32)
            }
            (Structure::Integers, FactorElement::Power(a), FactorElement::Power(b)) => {
                FactorElement::Power(a.checked_add(*b).expect("exponent overflow"))
            }
            (Structure::Free { .. }, FactorElement::Word(a), FactorElement::Word(b)) => {
                let mut out = a.clone();
                for &l in b {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                FactorElement::Word(out)
            }
            _ => panic!("factor element kind does not match factor kind"),
        };
        if self.is_identity(&product) {
            None
        } else {
            Some(product)
        }
    }

    /// [`FactorGroup::multiply`] with validation of both operands.
    pub fn checked_multiply(
        &self,
        x: &FactorElement,
        y: &FactorElement,
    ) -> Result<Option<FactorElement>, FactorError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.multiply(x, y))
    }

    pub fn inverse(&self, x: &FactorElement) -> FactorElement {
        match (&self.structure, x) {
            (Structure::Table { inverse, .. }, FactorElement::Finite(a)) => {
                FactorElement::Finite(inverse[*a as usize])
            }
            (Structure::Cyclic { n }, FactorElement::Finite(a)) => {
                FactorElement::Finite(if *a == 0 { 0 } else { n - a })
            }
            (Structure::Integers, FactorElement::Power(a)) => FactorElement::Power(-a),
            (Structure::Free { .. }, FactorElement::Word(w)) => {
                FactorElement::Word(w.iter().rev().map(|l| -l).collect())
            }
            _ => panic!("factor element kind does not match factor kind"),
        }
    }

    /// `xᵏ` for any integer `k`; `None` when it is the identity.
    pub fn power(&self, x: &FactorElement, k: i64) -> Option<FactorElement> {
        if let (Structure::Integers, FactorElement::Power(a)) = (&self.structure, x) {
            let p = a.checked_mul(k).expect("exponent overflow");
            return (p != 0).then_some(FactorElement::Power(p));
        }
        let base = if k < 0 { self.inverse(x) } else { x.clone() };
        let mut exp = k.unsigned_abs();
        if let Some(order) = self.order() {
            exp %= order;
        }
        let mut acc = self.identity();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &sq).unwrap_or_else(|| self.identity());
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.multiply(&sq, &sq).unwrap_or_else(|| self.identity());
            }
        }
        (!self.is_identity(&acc)).then_some(acc)
    }

    fn finite_order(&self) -> Option<usize> {
        self.order().map(|n| n as usize)
    }

    /// Breadth-first distances from the identity in the Cayley graph over
    /// `E ∪ E⁻¹`; unreachable elements hold `u32::MAX`.
    fn finite_lengths(&self) -> Option<&[u32]> {
        let n = self.finite_order()?;
        Some(self.lengths.get_or_init(|| {
            let mut dist = vec![u32::MAX; n];
            let mut queue = VecDeque::new();
            dist[0] = 0;
            queue.push_back(0u32);
            while let Some(x) = queue.pop_front() {
                let here = FactorElement::Finite(x);
                for s in &self.symmetric {
                    let next = match self.multiply(&here, s) {
                        Some(FactorElement::Finite(id)) => id,
                        None => 0,
                        Some(_) => unreachable!(),
                    };
                    if dist[next as usize] == u32::MAX {
                        dist[next as usize] = dist[x as usize] + 1;
                        queue.push_back(next);
                    }
                }
            }
            dist
        }))
    }

    /// Minimal number of elements of `E ∪ E⁻¹` whose product is `x`.
    pub fn word_length(&self, x: &FactorElement) -> u64 {
        match x {
            FactorElement::Finite(id) => {
                self.finite_lengths()
                    .expect("finite element in finite factor")[*id as usize] as u64
            }
            FactorElement::Power(n) => n.unsigned_abs(),
            FactorElement::Word(w) => w.len() as u64,
        }
    }

    fn class_minimum_table(&self) -> Option<&[u32]> {
        let Structure::Table { n, table, inverse } = &self.structure else {
            return None;
        };
        let n = *n;
        Some(self.class_min.get_or_init(|| {
            let mut min = vec![u32::MAX; n];
            for x in 0..n {
                if min[x] != u32::MAX {
                    continue;
                }
                let conj: Vec<usize> = (0..n)
                    .map(|h| {
                        let hx = table[h * n + x] as usize;
                        table[hx * n + inverse[h] as usize] as usize
                    })
                    .collect();
                let m = *conj.iter().min().expect("nonempty group") as u32;
                for c in conj {
                    min[c] = m;
                }
            }
            min
        }))
    }

    /// Canonical representative of the factor-conjugacy class of `x`.
    ///
    /// Finite tables: the minimal element id among conjugates. Abelian kinds:
    /// `x` itself. Free: the minimal rotation of the cyclically reduced word.
    pub fn conjugacy_representative(&self, x: &FactorElement) -> FactorElement {
        match (&self.structure, x) {
            (Structure::Table { .. }, FactorElement::Finite(id)) => {
                FactorElement::Finite(self.class_minimum_table().expect("table")[*id as usize])
            }
            (Structure::Free { .. }, FactorElement::Word(w)) => {
                let mut core: &[i32] = w;
                while core.len() >= 2 && core[0] == -core[core.len() - 1] {
                    core = &core[1..core.len() - 1];
                }

                (0..core.len().max(1))
                    .map(|s| {
                        let mut r = core[s.min(core.len())..].to_vec();
                        r.extend_from_slice(&core[..s.min(core.len())]);
                        FactorElement::Word(r)
                    })
                    .min()
                    .expect("at least one rotation")
            }
            _ => x.clone(),
        }
    }

    /// Whether some `h` in this factor satisfies `h·x·h⁻¹ = y`.
    pub fn are_conjugate(&self, x: &FactorElement, y: &FactorElement) -> bool {
        match &self.structure {
            Structure::Cyclic { .. } | Structure::Integers => x == y,
            _ => self.conjugacy_representative(x) == self.conjugacy_representative(y),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FactorGroup {
        // Permutations of {0,1,2} in the order e, (012), (021), (01), (02), (12).
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        FactorGroup::from_table(table, &[1, 3]).unwrap()
    }

    #[test]
    fn cyclic_multiplication() {
        let z3 = FactorGroup::cyclic_standard(3).unwrap();
        let b = FactorElement::Finite(1);
        let b2 = FactorElement::Finite(2);
        assert_eq!(z3.multiply(&b, &b2), None);
        assert_eq!(z3.multiply(&b, &b), Some(b2.clone()));
        let z = FactorGroup::integers();
        assert_eq!(
            z.multiply(&FactorElement::Power(3), &FactorElement::Power(-1)),
            Some(FactorElement::Power(2))
        );
    }

    #[test]
    fn word_lengths() {
        let z3 = FactorGroup::cyclic_standard(3).unwrap();
        assert_eq!(z3.word_length(&FactorElement::Finite(2)), 1);
        let z2 = FactorGroup::cyclic_standard(2).unwrap();
        assert_eq!(z2.word_length(&FactorElement::Finite(1)), 1);
        let z = FactorGroup::integers();
        assert_eq!(z.word_length(&FactorElement::Power(-4)), 4);
        let z7 = FactorGroup::cyclic_standard(7).unwrap();
        let lens: Vec<u64> = (0..7)
            .map(|k| z7.word_length(&FactorElement::Finite(k)))
            .collect();
        assert_eq!(lens, vec![0, 1, 2, 3, 3, 2, 1]);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let z3 = FactorGroup::cyclic_standard(3).unwrap();
        assert!(matches!(
            z3.checked_multiply(&FactorElement::Finite(5), &FactorElement::Finite(1)),
            Err(FactorError::OutOfRange(_))
        ));
        assert_eq!(
            z3.validate(&FactorElement::Power(1)),
            Err(FactorError::KindMismatch)
        );
    }

    #[test]
    fn conjugacy_in_factors() {
        let z3 = FactorGroup::cyclic_standard(3).unwrap();
        assert!(!z3.are_conjugate(&FactorElement::Finite(1), &FactorElement::Finite(2)));
        assert!(z3.are_conjugate(&FactorElement::Finite(1), &FactorElement::Finite(1)));
        let s3 = s3();
        assert!(s3.are_conjugate(&FactorElement::Finite(1), &FactorElement::Finite(2)));
        assert!(s3.are_conjugate(&FactorElement::Finite(3), &FactorElement::Finite(5)));
        assert!(!s3.are_conjugate(&FactorElement::Finite(1), &FactorElement::Finite(3)));
        let f2 = FactorGroup::free(2).unwrap();
        assert!(f2.are_conjugate(
            &FactorElement::Word(vec![1, 2]),
            &FactorElement::Word(vec![2, 1])
        ));
        assert!(f2.are_conjugate(
            &FactorElement::Word(vec![-2, 1, 2]),
            &FactorElement::Word(vec![1])
        ));
        assert!(!f2.are_conjugate(
            &FactorElement::Word(vec![1, 2]),
            &FactorElement::Word(vec![1, -2])
        ));
    }

    #[test]
    fn conjugacy_matches_exhaustive_search_on_s3() {
        let g = s3();
        for x in 0..6 {
            for y in 0..6 {
                let (x, y) = (FactorElement::Finite(x), FactorElement::Finite(y));
                let brute = (0..6).any(|h| {
                    let h = FactorElement::Finite(h);
                    let hx = g.multiply(&h, &x).unwrap_or(g.identity());
                    let hxh = g.multiply(&hx, &g.inverse(&h)).unwrap_or(g.identity());
                    hxh == y
                });
                assert_eq!(g.are_conjugate(&x, &y), brute);
            }
        }
    }

    #[test]
    fn invalid_tables() {
        assert_eq!(
            FactorGroup::from_table(vec![vec![0]], &[0]),
            Err(FactorError::Trivial)
        );
        // Not a group: 1·1 = 1 leaves 1 without inverse.
        assert_eq!(
            FactorGroup::from_table(vec![vec![0, 1], vec![1, 1]], &[1]),
            Err(FactorError::NoInverse(1))
        );
        assert_eq!(
            FactorGroup::from_table(vec![vec![0, 1], vec![1, 0]], &[0]),
            Err(FactorError::IdentityGenerator(0))
        );
        // Z2 x Z2 is not generated by one involution.
        let klein = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        assert_eq!(
            FactorGroup::from_table(klein.clone(), &[1]),
            Err(FactorError::NotGenerating {
                reached: 2,
                order: 4
            })
        );
        assert!(FactorGroup::from_table(klein, &[1, 2]).is_ok());
        assert!(matches!(
            FactorGroup::cyclic(6, &[2, 4]),
            Err(FactorError::NotGenerating { .. })
        ));
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A Latin square with identity 0 and inverses that is not associative.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FactorGroup::from_table(table, &[1, 2]),
            Err(FactorError::NotAssociative(..))
        ));
    }

    #[test]
    fn power_handles_signs_and_orders() {
        let z3 = FactorGroup::cyclic_standard(3).unwrap();
        let b = FactorElement::Finite(1);
        assert_eq!(z3.power(&b, 2), Some(FactorElement::Finite(2)));
        assert_eq!(z3.power(&b, -1), Some(FactorElement::Finite(2)));
        assert_eq!(z3.power(&b, 3), None);
        let z = FactorGroup::integers();
        assert_eq!(
            z.power(&FactorElement::Power(1), -5),
            Some(FactorElement::Power(-5))
        );
        let f = FactorGroup::free(1).unwrap();
        assert_eq!(
            f.power(&FactorElement::Word(vec![1]), -2),
            Some(FactorElement::Word(vec![-1, -1]))
        );
    }

    #[test]
    fn element_order_is_total_and_stable() {
        let mut powers: Vec<FactorElement> = [-2, 1, 0, 2, -1]
            .iter()
            .map(|&n| FactorElement::Power(n))
            .collect();
        powers.sort();
        assert_eq!(
            powers,
            [0, 1, -1, 2, -2]
                .iter()
                .map(|&n| FactorElement::Power(n))
                .collect::<Vec<_>>()
        );
        assert!(FactorElement::Word(vec![2]) < FactorElement::Word(vec![1, 1]));
        assert!(FactorElement::Word(vec![1, 2]) < FactorElement::Word(vec![-1, 2]));
    }

    #[test]
    fn symmetric_generators_deduplicate() {
        let z2 = FactorGroup::cyclic_standard(2).unwrap();
        assert_eq!(z2.symmetric_generators().len(), 1);
        let z3 = FactorGroup::cyclic_standard(3).unwrap();
        assert_eq!(z3.symmetric_generators().len(), 2);
    }
}
