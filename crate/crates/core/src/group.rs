//! Isomorphism types of finite abelian groups.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::primes::{factorize, is_prime};

/// A finite abelian group up to isomorphism, stored as its invariant factors
/// `d_1 | d_2 | ... | d_n` with every `d_i >= 2`. The trivial group has no factors.
///
/// Ordering is by group order first, then lexicographically on the factor list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupType {
    factors: Vec<u64>,
}

/// The p-primary parts of a group: for each prime dividing the order, the partition
/// `λ_1 >= λ_2 >= ...` such that the p-part is `Z_{p^λ_1} x Z_{p^λ_2} x ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PrimaryDecomposition {
    pub components: BTreeMap<u64, Vec<u32>>,
}

impl GroupType {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        canonicalize(&[n])
    }

    /// `Z_p^n`.
    pub fn elementary(p: u64, n: usize) -> Self {
        GroupType { factors: vec![p; n] }
    }

    /// Builds a type from a list that must already be a valid invariant-factor chain.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument(format!(
                "invariant factors must be >= 2, got {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!(
                "{factors:?} is not a divisibility chain"
            )));
        }
        Ok(GroupType { factors })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Largest element order.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Size of a minimal generating set; equals the number of invariant factors.
    pub fn min_generators(&self) -> usize {
        self.factors.len()
    }

    pub fn primary(&self) -> PrimaryDecomposition {
        let mut components: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                components.entry(p).or_default().push(e);
            }
        }
        for parts in components.values_mut() {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        PrimaryDecomposition { components }
    }

    /// The p-primary components as groups of their own, ordered by prime.
    pub fn primary_components(&self) -> Vec<(u64, GroupType)> {
        self.primary()
            .components
            .into_iter()
            .map(|(p, parts)| {
                let moduli: Vec<u64> = parts.iter().map(|&e| p.pow(e)).collect();
                (p, canonicalize(&moduli))
            })
            .collect()
    }

    pub fn is_p_group(&self) -> bool {
        self.primary().components.len() <= 1
    }

    /// True iff every invariant factor is squarefree, i.e. every p-part is `Z_p^k`.
    pub fn is_elementary(&self) -> bool {
        self.factors
            .iter()
            .all(|&d| factorize(d).iter().all(|&(_, e)| e == 1))
    }

    /// Number of cyclic factors in the p-part (its rank).
    pub fn dim_p(&self, p: u64) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.factors.iter().filter(|&&d| d % p == 0).count())
    }

    pub fn product(&self, other: &GroupType) -> GroupType {
        let moduli: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        canonicalize(&moduli)
    }
}

impl PrimaryDecomposition {
    pub fn to_group_type(&self) -> GroupType {
        let moduli: Vec<u64> = self
            .components
            .iter()
            .flat_map(|(&p, parts)| parts.iter().map(move |&e| p.pow(e)))
            .collect();
        canonicalize(&moduli)
    }
}

/// Invariant-factor form of `Z_{m_1} x ... x Z_{m_k}`. Factors equal to 1 vanish.
pub fn canonicalize(moduli: &[u64]) -> GroupType {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in moduli {
        assert!(m >= 1, "moduli must be positive");
        for (p, e) in factorize(m) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; rank];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // the largest exponent goes into the last factor
        for (i, e) in exps.into_iter().enumerate() {
            factors[rank - 1 - i] *= p.pow(e);
        }
    }
    GroupType { factors }
}

pub fn from_primary(decomposition: &PrimaryDecomposition) -> GroupType {
    decomposition.to_group_type()
}

/// All partitions of `n` as nonincreasing part lists, in lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Every isomorphism type of order `n`, sorted.
pub fn types_of_order(n: u64) -> Vec<GroupType> {
    assert!(n >= 1);
    let per_prime: Vec<Vec<(u64, Vec<u32>)>> = factorize(n)
        .into_iter()
        .map(|(p, e)| partitions(e).into_iter().map(|lam| (p, lam)).collect())
        .collect();
    let mut out: Vec<GroupType> = per_prime
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            PrimaryDecomposition {
                components: choice.into_iter().collect(),
            }
            .to_group_type()
        })
        .collect();
    if out.is_empty() {
        // n = 1: the cartesian product of zero lists yields nothing
        out.push(GroupType::trivial());
    }
    out.sort();
    out
}

/// Every isomorphism type of order at most `max_order`, sorted by (order, factors).
pub fn types_up_to(max_order: u64) -> Vec<GroupType> {
    (1..=max_order).flat_map(types_of_order).collect()
}

impl Ord for GroupType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for GroupType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated invariant factors; the trivial group prints as `1`.
impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        write!(f, "{}", self.factors.iter().join(","))
    }
}

impl fmt::Debug for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupType({self})")
    }
}

/// Parses `int(,int)*` with every integer >= 1 and canonicalizes the product.
impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let moduli = parse_moduli(s)?;
        Ok(canonicalize(&moduli))
    }
}

pub(crate) fn parse_moduli(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty group specification".into()));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            match tok.parse::<u64>() {
                Ok(0) => Err(Error::Parse(format!("modulus must be >= 1, got `{tok}`"))),
                Ok(m) => Ok(m),
                Err(_) => Err(Error::Parse(format!("`{tok}` is not a positive integer"))),
            }
        })
        .collect()
}
