//! Homomorphism and subgroup counts between finite abelian groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::functions::mu_closed;
use crate::group::{types_of_order, GroupType};
use crate::lattice::{lattice_summary, ConcreteGroup, DEFAULT_MAX_LATTICE_ORDER};
use crate::primes::is_prime;

/// Counts indexed by order: elements of each order, or subgroups of each order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OrderProfile(pub BTreeMap<u64, u64>);

impl OrderProfile {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn get(&self, d: u64) -> u64 {
        self.0.get(&d).copied().unwrap_or(0)
    }
}

impl fmt::Display for OrderProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|(d, c)| format!("{d}:{c}")).join(", "))
    }
}

impl fmt::Debug for OrderProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderProfile{self}")
    }
}

/// `|Hom(A, B)| = Π_{i,j} gcd(a_i, b_j)` over the invariant factors.
pub fn hom_count(a: &GroupType, b: &GroupType) -> BigUint {
    let mut acc = BigUint::one();
    for &x in a.invariant_factors() {
        for &y in b.invariant_factors() {
            acc *= x.gcd(&y);
        }
    }
    acc
}

/// Number of d-dimensional subspaces of `F_p^n`:
/// `Π_{i<d} (p^n - p^i) / Π_{i<d} (p^d - p^i)`.
pub fn gaussian_subspace_count(p: u64, n: u32, d: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d > n {
        return Ok(BigUint::zero());
    }
    let p = BigUint::from(p);
    let pow = |e: u32| p.pow(e);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        num *= pow(n) - pow(i);
        den *= pow(d) - pow(i);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Element-order profile, by direct enumeration of a concrete model.
pub fn element_order_profile(a: &GroupType) -> OrderProfile {
    let model = ConcreteGroup::from_type(a);
    let mut profile = BTreeMap::new();
    for x in model.elements() {
        let order = model.element_order(&x).expect("element of its own group");
        *profile.entry(order).or_insert(0) += 1;
    }
    OrderProfile(profile)
}

/// Compares element-order profiles. Finite abelian groups with the same number of
/// elements of every order are isomorphic, so this decides isomorphism.
pub fn isomorphic_by_element_orders(a: &GroupType, b: &GroupType) -> bool {
    element_order_profile(a) == element_order_profile(b)
}

/// The smallest `d <= cyclic_bound` with `|Hom(A, Z_d)| != |Hom(B, Z_d)|`.
pub fn distinguishing_cyclic(a: &GroupType, b: &GroupType, cyclic_bound: u64) -> Option<u64> {
    (1..=cyclic_bound).find(|&d| {
        let z = GroupType::cyclic(d);
        hom_count(a, &z) != hom_count(b, &z)
    })
}

/// True iff `|Hom(A, Z_d)| = |Hom(B, Z_d)|` for every `d <= cyclic_bound`.
pub fn yoneda_numeric_check(a: &GroupType, b: &GroupType, cyclic_bound: u64) -> bool {
    distinguishing_cyclic(a, b, cyclic_bound).is_none()
}

/// Lattice-based counts, memoized per pair of types.
pub struct Counter {
    max_lattice_order: u64,
    mono_memo: Mutex<HashMap<(GroupType, GroupType), BigUint>>,
}

impl Default for Counter {
    fn default() -> Self {
        Counter::new(DEFAULT_MAX_LATTICE_ORDER)
    }
}

impl Counter {
    pub fn new(max_lattice_order: u64) -> Self {
        Counter { max_lattice_order, mono_memo: Mutex::default() }
    }

    /// `|Mono(A, B)| = Σ_{H ≤ A} μ(A/H) |Hom(H, B)|`.
    pub fn mono_count(&self, a: &GroupType, b: &GroupType) -> Result<BigUint> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.mono_memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let summary = lattice_summary(a, self.max_lattice_order)?;
        let mut acc = BigInt::zero();
        for e in &summary.entries {
            let mu = mu_closed(&e.quotient);
            if mu.is_zero() {
                continue;
            }
            acc += mu.to_integer() * BigInt::from(hom_count(&e.sub, b)) * e.count;
        }
        if acc.is_negative() {
            return Err(Error::Internal(format!("negative monomorphism count {acc} for {a} -> {b}")));
        }
        let value = acc.to_biguint().expect("nonnegative");
        self.mono_memo.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// `|Epi(A, B)| = |Mono(B, A)|`.
    pub fn epi_count(&self, a: &GroupType, b: &GroupType) -> Result<BigUint> {
        self.mono_count(b, a)
    }

    pub fn aut_count(&self, b: &GroupType) -> Result<BigUint> {
        self.mono_count(b, b)
    }

    /// Number of subgroups of `A` isomorphic to `B`: `|Mono(B, A)| / |Aut B|`.
    pub fn sub_count(&self, b: &GroupType, a: &GroupType) -> Result<BigUint> {
        let mono = self.mono_count(b, a)?;
        let aut = self.aut_count(b)?;
        let (q, r) = mono.div_rem(&aut);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "|Mono({b}, {a})| = {mono} is not divisible by |Aut {b}| = {aut}"
            )));
        }
        Ok(q)
    }

    /// Number of subgroups of each order.
    pub fn subgroup_order_profile(&self, a: &GroupType) -> Result<OrderProfile> {
        let summary = lattice_summary(a, self.max_lattice_order)?;
        let mut profile = BTreeMap::new();
        for e in &summary.entries {
            *profile.entry(e.sub.order()).or_insert(0) += e.count;
        }
        Ok(OrderProfile(profile))
    }

    /// Pairs of distinct types of equal order `<= max_order` having the same number
    /// of subgroups of every order. Reports what it finds; an empty list means no
    /// counterexample in range.
    pub fn conjecture_search(&self, max_order: u64) -> Result<Vec<(GroupType, GroupType)>> {
        let mut found = Vec::new();
        for n in 1..=max_order {
            let types = types_of_order(n);
            if types.len() < 2 {
                continue;
            }
            let profiles = types
                .iter()
                .map(|g| self.subgroup_order_profile(g))
                .collect::<Result<Vec<_>>>()?;
            for (i, j) in (0..types.len()).tuple_combinations() {
                if profiles[i] == profiles[j] {
                    found.push((types[i].clone(), types[j].clone()));
                }
            }
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(f: &[u64]) -> GroupType {
        GroupType::from_invariant_factors(f.to_vec()).unwrap()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn homs() {
        assert_eq!(hom_count(&gt(&[2]), &gt(&[4])), n(2));
        assert_eq!(hom_count(&GroupType::trivial(), &gt(&[2, 12])), n(1));
        assert_eq!(hom_count(&gt(&[2, 4]), &gt(&[2])), n(4));
    }

    #[test]
    fn monos_epis_auts() {
        let c = Counter::default();
        assert_eq!(c.mono_count(&gt(&[2]), &gt(&[2, 2])).unwrap(), n(3));
        assert_eq!(c.mono_count(&gt(&[2, 2]), &gt(&[2])).unwrap(), n(0));
        assert_eq!(c.mono_count(&gt(&[2, 2]), &gt(&[2, 2])).unwrap(), n(6));
        assert_eq!(c.epi_count(&gt(&[2, 2]), &gt(&[2])).unwrap(), n(3));
        assert_eq!(c.aut_count(&gt(&[2, 2])).unwrap(), n(6));
        assert_eq!(c.aut_count(&GroupType::trivial()).unwrap(), n(1));
        assert_eq!(c.aut_count(&gt(&[4])).unwrap(), n(2));
    }

    #[test]
    fn subgroup_counts() {
        let c = Counter::default();
        assert_eq!(c.sub_count(&gt(&[2]), &gt(&[2, 2])).unwrap(), n(3));
        assert_eq!(c.sub_count(&gt(&[2, 2]), &gt(&[2, 2])).unwrap(), n(1));
        assert_eq!(c.sub_count(&gt(&[3]), &gt(&[2, 2])).unwrap(), n(0));
    }

    #[test]
    fn gaussian() {
        assert_eq!(gaussian_subspace_count(2, 2, 1).unwrap(), n(3));
        assert_eq!(gaussian_subspace_count(5, 3, 0).unwrap(), n(1));
        assert_eq!(gaussian_subspace_count(3, 2, 1).unwrap(), n(4));
        assert_eq!(gaussian_subspace_count(3, 2, 3).unwrap(), n(0));
        assert_eq!(gaussian_subspace_count(4, 2, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn profiles() {
        let p = |pairs: &[(u64, u64)]| OrderProfile(pairs.iter().copied().collect());
        assert_eq!(element_order_profile(&gt(&[4])), p(&[(1, 1), (2, 1), (4, 2)]));
        assert_eq!(element_order_profile(&GroupType::trivial()), p(&[(1, 1)]));
        let c = Counter::default();
        assert_eq!(c.subgroup_order_profile(&gt(&[2, 2])).unwrap(), p(&[(1, 1), (2, 3), (4, 1)]));
        assert_eq!(p(&[(1, 1), (2, 3)]).to_string(), "{1:1, 2:3}");
    }

    #[test]
    fn isomorphism_tests() {
        assert!(!isomorphic_by_element_orders(&gt(&[4]), &gt(&[2, 2])));
        assert!(isomorphic_by_element_orders(&gt(&[2, 12]), &gt(&[2, 12])));
        assert!(!yoneda_numeric_check(&gt(&[4]), &gt(&[2, 2]), 4));
        assert_eq!(distinguishing_cyclic(&gt(&[4]), &gt(&[2, 2]), 4), Some(2));
        assert!(yoneda_numeric_check(&gt(&[6]), &gt(&[6]), 10));
    }

    #[test]
    fn conjecture_small() {
        let c = Counter::default();
        assert!(c.conjecture_search(1).unwrap().is_empty());
        assert!(c.conjecture_search(8).unwrap().is_empty());
        assert!(c.conjecture_search(16).unwrap().is_empty());
        assert!(Counter::new(8).conjecture_search(16).is_err());
    }
}
