//! Generating the full symmetric group on `G` from the translations of `G` plus
//! transpositions, and the isometries modulo a subgroup.
//!
//! Permutations act on the element indices of a [`ConcreteGroup`], i.e. on the
//! elements in lexicographic tuple order. `G` itself sits inside `Sym(G)` as its
//! translations `x ↦ x + g`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::functions::{int, ExactValue};
use crate::lattice::{generated_subgroup, ConcreteGroup, Subgroup};

/// A bijection of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u32).collect() })
    }

    /// `x ↦ x + t`.
    pub fn translation(g: &ConcreteGroup, t: &[u64]) -> Result<Self> {
        let t = g.index_of(t)?;
        Ok(Permutation {
            images: (0..g.order()).map(|x| g.add_idx(x, t) as u32).collect(),
        })
    }

    /// Swaps `x` and `y`; the identity when `x == y`.
    pub fn transposition(g: &ConcreteGroup, x: &[u64], y: &[u64]) -> Result<Self> {
        let (x, y) = (g.index_of(x)?, g.index_of(y)?);
        let mut p = Self::identity(g.order());
        p.images.swap(x, y);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutations of different sets");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

/// The transposition `(x y)` of two distinct elements of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transposition {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

impl Transposition {
    pub fn new(g: &ConcreteGroup, x: Vec<u64>, y: Vec<u64>) -> Result<Self> {
        g.validate(&x)?;
        g.validate(&y)?;
        if x == y {
            return Err(Error::InvalidArgument(format!("transposition of {x:?} with itself")));
        }
        Ok(Transposition { x, y })
    }

    /// The interstice `y - x`.
    pub fn delta(&self, g: &ConcreteGroup) -> Vec<u64> {
        g.sub(&self.y, &self.x)
    }

    pub fn to_permutation(&self, g: &ConcreteGroup) -> Permutation {
        Permutation::transposition(g, &self.x, &self.y).expect("validated on construction")
    }
}

/// Parses `x1>y1;x2>y2;...` where each side is a comma-separated coordinate tuple.
pub fn parse_transpositions(g: &ConcreteGroup, s: &str) -> Result<Vec<Transposition>> {
    let parse_tuple = |t: &str| -> Result<Vec<u64>> {
        t.split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("`{c}` is not a coordinate")))
            })
            .collect()
    };
    s.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (x, y) = part
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("`{part}` is not of the form x>y")))?;
            Transposition::new(g, parse_tuple(x)?, parse_tuple(y)?)
        })
        .collect()
}

fn require_order_at_least_3(g: &ConcreteGroup) -> Result<()> {
    if g.order() < 3 {
        return Err(Error::UnsupportedOrder(g.order() as u64));
    }
    Ok(())
}

/// `⟨y_1 - x_1, ..., y_n - x_n⟩`: the interstices of the subgroup of `Sym(G)`
/// generated by the translations and the given transpositions.
pub fn interstice_subgroup(g: &ConcreteGroup, taus: &[Transposition]) -> Result<Subgroup> {
    require_order_at_least_3(g)?;
    let deltas: Vec<Vec<u64>> = taus.iter().map(|t| t.delta(g)).collect();
    generated_subgroup(g, &deltas)
}

/// Whether the translations of `G` and `taus` generate `Sym(G)`; this holds exactly
/// when the interstices `y_i - x_i` generate `G`.
pub fn generates_full_symmetric(g: &ConcreteGroup, taus: &[Transposition]) -> Result<bool> {
    Ok(interstice_subgroup(g, taus)?.is_full())
}

/// Whether the n-cycle `(0 1 ... n-1)` and the transposition `(i j)` generate `S_n`,
/// i.e. whether `gcd(n, j - i) = 1`.
pub fn cycle_transposition_generates(n: u64, i: u64, j: u64) -> Result<bool> {
    if n < 3 {
        return Err(Error::UnsupportedOrder(n));
    }
    let diff = (j % n + n - i % n) % n;
    if diff == 0 {
        return Err(Error::InvalidArgument(format!("{i} and {j} coincide modulo {n}")));
    }
    Ok(n.gcd(&diff) == 1)
}

fn check_shapes(g: &ConcreteGroup, h: &Subgroup, sigma: &Permutation) -> Result<()> {
    if h.parent() != g {
        return Err(Error::MismatchedParent);
    }
    if sigma.len() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "permutation of {} points for a group of order {}",
            sigma.len(),
            g.order()
        )));
    }
    Ok(())
}

/// `σ(x) - x` for every `x`, as element indices.
fn displacements(g: &ConcreteGroup, sigma: &Permutation) -> Vec<Vec<u64>> {
    (0..g.order())
        .map(|x| g.sub(&g.element(sigma.apply(x)), &g.element(x)))
        .collect()
}

/// Whether `σ(x) - σ(y) ≡ x - y (mod H)` for all `x, y`, checked as: all
/// displacements `σ(x) - x` lie in a single coset of `H`.
pub fn is_isometry_mod(g: &ConcreteGroup, h: &Subgroup, sigma: &Permutation) -> Result<bool> {
    check_shapes(g, h, sigma)?;
    let disp = displacements(g, sigma);
    let base = &disp[0];
    Ok(disp.iter().all(|d| h.contains(&g.sub(d, base))))
}

/// The constant coset `σ(x) - x + H` of an isometry, represented by its smallest
/// element in lexicographic order.
pub fn isometry_constant(g: &ConcreteGroup, h: &Subgroup, sigma: &Permutation) -> Result<Vec<u64>> {
    if !is_isometry_mod(g, h, sigma)? {
        return Err(Error::NotIsometry);
    }
    Ok(coset_representative(g, h, &displacements(g, sigma)[0]))
}

pub fn coset_representative(g: &ConcreteGroup, h: &Subgroup, x: &[u64]) -> Vec<u64> {
    h.elements()
        .map(|e| g.add(x, &e))
        .min()
        .expect("subgroups are nonempty")
}

/// `|O(H)| = (h!)^{g/h} · g / h`.
pub fn isometry_group_order(g: u64, h: u64) -> Result<ExactValue> {
    if h == 0 || g % h != 0 {
        return Err(Error::NotDivisible { g, h });
    }
    let fact: BigInt = (1..=h).fold(BigInt::one(), |acc, k| acc * k);
    let index = (g / h) as usize;
    Ok(int(num_traits::pow(fact, index) * index))
}

/// `{δ : (0 δ) ∈ K}` for a permutation group `K` given as a membership test, where
/// `(0 0)` means the identity.
pub fn interstices(g: &ConcreteGroup, contains: impl Fn(&Permutation) -> bool) -> Vec<Vec<u64>> {
    let zero = g.zero();
    g.elements()
        .filter(|d| contains(&Permutation::transposition(g, &zero, d).expect("valid elements")))
        .collect()
}

/// All translations of `G`, in element order.
pub fn translations(g: &ConcreteGroup) -> Vec<Permutation> {
    g.elements()
        .map(|t| Permutation::translation(g, &t).expect("valid element"))
        .collect()
}
