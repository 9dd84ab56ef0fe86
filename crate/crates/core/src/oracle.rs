//! Brute-force reference counts.
//!
//! Everything here works straight from the definitions on explicit groups and never
//! calls the lattice, convolution or closed-form code paths. It is slow on purpose and
//! guarded by explicit bounds.

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{ConcreteGroup, Subgroup};
use crate::symgen::Permutation;

pub const MAX_SUBSET_ORDER: usize = 20;
pub const MAX_FUNCTIONS: u64 = 10_000_000;
pub const MAX_HOMS: u64 = 1_000_000;
pub const MAX_CLOSURE: usize = 1_000_000;
pub const MAX_ISOMETRY_ORDER: usize = 7;

fn addition(g: &ConcreteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n).map(|a| (0..n).map(|b| g.add_idx(a, b)).collect()).collect()
}

/// Number of subsets `S ⊆ G` (the empty set included) whose closure is `G`.
pub fn count_generating_subsets(g: &ConcreteGroup) -> Result<u64> {
    let n = g.order();
    if n > MAX_SUBSET_ORDER {
        return Err(Error::OracleBound {
            what: format!("subset sweep over a group of order {n}"),
            bound: MAX_SUBSET_ORDER as u64,
        });
    }
    let add = addition(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut count = 0;
    let mut gens = Vec::with_capacity(n);
    let mut queue = Vec::with_capacity(n);
    for mask in 0..=full {
        gens.clear();
        gens.extend((0..n).filter(|&i| mask >> i & 1 == 1));
        let mut closed: u32 = 1;
        queue.clear();
        queue.push(0usize);
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = add[x][s];
                if closed >> y & 1 == 0 {
                    closed |= 1 << y;
                    queue.push(y);
                }
            }
        }
        if closed == full {
            count += 1;
        }
    }
    Ok(count)
}

fn function_count(g: &ConcreteGroup, t: u64) -> Result<u64> {
    let n = g.order() as u32;
    t.checked_pow(n)
        .filter(|&c| c <= MAX_FUNCTIONS)
        .ok_or_else(|| Error::OracleBound {
            what: format!("{t}^{n} functions"),
            bound: MAX_FUNCTIONS,
        })
}

/// Calls `visit` on every function `G -> {0..t-1}` given as its value table.
fn for_each_function(n: usize, t: u64, mut visit: impl FnMut(&[u64])) {
    if t == 0 {
        if n == 0 {
            visit(&[]);
        }
        return;
    }
    let mut values = vec![0u64; n];
    loop {
        visit(&values);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            values[i] += 1;
            if values[i] < t {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// Elements `s` with `α(x + s) = α(x)` for all `x`, as a sorted index list.
fn stabilizer(add: &[Vec<usize>], alpha: &[u64]) -> Vec<usize> {
    (0..alpha.len())
        .filter(|&s| (0..alpha.len()).all(|x| alpha[add[x][s]] == alpha[x]))
        .collect()
}

/// Number of functions `G -> {1..t}` with trivial stabilizer under `(s·α)(x) = α(x + s)`.
pub fn count_free_functions(g: &ConcreteGroup, t: u64) -> Result<u64> {
    function_count(g, t)?;
    let add = addition(g);
    let n = g.order();
    let mut count = 0;
    for_each_function(n, t, |alpha| {
        let moved = (1..n).all(|s| (0..n).any(|x| alpha[add[x][s]] != alpha[x]));
        if moved {
            count += 1;
        }
    });
    Ok(count)
}

/// Number of functions `G -> {1..t}` whose stabilizer is exactly `H`.
pub fn count_functions_with_stabilizer(g: &ConcreteGroup, h: &Subgroup, t: u64) -> Result<u64> {
    if h.parent() != g {
        return Err(Error::MismatchedParent);
    }
    function_count(g, t)?;
    let add = addition(g);
    let target: Vec<usize> = h.element_indices().iter().map(|&i| i as usize).collect();
    let mut count = 0;
    for_each_function(g.order(), t, |alpha| {
        if stabilizer(&add, alpha) == target {
            count += 1;
        }
    });
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomCounts {
    pub hom: u64,
    pub mono: u64,
    pub epi: u64,
}

/// Enumerates homomorphisms `A -> B` by sending the i-th standard generator of `A`
/// (of order `m_i`) to every `b` with `m_i · b = 0`, then classifies each map.
pub fn enumerate_homs(a: &ConcreteGroup, b: &ConcreteGroup) -> Result<HomCounts> {
    let b_elems: Vec<Vec<u64>> = b.elements().collect();
    let scale = |x: &[u64], k: u64| -> Vec<u64> {
        x.iter().zip(b.moduli()).map(|(&v, &m)| v * k % m).collect()
    };
    let candidates: Vec<Vec<usize>> = a
        .moduli()
        .iter()
        .map(|&m| {
            (0..b.order())
                .filter(|&j| scale(&b_elems[j], m).iter().all(|&v| v == 0))
                .collect()
        })
        .collect();
    let total = candidates
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&c| c <= MAX_HOMS)
        .ok_or_else(|| Error::OracleBound { what: "homomorphism sweep".into(), bound: MAX_HOMS })?;

    let a_elems: Vec<Vec<u64>> = a.elements().collect();
    let mut counts = HomCounts { hom: 0, mono: 0, epi: 0 };
    // odometer over the candidate lists; a rank-0 source has exactly one (empty) choice
    let mut pos = vec![0usize; candidates.len()];
    loop {
        let images: Vec<&Vec<u64>> =
            pos.iter().zip(&candidates).map(|(&p, c)| &b_elems[c[p]]).collect();
        let mut hit = vec![false; b.order()];
        let mut kernel = 0;
        for x in &a_elems {
            let mut y = b.zero();
            for (coef, img) in x.iter().zip(&images) {
                y = b.add(&y, &scale(img, *coef));
            }
            let idx = b.index_of(&y).expect("image lies in B");
            if idx == 0 {
                kernel += 1;
            }
            hit[idx] = true;
        }
        counts.hom += 1;
        if kernel == 1 {
            counts.mono += 1;
        }
        if hit.iter().all(|&h| h) {
            counts.epi += 1;
        }
        let mut i = 0;
        while i < pos.len() {
            pos[i] += 1;
            if pos[i] < candidates[i].len() {
                break;
            }
            pos[i] = 0;
            i += 1;
        }
        if i == pos.len() {
            break;
        }
    }
    debug_assert_eq!(counts.hom, total);
    Ok(counts)
}

/// Order of the permutation group generated by `gens`, by breadth-first closure.
pub fn permutation_closure(g: &ConcreteGroup, gens: &[Permutation]) -> Result<usize> {
    let identity = Permutation::identity(g.order());
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for s in gens {
            let q = s.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() > MAX_CLOSURE {
                    return Err(Error::ClosureOverflow { bound: MAX_CLOSURE });
                }
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}

/// Every permutation `σ` with `σ(x) - σ(y) - (x - y) ∈ H` for all `x, y`, found by
/// filtering all `|G|!` permutations.
pub fn isometries(g: &ConcreteGroup, h: &Subgroup) -> Result<Vec<Permutation>> {
    let n = g.order();
    if n > MAX_ISOMETRY_ORDER {
        return Err(Error::OracleBound {
            what: format!("isometry sweep over a group of order {n}"),
            bound: MAX_ISOMETRY_ORDER as u64,
        });
    }
    if h.parent() != g {
        return Err(Error::MismatchedParent);
    }
    let elems: Vec<Vec<u64>> = g.elements().collect();
    let mut out = Vec::new();
    for images in (0..n).permutations(n) {
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = g.sub(&elems[images[x]], &elems[images[y]]);
                h.contains(&g.sub(&lhs, &g.sub(&elems[x], &elems[y])))
            })
        });
        if ok {
            out.push(Permutation::from_images(images)?);
        }
    }
    Ok(out)
}

pub fn enumerate_isometries(g: &ConcreteGroup, h: &Subgroup) -> Result<u64> {
    Ok(isometries(g, h)?.len() as u64)
}

/// Classical Möbius function by trial division.
pub fn classical_mobius(mut n: u64) -> i64 {
    assert!(n > 0);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient by counting residues coprime to `n`.
pub fn classical_totient(n: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}
