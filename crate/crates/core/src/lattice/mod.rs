//! Explicit groups `Z_{m_1} x ... x Z_{m_k}` and their subgroup lattices.
//!
//! Elements are addressed by a mixed-radix index with the first coordinate most
//! significant, so increasing index order is lexicographic order on tuples.

mod snf;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

pub use snf::{smith_decomposition, smith_normal_form, IntMatrix, SmithDecomposition};

use crate::error::{Error, Result};
use crate::group::{canonicalize, GroupType, PrimaryDecomposition};
use crate::primes::{divisors, factorize};

/// Largest group order whose subgroup lattice is enumerated unless configured otherwise.
pub const DEFAULT_MAX_LATTICE_ORDER: u64 = 512;

struct GroupData {
    moduli: Vec<u64>,
    order: usize,
    addition: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u64>>,
}

/// An explicit product of cyclic groups. Cloning is cheap.
#[derive(Clone)]
pub struct ConcreteGroup {
    data: Arc<GroupData>,
}

impl ConcreteGroup {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidArgument(format!("moduli must be >= 2, got {m}")));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m as usize))
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or_else(|| Error::InvalidArgument(format!("group {moduli:?} is too large")))?;
        Ok(ConcreteGroup {
            data: Arc::new(GroupData {
                moduli: moduli.to_vec(),
                order,
                addition: OnceLock::new(),
                orders: OnceLock::new(),
            }),
        })
    }

    /// The model `Z_{d_1} x ... x Z_{d_n}` of a canonical type.
    pub fn from_type(g: &GroupType) -> Self {
        Self::new(g.invariant_factors()).expect("invariant factors are valid moduli")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.data.moduli
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn rank(&self) -> usize {
        self.data.moduli.len()
    }

    pub fn group_type(&self) -> GroupType {
        canonicalize(&self.data.moduli)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn validate(&self, g: &[u64]) -> Result<()> {
        if g.len() != self.rank() || g.iter().zip(self.moduli()).any(|(&x, &m)| x >= m) {
            return Err(Error::InvalidElement {
                element: g.to_vec(),
                moduli: self.moduli().to_vec(),
            });
        }
        Ok(())
    }

    pub fn index_of(&self, g: &[u64]) -> Result<usize> {
        self.validate(g)?;
        Ok(g.iter()
            .zip(self.moduli())
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize))
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        assert!(index < self.order(), "element index out of range");
        let mut out = vec![0; self.rank()];
        for (slot, &m) in out.iter_mut().zip(self.moduli()).rev() {
            *slot = (index % m as usize) as u64;
            index /= m as usize;
        }
        out
    }

    /// All elements in index (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(self.moduli())
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(self.moduli()).map(|(&x, &m)| (m - x) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    /// `lcm_i(m_i / gcd(m_i, g_i))`.
    pub fn element_order(&self, g: &[u64]) -> Result<u64> {
        self.validate(g)?;
        Ok(g.iter()
            .zip(self.moduli())
            .fold(1u64, |acc, (&x, &m)| acc.lcm(&(m / m.gcd(&x)))))
    }

    /// Addition table on indices, `table[a * n + b] = a + b`.
    pub fn addition_table(&self) -> &[u32] {
        self.data.addition.get_or_init(|| {
            let n = self.order();
            let elems: Vec<Vec<u64>> = self.elements().collect();
            let mut table = Vec::with_capacity(n * n);
            for a in &elems {
                for b in &elems {
                    table.push(self.index_of(&self.add(a, b)).unwrap() as u32);
                }
            }
            table
        })
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.addition_table()[a * self.order() + b] as usize
    }

    /// Element orders by index.
    pub fn order_table(&self) -> &[u64] {
        self.data.orders.get_or_init(|| {
            self.elements().map(|g| self.element_order(&g).unwrap()).collect()
        })
    }
}

impl PartialEq for ConcreteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.moduli == other.data.moduli
    }
}

impl Eq for ConcreteGroup {}

impl fmt::Debug for ConcreteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConcreteGroup({:?})", self.moduli())
    }
}

/// An explicit subgroup: a sorted list of element indices closed under the group law.
#[derive(Clone)]
pub struct Subgroup {
    parent: ConcreteGroup,
    elements: Vec<u32>,
    generators: Vec<u32>,
    abstract_type: GroupType,
}

impl Subgroup {
    fn from_indices(parent: &ConcreteGroup, elements: Vec<u32>, generators: Vec<u32>) -> Self {
        let profile = index_profile(parent, &elements);
        let abstract_type = type_from_order_statistics(&profile)
            .expect("element-order profile of a subgroup matches an abelian type");
        debug_assert_eq!(abstract_type.order() as usize, elements.len());
        Subgroup { parent: parent.clone(), elements, generators, abstract_type }
    }

    pub fn parent(&self) -> &ConcreteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_indices(&self) -> &[u32] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.elements.iter().map(|&i| self.parent.element(i as usize))
    }

    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.generators.iter().map(|&i| self.parent.element(i as usize)).collect()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.elements.binary_search(&(idx as u32)).is_ok()
    }

    pub fn contains(&self, g: &[u64]) -> bool {
        self.parent.index_of(g).is_ok_and(|i| self.contains_index(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    /// Isomorphism type, reconstructed from the element-order profile.
    pub fn abstract_type(&self) -> &GroupType {
        &self.abstract_type
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.moduli())
            .field("elements", &self.elements().collect::<Vec<_>>())
            .field("type", &self.abstract_type)
            .finish()
    }
}

fn index_profile(g: &ConcreteGroup, elements: &[u32]) -> BTreeMap<u64, u64> {
    let orders = g.order_table();
    let mut profile = BTreeMap::new();
    for &e in elements {
        *profile.entry(orders[e as usize]).or_insert(0) += 1;
    }
    profile
}

/// Fixed-size bitset over element indices; the dedup key for subgroups.
#[derive(Clone, PartialEq, Eq, Hash)]
struct ElementSet(Vec<u64>);

impl ElementSet {
    fn new(n: usize) -> Self {
        ElementSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn indices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                out.push((w * 64) as u32 + b);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// The subgroup `H + <g>` for a closed set `H`, returned as a bitset.
fn extend_closed(g: &ConcreteGroup, h_set: &ElementSet, h_elems: &[u32], gen: usize) -> ElementSet {
    let mut set = h_set.clone();
    let mut x = gen;
    while !h_set.contains(x) {
        for &h in h_elems {
            set.insert(g.add_idx(x, h as usize));
        }
        x = g.add_idx(x, gen);
    }
    set
}

/// Least subgroup containing `gens`. An empty generator list gives the trivial subgroup.
pub fn generated_subgroup(g: &ConcreteGroup, gens: &[Vec<u64>]) -> Result<Subgroup> {
    let gen_idx = gens
        .iter()
        .map(|x| g.index_of(x))
        .collect::<Result<Vec<_>>>()?;
    let mut set = ElementSet::new(g.order());
    set.insert(0);
    let mut elems = vec![0u32];
    for &x in &gen_idx {
        if !set.contains(x) {
            set = extend_closed(g, &set, &elems, x);
            elems = set.indices();
        }
    }
    let gens = gen_idx.into_iter().map(|i| i as u32).collect();
    Ok(Subgroup::from_indices(g, elems, gens))
}

/// Every subgroup of `g`, sorted by (order, element list). Refuses groups of order
/// above [`DEFAULT_MAX_LATTICE_ORDER`].
pub fn all_subgroups(g: &ConcreteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_bounded(g, DEFAULT_MAX_LATTICE_ORDER)
}

/// Breadth-first search over the lattice: each known subgroup is extended by one
/// element from every nontrivial coset and closed again.
pub fn all_subgroups_bounded(g: &ConcreteGroup, max_order: u64) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n as u64 > max_order {
        return Err(Error::LatticeBound { order: n as u64, bound: max_order });
    }
    let mut trivial = ElementSet::new(n);
    trivial.insert(0);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    seen.insert(trivial.clone());
    let mut queue: VecDeque<(ElementSet, Vec<u32>)> = VecDeque::new();
    queue.push_back((trivial, Vec::new()));
    let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();

    while let Some((set, gens)) = queue.pop_front() {
        let elems = set.indices();
        let mut covered = set.clone();
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            for &h in &elems {
                covered.insert(g.add_idx(x, h as usize));
            }
            let bigger = extend_closed(g, &set, &elems, x);
            if !seen.contains(&bigger) {
                seen.insert(bigger.clone());
                let mut more = gens.clone();
                more.push(x as u32);
                queue.push_back((bigger, more));
            }
        }
        found.push((elems, gens));
    }

    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(found
        .into_iter()
        .map(|(elems, gens)| Subgroup::from_indices(g, elems, gens))
        .collect())
}

/// Isomorphism type of a subgroup, by its element-order profile.
pub fn subgroup_type(h: &Subgroup) -> GroupType {
    h.abstract_type.clone()
}

/// Isomorphism type of a subgroup computed independently of element orders: the
/// subgroup generated by `g_1..g_r` is `Z^r / K` where `K` is the kernel of
/// `Z^r -> G`, and the Smith form of a basis of `K` gives the invariant factors.
pub fn subgroup_type_snf(h: &Subgroup) -> GroupType {
    let g = &h.parent;
    let gens = h.generators();
    let (k, r) = (g.rank(), gens.len());
    if r == 0 {
        return GroupType::trivial();
    }
    // [generators | diag(moduli)], a k x (r + k) matrix
    let mut a = IntMatrix::zeros(k, r + k);
    for (j, x) in gens.iter().enumerate() {
        for i in 0..k {
            a[(i, j)] = x[i] as i128;
        }
    }
    for (i, &m) in g.moduli().iter().enumerate() {
        a[(i, r + i)] = m as i128;
    }
    let dec = smith_decomposition(&a);
    let rank = dec.rank();
    let kernel_cols: Vec<usize> = (rank..r + k).collect();
    let mut kernel = IntMatrix::zeros(r, kernel_cols.len());
    for (c, &col) in kernel_cols.iter().enumerate() {
        for i in 0..r {
            kernel[(i, c)] = dec.v[(i, col)];
        }
    }
    let diag = smith_normal_form(&kernel);
    assert!(
        diag.len() == r && diag.iter().all(|&d| d != 0),
        "relation lattice of a finite subgroup has full rank"
    );
    let moduli: Vec<u64> = diag.into_iter().map(|d| d as u64).collect();
    canonicalize(&moduli)
}

/// Isomorphism type of `G/H`: Smith form of `[diag(m_1..m_k) | generators of H]`.
pub fn quotient_type(g: &ConcreteGroup, h: &Subgroup) -> Result<GroupType> {
    if &h.parent != g {
        return Err(Error::MismatchedParent);
    }
    let gens = h.generators();
    let k = g.rank();
    let mut a = IntMatrix::zeros(k, k + gens.len());
    for (i, &m) in g.moduli().iter().enumerate() {
        a[(i, i)] = m as i128;
    }
    for (j, x) in gens.iter().enumerate() {
        for i in 0..k {
            a[(i, k + j)] = x[i] as i128;
        }
    }
    let moduli: Vec<u64> = smith_normal_form(&a).into_iter().map(|d| d as u64).collect();
    let q = canonicalize(&moduli);
    if q.order() as usize * h.order() != g.order() {
        return Err(Error::Internal(format!(
            "quotient of {:?} by a subgroup of order {} came out as {q}",
            g.moduli(),
            h.order()
        )));
    }
    Ok(q)
}

/// The unique abelian type with the given count of elements per order.
///
/// For each prime `p`, the number of elements of order dividing `p^k` is
/// `p^(λ'_1 + ... + λ'_k)` where `λ'` is the conjugate of the p-part's partition.
pub fn type_from_order_statistics(profile: &BTreeMap<u64, u64>) -> Result<GroupType> {
    let describe = || format!("{profile:?}");
    let total: u64 = profile.values().sum();
    if total == 0 || profile.get(&1) != Some(&1) || profile.keys().any(|&d| d == 0) {
        return Err(Error::NoMatchingType(describe()));
    }
    let mut components = BTreeMap::new();
    for (p, e) in factorize(total) {
        let mut conjugate: Vec<u32> = Vec::new();
        let mut prev_exp = 0u32;
        let mut pk = 1u64;
        for _ in 1..=e {
            pk *= p;
            let count: u64 = profile
                .iter()
                .filter(|(&d, _)| pk % d == 0)
                .map(|(_, &c)| c)
                .sum();
            let exp = exact_log(count, p).ok_or_else(|| Error::NoMatchingType(describe()))?;
            if exp < prev_exp {
                return Err(Error::NoMatchingType(describe()));
            }
            let step = exp - prev_exp;
            if step == 0 {
                break;
            }
            if conjugate.last().is_some_and(|&last| step > last) {
                return Err(Error::NoMatchingType(describe()));
            }
            conjugate.push(step);
            prev_exp = exp;
        }
        let parts: Vec<u32> = (1..=conjugate.first().copied().unwrap_or(0))
            .map(|i| conjugate.iter().filter(|&&c| c >= i).count() as u32)
            .collect();
        if parts.is_empty() {
            return Err(Error::NoMatchingType(describe()));
        }
        components.insert(p, parts);
    }
    let candidate = PrimaryDecomposition { components }.to_group_type();
    if candidate.order() != total || &type_order_profile(&candidate) != profile {
        return Err(Error::NoMatchingType(describe()));
    }
    Ok(candidate)
}

fn exact_log(mut n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// Element-order profile of a type from `|G[e]| = prod_i gcd(e, d_i)`, by
/// inclusion-exclusion over divisors of the exponent.
pub(crate) fn type_order_profile(g: &GroupType) -> BTreeMap<u64, u64> {
    let torsion = |e: u64| -> i128 {
        g.invariant_factors().iter().map(|&d| e.gcd(&d) as i128).product()
    };
    let mut profile = BTreeMap::new();
    for d in divisors(g.exponent()) {
        // elements of order exactly d: those in G[d] minus those in G[d/p] for some p
        let mut count = 0i128;
        for (e, sign) in squarefree_divisors_signed(d) {
            count += sign * torsion(d / e);
        }
        if count > 0 {
            profile.insert(d, count as u64);
        }
    }
    profile
}

fn squarefree_divisors_signed(n: u64) -> Vec<(u64, i128)> {
    let mut out = vec![(1u64, 1i128)];
    for (p, _) in factorize(n) {
        let len = out.len();
        for i in 0..len {
            let (d, s) = out[i];
            out.push((d * p, -s));
        }
    }
    out
}

/// One row of a lattice summary: `count` subgroups `H` with `H ≅ sub` and `G/H ≅ quotient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEntry {
    pub sub: GroupType,
    pub quotient: GroupType,
    pub count: u64,
}

/// Subgroups of the model of a type, grouped by (subgroup type, quotient type).
#[derive(Clone, Debug)]
pub struct LatticeSummary {
    pub group: GroupType,
    pub entries: Vec<LatticeEntry>,
}

impl LatticeSummary {
    pub fn subgroup_count(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }
}

/// Cached lattice summary of the canonical model of `g`.
///
/// The cache is process-wide and safe to share between threads; concurrent misses
/// on the same key may compute the summary twice, both results being identical.
pub fn lattice_summary(g: &GroupType, max_order: u64) -> Result<Arc<LatticeSummary>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupType, Arc<LatticeSummary>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if g.order() > max_order {
        return Err(Error::LatticeBound { order: g.order(), bound: max_order });
    }
    if let Some(hit) = cache.lock().unwrap().get(g) {
        return Ok(hit.clone());
    }
    let model = ConcreteGroup::from_type(g);
    let mut grouped: BTreeMap<(GroupType, GroupType), u64> = BTreeMap::new();
    for h in all_subgroups_bounded(&model, max_order)? {
        let q = quotient_type(&model, &h)?;
        *grouped.entry((h.abstract_type, q)).or_insert(0) += 1;
    }
    let summary = Arc::new(LatticeSummary {
        group: g.clone(),
        entries: grouped
            .into_iter()
            .map(|((sub, quotient), count)| LatticeEntry { sub, quotient, count })
            .collect(),
    });
    cache.lock().unwrap().insert(g.clone(), summary.clone());
    Ok(summary)
}
