//! Cross-validation sweeps: closed forms and lattice formulas against the brute-force
//! [`oracle`](crate::oracle). Backs the `verify` command; not a stable API.

use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use crate::counting::{hom_count, Counter};
use crate::error::{Error, Result};
use crate::functions::{int, mu_closed, Algebra};
use crate::group::{types_up_to, GroupType};
use crate::lattice::{all_subgroups, lattice_summary, ConcreteGroup};
use crate::oracle;
use crate::symgen::{
    coset_representative, cycle_transposition_generates, generates_full_symmetric,
    is_isometry_mod, isometry_constant, isometry_group_order, translations, Permutation,
    Transposition,
};

/// Outcome of a sweep: how many cases were compared and which ones disagreed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
        self
    }

    fn check(&mut self, agree: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !agree {
            self.mismatches.push(describe());
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "OK ({} checks)", self.checked)
        } else {
            writeln!(f, "MISMATCH ({} of {} checks)", self.mismatches.len(), self.checked)?;
            for m in &self.mismatches {
                writeln!(f, "  {m}")?;
            }
            Ok(())
        }
    }
}

pub const SUITES: &[&str] = &["mu", "phi", "gensubsets", "free", "homs", "subcount", "symgen", "isometries"];

/// Runs the named suite up to `bound` (a group order, or `n` for arithmetic suites).
pub fn run_suite(name: &str, bound: u64, algebra: &Algebra) -> Result<SweepReport> {
    match name {
        "mu" => mu_sweep(bound, algebra),
        "phi" => phi_sweep(bound, algebra),
        "gensubsets" => generating_subsets_sweep(bound, algebra),
        "free" => free_functions_sweep(bound, &[1, 2, 3, 4, 5], algebra),
        "homs" => hom_sweep(bound),
        "subcount" => sub_count_sweep(bound),
        "symgen" => symgen_sweep(bound),
        "isometries" => isometry_sweep(bound),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite `{other}` (expected one of {})",
            SUITES.join(", ")
        ))),
    }
}

fn collect_reports(reports: Vec<Result<SweepReport>>) -> Result<SweepReport> {
    reports
        .into_iter()
        .try_fold(SweepReport::default(), |acc, r| Ok(acc.merge(r?)))
}

/// `inverse(one) = mu_closed` on every type of order `<= bound`, and the cyclic
/// restriction of mu against the classical Möbius function.
pub fn mu_sweep(bound: u64, algebra: &Algebra) -> Result<SweepReport> {
    let mu = algebra.mu();
    let types = types_up_to(bound);
    let reports: Vec<Result<SweepReport>> = types
        .par_iter()
        .map(|g| {
            let mut r = SweepReport::default();
            let (lhs, rhs) = (mu.eval(g)?, mu_closed(g));
            r.check(lhs == rhs, || format!("mu({g}): inverse gives {lhs}, closed form {rhs}"));
            Ok(r)
        })
        .collect();
    let mut report = collect_reports(reports)?;
    let restricted = algebra.restrict_to_cyclic(&mu);
    for n in 1..=bound {
        let (lhs, rhs) = (restricted.eval(n)?, int(oracle::classical_mobius(n)));
        report.check(lhs == rhs, || format!("mu(Z/{n}) = {lhs}, classical {rhs}"));
    }
    Ok(report)
}

/// Cyclic restriction of phi against the classical totient for `n <= bound`.
pub fn phi_sweep(bound: u64, algebra: &Algebra) -> Result<SweepReport> {
    let phi = algebra.restrict_to_cyclic(&algebra.phi());
    let reports: Vec<Result<SweepReport>> = (1..=bound)
        .into_par_iter()
        .map(|n| {
            let mut r = SweepReport::default();
            let (lhs, rhs) = (phi.eval(n)?, int(oracle::classical_totient(n)));
            r.check(lhs == rhs, || format!("phi(Z/{n}) = {lhs}, classical {rhs}"));
            Ok(r)
        })
        .collect();
    collect_reports(reports)
}

/// `N_2(G)` against the generating-subset count, for `|G| <= bound`.
pub fn generating_subsets_sweep(bound: u64, algebra: &Algebra) -> Result<SweepReport> {
    let n2 = algebra.n_t(2);
    let reports: Vec<Result<SweepReport>> = types_up_to(bound)
        .par_iter()
        .map(|g| {
            let mut r = SweepReport::default();
            let lhs = n2.eval(g)?;
            let rhs = int(oracle::count_generating_subsets(&ConcreteGroup::from_type(g))?);
            r.check(lhs == rhs, || format!("N_2({g}) = {lhs}, generating subsets {rhs}"));
            Ok(r)
        })
        .collect();
    collect_reports(reports)
}

/// `N_t(G)` against the count of free functions `G -> {1..t}` for every listed `t`
/// and `|G| <= bound` with `t^|G|` within the oracle bound.
pub fn free_functions_sweep(bound: u64, ts: &[u64], algebra: &Algebra) -> Result<SweepReport> {
    let cases: Vec<(GroupType, u64)> = types_up_to(bound)
        .into_iter()
        .cartesian_product(ts.iter().copied())
        .filter(|(g, t)| {
            t.checked_pow(g.order() as u32).is_some_and(|c| c <= oracle::MAX_FUNCTIONS)
        })
        .collect();
    let reports: Vec<Result<SweepReport>> = cases
        .par_iter()
        .map(|(g, t)| {
            let mut r = SweepReport::default();
            let lhs = algebra.n_t(*t).eval(g)?;
            let rhs = int(oracle::count_free_functions(&ConcreteGroup::from_type(g), *t)?);
            r.check(lhs == rhs, || format!("N_{t}({g}) = {lhs}, free functions {rhs}"));
            Ok(r)
        })
        .collect();
    collect_reports(reports)
}

/// Hom/Mono/Epi/Aut formulas against enumeration for all `|A|, |B| <= bound`.
pub fn hom_sweep(bound: u64) -> Result<SweepReport> {
    let counter = Counter::default();
    let types = types_up_to(bound);
    let pairs: Vec<(&GroupType, &GroupType)> = types.iter().cartesian_product(&types).collect();
    let reports: Vec<Result<SweepReport>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut r = SweepReport::default();
            let brute = oracle::enumerate_homs(&ConcreteGroup::from_type(a), &ConcreteGroup::from_type(b))?;
            let hom = hom_count(a, b);
            let mono = counter.mono_count(a, b)?;
            let epi = counter.epi_count(a, b)?;
            r.check(hom == BigUint::from(brute.hom), || format!("|Hom({a},{b})| = {hom}, enumerated {}", brute.hom));
            r.check(mono == BigUint::from(brute.mono), || format!("|Mono({a},{b})| = {mono}, enumerated {}", brute.mono));
            r.check(epi == BigUint::from(brute.epi), || format!("|Epi({a},{b})| = {epi}, enumerated {}", brute.epi));
            if a == b {
                let aut = counter.aut_count(a)?;
                r.check(aut == BigUint::from(brute.mono), || format!("|Aut {a}| = {aut}, enumerated {}", brute.mono));
            }
            Ok(r)
        })
        .collect();
    collect_reports(reports)
}

/// `sub_count(B, A)` against the number of lattice subgroups of `A` of type `B`, for
/// every `|A| <= bound` and every `B` of order dividing `|A|`.
pub fn sub_count_sweep(bound: u64) -> Result<SweepReport> {
    let counter = Counter::default();
    let types = types_up_to(bound);
    let reports: Vec<Result<SweepReport>> = types
        .par_iter()
        .map(|a| {
            let mut r = SweepReport::default();
            let summary = lattice_summary(a, u64::MAX)?;
            for b in types.iter().filter(|b| a.order() % b.order() == 0) {
                let lattice: u64 = summary.entries.iter().filter(|e| &e.sub == b).map(|e| e.count).sum();
                let formula = counter.sub_count(b, a)?;
                r.check(formula == BigUint::from(lattice), || {
                    format!("|Sub_{b}({a})| = {formula}, lattice count {lattice}")
                });
            }
            Ok(r)
        })
        .collect();
    collect_reports(reports)
}

/// Transposition sets of size at most 2 (the empty set included), over element indices.
fn small_transposition_sets(g: &ConcreteGroup) -> Vec<Vec<Transposition>> {
    let n = g.order();
    let taus: Vec<Transposition> = (0..n)
        .tuple_combinations()
        .map(|(x, y)| Transposition::new(g, g.element(x), g.element(y)).expect("distinct elements"))
        .collect();
    let mut sets = vec![Vec::new()];
    sets.extend(taus.iter().map(|t| vec![t.clone()]));
    sets.extend(taus.iter().tuple_combinations().map(|(a, b)| vec![a.clone(), b.clone()]));
    sets
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The interstice criterion against brute-force permutation closure, for every type of
/// order `3..=bound` and every set of at most two transpositions; and the n-cycle
/// criterion against closure for `n` in `3..=bound`.
pub fn symgen_sweep(bound: u64) -> Result<SweepReport> {
    symgen_sweep_with(bound, |g| small_transposition_sets(g))
}

/// As [`symgen_sweep`] with a caller-chosen family of transposition sets per group.
pub fn symgen_sweep_with(
    bound: u64,
    sets_for: impl Fn(&ConcreteGroup) -> Vec<Vec<Transposition>> + Sync,
) -> Result<SweepReport> {
    let types: Vec<GroupType> = types_up_to(bound).into_iter().filter(|g| g.order() >= 3).collect();
    let reports: Vec<Result<SweepReport>> = types
        .par_iter()
        .map(|gt| {
            let mut r = SweepReport::default();
            let g = ConcreteGroup::from_type(gt);
            let full = factorial(g.order());
            for taus in sets_for(&g) {
                let predicted = generates_full_symmetric(&g, &taus)?;
                let mut gens = translations(&g);
                gens.extend(taus.iter().map(|t| t.to_permutation(&g)));
                let closure = oracle::permutation_closure(&g, &gens)?;
                r.check(predicted == (closure == full), || {
                    format!("{gt} with {taus:?}: criterion says {predicted}, closure has {closure} of {full}")
                });
            }
            Ok(r)
        })
        .collect();
    let mut report = collect_reports(reports)?;
    for n in 3..=bound {
        let zn = ConcreteGroup::new(&[n])?;
        let cycle = Permutation::translation(&zn, &[1])?;
        for (i, j) in (0..n).tuple_combinations() {
            let tau = Permutation::transposition(&zn, &[i], &[j])?;
            let closure = oracle::permutation_closure(&zn, &[cycle.clone(), tau])?;
            let predicted = cycle_transposition_generates(n, i, j)?;
            report.check(predicted == (closure == factorial(n as usize)), || {
                format!("S_{n} from the n-cycle and ({i} {j}): criterion {predicted}, closure {closure}")
            });
        }
    }
    Ok(report)
}

/// Isometry group orders, kernel sizes, the homomorphism property of the constant map
/// and `Δ(O(H)) = H`, for every subgroup of every type of order `<= min(bound, 6)`;
/// plus the two extreme subgroups of `Z_7` when `bound >= 7`.
pub fn isometry_sweep(bound: u64) -> Result<SweepReport> {
    let mut cases: Vec<(ConcreteGroup, crate::lattice::Subgroup)> = Vec::new();
    for gt in types_up_to(bound.min(6)) {
        let g = ConcreteGroup::from_type(&gt);
        for h in all_subgroups(&g)? {
            cases.push((g.clone(), h));
        }
    }
    if bound >= 7 {
        let z7 = ConcreteGroup::new(&[7])?;
        let subs = all_subgroups(&z7)?;
        cases.extend(subs.into_iter().map(|h| (z7.clone(), h)));
    }
    let reports: Vec<Result<SweepReport>> = cases
        .par_iter()
        .map(|(g, h)| {
            let mut r = SweepReport::default();
            let (go, ho) = (g.order() as u64, h.order() as u64);
            let label = || format!("G={:?}, |H|={ho}", g.moduli());
            let isos = oracle::isometries(g, h)?;
            let expected = isometry_group_order(go, ho)?;
            r.check(int(isos.len() as u64) == expected, || {
                format!("{}: {} isometries, formula {expected}", label(), isos.len())
            });
            let zero = g.zero();
            let mut kernel = 0u64;
            let mut constants = Vec::with_capacity(isos.len());
            for s in &isos {
                r.check(is_isometry_mod(g, h, s)?, || format!("{}: {s:?} rejected", label()));
                let c = isometry_constant(g, h, s)?;
                if c == zero {
                    kernel += 1;
                }
                constants.push(c);
            }
            let fact: BigInt = (1..=ho).fold(BigInt::one(), |acc, k| acc * k);
            let kernel_expected = num_traits::pow(fact, (go / ho) as usize);
            r.check(BigInt::from(kernel) == kernel_expected, || {
                format!("{}: kernel of c has {kernel} elements, expected {kernel_expected}", label())
            });
            if go <= 5 {
                for (i, s) in isos.iter().enumerate() {
                    for (j, t) in isos.iter().enumerate() {
                        let lhs = isometry_constant(g, h, &s.compose(t))?;
                        let rhs = coset_representative(g, h, &g.add(&constants[i], &constants[j]));
                        r.check(lhs == rhs, || format!("{}: c not additive on {s:?}, {t:?}", label()));
                    }
                }
            }
            if go >= 3 {
                let deltas: Vec<Vec<u64>> = g
                    .elements()
                    .filter(|d| {
                        let tau = Permutation::transposition(g, &zero, d).expect("valid");
                        is_isometry_mod(g, h, &tau).expect("same parent")
                    })
                    .collect();
                let h_elems: Vec<Vec<u64>> = h.elements().collect();
                r.check(deltas == h_elems, || format!("{}: interstices of O(H) are {deltas:?}", label()));
            }
            Ok(r)
        })
        .collect();
    collect_reports(reports)
}
