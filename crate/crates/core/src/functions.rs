//! The convolution algebra of functions on finite abelian groups.
//!
//! An [`AbelianFunction`] assigns an exact rational to every isomorphism type. The
//! product is `(f * g)(G) = Σ_{H ≤ G} f(H) g(G/H)`, summed over all subgroups of a
//! concrete model of `G` (not over isomorphism classes). Its unit is `delta`, and a
//! function is invertible exactly when its value on the trivial group is nonzero.
//!
//! Values are memoized per canonical type. The memo is behind a mutex and every
//! entry is write-once in effect: concurrent evaluations of the same key compute
//! the same value, so functions can be shared freely between threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::group::{types_up_to, GroupType};
use crate::lattice::{lattice_summary, DEFAULT_MAX_LATTICE_ORDER};

pub type ExactValue = BigRational;

pub fn int(n: impl Into<BigInt>) -> ExactValue {
    BigRational::from_integer(n.into())
}

type ClosedForm = Arc<dyn Fn(&GroupType) -> ExactValue + Send + Sync>;

enum Rule {
    Closed(ClosedForm),
    Convolve(AbelianFunction, AbelianFunction),
    Inverse(AbelianFunction),
    Add(AbelianFunction, AbelianFunction),
    Scale(ExactValue, AbelianFunction),
    Pointwise(AbelianFunction, AbelianFunction),
}

struct Inner {
    name: String,
    rule: Rule,
    multiplicative: bool,
    settings: Settings,
    memo: Mutex<HashMap<GroupType, ExactValue>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Settings {
    max_lattice_order: u64,
    fast_path: bool,
}

/// A memoized function on isomorphism types of finite abelian groups.
#[derive(Clone)]
pub struct AbelianFunction {
    inner: Arc<Inner>,
}

impl AbelianFunction {
    fn build(name: String, rule: Rule, multiplicative: bool, settings: Settings) -> Self {
        AbelianFunction {
            inner: Arc::new(Inner {
                name,
                rule,
                multiplicative,
                settings,
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// Whether the function is declared multiplicative: `f(1) = 1` and
    /// `f(A x B) = f(A) f(B)` for groups of coprime orders.
    pub fn multiplicative_hint(&self) -> bool {
        self.inner.multiplicative
    }

    pub fn eval(&self, g: &GroupType) -> Result<ExactValue> {
        if let Some(v) = self.inner.memo.lock().unwrap().get(g) {
            return Ok(v.clone());
        }
        let value = if self.uses_fast_path(g) {
            let mut acc = ExactValue::one();
            for (_, part) in g.primary_components() {
                acc *= self.eval(&part)?;
            }
            acc
        } else {
            self.eval_rule(g)?
        };
        self.inner
            .memo
            .lock()
            .unwrap()
            .entry(g.clone())
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    /// Evaluates the defining rule at `g` itself, never splitting `g` into primary
    /// parts and never touching the memo for `g`. Sub-evaluations are memoized.
    pub fn eval_direct(&self, g: &GroupType) -> Result<ExactValue> {
        self.eval_rule(g)
    }

    fn uses_fast_path(&self, g: &GroupType) -> bool {
        self.inner.multiplicative && self.inner.settings.fast_path && !g.is_p_group()
    }

    fn eval_rule(&self, g: &GroupType) -> Result<ExactValue> {
        let bound = self.inner.settings.max_lattice_order;
        match &self.inner.rule {
            Rule::Closed(f) => Ok(f(g)),
            Rule::Convolve(a, b) => {
                let summary = lattice_summary(g, bound)?;
                let mut acc = ExactValue::zero();
                for e in &summary.entries {
                    acc += a.eval(&e.sub)? * b.eval(&e.quotient)? * int(e.count);
                }
                Ok(acc)
            }
            Rule::Inverse(f) => {
                let at_trivial = f.eval(&GroupType::trivial())?;
                if g.is_trivial() {
                    return Ok(at_trivial.recip());
                }
                let summary = lattice_summary(g, bound)?;
                let mut acc = ExactValue::zero();
                for e in summary.entries.iter().filter(|e| e.sub != *g) {
                    acc += self.eval(&e.sub)? * f.eval(&e.quotient)? * int(e.count);
                }
                Ok(-acc / at_trivial)
            }
            Rule::Add(a, b) => Ok(a.eval(g)? + b.eval(g)?),
            Rule::Scale(c, a) => Ok(c * a.eval(g)?),
            Rule::Pointwise(a, b) => Ok(a.eval(g)? * b.eval(g)?),
        }
    }
}

impl fmt::Debug for AbelianFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AbelianFunction")
            .field("name", &self.inner.name)
            .field("multiplicative", &self.inner.multiplicative)
            .finish()
    }
}

/// A function on positive integers.
#[derive(Clone)]
pub struct ArithmeticFunction {
    name: String,
    rule: Arc<dyn Fn(u64) -> Result<ExactValue> + Send + Sync>,
}

impl ArithmeticFunction {
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(u64) -> Result<ExactValue> + Send + Sync + 'static,
    ) -> Self {
        ArithmeticFunction { name: name.into(), rule: Arc::new(rule) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, n: u64) -> Result<ExactValue> {
        if n == 0 {
            return Err(Error::InvalidArgument("arithmetic functions are defined on n >= 1".into()));
        }
        (self.rule)(n)
    }
}

impl fmt::Debug for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArithmeticFunction({})", self.name)
    }
}

/// Factory for abelian functions sharing one configuration.
///
/// `max_lattice_order` bounds the groups whose subgroup lattice may be enumerated.
/// With `fast_path` enabled, functions carrying the multiplicative hint are evaluated
/// as the product of their values on the primary components.
#[derive(Clone)]
pub struct Algebra {
    settings: Settings,
    named: Arc<Mutex<HashMap<String, AbelianFunction>>>,
}

impl Default for Algebra {
    fn default() -> Self {
        Algebra::new(DEFAULT_MAX_LATTICE_ORDER)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("max_lattice_order", &self.settings.max_lattice_order)
            .field("fast_path", &self.settings.fast_path)
            .finish()
    }
}

impl Algebra {
    pub fn new(max_lattice_order: u64) -> Self {
        Algebra {
            settings: Settings { max_lattice_order, fast_path: true },
            named: Arc::default(),
        }
    }

    pub fn with_fast_path(mut self, enabled: bool) -> Self {
        self.settings.fast_path = enabled;
        self.named = Arc::default();
        self
    }

    pub fn max_lattice_order(&self) -> u64 {
        self.settings.max_lattice_order
    }

    pub fn from_fn(
        &self,
        name: impl Into<String>,
        multiplicative: bool,
        rule: impl Fn(&GroupType) -> ExactValue + Send + Sync + 'static,
    ) -> AbelianFunction {
        AbelianFunction::build(name.into(), Rule::Closed(Arc::new(rule)), multiplicative, self.settings)
    }

    fn cached(&self, key: &str, make: impl FnOnce() -> AbelianFunction) -> AbelianFunction {
        if let Some(f) = self.named.lock().unwrap().get(key) {
            return f.clone();
        }
        let f = make();
        self.named
            .lock()
            .unwrap()
            .entry(key.to_string())
            .or_insert(f)
            .clone()
    }

    pub fn convolve(&self, f: &AbelianFunction, g: &AbelianFunction) -> AbelianFunction {
        AbelianFunction::build(
            format!("({}*{})", f.name(), g.name()),
            Rule::Convolve(f.clone(), g.clone()),
            f.multiplicative_hint() && g.multiplicative_hint(),
            self.settings,
        )
    }

    /// Convolution inverse, computed by recursion over proper subgroups:
    /// `g(G) = -(1/f(1)) Σ_{H < G} g(H) f(G/H)`.
    pub fn inverse(&self, f: &AbelianFunction) -> Result<AbelianFunction> {
        if f.eval(&GroupType::trivial())?.is_zero() {
            return Err(Error::NotInvertible(f.name().to_string()));
        }
        Ok(self.inverse_named(format!("{}^-1", f.name()), f))
    }

    fn inverse_named(&self, name: String, f: &AbelianFunction) -> AbelianFunction {
        AbelianFunction::build(name, Rule::Inverse(f.clone()), f.multiplicative_hint(), self.settings)
    }

    pub fn add(&self, f: &AbelianFunction, g: &AbelianFunction) -> AbelianFunction {
        AbelianFunction::build(
            format!("({}+{})", f.name(), g.name()),
            Rule::Add(f.clone(), g.clone()),
            false,
            self.settings,
        )
    }

    pub fn scale(&self, c: ExactValue, f: &AbelianFunction) -> AbelianFunction {
        AbelianFunction::build(
            format!("{c}{}", f.name()),
            Rule::Scale(c, f.clone()),
            false,
            self.settings,
        )
    }

    pub fn pointwise(&self, f: &AbelianFunction, g: &AbelianFunction) -> AbelianFunction {
        AbelianFunction::build(
            format!("({}.{})", f.name(), g.name()),
            Rule::Pointwise(f.clone(), g.clone()),
            f.multiplicative_hint() && g.multiplicative_hint(),
            self.settings,
        )
    }

    /// 1 on the trivial group, 0 elsewhere.
    pub fn delta(&self) -> AbelianFunction {
        self.cached("delta", || {
            self.from_fn("delta", true, |g| int(u8::from(g.is_trivial())))
        })
    }

    pub fn one(&self) -> AbelianFunction {
        self.cached("one", || self.from_fn("one", true, |_| int(1)))
    }

    pub fn card(&self) -> AbelianFunction {
        self.cached("card", || self.from_fn("card", true, |g| int(g.order())))
    }

    /// `G ↦ t^|G|`.
    pub fn t_pow_card(&self, t: u64) -> AbelianFunction {
        self.cached(&format!("tpow:{t}"), || {
            self.from_fn(format!("tpow:{t}"), t == 1, move |g| int(BigInt::from(t).pow(g.order())))
        })
    }

    /// `G ↦ |G|^t`.
    pub fn card_pow_t(&self, t: u32) -> AbelianFunction {
        self.cached(&format!("cardpow:{t}"), || {
            self.from_fn(format!("cardpow:{t}"), true, move |g| int(BigInt::from(g.order()).pow(t)))
        })
    }

    /// `G ↦ C(|G|, d)`.
    pub fn binom_card(&self, d: u64) -> AbelianFunction {
        self.cached(&format!("binom:{d}"), || {
            self.from_fn(format!("binom:{d}"), false, move |g| int(binomial(g.order(), d)))
        })
    }

    /// The abelian Möbius function, the inverse of `one`.
    pub fn mu(&self) -> AbelianFunction {
        self.cached("mu", || self.inverse_named("mu".into(), &self.one()))
    }

    /// Closed-form Möbius function as an abelian function (see [`mu_closed`]).
    pub fn mu_closed(&self) -> AbelianFunction {
        self.cached("mu_closed", || self.from_fn("mu_closed", true, mu_closed))
    }

    fn mu_convolution(&self, name: String, g: AbelianFunction) -> AbelianFunction {
        let mu = self.mu();
        AbelianFunction::build(
            name,
            Rule::Convolve(mu, g.clone()),
            g.multiplicative_hint(),
            self.settings,
        )
    }

    /// Number of generators of a cyclic group, 0 for non-cyclic groups: `mu * card`.
    pub fn phi(&self) -> AbelianFunction {
        self.cached("phi", || self.mu_convolution("phi".into(), self.card()))
    }

    /// `N_t = mu * t^|·|`; `N_2` counts generating subsets.
    pub fn n_t(&self, t: u64) -> AbelianFunction {
        self.cached(&format!("nt:{t}"), || {
            self.mu_convolution(format!("nt:{t}"), self.t_pow_card(t))
        })
    }

    /// Number of subgroups: `one * one`.
    pub fn subgroup_count(&self) -> AbelianFunction {
        self.cached("nsub", || {
            let one = self.one();
            AbelianFunction::build("nsub".into(), Rule::Convolve(one.clone(), one), true, self.settings)
        })
    }

    /// Number of generating t-tuples: `mu * card^t`.
    pub fn generating_tuples(&self, t: u32) -> AbelianFunction {
        self.cached(&format!("gentuples:{t}"), || {
            self.mu_convolution(format!("gentuples:{t}"), self.card_pow_t(t))
        })
    }

    /// Number of generating d-element subsets: `mu * C(|·|, d)`.
    pub fn generating_subsets_of_size(&self, d: u64) -> AbelianFunction {
        self.cached(&format!("gensubsets:{d}"), || {
            self.mu_convolution(format!("gensubsets:{d}"), self.binom_card(d))
        })
    }

    /// Looks up a function by its registry name: `delta`, `one`, `card`, `mu`, `phi`,
    /// `nsub`, `nt:<t>`, `gentuples:<t>`, `gensubsets:<d>`, `tpow:<t>`.
    pub fn builtin(&self, name: &str) -> Result<AbelianFunction> {
        let unknown = || Error::UnknownFunction(name.to_string());
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<u64>().map_err(|_| unknown())?)),
            None => (name, None),
        };
        Ok(match (head, arg) {
            ("delta", None) => self.delta(),
            ("one", None) => self.one(),
            ("card", None) => self.card(),
            ("mu", None) => self.mu(),
            ("phi", None) => self.phi(),
            ("nsub", None) => self.subgroup_count(),
            ("nt", Some(t)) if t >= 1 => self.n_t(t),
            ("tpow", Some(t)) if t >= 1 => self.t_pow_card(t),
            ("gentuples", Some(t)) => {
                self.generating_tuples(u32::try_from(t).map_err(|_| unknown())?)
            }
            ("gensubsets", Some(d)) => self.generating_subsets_of_size(d),
            _ => return Err(unknown()),
        })
    }

    /// `n ↦ f(Z/n)`.
    pub fn restrict_to_cyclic(&self, f: &AbelianFunction) -> ArithmeticFunction {
        let f = f.clone();
        ArithmeticFunction::new(format!("{}|cyclic", f.name()), move |n| {
            f.eval(&GroupType::cyclic(n))
        })
    }

    /// True iff `f(1) = 1` and `f(A x B) = f(A) f(B)` for all nontrivial `A`, `B` of
    /// coprime orders with `|A||B| <= order_bound`. The product side is evaluated
    /// with [`AbelianFunction::eval_direct`] so the check never assumes its answer.
    pub fn check_multiplicative(&self, f: &AbelianFunction, order_bound: u64) -> Result<bool> {
        if !f.eval(&GroupType::trivial())?.is_one() {
            return Ok(false);
        }
        let types = types_up_to(order_bound / 2);
        for a in types.iter().filter(|a| !a.is_trivial()) {
            for b in types.iter().filter(|b| b.order() > a.order()) {
                if a.order() * b.order() > order_bound || a.order().gcd(&b.order()) != 1 {
                    continue;
                }
                if f.eval_direct(&a.product(b))? != f.eval(a)? * f.eval(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `Π_p (-1)^{d_p} p^{d_p (d_p - 1) / 2}` where `d_p` is the rank of the p-part, for
/// groups whose p-parts are all elementary; 0 otherwise.
pub fn mu_closed(g: &GroupType) -> ExactValue {
    if !g.is_elementary() {
        return ExactValue::zero();
    }
    let mut acc = BigInt::one();
    for (p, parts) in g.primary().components {
        let dim = parts.len() as u32;
        let term = BigInt::from(p).pow(dim * (dim - 1) / 2);
        acc *= if dim % 2 == 1 { -term } else { term };
    }
    int(acc)
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// True iff the value is an integer divisible by `n`.
pub fn divisible_by(value: &ExactValue, n: u64) -> bool {
    value.is_integer() && (value.numer() % BigInt::from(n)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(f: &[u64]) -> GroupType {
        GroupType::from_invariant_factors(f.to_vec()).unwrap()
    }

    #[test]
    fn evaluation_basics() {
        let alg = Algebra::default();
        assert_eq!(alg.one().eval(&gt(&[2, 2])).unwrap(), int(1));
        assert_eq!(alg.card().eval(&gt(&[2, 4])).unwrap(), int(8));
        assert_eq!(alg.delta().eval(&GroupType::trivial()).unwrap(), int(1));
        assert_eq!(alg.delta().eval(&gt(&[3])).unwrap(), int(0));
        let mu = alg.mu();
        assert_eq!(mu.eval(&gt(&[2, 2])).unwrap(), mu.eval(&gt(&[2, 2])).unwrap());
    }

    #[test]
    fn convolution_examples() {
        let alg = Algebra::default();
        let phi_one = alg.convolve(&alg.phi(), &alg.one());
        assert_eq!(phi_one.eval(&gt(&[2, 2])).unwrap(), int(4));
        let one_one = alg.convolve(&alg.one(), &alg.one());
        assert_eq!(one_one.eval(&gt(&[2, 2])).unwrap(), int(5));
        for f in [alg.one(), alg.card(), alg.mu(), alg.phi(), alg.n_t(2)] {
            let df = alg.convolve(&alg.delta(), &f);
            for g in types_up_to(16) {
                assert_eq!(df.eval(&g).unwrap(), f.eval(&g).unwrap(), "{} at {g}", f.name());
            }
        }
    }

    #[test]
    fn vector_space_operations() {
        let alg = Algebra::default();
        assert_eq!(alg.pointwise(&alg.card(), &alg.card()).eval(&gt(&[2])).unwrap(), int(4));
        assert_eq!(alg.add(&alg.delta(), &alg.delta()).eval(&GroupType::trivial()).unwrap(), int(2));
        assert_eq!(alg.scale(int(3), &alg.one()).eval(&gt(&[2])).unwrap(), int(3));
    }

    #[test]
    fn inverses() {
        let alg = Algebra::default();
        let mu = alg.inverse(&alg.one()).unwrap();
        assert_eq!(mu.eval(&gt(&[2, 2])).unwrap(), int(2));
        assert_eq!(mu.eval(&gt(&[4])).unwrap(), int(0));
        let d_inv = alg.inverse(&alg.delta()).unwrap();
        for g in types_up_to(12) {
            assert_eq!(d_inv.eval(&g).unwrap(), alg.delta().eval(&g).unwrap());
        }
        let phi = alg.phi();
        let unit = alg.convolve(&phi, &alg.inverse(&phi).unwrap());
        for g in types_up_to(24) {
            assert_eq!(unit.eval(&g).unwrap(), alg.delta().eval(&g).unwrap());
        }
        // a non-integral inverse: 2*one has inverse mu/2
        let half_mu = alg.inverse(&alg.scale(int(2), &alg.one())).unwrap();
        assert_eq!(half_mu.eval(&gt(&[2, 2])).unwrap(), int(1));
        assert_eq!(half_mu.eval(&gt(&[2])).unwrap(), ExactValue::new((-1).into(), 2.into()));
    }

    #[test]
    fn non_invertible() {
        let alg = Algebra::default();
        let card_minus_one = alg.add(&alg.card(), &alg.scale(int(-1), &alg.one()));
        assert_eq!(
            alg.inverse(&card_minus_one).unwrap_err(),
            Error::NotInvertible(card_minus_one.name().to_string())
        );
    }

    #[test]
    fn closed_mu() {
        assert_eq!(mu_closed(&gt(&[2, 2])), int(2));
        assert_eq!(mu_closed(&gt(&[6])), int(1));
        assert_eq!(mu_closed(&gt(&[2, 2, 2])), int(-8));
        assert_eq!(mu_closed(&gt(&[4])), int(0));
        assert_eq!(mu_closed(&GroupType::trivial()), int(1));
    }

    #[test]
    fn builtin_examples() {
        let alg = Algebra::default();
        assert_eq!(alg.phi().eval(&gt(&[2, 2])).unwrap(), int(0));
        assert_eq!(alg.n_t(1).eval(&gt(&[2, 4])).unwrap(), int(0));
        assert_eq!(alg.n_t(2).eval(&gt(&[2, 2])).unwrap(), int(8));
        assert_eq!(alg.subgroup_count().eval(&gt(&[12])).unwrap(), int(6));
        // generating pairs of Z_2^2: ordered bases of F_2^2
        assert_eq!(alg.generating_tuples(2).eval(&gt(&[2, 2])).unwrap(), int(6));
        // 2-subsets of Z_2^2 generating it: any two distinct nonzero elements
        assert_eq!(alg.generating_subsets_of_size(2).eval(&gt(&[2, 2])).unwrap(), int(3));
    }

    #[test]
    fn registry() {
        let alg = Algebra::default();
        for name in ["delta", "one", "card", "mu", "phi", "nsub", "nt:3", "gentuples:2", "gensubsets:2", "tpow:2"] {
            assert_eq!(alg.builtin(name).unwrap().name(), name);
        }
        for bad in ["nope", "nt", "nt:x", "mu:2", "nt:0", ""] {
            assert_eq!(alg.builtin(bad).unwrap_err(), Error::UnknownFunction(bad.to_string()));
        }
    }

    #[test]
    fn restriction() {
        let alg = Algebra::default();
        assert_eq!(alg.restrict_to_cyclic(&alg.mu()).eval(12).unwrap(), int(0));
        assert_eq!(alg.restrict_to_cyclic(&alg.phi()).eval(10).unwrap(), int(4));
        assert_eq!(alg.restrict_to_cyclic(&alg.delta()).eval(1).unwrap(), int(1));
        assert!(alg.restrict_to_cyclic(&alg.delta()).eval(0).is_err());
    }

    #[test]
    fn multiplicativity_checks() {
        let alg = Algebra::default();
        assert!(alg.check_multiplicative(&alg.mu(), 100).unwrap());
        assert!(alg.check_multiplicative(&alg.card(), 100).unwrap());
        assert!(!alg.check_multiplicative(&alg.t_pow_card(2), 36).unwrap());
        assert!(!alg.check_multiplicative(&alg.n_t(2), 36).unwrap());
    }

    #[test]
    fn lattice_bound_propagates() {
        let alg = Algebra::new(16);
        let err = alg.subgroup_count().eval(&gt(&[32])).unwrap_err();
        assert_eq!(err, Error::LatticeBound { order: 32, bound: 16 });
        // the multiplicative fast path only needs the 2-part and 3-part lattices
        assert_eq!(alg.subgroup_count().eval(&gt(&[48])).unwrap(), int(10));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
