use abelian_algebra::functions::{int, ExactValue};
use abelian_algebra::group::types_up_to;
use abelian_algebra::primes::divisors;
use abelian_algebra::{AbelianFunction, Algebra};

fn builtins(alg: &Algebra) -> Vec<AbelianFunction> {
    vec![alg.one(), alg.card(), alg.mu(), alg.phi(), alg.subgroup_count()]
}

#[test]
fn restriction_is_dirichlet_convolution() {
    let alg = Algebra::default();
    let fs = builtins(&alg);
    for f in &fs {
        for g in &fs {
            let conv = alg.restrict_to_cyclic(&alg.convolve(f, g));
            let (rf, rg) = (alg.restrict_to_cyclic(f), alg.restrict_to_cyclic(g));
            for n in 1..=200u64 {
                let mut dirichlet = int(0);
                for d in divisors(n) {
                    dirichlet += rf.eval(d).unwrap() * rg.eval(n / d).unwrap();
                }
                assert_eq!(conv.eval(n).unwrap(), dirichlet, "{} * {} at {n}", f.name(), g.name());
            }
        }
    }
}

#[test]
fn convolution_is_bilinear() {
    let alg = Algebra::default().with_fast_path(false);
    let fs = builtins(&alg);
    let c: ExactValue = ExactValue::new(3.into(), 7.into());
    for t in types_up_to(32) {
        for f in &fs {
            for g in &fs {
                for h in &fs {
                    let left = alg.convolve(&alg.add(f, g), h).eval(&t).unwrap();
                    let right = alg.convolve(f, h).eval(&t).unwrap() + alg.convolve(g, h).eval(&t).unwrap();
                    assert_eq!(left, right, "{t}");
                }
                let scaled = alg.convolve(&alg.scale(c.clone(), f), g).eval(&t).unwrap();
                assert_eq!(scaled, c.clone() * alg.convolve(f, g).eval(&t).unwrap(), "{t}");
            }
        }
    }
}

#[test]
fn fast_path_agrees_with_lattice() {
    let fast = Algebra::default();
    let slow = Algebra::default().with_fast_path(false);
    let pairs = [(fast.mu(), slow.mu()), (fast.phi(), slow.phi()), (fast.subgroup_count(), slow.subgroup_count())];
    for t in types_up_to(128) {
        for (f, s) in &pairs {
            assert_eq!(f.eval(&t).unwrap(), s.eval(&t).unwrap(), "{} at {t}", f.name());
        }
    }
}

#[test]
fn pointwise_products_stay_multiplicative() {
    let alg = Algebra::default();
    let fs = builtins(&alg);
    for f in &fs {
        for g in &fs {
            assert!(alg.check_multiplicative(&alg.pointwise(f, g), 100).unwrap());
        }
    }
    assert!(!alg.check_multiplicative(&alg.n_t(2), 36).unwrap());
}

#[test]
fn inverse_is_two_sided() {
    let alg = Algebra::default().with_fast_path(false);
    let delta = alg.delta();
    for f in [alg.card(), alg.n_t(2), alg.t_pow_card(3), alg.binom_card(0)] {
        let inv = alg.inverse(&f).unwrap();
        for t in types_up_to(24) {
            assert_eq!(alg.convolve(&inv, &f).eval(&t).unwrap(), delta.eval(&t).unwrap(), "{} at {t}", f.name());
            assert_eq!(alg.convolve(&f, &inv).eval(&t).unwrap(), delta.eval(&t).unwrap(), "{} at {t}", f.name());
        }
    }
    assert!(alg.inverse(&alg.scale(int(0), &alg.one())).is_err());
}

#[test]
fn mobius_annihilates_one() {
    // sum over subgroups of mu(G/H) is zero for nontrivial G
    let alg = Algebra::default();
    let s = alg.convolve(&alg.one(), &alg.mu());
    for t in types_up_to(128) {
        let expected = if t.is_trivial() { int(1) } else { int(0) };
        assert_eq!(s.eval(&t).unwrap(), expected, "{t}");
    }
}
