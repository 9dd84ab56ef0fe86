//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its runtime;
//! the process exits nonzero if any criterion fails or exceeds its time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use abelian_algebra::counting::{element_order_profile, gaussian_subspace_count, Counter};
use abelian_algebra::functions::{divisible_by, int, mu_closed};
use abelian_algebra::group::{types_of_order, types_up_to, GroupType};
use abelian_algebra::oracle::{classical_mobius, classical_totient};
use abelian_algebra::verify;
use abelian_algebra::Algebra;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn sweep(report: abelian_algebra::Result<verify::SweepReport>) -> Result<usize, String> {
    let report = report.map_err(|e| e.to_string())?;
    if report.ok() {
        Ok(report.checked)
    } else {
        Err(report.to_string())
    }
}

fn ac1_mu() -> Outcome {
    // lattice recursion at every type, no primary-component shortcut
    let alg = Algebra::default().with_fast_path(false);
    let mu = alg.inverse(&alg.one()).map_err(|e| e.to_string())?;
    let types = types_up_to(200);
    for g in &types {
        let v = mu.eval(g).map_err(|e| e.to_string())?;
        ensure(v == mu_closed(g), || format!("mu({g}) = {v}, closed form {}", mu_closed(g)))?;
    }
    let restricted = alg.restrict_to_cyclic(&mu);
    for n in 1..=200 {
        let v = restricted.eval(n).map_err(|e| e.to_string())?;
        ensure(v == int(classical_mobius(n)), || format!("mu(Z/{n}) = {v}"))?;
    }
    Ok(format!("{} types, n <= 200", types.len()))
}

fn ac2_euler() -> Outcome {
    // Z/729 is the largest prime-power cyclic group below 1000
    let alg = Algebra::new(1000);
    let phi = alg.restrict_to_cyclic(&alg.phi());
    for n in 1..=1000 {
        let v = phi.eval(n).map_err(|e| e.to_string())?;
        ensure(v == int(classical_totient(n)), || format!("phi({n}) = {v}"))?;
    }
    Ok("n <= 1000".into())
}

fn ac3_divisibility() -> Outcome {
    let alg = Algebra::default();
    let mut checked = 0;
    for t in [1, 2, 3, 5] {
        let nt = alg.n_t(t);
        for g in types_up_to(64) {
            let v = nt.eval(&g).map_err(|e| e.to_string())?;
            ensure(divisible_by(&v, g.order()), || format!("N_{t}({g}) = {v} not divisible by {}", g.order()))?;
            checked += 1;
        }
    }
    let mu = alg.restrict_to_cyclic(&alg.mu());
    for t in [2u64, 3, 10] {
        for n in 1..=200u64 {
            let mut sum = int(0);
            for d in (1..=n).filter(|d| n % d == 0) {
                sum += mu.eval(d).map_err(|e| e.to_string())? * int(BigInt::from(t).pow((n / d) as u32));
            }
            ensure(divisible_by(&sum, n), || format!("sum_(d|{n}) mu(d) {t}^(n/d) = {sum}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} checks"))
}

fn ac4_generating_subsets() -> Outcome {
    let alg = Algebra::default();
    let n = sweep(verify::generating_subsets_sweep(18, &alg))?;
    let v = alg.n_t(2).eval(&"2,2".parse().unwrap()).map_err(|e| e.to_string())?;
    ensure(v == int(8), || format!("N_2(Z_2^2) = {v}"))?;
    Ok(format!("{n} groups"))
}

fn ac5_free_functions() -> Outcome {
    let alg = Algebra::default();
    let n = sweep(verify::free_functions_sweep(23, &[1, 2, 3, 4, 5], &alg))?;
    Ok(format!("{n} (group, t) pairs with t^|G| <= 10^7, t <= 5"))
}

fn ac6_morphisms() -> Outcome {
    let homs = sweep(verify::hom_sweep(16))?;
    let subs = sweep(verify::sub_count_sweep(64))?;
    Ok(format!("{homs} morphism checks, {subs} subgroup-count checks"))
}

fn ac7_gaussian() -> Outcome {
    let counter = Counter::default();
    for p in [2u64, 3] {
        for n in 0..=4u32 {
            for d in 0..=n {
                let gauss = gaussian_subspace_count(p, n, d).map_err(|e| e.to_string())?;
                let sub = counter
                    .sub_count(&GroupType::elementary(p, d as usize), &GroupType::elementary(p, n as usize))
                    .map_err(|e| e.to_string())?;
                ensure(gauss == sub, || format!("p={p} n={n} d={d}: {gauss} vs {sub}"))?;
            }
        }
    }
    for p in [2u64, 3, 5] {
        for n in 0..=6u32 {
            let mut sum = BigInt::zero();
            for d in 0..=n {
                let term = BigInt::from(p).pow(d * d.saturating_sub(1) / 2)
                    * BigInt::from(gaussian_subspace_count(p, n, d).unwrap());
                if d % 2 == 0 { sum += term } else { sum -= term }
            }
            let expected = if n == 0 { BigInt::one() } else { BigInt::zero() };
            ensure(sum == expected, || format!("alternating sum p={p} n={n} is {sum}"))?;
        }
    }
    Ok("p in {2,3}, n <= 4; alternating sums p in {2,3,5}, n <= 6".into())
}

fn ac8_algebra_laws() -> Outcome {
    let alg = Algebra::default().with_fast_path(false);
    let fs = [alg.one(), alg.card(), alg.mu(), alg.phi(), alg.subgroup_count(), alg.n_t(2)];
    let types = types_up_to(36);
    let eval = |f: &abelian_algebra::AbelianFunction, g: &GroupType| f.eval(g).map_err(|e| e.to_string());
    let delta = alg.delta();
    let mut checked = 0;
    for f in &fs {
        let unit = alg.convolve(&delta, f);
        let inv = alg.convolve(f, &alg.inverse(f).map_err(|e| e.to_string())?);
        for g in &types {
            ensure(eval(&unit, g)? == eval(f, g)?, || format!("delta*{} at {g}", f.name()))?;
            ensure(eval(&inv, g)? == eval(&delta, g)?, || format!("{0}*{0}^-1 at {g}", f.name()))?;
            checked += 2;
        }
        for h in &fs {
            let (fh, hf) = (alg.convolve(f, h), alg.convolve(h, f));
            for g in &types {
                ensure(eval(&fh, g)? == eval(&hf, g)?, || format!("{}*{} at {g}", f.name(), h.name()))?;
                checked += 1;
            }
        }
    }
    for (f, g, h) in fs.iter().cartesian_product(&fs).cartesian_product(&fs).map(|((f, g), h)| (f, g, h)) {
        let left = alg.convolve(&alg.convolve(f, g), h);
        let right = alg.convolve(f, &alg.convolve(g, h));
        for t in &types {
            ensure(eval(&left, t)? == eval(&right, t)?, || {
                format!("({}*{})*{} at {t}", f.name(), g.name(), h.name())
            })?;
            checked += 1;
        }
    }
    // n_t is not multiplicative
    let mult = &fs[..5];
    for f in mult {
        for h in mult {
            let prod = alg.convolve(f, h);
            ensure(alg.check_multiplicative(&prod, 100).map_err(|e| e.to_string())?, || {
                format!("{} not multiplicative", prod.name())
            })?;
        }
        let inv = alg.inverse(f).map_err(|e| e.to_string())?;
        ensure(alg.check_multiplicative(&inv, 100).map_err(|e| e.to_string())?, || {
            format!("{} not multiplicative", inv.name())
        })?;
    }
    Ok(format!("{checked} law checks on {} types; closure up to order 100", types.len()))
}

fn ac9_symmetric_generation() -> Outcome {
    let n = sweep(verify::symgen_sweep(7))?;
    Ok(format!("{n} checks (every transposition set of size <= 2, all orders 3..7)"))
}

fn ac10_isometries() -> Outcome {
    let n = sweep(verify::isometry_sweep(7))?;
    Ok(format!("{n} checks"))
}

fn ac11_classification() -> Outcome {
    let mut pairs = 0;
    for n in 1..=128 {
        let types = types_of_order(n);
        let profiles: Vec<_> = types.iter().map(element_order_profile).collect();
        for (i, j) in (0..types.len()).tuple_combinations() {
            ensure(profiles[i] != profiles[j], || {
                format!("{} and {} share an element-order profile", types[i], types[j])
            })?;
            pairs += 1;
        }
    }
    let found = Counter::default().conjecture_search(32).map_err(|e| e.to_string())?;
    let report = if found.is_empty() {
        "subgroup-profile search up to 32: no counterexamples".to_string()
    } else {
        format!("subgroup-profile search up to 32 found {found:?}")
    };
    Ok(format!("{pairs} pairs distinguished; {report}"))
}

fn ac12_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_abelian"))
            .args(["table", "mu,phi,nsub", "32", "csv"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || "table command failed".into())?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let rows = a.stdout.iter().filter(|&&c| c == b'\n').count() - 1;
    ensure(rows == 3 * types_up_to(32).len(), || format!("{rows} rows"))?;
    Ok(format!("{} identical bytes, {rows} rows", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, u64, fn() -> Outcome); 12] = [
        ("AC1", "mu: inverse(one) = closed form, cyclic = classical", 60, ac1_mu),
        ("AC2", "phi restricted to cyclic groups = totient", 10, ac2_euler),
        ("AC3", "|G| divides N_t(G); cyclic congruence", 60, ac3_divisibility),
        ("AC4", "N_2 = generating subsets (oracle)", 120, ac4_generating_subsets),
        ("AC5", "N_t = free functions (oracle)", 120, ac5_free_functions),
        ("AC6", "Hom/Mono/Epi/Aut and Sub counts (oracle)", 120, ac6_morphisms),
        ("AC7", "Gaussian binomials and alternating sums", 10, ac7_gaussian),
        ("AC8", "convolution laws and multiplicative closure", 60, ac8_algebra_laws),
        ("AC9", "symmetric generation criterion (closure oracle)", 300, ac9_symmetric_generation),
        ("AC10", "isometry group orders and kernels", 120, ac10_isometries),
        ("AC11", "element-order classification; subgroup-profile search", 120, ac11_classification),
        ("AC12", "table output is byte-deterministic", 60, ac12_determinism),
    ];
    let mut failed = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        match outcome {
            Ok(detail) if !over => {
                println!("[PASS] {id} {title} ({:.2}s / {budget}s): {detail}", elapsed.as_secs_f64());
            }
            Ok(detail) => {
                failed += 1;
                println!("[FAIL] {id} {title}: over time budget {:.2}s > {budget}s ({detail})", elapsed.as_secs_f64());
            }
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
