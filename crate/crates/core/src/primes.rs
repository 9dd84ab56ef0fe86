//! Trial-division factorization over a precomputed prime table.
//!
//! Orders handled by the crate stay well below `PRIME_TABLE_LIMIT^2`; larger inputs
//! still factor correctly, the loop just keeps stepping past the table.

use std::sync::OnceLock;

const PRIME_TABLE_LIMIT: u64 = 1 << 12;

fn prime_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = PRIME_TABLE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Prime factorization as `(p, e)` pairs with increasing `p`. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factorize 0");
    let mut out = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    for &p in prime_table() {
        if p * p > n {
            break;
        }
        push(&mut n, p);
    }
    let mut p = PRIME_TABLE_LIMIT + 1;
    while p * p <= n {
        push(&mut n, p);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}
