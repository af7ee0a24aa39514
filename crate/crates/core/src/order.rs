//! Big-integer helpers for group orders and their factored display.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n!/2`, the order of the alternating group on `n >= 2` points.
pub fn half_factorial(n: u64) -> BigUint {
    factorial(n) / BigUint::from(2u32)
}

pub fn pow2(e: u32) -> BigUint {
    BigUint::one() << e
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = alloc::vec![true; limit + 1];
    let mut out = Vec::new();
    for p in 2..=limit {
        if sieve[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q <= limit {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

/// Exponent of the prime `p` in `x`, and the cofactor.
fn strip(x: &BigUint, p: u64) -> (u32, BigUint) {
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() || x.is_zero() {
            return (e, x);
        }
        x = q;
        e += 1;
    }
}

/// Prime factors up to `max_prime` and the unfactored remainder.
pub fn factor_small(x: &BigUint, max_prime: u64) -> (Vec<(u64, u32)>, BigUint) {
    let mut rest = x.clone();
    let mut out = Vec::new();
    for p in primes_up_to(max_prime.max(2)) {
        if rest.is_one() {
            break;
        }
        let (e, r) = strip(&rest, p);
        if e > 0 {
            out.push((p, e));
            rest = r;
        }
    }
    (out, rest)
}

fn format_powers(factors: &[(u64, u32)], rest: &BigUint) -> String {
    let mut parts: Vec<String> = factors
        .iter()
        .map(|&(p, e)| if e == 1 { alloc::format!("{p}") } else { alloc::format!("{p}^{e}") })
        .collect();
    if !rest.is_one() {
        parts.push(alloc::format!("{rest}"));
    }
    parts.join("·")
}

const TRIAL_LIMIT: u64 = 1000;

/// Renders an order as prime powers times a factorial quotient `(q!/2)`
/// where some `q` from `candidates` fits: `q!/2` divides the order and the
/// largest prime up to `q` occurs in the order exactly as often as in
/// `q!/2`. The largest fitting `q` wins; otherwise the plain factorization
/// is shown.
pub fn format_order(order: &BigUint, candidates: &[u64]) -> String {
    if order.is_one() {
        return String::from("1");
    }
    let mut qs: Vec<u64> = candidates.iter().copied().filter(|&q| q >= 5).collect();
    qs.sort_unstable_by(|a, b| b.cmp(a));
    qs.dedup();
    for q in qs {
        let alt = half_factorial(q);
        let (cof, r) = order.div_rem(&alt);
        if !r.is_zero() {
            continue;
        }
        let p = *primes_up_to(q).last().expect("q >= 5");
        if strip(&cof, p).0 != 0 {
            continue;
        }
        if cof.is_one() {
            return alloc::format!("{q}!/2");
        }
        if cof == BigUint::from(2u32) {
            return alloc::format!("{q}!");
        }
        let (factors, rest) = factor_small(&cof, q.max(TRIAL_LIMIT));
        return alloc::format!("{}·({q}!/2)", format_powers(&factors, &rest));
    }
    let (factors, rest) = factor_small(order, TRIAL_LIMIT);
    format_powers(&factors, &rest)
}

/// `Some(q)` when `order == q!`, for small `q`.
pub fn as_factorial(order: &BigUint) -> Option<u64> {
    let mut f = BigUint::one();
    for q in 1..=4096u64 {
        f *= BigUint::from(q);
        if f == *order {
            return Some(q);
        }
        if f > *order {
            return None;
        }
    }
    None
}
