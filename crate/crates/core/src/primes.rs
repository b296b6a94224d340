//! Deterministic integer helpers: primality testing, factorization, divisor
//! enumeration, perfect-power detection.
//!
//! Factorization is trial division up to a fixed bound, then Miller-Rabin plus
//! Brent's cycle-finding variant of Pollard rho on what remains. Everything is
//! exact; the probabilistic primality test uses a fixed witness set that is
//! deterministic for all inputs below 3.3e24 (far beyond any scan box).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// First 25 primes, the moduli used by the irreducibility pipeline.
pub(crate) const FIRST_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

const TRIAL_BOUND: u64 = 1_000_000;

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (witness set valid for all n < 3.3e24).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin(n: &BigUint, base: u64) -> bool {
    // n odd, n > 3, base < n assumed by caller.
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality test for arbitrary-size inputs; deterministic below 3.3e24.
pub(crate) fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .all(|&a| miller_rabin(n, a))
}

/// If n = r^k for some k >= 2, returns (r, k) with k maximal (so r is not
/// itself a perfect power). Requires n >= 2.
pub(crate) fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits.max(2)).rev() {
        let r = n.nth_root(k);
        if r <= BigUint::one() {
            continue;
        }
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

fn spend(budget: &mut u64, steps: u64) -> bool {
    *budget = budget.saturating_sub(steps);
    *budget > 0
}

fn brent_rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    let step = |y: u64, c: u64| ((mulmod_u64(y, y, n) as u128 + c as u128) % n as u128) as u64;
    for c in 1u64.. {
        let mut y = 2u64;
        let m = 128u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y, c);
            }
            if !spend(budget, r) {
                return None;
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let burst = m.min(r - k);
                for _ in 0..burst {
                    y = step(y, c);
                    q = mulmod_u64(q, x.abs_diff(y), n);
                }
                if !spend(budget, burst) {
                    return None;
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time.
            loop {
                ys = step(ys, c);
                if !spend(budget, 1) {
                    return None;
                }
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    unreachable!("rho constant sweep is unbounded")
}

fn brent_rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    // n odd composite, not a prime power. Returns a nontrivial divisor, or
    // None once the step budget is exhausted.
    if let Some(v) = n.to_u64() {
        return brent_rho_u64(v, budget).map(BigUint::from);
    }
    let one = BigUint::one();
    let abs_diff = |x: &BigUint, y: &BigUint| if x > y { x - y } else { y - x };
    for c in 1u64.. {
        let cc = BigUint::from(c);
        let mut y = BigUint::from(2u32);
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &cc) % n;
            }
            if !spend(budget, r) {
                return None;
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let burst = m.min(r - k);
                for _ in 0..burst {
                    y = (&y * &y + &cc) % n;
                    q = (&q * abs_diff(&x, &y)) % n;
                }
                if !spend(budget, burst) {
                    return None;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = (&ys * &ys + &cc) % n;
                if !spend(budget, 1) {
                    return None;
                }
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    unreachable!("rho constant sweep is unbounded")
}

/// Complete factorization of n >= 1 into (prime, exponent) pairs, primes ascending.
pub(crate) fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    if rest <= BigUint::one() {
        return out;
    }
    let push = |p: BigUint, e: u32, out: &mut Vec<(BigUint, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            push(bp, e, &mut out);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    // What remains has no prime factor <= min(TRIAL_BOUND, sqrt(rest)).
    let mut stack = vec![(rest, 1u32)];
    while let Some((m, mult)) = stack.pop() {
        if m <= BigUint::one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, mult, &mut out);
        } else if let Some((root, k)) = perfect_power(&m) {
            stack.push((root, mult * k));
        } else {
            let mut unlimited = u64::MAX;
            let d = brent_rho(&m, &mut unlimited).expect("unlimited rho budget");
            let q = &m / &d;
            stack.push((d, mult));
            stack.push((q, mult));
        }
    }
    out.sort();
    out
}

/// Trial bound for the budgeted pipeline; a composite cofactor that survives
/// it has all prime factors above this bound.
pub(crate) const SHORT_TRIAL_BOUND: u64 = 1024;

/// Best-effort factorization with an explicit work budget for the rho stage.
///
/// Returns exact (prime, exponent) pairs plus, when the budget ran out, the
/// unfactored cofactor as (base, power): base is composite, coprime to every
/// returned prime, not a perfect power, and free of primes up to
/// `SHORT_TRIAL_BOUND`; its primes divide n with multiplicity a multiple of
/// power. With a large enough budget the cofactor is None and the result
/// agrees with `factor`.
pub(crate) fn try_factor(n: &BigUint, rho_budget: u64) -> (Vec<(BigUint, u32)>, Option<(BigUint, u32)>) {
    let mut found: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    if rest <= BigUint::one() {
        return (Vec::new(), None);
    }
    let mut p = 2u64;
    while p <= SHORT_TRIAL_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        if (&rest % &bp).is_zero() {
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
            found.push(bp);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    let mut budget = rho_budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m <= BigUint::one() {
            continue;
        }
        if is_probable_prime(&m) {
            found.push(m);
        } else if let Some((root, _)) = perfect_power(&m) {
            stack.push(root);
        } else if let Some(d) = brent_rho(&m, &mut budget) {
            stack.push(&m / &d);
            stack.push(d);
        }
        // Budget exhausted: drop m here; it reappears in the leftover below.
    }
    // Exponents by direct division, so primes hiding in dropped composites
    // are still counted; the quotient is exactly the unfactored part.
    found.sort();
    found.dedup();
    let mut out = Vec::new();
    let mut leftover = n.clone();
    for q in found {
        let mut e = 0u32;
        while (&leftover % &q).is_zero() {
            leftover /= &q;
            e += 1;
        }
        debug_assert!(e >= 1);
        out.push((q, e));
    }
    if leftover <= BigUint::one() {
        return (out, None);
    }
    if is_probable_prime(&leftover) {
        out.push((leftover, 1));
        out.sort();
        return (out, None);
    }
    if let Some((root, k)) = perfect_power(&leftover) {
        if is_probable_prime(&root) {
            out.push((root, k));
            out.sort();
            return (out, None);
        }
        return (out, Some((root, k)));
    }
    (out, Some((leftover, 1)))
}

/// All positive divisors of n >= 1, ascending.
pub(crate) fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor(n) {
        let len = divs.len();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk = &pk * &p;
            for i in 0..len {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_test_small() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, FIRST_PRIMES.to_vec());
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64.wrapping_mul(3)));
    }

    #[test]
    fn factor_mixed() {
        let n = BigUint::from(2u32).pow(7) * BigUint::from(3u32).pow(2) * BigUint::from(97u32);
        let f = factor(&n);
        assert_eq!(
            f,
            vec![
                (BigUint::from(2u32), 7),
                (BigUint::from(3u32), 2),
                (BigUint::from(97u32), 1)
            ]
        );
    }

    #[test]
    fn factor_large_semiprime() {
        // Both factors exceed the trial-division bound, forcing the rho path.
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let f = factor(&(&p * &q));
        assert_eq!(f, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn perfect_power_detection() {
        assert_eq!(
            perfect_power(&BigUint::from(729u32)),
            Some((BigUint::from(3u32), 6))
        );
        assert_eq!(perfect_power(&BigUint::from(728u32)), None);
    }

    #[test]
    fn divisor_enumeration() {
        let divs = divisors(&BigUint::from(60u32));
        let expect: Vec<BigUint> = [1u32, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]
            .iter()
            .map(|&d| BigUint::from(d))
            .collect();
        assert_eq!(divs, expect);
    }

    #[test]
    fn budgeted_factor_matches_full() {
        for n in [
            BigUint::from(2u32).pow(7) * BigUint::from(3u32).pow(2) * BigUint::from(97u32),
            BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64),
            BigUint::from(1u32),
            BigUint::from(2_305_843_009_213_693_951u64), // 2^61 - 1, prime
        ] {
            let (pairs, leftover) = try_factor(&n, 50_000_000);
            assert_eq!(leftover, None);
            assert_eq!(pairs, factor(&n));
        }
    }

    #[test]
    fn budgeted_factor_reports_stuck_cofactor() {
        // Two Mersenne primes far beyond any tiny rho budget.
        let m89 = (BigUint::from(1u32) << 89) - BigUint::one();
        let m107 = (BigUint::from(1u32) << 107) - BigUint::one();
        let n = &m89 * &m107;
        let (pairs, leftover) = try_factor(&n, 10);
        assert!(pairs.is_empty());
        assert_eq!(leftover, Some((n.clone(), 1)));
        // A hidden square structure is still surfaced through the power tag.
        let (pairs, leftover) = try_factor(&(&n * &n), 10);
        assert!(pairs.is_empty());
        assert_eq!(leftover, Some((n.clone(), 2)));
        // Mixed: a small prime factors out exactly, the rest stays opaque.
        let (pairs, leftover) = try_factor(&(&n * 40u32), 10);
        assert_eq!(
            pairs,
            vec![(BigUint::from(2u32), 3), (BigUint::from(5u32), 1)]
        );
        assert_eq!(leftover, Some((n, 1)));
    }
}
