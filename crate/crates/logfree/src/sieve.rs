//! Prime sieves: a simple odd-only sieve for modest ranges and a segmented
//! sieve for counting runs up to the capacity bound.

use thiserror::Error;

/// Default capacity for segmented runs.
pub const DEFAULT_CAPACITY: u64 = 1_000_000_000;

const SEGMENT: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SieveError {
    #[error("requested bound {requested} exceeds sieve capacity {capacity}")]
    CapacityExceeded { requested: u64, capacity: u64 },
}

/// All primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let _ = for_each_prime(limit, DEFAULT_CAPACITY, |p| out.push(p));
    out
}

/// Applies `f` to every prime `<= limit` in increasing order, by segmented
/// sieve of Eratosthenes over odd numbers.
pub fn for_each_prime(
    limit: u64,
    capacity: u64,
    mut f: impl FnMut(u64),
) -> Result<(), SieveError> {
    if limit > capacity {
        return Err(SieveError::CapacityExceeded { requested: limit, capacity });
    }
    if limit < 2 {
        return Ok(());
    }
    f(2);
    if limit < 3 {
        return Ok(());
    }
    let root = limit.isqrt() as usize;
    // Base sieve of odd numbers up to sqrt(limit); index i <-> 2i + 1.
    let mut base = vec![true; root / 2 + 1];
    base[0] = false;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= root {
        if base[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < base.len() {
                base[j] = false;
                j += p;
            }
        }
        i += 1;
    }
    let base_primes: Vec<u64> =
        (1..base.len()).filter(|&i| base[i]).map(|i| (2 * i + 1) as u64).collect();

    let mut mark = vec![false; SEGMENT];
    // Each segment covers odd numbers low, low+2, ..., low + 2*(SEGMENT-1).
    let mut low = 3u64;
    while low <= limit {
        let seg_last = low + 2 * (SEGMENT as u64 - 1);
        let hi = seg_last.min(limit);
        let len = ((hi - low) / 2 + 1) as usize;
        mark[..len].fill(false);
        for &p in &base_primes {
            let mut start = p * p;
            if start > hi {
                break;
            }
            if start < low {
                let k = low.div_ceil(p);
                let k = if k % 2 == 0 { k + 1 } else { k };
                start = k * p;
            }
            let mut m = start;
            while m <= hi {
                mark[((m - low) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        for (idx, &composite) in mark.iter().take(len).enumerate() {
            if !composite {
                f(low + 2 * idx as u64);
            }
        }
        low = seg_last + 2;
    }
    Ok(())
}

/// Trial-division primality; the independent per-prime oracle for sieve
/// cross-checks.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest-prime-factor table for `0..=limit`, for fast factorization.
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Factors `n` into `(prime, exponent)` pairs by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(3), vec![2, 3]);
    }

    #[test]
    fn pi_of_powers_of_ten() {
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(10_000).len(), 1229);
        assert_eq!(primes_up_to(1_000_000).len(), 78498);
    }

    #[test]
    fn matches_trial_division_to_1e5() {
        let sieved = primes_up_to(100_000);
        let mut idx = 0;
        for n in 0..=100_000u64 {
            if is_prime_trial(n) {
                assert_eq!(sieved[idx], n);
                idx += 1;
            }
        }
        assert_eq!(idx, sieved.len());
    }

    #[test]
    fn capacity_is_enforced() {
        let r = for_each_prime(10, 5, |_| {});
        assert_eq!(r, Err(SieveError::CapacityExceeded { requested: 10, capacity: 5 }));
    }

    #[test]
    fn segment_boundaries_are_seamless() {
        let lo = 2_090_000u64;
        let hi = 2_100_000u64;
        let mut count = 0u64;
        for_each_prime(hi, DEFAULT_CAPACITY, |p| {
            if p >= lo {
                count += 1;
            }
        })
        .unwrap();
        let brute = (lo..=hi).filter(|&n| is_prime_trial(n)).count() as u64;
        assert_eq!(count, brute);
    }

    #[test]
    fn spf_factors_match_trial_division() {
        let spf = smallest_prime_factors(1000);
        for n in 2..=1000u64 {
            let mut m = n as usize;
            let mut from_spf = Vec::new();
            while m > 1 {
                let p = spf[m] as u64;
                let mut e = 0;
                while m % p as usize == 0 {
                    m /= p as usize;
                    e += 1;
                }
                from_spf.push((p, e));
            }
            assert_eq!(from_spf, factorize(n));
        }
    }
}
