use std::sync::OnceLock;

/// Primes up to `x` inclusive, ascending.
pub fn primes_upto(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let n = x as usize;
    // Odd-only sieve: index i stands for 2i+1.
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend((1..half).filter(|&i| !composite[i] && 2 * i < n).map(|i| (2 * i + 1) as u64));
    out
}

/// Prime counting function.
pub fn pi(x: u64) -> u64 {
    primes_upto(x).len() as u64
}

/// Primes in the half-open window `[lo, hi)`, given every prime up to
/// `sqrt(hi)` in `base`.
pub fn primes_in_window(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    if hi <= lo {
        return Vec::new();
    }
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p.saturating_mul(p) >= hi {
            break;
        }
        let first = std::cmp::max(p * p, lo.div_ceil(p) * p);
        let mut m = first;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    (0..len).filter(|&i| !composite[i]).map(|i| lo + i as u64).filter(|&n| n >= 2).collect()
}

/// Primes below 10^6, computed once.
pub(crate) fn small_primes() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| primes_upto(TRIAL_DIVISION_LIMIT))
}

pub(crate) const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(pi(0), 0);
        assert_eq!(pi(1), 0);
        assert_eq!(pi(2), 1);
        assert_eq!(pi(4), 2);
        assert_eq!(pi(10), 4);
        assert_eq!(pi(20), 8);
        assert_eq!(pi(1_000_000), 78_498);
        assert_eq!(primes_upto(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn window_matches_full_sieve() {
        let base = primes_upto(1000);
        let full = primes_upto(200_000);
        for (lo, hi) in [(0, 100), (1, 2), (2, 3), (90_000, 100_003), (199_000, 200_001)] {
            let expect: Vec<u64> = full.iter().copied().filter(|&p| p >= lo && p < hi).collect();
            assert_eq!(primes_in_window(lo, hi, &base), expect, "window [{lo},{hi})");
        }
    }
}
