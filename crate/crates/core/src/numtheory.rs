//! Small integer helpers shared by the wreath and formula code.

/// Distinct prime divisors of `m`, ascending. Empty for `m ≤ 1`.
pub fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Least prime divisor of `m`, or `None` for `m ≤ 1`.
pub fn smallest_prime_divisor(m: u64) -> Option<u64> {
    prime_divisors(m).first().copied()
}

/// Number of distinct primes dividing `m`.
pub fn alpha(m: u64) -> usize {
    prime_divisors(m).len()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_divisor(n) == Some(n)
}

/// Divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_divisor_examples() {
        assert!(prime_divisors(1).is_empty());
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(30), vec![2, 3, 5]);
        assert_eq!(prime_divisors(49), vec![7]);
        assert_eq!(smallest_prime_divisor(35), Some(5));
        assert_eq!((alpha(1), alpha(12), alpha(30), alpha(32)), (0, 2, 3, 1));
        assert!(is_prime(11) && !is_prime(1) && !is_prime(91));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn prime_divisors_agree_with_trial_division() {
        for m in 1..2000u64 {
            let brute: Vec<u64> = (2..=m).filter(|&p| m % p == 0 && (2..p).all(|q| p % q != 0)).collect();
            assert_eq!(prime_divisors(m), brute);
        }
    }
}
