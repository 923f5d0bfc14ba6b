//! Prime classification and the lower-bound vocabulary attached to a prime.
//!
//! All inputs are 64-bit. Bounds that must compare exactly (`(p+3)/2` and
//! `(49p+1)/60`) are kept as rationals; `2√(p−1)` and the logarithmic value
//! are reported as floats, and equality with `2√(p−1)` is decided by integer
//! arithmetic on squares, never by float comparison.

use num_rational::Ratio;
use serde::Serialize;

use crate::canonical;
use crate::error::GroupError;

/// Inputs must stay below this bound.
pub const INPUT_LIMIT: u64 = 1 << 63;

/// Miller–Rabin witnesses that are exact for every 64-bit input.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeClass {
    pub is_prime: bool,
    /// `p` and `(p−1)/2` are both prime.
    pub is_safe: bool,
    /// `p` and `2p+1` are both prime.
    pub is_sophie_germain: bool,
}

pub fn classify_prime(p: u64) -> Result<PrimeClass, GroupError> {
    if p < 2 {
        return Err(GroupError::InvalidParameter(format!("{p} is below 2")));
    }
    check_range(p)?;
    let prime = is_prime(p);
    Ok(PrimeClass {
        is_prime: prime,
        is_safe: prime && p % 2 == 1 && is_prime((p - 1) / 2),
        is_sophie_germain: prime && is_prime(2 * p + 1),
    })
}

fn check_range(n: u64) -> Result<(), GroupError> {
    if n >= INPUT_LIMIT {
        return Err(GroupError::InvalidParameter(format!("{n} is not below 2^63")));
    }
    Ok(())
}

fn require_prime(p: u64) -> Result<(), GroupError> {
    check_range(p)?;
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// Pollard–Brent rho; `n` must be an odd composite.
fn rho(n: u64) -> u64 {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q, mut g) = (2u64, 2u64, 1u64, 1u64);
        let mut r = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        let d = rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut primes = Vec::new();
    let mut m = n;
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m % q == 0 {
            primes.push(q);
            m /= q;
        }
    }
    split(m, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("divisors of 0".into()));
    }
    check_range(n)?;
    let mut divs = vec![1u64];
    for (q, e) in factorize(n) {
        let len = divs.len();
        let mut power = 1;
        for _ in 0..e {
            power *= q;
            for i in 0..len {
                divs.push(divs[i] * power);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// The factorization `p − 1 = ab` with `a ≤ b` and `b − a` minimal.
///
/// The minimizing pair is unique: `a + b` is fixed by `(b−a)² + 4(p−1)`.
pub fn balanced_divisor_pair(p: u64) -> Result<(u64, u64), GroupError> {
    require_prime(p)?;
    let n = p - 1;
    let a = divisors(n)?
        .into_iter()
        .take_while(|&d| (d as u128) * (d as u128) <= n as u128)
        .last()
        .expect("1 divides p - 1");
    Ok((a, n / a))
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64, GroupError> {
    require_prime(p)?;
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize(p - 1);
    Ok((2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("a primitive root exists"))
}

/// All primes `≤ n` by sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Every bound attached to a prime `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundProfile {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub sum_ab: u64,
    /// `2√(p−1)`.
    #[serde(serialize_with = "canonical::fixed6")]
    pub lower_old: f64,
    /// `⌈2√(p−1)⌉`, computed exactly.
    pub lower_old_ceil: u64,
    /// `(p+3)/2`.
    #[serde(serialize_with = "canonical::ratio")]
    pub upper_safe: Ratio<u128>,
    /// `(49p+1)/60`.
    #[serde(serialize_with = "canonical::ratio")]
    pub solvable_p2_bound: Ratio<u128>,
    /// `(p−1)/log₂(p+1) + 2·log₂(p+1)`.
    #[serde(serialize_with = "canonical::fixed6")]
    pub star_value: f64,
    /// `√(p−1)` is an integer.
    pub sqrt_integral: bool,
    pub is_safe: bool,
    pub is_sophie_germain: bool,
}

impl BoundProfile {
    /// `a + b = 2√(p−1)`, decided on squares.
    pub fn sum_equals_lower(&self) -> bool {
        let s = self.sum_ab as u128;
        s * s == 4 * (self.p as u128 - 1)
    }

    /// `2√(p−1) ≤ a+b ≤ (p+3)/2`, decided exactly.
    pub fn chain_holds(&self) -> bool {
        let s = self.sum_ab as u128;
        s * s >= 4 * (self.p as u128 - 1) && Ratio::from_integer(s) <= self.upper_safe
    }

    pub fn sum_equals_upper(&self) -> bool {
        Ratio::from_integer(self.sum_ab as u128) == self.upper_safe
    }
}

pub fn bound_profile(p: u64) -> Result<BoundProfile, GroupError> {
    let (a, b) = balanced_divisor_pair(p)?;
    let class = classify_prime(p)?;
    let four_n = 4 * (p as u128 - 1);
    let root = isqrt(four_n);
    let lower_old_ceil = if root * root == four_n { root } else { root + 1 } as u64;
    let sqrt_n = isqrt(p as u128 - 1);
    let log = ((p + 1) as f64).log2();
    Ok(BoundProfile {
        p,
        a,
        b,
        sum_ab: a + b,
        lower_old: 2.0 * ((p - 1) as f64).sqrt(),
        lower_old_ceil,
        upper_safe: Ratio::new(p as u128 + 3, 2),
        solvable_p2_bound: Ratio::new(49 * p as u128 + 1, 60),
        star_value: (p - 1) as f64 / log + 2.0 * log,
        sqrt_integral: sqrt_n * sqrt_n == p as u128 - 1,
        is_safe: class.is_safe,
        is_sophie_germain: class.is_sophie_germain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn classify_examples() {
        let c = classify_prime(11).unwrap();
        assert!(c.is_prime && c.is_safe && c.is_sophie_germain);
        let c = classify_prime(29).unwrap();
        assert!(c.is_prime && !c.is_safe && c.is_sophie_germain);
        assert!(!classify_prime(4).unwrap().is_prime);
        assert!(classify_prime(1).is_err());
        assert!(classify_prime(1 << 63).is_err());
    }

    #[test]
    fn primality_agrees_with_trial_division_below_one_million() {
        let sieved = primes_up_to(1_000_000);
        let tested: Vec<u64> = (0..=1_000_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, tested);
        for n in (0..20_000).chain(999_000..1_000_000) {
            assert_eq!(is_prime(n), trial_division(n), "{n}");
        }
    }

    #[test]
    fn large_primes_and_strong_pseudoprimes() {
        // 3215031751 is a strong pseudoprime to bases 2,3,5,7.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(28).unwrap(), vec![1, 2, 4, 7, 14, 28]);
        assert!(divisors(0).is_err());
        let n = 600_851_475_143u64;
        assert_eq!(factorize(n), vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]);
    }

    #[test]
    fn balanced_pair_examples() {
        assert_eq!(balanced_divisor_pair(23).unwrap(), (2, 11));
        assert_eq!(balanced_divisor_pair(29).unwrap(), (4, 7));
        assert_eq!(balanced_divisor_pair(2).unwrap(), (1, 1));
        assert_eq!(balanced_divisor_pair(3).unwrap(), (1, 2));
        assert_eq!(balanced_divisor_pair(17).unwrap(), (4, 4));
        assert_eq!(balanced_divisor_pair(15).unwrap_err(), GroupError::NotPrime(15));
    }

    #[test]
    fn balanced_pair_is_minimal_below_ten_thousand() {
        for p in primes_up_to(10_000) {
            let (a, b) = balanced_divisor_pair(p).unwrap();
            assert_eq!(a * b, p - 1);
            for d in divisors(p - 1).unwrap() {
                assert!(d.abs_diff((p - 1) / d) >= b - a, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn profile_examples() {
        let bp = bound_profile(23).unwrap();
        assert_eq!(bp.sum_ab, 13);
        assert!(bp.sum_equals_upper() && bp.is_safe);

        let bp = bound_profile(17).unwrap();
        assert_eq!((bp.a, bp.b, bp.sum_ab), (4, 4, 8));
        assert_eq!(bp.lower_old, 8.0);
        assert!(bp.sqrt_integral && bp.sum_equals_lower());

        let bp = bound_profile(5).unwrap();
        assert_eq!(bp.solvable_p2_bound, Ratio::new(246, 60));
        assert_eq!(bp.upper_safe, Ratio::from_integer(4));
        assert!(bp.solvable_p2_bound > bp.upper_safe);
    }

    #[test]
    fn lower_ceiling_is_exact() {
        assert_eq!(bound_profile(2).unwrap().lower_old_ceil, 2);
        assert_eq!(bound_profile(3).unwrap().lower_old_ceil, 3); // 2√2 ≈ 2.83
        assert_eq!(bound_profile(29).unwrap().lower_old_ceil, 11); // 2√28 ≈ 10.58
        assert_eq!(bound_profile(37).unwrap().lower_old_ceil, 12);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(23).unwrap(), 5);
        assert_eq!(primitive_root(41).unwrap(), 6);
        assert_eq!(primitive_root(2).unwrap(), 1);
    }
}
