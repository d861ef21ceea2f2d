//! Integer arithmetic underneath everything else: Fourier coefficients of
//! `E`, Kronecker symbols, class numbers of imaginary quadratic fields and
//! discrete logarithms modulo powers of two.

use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed data of the curve `E: y^2 + y = x^3 + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveConstants {
    /// Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
    pub ainvs: [i64; 5],
    pub conductor: u64,
    /// `L(E,1)/Omega_E` as `(numerator, denominator)`.
    pub l_ratio: (i64, i64),
    /// Manin constant; 1 for the optimal curve.
    pub manin_constant: i64,
}

pub const CURVE: CurveConstants = CurveConstants {
    ainvs: [0, 0, 1, 0, 2],
    conductor: 243,
    l_ratio: (1, 3),
    manin_constant: 1,
};

/// Deterministic trial division; every caller works with numbers far below
/// 2^40, so this is never the bottleneck.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Sum of the positive divisors of `n`.
pub fn sigma(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Kronecker symbol `(a/n)` for `n >= 0`.
///
/// Uses `(a/2) = 0` for even `a`, `+1` for `a = ±1 mod 8`, `-1` for
/// `a = ±3 mod 8`, so that `x -> kronecker(x, m)` with `m = 1 mod 4` is the
/// character of `Q(sqrt m)/Q`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        n >>= twos;
    }
    // Jacobi symbol for odd n.
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Trace of Frobenius `a_p = p + 1 - #E(F_p)`.
///
/// Good primes are handled by counting affine solutions of
/// `y^2 + y = x^3 + 2` over `F_p`: tabulate how often each residue is hit
/// by `y^2 + y`, then sum over `x`. At the additive prime 3 the
/// coefficient is 0.
pub fn a_p(p: u64) -> i64 {
    debug_assert!(is_prime(p), "a_p called with composite {p}");
    if p == 3 {
        return 0;
    }
    let mut hits = vec![0u32; p as usize];
    for y in 0..p {
        hits[((y * y + y) % p) as usize] += 1;
    }
    let affine: u64 = (0..p)
        .map(|x| hits[((x * x % p * x + 2) % p) as usize] as u64)
        .sum();
    p as i64 + 1 - (affine as i64 + 1)
}

/// Coefficient `a_n` of the newform attached to `E`.
pub fn a_n(n: u64) -> i64 {
    assert!(n >= 1, "a_n is defined for n >= 1");
    factorize(n)
        .into_iter()
        .map(|(p, e)| a_prime_power(p, e))
        .product()
}

fn a_prime_power(p: u64, e: u32) -> i64 {
    let ap = a_p(p);
    if p == 3 {
        return if e == 0 { 1 } else { 0 };
    }
    let (mut prev, mut cur) = (1i64, ap);
    if e == 0 {
        return 1;
    }
    for _ in 1..e {
        let next = ap * cur - p as i64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Class number of `Q(sqrt t)` for negative squarefree `t`, by counting
/// reduced primitive forms `(a, b, c)` of discriminant `D` with
/// `|b| <= a <= c` and `b >= 0` whenever `|b| = a` or `a = c`.
pub fn class_number(t: i64) -> Result<u64> {
    if t >= 0 || !is_squarefree(t.unsigned_abs()) {
        return Err(Error::BadDiscriminant(t));
    }
    let disc = if t.rem_euclid(4) == 1 { t } else { 4 * t };
    Ok(count_reduced_forms(disc))
}

fn count_reduced_forms(disc: i64) -> u64 {
    let abs_d = -disc;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= abs_d {
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

const MAX_LOG_EXPONENT: u32 = 24;

fn pm5_table(k: u32) -> &'static [u32] {
    static TABLES: [OnceLock<Vec<u32>>; (MAX_LOG_EXPONENT + 1) as usize] =
        [const { OnceLock::new() }; (MAX_LOG_EXPONENT + 1) as usize];
    TABLES[k as usize].get_or_init(|| {
        let modulus = 1u64 << k;
        let mut table = vec![u32::MAX; (modulus / 2) as usize];
        let mut power = 1u64;
        for e in 0..(modulus >> 2) {
            // Index odd residues by x >> 1.
            table[(power >> 1) as usize] = e as u32;
            table[((modulus - power) >> 1) as usize] = e as u32;
            power = power * 5 % modulus;
        }
        table
    })
}

/// The exponent `e` in `[0, 2^(k-2))` with `x = ±5^e (mod 2^k)`.
pub fn discrete_log_pm5(x: i64, k: u32) -> Result<u64> {
    if x % 2 == 0 {
        return Err(Error::EvenArgument(x));
    }
    if !(3..=MAX_LOG_EXPONENT).contains(&k) {
        return Err(Error::UnsupportedExponent(k));
    }
    let r = x.rem_euclid(1i64 << k) as u64;
    Ok(pm5_table(k)[(r >> 1) as usize] as u64)
}

/// Membership in the prime set: `p = 7 (mod 12)` and `a_p` odd.
pub fn is_in_s(p: u64) -> bool {
    p % 12 == 7 && is_prime(p) && a_p(p) % 2 != 0
}

/// Splits `m` as `(p, q)` with `p < q` both admissible primes, if possible.
pub fn admissible_factors(m: i64) -> Option<(u64, u64)> {
    if m <= 0 {
        return None;
    }
    match factorize(m as u64).as_slice() {
        [(p, 1), (q, 1)] if is_in_s(*p) && is_in_s(*q) => Some((*p, *q)),
        _ => None,
    }
}

/// One row of the prime-pair table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub m: u64,
    pub a_m: i64,
    pub p: u64,
    pub q: u64,
    pub h_q: u64,
    pub h_6pq: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_fixtures() {
        assert_eq!(kronecker(-62, 7), 1);
        assert_eq!(kronecker(5, 1), 1);
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(3, 7), -1);
        assert_eq!(kronecker(7, 217), 0);
        assert_eq!(kronecker(3, 8), -1);
        assert_eq!(kronecker(-1, 217), 1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101, 103] {
            for a in -50i64..50 {
                let r = a.rem_euclid(p as i64) as u64;
                let euler = if r == 0 {
                    0
                } else {
                    let mut acc = 1u64;
                    for _ in 0..(p - 1) / 2 {
                        acc = acc * r % p;
                    }
                    if acc == 1 {
                        1
                    } else {
                        -1
                    }
                };
                assert_eq!(kronecker(a, p), euler, "({a}/{p})");
            }
        }
    }

    #[test]
    fn fourier_coefficients() {
        assert_eq!(a_p(2), 0);
        assert_eq!(a_p(3), 0);
        assert_eq!(a_p(7), 5);
        assert_eq!(a_p(31), -7);
        assert_eq!(a_n(1), 1);
        assert_eq!(a_n(4), -2);
        assert_eq!(a_n(8), 0);
        assert_eq!(a_n(217), -35);
        assert_eq!(a_n(9), 0);
    }

    #[test]
    fn a7_by_direct_enumeration() {
        let p = 7i64;
        let mut affine = 0;
        for x in 0..p {
            for y in 0..p {
                if (y * y + y - x * x * x - 2).rem_euclid(p) == 0 {
                    affine += 1;
                }
            }
        }
        assert_eq!(affine, 2);
        assert_eq!(a_p(7), p + 1 - (affine + 1));
    }

    #[test]
    fn supersingular_primes_have_zero_trace() {
        for p in (5..2000).filter(|&p| is_prime(p) && p % 3 == 2) {
            assert_eq!(a_p(p), 0, "p = {p}");
        }
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-7).unwrap(), 1);
        assert_eq!(class_number(-127).unwrap(), 5);
        assert_eq!(class_number(-1302).unwrap(), 16);
        assert_eq!(class_number(-31).unwrap(), 3);
        assert_eq!(class_number(-1).unwrap(), 1);
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-5).unwrap(), 2);
        assert_eq!(class_number(-23).unwrap(), 3);
        for q in [43, 103] {
            assert_eq!(class_number(-q).unwrap(), if q == 43 { 1 } else { 5 });
        }
        assert_eq!(class_number(-631).unwrap(), 13);
    }

    #[test]
    fn class_number_rejects_bad_input() {
        assert!(class_number(5).is_err());
        assert!(class_number(0).is_err());
        assert!(class_number(-12).is_err());
    }

    #[test]
    fn discrete_logs() {
        assert_eq!(discrete_log_pm5(5, 5).unwrap(), 1);
        assert_eq!(discrete_log_pm5(1, 5).unwrap(), 0);
        assert_eq!(discrete_log_pm5(7, 4).unwrap(), 2);
        assert_eq!(discrete_log_pm5(-1, 6).unwrap(), 0);
        assert!(matches!(
            discrete_log_pm5(4, 5),
            Err(Error::EvenArgument(4))
        ));
        assert!(discrete_log_pm5(1, 2).is_err());
    }

    #[test]
    fn discrete_log_round_trip() {
        for k in 3..=10u32 {
            let modulus = 1i64 << k;
            let mut power = 1i64;
            for e in 0..(modulus >> 2) {
                assert_eq!(discrete_log_pm5(power, k).unwrap(), e as u64);
                assert_eq!(discrete_log_pm5(modulus - power, k).unwrap(), e as u64);
                power = power * 5 % modulus;
            }
        }
    }

    #[test]
    fn admissible_set() {
        assert!(is_in_s(7));
        assert!(is_in_s(31));
        assert!(!is_in_s(13));
        assert!(!is_in_s(19)); // a_19 is even
        assert_eq!(admissible_factors(217), Some((7, 31)));
        assert_eq!(admissible_factors(7 * 19), None);
        assert_eq!(admissible_factors(49), None);
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(sigma(35), 48);
        assert_eq!(euler_phi(217), 180);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_squarefree(1302));
        assert!(!is_squarefree(12));
    }
}
