//! Mazur–Tate elements along the cyclotomic Z_2-tower and their
//! specializations at characters.
//!
//! The untwisted element `xi_(Q_n)` lives in `Z[G_n]`; the coefficient of
//! `gamma^j` is `2 S(k/2^(n+2))` for the classes `[k] = ±5^j`. Twisted
//! elements over `(Z/2^(n+2) m)^x` are far larger and are only ever
//! evaluated at `rho_n = chi_m psi_n`, streamed over residues.

mod character;
mod cyclotomic;

pub use character::Character;
pub use cyclotomic::{CyclotomicNumber, Val2};

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grpring::GroupRingElement;
use crate::modsym::SymbolEngine;
use crate::numth::{admissible_factors, discrete_log_pm5};
use crate::Rational;

/// Sweeps over denominators above this size bypass the value cache, which
/// would otherwise grow by one entry per residue.
const SWEEP_CACHE_LIMIT: i64 = 1 << 18;

fn twice_s_for_sweep(engine: &SymbolEngine, k: i64, t: i64) -> Result<i64> {
    if t > SWEEP_CACHE_LIMIT {
        engine.twice_s_uncached(k, t)
    } else {
        engine.twice_s(k, t)
    }
}

/// `xi_(Q_n)` with coefficients `2 S(k/2^(n+2))`.
pub fn xi_cyclotomic(engine: &SymbolEngine, n: u32) -> Result<GroupRingElement> {
    if n == 0 {
        return Ok(GroupRingElement::from_ints(0, &[engine.twice_s(1, 4)?]));
    }
    let t = 1i64 << (n + 2);
    // Each class of (Z/t)^x / {±1} has exactly one odd representative below t/2.
    let entries: Vec<(usize, i64)> = (0..t / 4)
        .into_par_iter()
        .map(|i| 2 * i + 1)
        .map(|k| -> Result<(usize, i64)> {
            let j = discrete_log_pm5(k, n + 2)? as usize;
            Ok((j, twice_s_for_sweep(engine, k, t)?))
        })
        .collect::<Result<_>>()?;
    let mut coeffs = vec![0i64; 1 << n];
    for (j, v) in entries {
        coeffs[j] = v;
    }
    Ok(GroupRingElement::from_ints(n, &coeffs))
}

/// Evaluation `gamma -> zeta_(2^j)` of an untwisted element.
pub fn specialize(element: &GroupRingElement, j: u32) -> Result<CyclotomicNumber> {
    element.specialize(j)
}

/// Signed exponent histogram `sum_x c(x) 2S(x/modulus)` over units `x`,
/// for characters with `c(-x) = c(x)`; entry `e` collects `zeta^e`.
fn character_sweep(
    engine: &SymbolEngine,
    character: &Character,
    modulus: i64,
    half_range: bool,
) -> Result<Vec<i64>> {
    let order = 1usize << character.value_level();
    let upper = if half_range { modulus / 2 } else { modulus };
    (1..=upper.max(1))
        .into_par_iter()
        .filter(|x| x.gcd(&modulus) == 1 || modulus == 1)
        .try_fold(
            || vec![0i64; order],
            |mut acc, x| -> Result<Vec<i64>> {
                if let Some((e, sign)) = character.eval_exponent(x) {
                    let v = twice_s_for_sweep(engine, x, modulus)?;
                    acc[e as usize % order] += sign as i64 * v;
                }
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0i64; order],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )
}

fn histogram_to_number(level: u32, hist: &[i64], halve: bool) -> CyclotomicNumber {
    let mut out = CyclotomicNumber::zero(level);
    let denom = if halve { 2 } else { 1 };
    for (e, &v) in hist.iter().enumerate() {
        if v != 0 {
            out.add_zeta_power(e as i64, &Rational::new(v.into(), denom.into()));
        }
    }
    out
}

/// `rho_n(xi_(2^(n+2))(m))`: the sum over `x` in `(Z/2^(n+2) m)^x` of
/// `chi_m(x) psi_n(x) S(x / 2^(n+2) m)`.
pub fn specialize_twisted(engine: &SymbolEngine, n: u32, m: i64) -> Result<CyclotomicNumber> {
    if admissible_factors(m).is_none() {
        return Err(Error::InvalidTwist(m));
    }
    let character = Character::rho(n, m as u64)?;
    let modulus = character.modulus() as i64;
    // The summand is even in x, so the half range counted twice gives
    // sum rho(x) 2S(x/T) over x < T/2, already integral.
    let hist = character_sweep(engine, &character, modulus, true)?;
    Ok(histogram_to_number(n, &hist, false))
}

/// `P_(psi, M)(S) = sum_(x in (Z/M)^x) psi(x) S(x/M)`.
pub fn p_psi_m(
    engine: &SymbolEngine,
    character: &Character,
    modulus: i64,
) -> Result<CyclotomicNumber> {
    if modulus <= 0 {
        return Err(Error::ZeroDenominator);
    }
    if modulus % 3 == 0 {
        return Err(Error::DenominatorNotCoprime {
            t: modulus,
            level: engine.level(),
        });
    }
    let c_mod = character.modulus() as i64;
    if modulus % c_mod != 0 {
        return Err(Error::IncompatibleModulus {
            modulus,
            character: c_mod,
        });
    }
    if modulus == 1 {
        // (Z/1)^x is the single class of 0 and S(0) = 0.
        return Ok(CyclotomicNumber::zero(character.value_level()));
    }
    let hist = character_sweep(engine, character, modulus, false)?;
    Ok(histogram_to_number(character.value_level(), &hist, true))
}

/// `a_l - c(l) - conj(c(l))`, the Euler multiplier at a prime `l`.
pub fn euler_factor(character: &Character, ell: u64) -> CyclotomicNumber {
    let v = character.eval(ell as i64);
    let a = CyclotomicNumber::from_rational(
        character.value_level(),
        Rational::from_integer(crate::numth::a_p(ell).into()),
    );
    &(&a - &v) - &v.conj()
}

/// Whether every power-basis coordinate of `a - b` is an even integer.
pub fn congruent_mod_2(a: &CyclotomicNumber, b: &CyclotomicNumber) -> bool {
    a.level() == b.level() && (a - b).is_even()
}

/// Whether the zero element is reached, i.e. all coordinates vanish.
pub fn vanishes(a: &CyclotomicNumber) -> bool {
    a.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn engine() -> &'static SymbolEngine {
        static ENGINE: OnceLock<SymbolEngine> = OnceLock::new();
        ENGINE.get_or_init(|| SymbolEngine::build().expect("engine"))
    }

    #[test]
    fn xi_fixtures() {
        let e = engine();
        assert_eq!(
            xi_cyclotomic(e, 0).unwrap(),
            GroupRingElement::from_ints(0, &[-1])
        );
        assert!(xi_cyclotomic(e, 1).unwrap().is_zero());
        assert_eq!(xi_cyclotomic(e, 2).unwrap().to_string(), "-g^2-g^3");
        assert_eq!(
            xi_cyclotomic(e, 3).unwrap().to_string(),
            "-g^2-g^3-2*g^4-2*g^5-g^6-g^7"
        );
    }

    #[test]
    fn specializations() {
        let e = engine();
        let xi2 = xi_cyclotomic(e, 2).unwrap();
        assert_eq!(
            specialize(&xi2, 2).unwrap(),
            CyclotomicNumber::from_ints(2, &[1, 1])
        );
        let xi3 = xi_cyclotomic(e, 3).unwrap();
        let v = specialize(&xi3, 3).unwrap();
        // -zeta^2 (1 + zeta)(1 + zeta^2)^2
        let z = |k| CyclotomicNumber::zeta_power(3, k);
        let one = CyclotomicNumber::one(3);
        let expected = &(&(&-&z(2) * &(&one + &z(1))) * &(&one + &z(2))) * &(&one + &z(2));
        assert_eq!(v, expected);
        assert_eq!(v.val2(), Val2::finite(5, 4));
        assert!(specialize(&xi2, 3).is_err());
    }

    #[test]
    fn p_psi_fixtures() {
        let e = engine();
        let triv = Character::Trivial;
        assert_eq!(
            p_psi_m(e, &triv, 2).unwrap(),
            CyclotomicNumber::from_ints(1, &[-1])
        );
        assert_eq!(
            p_psi_m(e, &triv, 7).unwrap(),
            CyclotomicNumber::from_ints(1, &[-1])
        );
        let psi2 = Character::psi(2).unwrap();
        assert_eq!(
            p_psi_m(e, &psi2, 16).unwrap(),
            CyclotomicNumber::from_ints(2, &[1, 1])
        );
        assert!(p_psi_m(e, &triv, 6).is_err());
        assert!(p_psi_m(e, &psi2, 8).is_err());
    }

    #[test]
    fn twisted_first_levels() {
        let e = engine();
        assert!(vanishes(&specialize_twisted(e, 1, 217).unwrap()));
        assert_eq!(
            specialize_twisted(e, 2, 217).unwrap().val2(),
            Val2::finite(1, 2)
        );
        assert!(matches!(
            specialize_twisted(e, 2, 35),
            Err(Error::InvalidTwist(35))
        ));
    }

    #[test]
    fn euler_factor_values() {
        let triv = Character::Trivial;
        // a_2 = 0 for this curve.
        assert_eq!(
            euler_factor(&triv, 2),
            CyclotomicNumber::from_ints(1, &[-2])
        );
        let psi = Character::psi(2).unwrap();
        // psi_2(5) = i, so the factor is a_5 - i + i = a_5.
        assert_eq!(
            euler_factor(&psi, 5),
            CyclotomicNumber::from_ints(2, &[crate::numth::a_p(5), 0])
        );
    }
}
