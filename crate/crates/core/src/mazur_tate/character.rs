//! Dirichlet characters used for specialization: the wild characters
//! `psi_n` of conductor `2^(n+2)` with `psi_n(5) = zeta_(2^n)`, the
//! quadratic characters `chi_m` attached to `Q(sqrt m)`, and their products.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::mazur_tate::CyclotomicNumber;
use crate::numth::{discrete_log_pm5, is_squarefree, kronecker};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Character {
    Trivial,
    /// `psi_n`, order `2^n`, modulus `2^(n+2)`.
    Cyclotomic {
        level: u32,
    },
    /// `x -> (x / m)`, `m = 1 mod 4` squarefree.
    Quadratic {
        m: u64,
    },
    /// `chi_m psi_n`.
    Product {
        level: u32,
        m: u64,
    },
}

impl Character {
    pub fn psi(level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::LevelTooSmall { min: 1, got: 0 });
        }
        if level + 2 > 24 {
            return Err(Error::UnsupportedExponent(level + 2));
        }
        Ok(Character::Cyclotomic { level })
    }

    pub fn chi(m: u64) -> Result<Self> {
        if m <= 1 || m % 4 != 1 || !is_squarefree(m) {
            return Err(Error::InvalidTwist(m as i64));
        }
        Ok(Character::Quadratic { m })
    }

    pub fn rho(level: u32, m: u64) -> Result<Self> {
        Self::psi(level)?;
        Self::chi(m)?;
        Ok(Character::Product { level, m })
    }

    pub fn modulus(&self) -> u64 {
        match *self {
            Character::Trivial => 1,
            Character::Cyclotomic { level } => 1 << (level + 2),
            Character::Quadratic { m } => m,
            Character::Product { level, m } => m << (level + 2),
        }
    }

    /// Level of the cyclotomic field holding the values.
    pub fn value_level(&self) -> u32 {
        match *self {
            Character::Trivial | Character::Quadratic { .. } => 1,
            Character::Cyclotomic { level } | Character::Product { level, .. } => level,
        }
    }

    fn wild_level(&self) -> Option<u32> {
        match *self {
            Character::Cyclotomic { level } | Character::Product { level, .. } => Some(level),
            _ => None,
        }
    }

    fn tame_modulus(&self) -> Option<u64> {
        match *self {
            Character::Quadratic { m } | Character::Product { m, .. } => Some(m),
            _ => None,
        }
    }

    /// `chi(x) = sign * zeta^exponent`, or `None` when `gcd(x, modulus) > 1`.
    pub fn eval_exponent(&self, x: i64) -> Option<(u64, i32)> {
        if self.modulus() > 1 && x.gcd(&(self.modulus() as i64)) != 1 {
            return None;
        }
        let exponent = match self.wild_level() {
            Some(level) => discrete_log_pm5(x, level + 2).expect("odd argument, supported level"),
            None => 0,
        };
        let sign = match self.tame_modulus() {
            Some(m) => kronecker(x, m),
            None => 1,
        };
        Some((exponent, sign))
    }

    pub fn eval(&self, x: i64) -> CyclotomicNumber {
        let level = self.value_level();
        let mut out = CyclotomicNumber::zero(level);
        if let Some((e, sign)) = self.eval_exponent(x) {
            out.add_zeta_power(e as i64, &Rational::from_integer(sign.into()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_sends_five_to_zeta() {
        for n in 1..=6 {
            let psi = Character::psi(n).unwrap();
            assert_eq!(psi.eval(5), CyclotomicNumber::zeta_power(n, 1));
            assert_eq!(psi.eval(-1), CyclotomicNumber::one(n));
            assert!(psi.eval(2).is_zero());
        }
    }

    #[test]
    fn characters_are_multiplicative() {
        for chi in [
            Character::psi(3).unwrap(),
            Character::chi(505).unwrap(),
            Character::rho(2, 505).unwrap(),
        ] {
            let n = chi.modulus() as i64;
            for x in [3i64, 7, 11, 29, 1001] {
                for y in [9i64, 13, 17, 31] {
                    assert_eq!(
                        chi.eval(x * y % n),
                        &chi.eval(x) * &chi.eval(y),
                        "{chi:?} {x} {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadratic_values_are_signs() {
        let chi = Character::chi(5).unwrap();
        let values: Vec<_> = (1..5).map(|x| chi.eval_exponent(x).unwrap().1).collect();
        assert_eq!(values, vec![1, -1, -1, 1]);
        assert!(chi.eval(10).is_zero());
    }

    #[test]
    fn constructors_validate() {
        assert!(Character::psi(0).is_err());
        assert!(Character::chi(7).is_err());
        assert!(Character::chi(45).is_err());
        assert!(Character::rho(1, 3).is_err());
        assert_eq!(Character::rho(3, 505).unwrap().modulus(), 505 * 32);
        assert_eq!(Character::Trivial.modulus(), 1);
    }
}
