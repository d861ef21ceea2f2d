//! The group algebras `Q[G_n]`, `G_n` cyclic of order `2^n`, written in
//! the power basis of the fixed generator `gamma = sigma_5`.
//!
//! Integral elements stand in for `Lambda_n = Z_2[G_n]`; the mu and lambda
//! invariants are only defined for those.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mazur_tate::CyclotomicNumber;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    level: u32,
    coeffs: Vec<Rational>,
}

impl GroupRingElement {
    /// Panics unless `coeffs.len() == 2^level`.
    pub fn new(level: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len(),
            1usize << level,
            "level {level} needs 2^{level} coefficients"
        );
        GroupRingElement { level, coeffs }
    }

    pub fn from_ints(level: u32, coeffs: &[i64]) -> Self {
        Self::new(
            level,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(level: u32) -> Self {
        Self::new(level, vec![Rational::zero(); 1 << level])
    }

    pub fn one(level: u32) -> Self {
        Self::monomial(level, 0, Rational::one())
    }

    /// `c * gamma^j`, exponent taken mod `2^level`.
    pub fn monomial(level: u32, j: i64, c: Rational) -> Self {
        let mut g = Self::zero(level);
        let idx = j.rem_euclid(1 << level) as usize;
        g.coeffs[idx] = c;
        g
    }

    /// `d_n = 1 + gamma^(2^(n-1))`, the sum of the kernel of `G_n -> G_{n-1}`.
    pub fn d_element(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::LevelTooSmall { min: 1, got: 0 });
        }
        let mut d = Self::one(n);
        d.coeffs[1 << (n - 1)] = Rational::one();
        Ok(d)
    }

    /// Sum of all group elements.
    pub fn trace_element(n: u32) -> Self {
        Self::new(n, vec![Rational::one(); 1 << n])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.level, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Cyclic convolution with exponents mod `2^n`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        let size = self.coeffs.len();
        let mut out = vec![Rational::zero(); size];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                out[(i + j) % size] += a * b;
            }
        }
        Ok(Self::new(self.level, out))
    }

    /// `pi_n: Q[G_n] -> Q[G_{n-1}]`, `gamma_n -> gamma_{n-1}`.
    pub fn project(&self) -> Result<Self> {
        if self.level == 0 {
            return Err(Error::LevelTooSmall { min: 1, got: 0 });
        }
        let half = self.coeffs.len() / 2;
        let coeffs = (0..half)
            .map(|j| &self.coeffs[j] + &self.coeffs[j + half])
            .collect();
        Ok(Self::new(self.level - 1, coeffs))
    }

    /// `nu_n: Q[G_n] -> Q[G_{n+1}]`, each element to the sum of its lifts.
    pub fn norm_lift(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(self.level + 1, coeffs)
    }

    fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    /// Largest `mu` with `g` in `2^mu Lambda_n`.
    pub fn mu_invariant(&self) -> Result<u32> {
        let ints = self.integer_coeffs()?;
        Ok(min_two_adic_valuation(&ints))
    }

    /// Order of vanishing of `2^-mu g mod 2` in powers of the augmentation
    /// ideal: substitute `gamma = 1 + u` over `F_2` and take the lowest
    /// power of `u`. By Lucas, the coefficient of `u^i` is the parity of
    /// the sum of `c_j` over all `j` whose binary digits contain those of `i`.
    pub fn lambda_invariant(&self) -> Result<u64> {
        let ints = self.integer_coeffs()?;
        let mu = min_two_adic_valuation(&ints) as u64;
        let mut bits: Vec<bool> = ints.iter().map(|c| c.bit(mu)).collect();
        for i in 0..self.level {
            let step = 1usize << i;
            for mask in 0..bits.len() {
                if mask & step == 0 {
                    let upper = bits[mask | step];
                    bits[mask] ^= upper;
                }
            }
        }
        let lambda = bits
            .iter()
            .position(|&b| b)
            .expect("reduction mod 2 is nonzero");
        Ok(lambda as u64)
    }

    /// Image under a character of order `2^j` sending `gamma` to
    /// `zeta_(2^j)`, for `1 <= j <= level`.
    pub fn specialize(&self, j: u32) -> Result<CyclotomicNumber> {
        if j == 0 || j > self.level {
            return Err(Error::CharacterOrder {
                order: j,
                level: self.level,
            });
        }
        let mut out = CyclotomicNumber::zero(j);
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_zeta_power(e as i64, c);
            }
        }
        Ok(out)
    }
}

fn min_two_adic_valuation(ints: &[BigInt]) -> u32 {
    ints.iter()
        .filter_map(|c| c.trailing_zeros())
        .min()
        .expect("nonzero element") as u32
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, rhs: Self) -> GroupRingElement {
        assert_eq!(self.level, rhs.level, "level mismatch");
        GroupRingElement::new(
            self.level,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: Self) -> GroupRingElement {
        assert_eq!(self.level, rhs.level, "level mismatch");
        GroupRingElement::new(
            self.level,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement::new(self.level, self.coeffs.iter().map(|a| -a).collect())
    }
}

/// Polynomial in `g` with ascending exponents, e.g. `-g^2-g^3-2*g^4`.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(&self.coeffs, "g"))
    }
}

/// Shared canonical text form for group-ring and cyclotomic elements.
pub(crate) fn format_polynomial(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let magnitude = if abs.is_integer() {
            abs.to_integer().to_string()
        } else {
            format!("({abs})")
        };
        match e {
            0 => out.push_str(&magnitude),
            _ => {
                if !abs.is_one() {
                    out.push_str(&magnitude);
                    out.push('*');
                }
                out.push_str(var);
                if e > 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Converts a small rational coefficient to `i64` when integral.
pub(crate) fn rational_to_i64(c: &Rational) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}
