//! Elements of `Q(zeta_(2^n))` in the power basis `1, zeta, ..., zeta^(d-1)`,
//! `d = 2^(n-1)`, reduced by `zeta^d = -1`. Level 1 is `Q` itself.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grpring::format_polynomial;
use crate::Rational;

/// Normalized 2-adic valuation, `v(2) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Val2 {
    Infinite,
    Finite(Ratio<i64>),
}

impl Val2 {
    pub fn finite(num: i64, den: i64) -> Self {
        Val2::Finite(Ratio::new(num, den))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val2::Infinite)
    }

    pub fn as_ratio(&self) -> Option<Ratio<i64>> {
        match self {
            Val2::Infinite => None,
            Val2::Finite(r) => Some(*r),
        }
    }
}

impl fmt::Display for Val2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val2::Infinite => f.write_str("inf"),
            Val2::Finite(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    fn degree_of(level: u32) -> usize {
        assert!(level >= 1, "cyclotomic level starts at 1");
        1usize << (level - 1)
    }

    pub fn new(level: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), Self::degree_of(level));
        CyclotomicNumber { level, coeffs }
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
        Self::new(level, vec![Rational::zero(); Self::degree_of(level)])
    }

    pub fn from_rational(level: u32, c: Rational) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = c;
        z
    }

    pub fn one(level: u32) -> Self {
        Self::from_rational(level, Rational::one())
    }

    /// `zeta^e` with `e` read mod `2^level`.
    pub fn zeta_power(level: u32, e: i64) -> Self {
        let mut z = Self::zero(level);
        z.add_zeta_power(e, &Rational::one());
        z
    }

    /// `self += c * zeta^e`.
    pub fn add_zeta_power(&mut self, e: i64, c: &Rational) {
        let (idx, negate) = fold_exponent(self.level, e);
        if negate {
            self.coeffs[idx] -= c;
        } else {
            self.coeffs[idx] += c;
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `[Q(zeta) : Q]`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
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

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.level);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.add_zeta_power(-(i as i64), c);
        }
        out
    }

    /// Every coordinate reduced mod 2 is zero, i.e. the element lies in
    /// `2 Z[zeta]`. Integral input only.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && c.to_integer().is_even())
    }

    /// `N_(Q(zeta)/Q)`, computed down the tower by
    /// `N(a)(y) = e(y)^2 - y o(y)^2` where `a(x) = e(x^2) + x o(x^2)`.
    pub fn norm(&self) -> Rational {
        let mut a = self.coeffs.clone();
        while a.len() > 1 {
            a = tower_step(&a);
        }
        a.pop().expect("nonempty")
    }

    /// Common denominator and the integral numerator vector.
    fn clear_denominators(&self) -> (BigInt, Vec<BigInt>) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (den, ints)
    }

    /// 2-adic valuation through the norm: `2` is totally ramified in
    /// `Q(zeta_(2^n))`, so `v(a) = v_2(N a) / d`.
    pub fn val2(&self) -> Val2 {
        if self.is_zero() {
            return Val2::Infinite;
        }
        let (den, mut ints) = self.clear_denominators();
        while ints.len() > 1 {
            ints = tower_step(&ints);
        }
        let norm = ints.pop().expect("nonempty");
        let vn = norm.trailing_zeros().expect("nonzero norm") as i64;
        let vd = den.trailing_zeros().unwrap_or(0) as i64;
        let d = self.degree() as i64;
        Val2::Finite(Ratio::new(vn - vd * d, d))
    }

    /// 2-adic valuation by repeated division by the uniformizer
    /// `pi = zeta - 1`; independent of the norm computation.
    pub fn val2_by_division(&self) -> Val2 {
        if self.is_zero() {
            return Val2::Infinite;
        }
        let (den, mut a) = self.clear_denominators();
        let d = a.len();
        let mut steps: i64 = 0;
        if d == 1 {
            steps = a[0].trailing_zeros().expect("nonzero") as i64;
        } else {
            // pi^-1 = -(1 + zeta + ... + zeta^(d-1)) / 2.
            loop {
                let mut t = vec![BigInt::zero(); d];
                let mut running = BigInt::zero();
                let total: BigInt = a.iter().sum();
                // Coordinate k of a * sum(zeta^i) is
                // sum_(i<=k) a_i - sum_(i>k) a_i.
                for k in 0..d {
                    running += &a[k];
                    t[k] = &running + &running - &total;
                }
                if t.iter().any(|x| x.is_odd()) {
                    break;
                }
                a = t.into_iter().map(|x| -(x / 2i32)).collect();
                steps += 1;
            }
        }
        let vd = den.trailing_zeros().unwrap_or(0) as i64;
        let d = d as i64;
        Val2::Finite(Ratio::new(steps - vd * d, d))
    }
}

/// Index into the power basis and whether `zeta^e = -zeta^idx`.
fn fold_exponent(level: u32, e: i64) -> (usize, bool) {
    let order = 1i64 << level;
    let d = order / 2;
    let r = e.rem_euclid(order);
    if r >= d {
        ((r - d) as usize, true)
    } else {
        (r as usize, false)
    }
}

/// `a(x) a(-x)` as an element of the next level down.
fn tower_step<T>(a: &[T]) -> Vec<T>
where
    T: Clone + Zero + AddAssign + SubAssign,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let evens: Vec<T> = a.iter().step_by(2).cloned().collect();
    let odds: Vec<T> = a.iter().skip(1).step_by(2).cloned().collect();
    let e2 = negacyclic_mul(&evens, &evens);
    let o2 = negacyclic_mul(&odds, &odds);
    // y * o2 with y^h = -1.
    let h = e2.len();
    let mut out = e2;
    for (i, c) in o2.into_iter().enumerate() {
        if i + 1 < h {
            out[i + 1] -= c;
        } else {
            out[0] += c;
        }
    }
    out
}

/// Product in `R[x]/(x^d + 1)`.
fn negacyclic_mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + AddAssign + SubAssign,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let d = a.len();
    let mut out = vec![T::zero(); d];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let p = x * y;
            if i + j < d {
                out[i + j] += p;
            } else {
                out[i + j - d] -= p;
            }
        }
    }
    out
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn add(self, rhs: Self) -> CyclotomicNumber {
        assert_eq!(self.level, rhs.level, "level mismatch");
        CyclotomicNumber::new(
            self.level,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn sub(self, rhs: Self) -> CyclotomicNumber {
        assert_eq!(self.level, rhs.level, "level mismatch");
        CyclotomicNumber::new(
            self.level,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn mul(self, rhs: Self) -> CyclotomicNumber {
        assert_eq!(self.level, rhs.level, "level mismatch");
        CyclotomicNumber::new(self.level, negacyclic_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber::new(self.level, self.coeffs.iter().map(|a| -a).collect())
    }
}

impl CyclotomicNumber {
    /// Checked product for callers that cannot guarantee matching levels.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.level != rhs.level {
            return Err(Error::LevelMismatch(self.level, rhs.level));
        }
        Ok(self * rhs)
    }
}

/// Power-basis polynomial in `z`, e.g. `-z^2-z^3`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(&self.coeffs, "z"))
    }
}

/// Resultant of `f` and `x^d + 1` by the Euclidean algorithm over Q; an
/// oracle for [`CyclotomicNumber::norm`].
#[cfg(test)]
pub(crate) fn resultant_with_cyclotomic(f: &[Rational]) -> Rational {
    let d = f.len();
    let mut g = vec![Rational::zero(); d + 1];
    g[0] = Rational::one();
    g[d] = Rational::one();
    resultant(f.to_vec(), g)
}

#[cfg(test)]
fn resultant(a: Vec<Rational>, b: Vec<Rational>) -> Rational {
    fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }
    fn deg(p: &[Rational]) -> usize {
        p.len() - 1
    }
    fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        let lb = b.last().expect("nonempty");
        while r.len() >= b.len() && !r.iter().all(Zero::is_zero) {
            let shift = r.len() - b.len();
            let factor = r.last().expect("nonempty") / lb;
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            r = trim(r);
            if r.len() < b.len() {
                break;
            }
        }
        trim(r)
    }
    let mut a = trim(a);
    let mut b = trim(b);
    let mut acc = Rational::one();
    loop {
        if b.iter().all(Zero::is_zero) {
            return Rational::zero();
        }
        if deg(&b) == 0 {
            let lb = b[0].clone();
            let mut p = Rational::one();
            for _ in 0..deg(&a) {
                p *= &lb;
            }
            return acc * p;
        }
        // Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) Res(b, r).
        let r = rem(&a, &b);
        if r.iter().all(Zero::is_zero) {
            return Rational::zero();
        }
        let (da, db, dr) = (deg(&a), deg(&b), deg(&r));
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        let lb = b.last().expect("nonempty").clone();
        for _ in 0..(da - dr) {
            acc *= &lb;
        }
        a = b;
        b = r;
        let _ = db;
    }
}
