//! Exact modular symbols for `Gamma_0(243)`.
//!
//! The engine computes the plus-part functional `Phi` attached to the
//! newform of `E` directly on Manin symbols `(c:d)`, i.e. on the paths
//! `g{0, oo}` with `g = [[a, b], [c, d]]` in `SL_2(Z)`:
//!
//! 1. impose the 2-term relation `x + x sigma = 0`, the 3-term relation
//!    `x + x tau + x tau^2 = 0` and star invariance `(c:d) = (-c:d)`;
//! 2. intersect with the kernels of `T_l - a_l` (transposed, via Heilbronn
//!    matrices) for `l` in {2, 5, 7}, expecting a line;
//! 3. scale so the identity symbol `{0, oo}` carries `-L(E,1)/Omega_E`.
//!
//! The sign in step 3 comes from the pairing `<{a,b}, f> = 2 pi i
//! int_a^b f(z) dz`, under which `<{0, oo}, f> = -L(f, 1)`. With that
//! orientation `S(1/2) = -1` and every other tabulated value comes out as
//! expected; equivalently `Phi({oo, 0}) = L(E,1)/Omega_E = 1/3`.
//!
//! `S(k/t)` is then evaluated by splitting `{0, k/t}` along the
//! continued-fraction convergents of `k/t` into unimodular paths.

mod cache;
mod heilbronn;
mod linalg;
mod p1;

use std::collections::{BTreeMap, VecDeque};
use std::io::{BufRead, Write};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use heilbronn::{heilbronn_cremona, Mat2};
pub use linalg::{Echelon, SparseRow};
pub use p1::P1List;

use crate::error::{Error, Result};
use crate::numth::{a_p, CURVE};
use crate::Rational;

const PRIMARY_CUT: [u64; 3] = [2, 5, 7];
const FALLBACK_CUT: [u64; 2] = [11, 13];

/// How each Manin symbol relates to the free coordinates left after the
/// 2-term and star relations: `Phi(x) = sign * coord[column]`.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Zero,
    Free { column: usize, sign: i8 },
}

/// Immutable evaluator of `S(k/t)` with a concurrent memo cache.
#[derive(Debug)]
pub struct SymbolEngine {
    p1: P1List,
    /// `Phi` on each Manin symbol is `phi_num[i] / phi_den`.
    phi_num: Vec<i64>,
    phi_den: i64,
    plus_dim: usize,
    eigen_dim: usize,
    cut_primes: Vec<u64>,
    cache: DashMap<(i64, i64), i64>,
}

impl SymbolEngine {
    /// Builds the engine for level 243 normalised by `L(E,1)/Omega_E = 1/3`.
    pub fn build() -> Result<Self> {
        let (num, den) = CURVE.l_ratio;
        let identity = -Rational::new(BigInt::from(num), BigInt::from(den));
        Self::build_for_level(CURVE.conductor, a_p, identity)
    }

    fn build_for_level(level: u64, eigenvalue: fn(u64) -> i64, identity: Rational) -> Result<Self> {
        let p1 = P1List::new(level);
        let (slots, ncols) = two_term_and_star_slots(&p1);

        let mut three_term = Echelon::new(ncols);
        for i in 0..p1.len() {
            let (c, d) = signed_rep(&p1, i);
            let mut row = SparseRow::new();
            for j in [i, p1.index_of(d, -c - d), p1.index_of(-c - d, c)] {
                add_slot(&mut row, slots[j], &Rational::one());
            }
            three_term.push(row);
        }
        let plus_basis = three_term.kernel();
        let plus_dim = plus_basis.len();

        let mut cut_primes: Vec<u64> = Vec::new();
        let mut hecke = Echelon::new(plus_dim);
        let mut coefficients = Vec::new();
        for round in [&PRIMARY_CUT[..], &FALLBACK_CUT[..]] {
            for &ell in round.iter().filter(|&&l| !level.is_multiple_of(l)) {
                cut_primes.push(ell);
                let mats = heilbronn_cremona(ell as i64);
                let a_ell = Rational::from_integer(BigInt::from(eigenvalue(ell)));
                for i in 0..p1.len() {
                    let image = hecke_minus_eigen(&p1, &slots, &mats, &a_ell, i);
                    let row: SparseRow = plus_basis
                        .iter()
                        .enumerate()
                        .map(|(b, v)| (b, image.iter().map(|(&c, coef)| coef * &v[c]).sum()))
                        .collect();
                    hecke.push(row);
                }
            }
            coefficients = hecke.kernel();
            if coefficients.len() <= 1 {
                break;
            }
        }
        if coefficients.len() != 1 {
            return Err(Error::EigenspaceDimension {
                dim: coefficients.len(),
                primes: cut_primes,
            });
        }

        let mut coords = vec![Rational::zero(); ncols];
        for (c, v) in coefficients[0].iter().zip(&plus_basis) {
            for (dst, x) in coords.iter_mut().zip(v) {
                *dst += c * x;
            }
        }
        let raw: Vec<Rational> = slots
            .iter()
            .map(|s| match *s {
                Slot::Zero => Rational::zero(),
                Slot::Free { column, sign } => {
                    &coords[column] * Rational::from_integer(sign.into())
                }
            })
            .collect();
        let anchor = &raw[p1.index_of(0, 1)];
        if anchor.is_zero() {
            return Err(Error::EigenspaceDimension {
                dim: 0,
                primes: cut_primes,
            });
        }
        let scale = identity / anchor;
        let phi: Vec<Rational> = raw.iter().map(|x| x * &scale).collect();
        let den = phi.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let phi_num = phi
            .iter()
            .map(|x| {
                (x * Rational::from_integer(den.clone()))
                    .to_integer()
                    .to_i64()
            })
            .collect::<Option<Vec<_>>>()
            .expect("normalised functional fits in i64");

        Ok(SymbolEngine {
            p1,
            phi_num,
            phi_den: den.to_i64().expect("denominator fits in i64"),
            plus_dim,
            eigen_dim: coefficients.len(),
            cut_primes,
            cache: DashMap::new(),
        })
    }

    pub fn level(&self) -> u64 {
        self.p1.level()
    }

    pub fn manin_symbols(&self) -> &P1List {
        &self.p1
    }

    /// Dimension of the star-invariant functionals on Manin symbols.
    pub fn plus_dimension(&self) -> usize {
        self.plus_dim
    }

    /// Dimension of the Hecke-cut eigenspace (always 1 once built).
    pub fn eigenspace_dimension(&self) -> usize {
        self.eigen_dim
    }

    pub fn cut_primes(&self) -> &[u64] {
        &self.cut_primes
    }

    /// `Phi` on the Manin symbol with index `i`.
    pub fn manin_value(&self, i: usize) -> Rational {
        Rational::new(self.phi_num[i].into(), self.phi_den.into())
    }

    /// `Phi({0, oo})`, the value on the identity symbol `(0:1)`.
    pub fn identity_value(&self) -> Rational {
        self.manin_value(self.p1.index_of(0, 1))
    }

    /// `Phi({oo, 0}) = L(E,1)/Omega_E`.
    pub fn l_ratio(&self) -> Rational {
        -self.identity_value()
    }

    /// The scalar `lambda` with `Phi(x T_l) = lambda Phi(x)` for every Manin
    /// symbol, or `None` if `Phi` is not an eigenvector of `T_l`.
    pub fn hecke_eigenvalue(&self, ell: u64) -> Option<Rational> {
        let mats = heilbronn_cremona(ell as i64);
        let mut eigen: Option<Rational> = None;
        for i in 0..self.p1.len() {
            let (c, d) = signed_rep(&self.p1, i);
            let image: i64 = mats
                .iter()
                .map(|m| self.phi_num[self.p1.index_of(c * m[0] + d * m[2], c * m[1] + d * m[3])])
                .sum();
            let here = self.phi_num[i];
            match (&eigen, here) {
                (_, 0) if image != 0 => return None,
                (_, 0) => {}
                (None, _) => eigen = Some(Rational::new(image.into(), here.into())),
                (Some(e), _) => {
                    if Rational::new(image.into(), here.into()) != *e {
                        return None;
                    }
                }
            }
        }
        eigen
    }

    /// True when `Phi((c:d)) = Phi((-c:d))` for every symbol.
    pub fn is_star_invariant(&self) -> bool {
        (0..self.p1.len()).all(|i| {
            let (c, d) = signed_rep(&self.p1, i);
            self.phi_num[i] == self.phi_num[self.p1.index_of(-c, d)]
        })
    }

    /// `S(k/t)` as an exact rational.
    pub fn s_value(&self, k: i64, t: i64) -> Result<Rational> {
        Ok(Rational::new(self.twice_s(k, t)?.into(), BigInt::from(2)))
    }

    /// `2 S(k/t)`, always an integer.
    pub fn twice_s(&self, k: i64, t: i64) -> Result<i64> {
        let (k, t) = self.canonical_key(k, t)?;
        if t == 1 {
            return Ok(0);
        }
        if let Some(v) = self.cache.get(&(t, k)) {
            return Ok(*v);
        }
        let v = self.evaluate_twice(k, t);
        self.cache.insert((t, k), v);
        Ok(v)
    }

    /// `2 S(k/t)` without touching the memo cache; for one-off sweeps over
    /// large denominators.
    pub fn twice_s_uncached(&self, k: i64, t: i64) -> Result<i64> {
        let (k, t) = self.canonical_key(k, t)?;
        if t == 1 {
            return Ok(0);
        }
        Ok(self
            .cache
            .get(&(t, k))
            .map(|v| *v)
            .unwrap_or_else(|| self.evaluate_twice(k, t)))
    }

    /// Reduces `k/t` and folds it with `S(b) = S(-b) = S(b + 1)` to
    /// `(min(k mod t, t - k mod t), t)`.
    fn canonical_key(&self, k: i64, t: i64) -> Result<(i64, i64)> {
        if t == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = k.gcd(&t);
        let (k, t) = (k / g, t / g);
        let (k, t) = if t < 0 { (-k, -t) } else { (k, t) };
        let level = self.p1.level();
        if (t as u64).gcd(&level) != 1 {
            return Err(Error::DenominatorNotCoprime { t, level });
        }
        let r = k.rem_euclid(t);
        Ok((r.min(t - r), t))
    }

    fn evaluate_twice(&self, k: i64, t: i64) -> i64 {
        // {0, k/t} = {0, oo} + sum_j {p_{j-1}/q_{j-1}, p_j/q_j}; each piece
        // is g{0, oo} for g = [[s p_j, p_{j-1}], [s q_j, q_{j-1}]] with
        // s = p_j q_{j-1} - p_{j-1} q_j = ±1, i.e. the symbol (s q_j : q_{j-1}).
        let mut total = self.phi_num[self.p1.index_of(0, 1)];
        let (mut p_prev2, mut q_prev2, mut p_prev, mut q_prev) = (0i64, 1i64, 1i64, 0i64);
        let (mut x, mut y) = (k, t);
        while y != 0 {
            let a = x.div_euclid(y);
            (x, y) = (y, x - a * y);
            let (p, q) = (a * p_prev + p_prev2, a * q_prev + q_prev2);
            let s = p * q_prev - p_prev * q;
            total += self.phi_num[self.p1.index_of(s * q, q_prev)];
            (p_prev2, q_prev2, p_prev, q_prev) = (p_prev, q_prev, p, q);
        }
        let twice = 2 * total;
        assert!(
            twice % self.phi_den == 0,
            "S({k}/{t}) = {total}/{} is not a half-integer",
            self.phi_den
        );
        twice / self.phi_den
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// Cached entries as `(t, k, 2S)` sorted by `(t, k)`.
    pub fn cache_entries(&self) -> Vec<(i64, i64, i64)> {
        let mut out: Vec<_> = self
            .cache
            .iter()
            .map(|e| (e.key().0, e.key().1, *e.value()))
            .collect();
        out.sort_unstable();
        out
    }

    /// Merges cache records (`t,k,twoS` per line); returns how many were new.
    /// Records are canonicalised on load, so loading the same file twice
    /// changes nothing.
    pub fn load_cache<R: BufRead>(&self, reader: R) -> Result<usize> {
        let mut added = 0;
        for (line, (t, k, twice)) in cache::parse(reader)? {
            let key = self.canonical_key(k, t).map_err(|e| Error::CacheFormat {
                line,
                msg: e.to_string(),
            })?;
            let (k, t) = key;
            if t == 1 {
                continue;
            }
            match self.cache.get(&(t, k)).map(|v| *v) {
                Some(existing) if existing != twice => {
                    return Err(Error::CacheFormat {
                        line,
                        msg: format!("conflicting value {twice} for {k}/{t} (have {existing})"),
                    })
                }
                Some(_) => {}
                None => {
                    self.cache.insert((t, k), twice);
                    added += 1;
                }
            }
        }
        Ok(added)
    }

    pub fn save_cache<W: Write>(&self, writer: W) -> Result<()> {
        cache::write(writer, &self.cache_entries())
    }
}

/// `(c, d)` of the stored representative of symbol `i`, as signed ints.
fn signed_rep(p1: &P1List, i: usize) -> (i64, i64) {
    let (c, d) = p1.rep(i);
    (c as i64, d as i64)
}

fn add_slot(row: &mut SparseRow, slot: Slot, coef: &Rational) {
    if let Slot::Free { column, sign } = slot {
        let entry = row.entry(column).or_insert_with(Rational::zero);
        *entry += coef * Rational::from_integer(sign.into());
        if entry.is_zero() {
            row.remove(&column);
        }
    }
}

/// Groups symbols under `Phi(x) = -Phi(x sigma)` and `Phi(x) = Phi(x*)`.
/// A class forced to equal its own negative is identically zero.
fn two_term_and_star_slots(p1: &P1List) -> (Vec<Slot>, usize) {
    let n = p1.len();
    let neighbours = |i: usize| -> [(usize, i8); 2] {
        let (c, d) = signed_rep(p1, i);
        [(p1.index_of(d, -c), -1), (p1.index_of(-c, d), 1)]
    };
    let mut sign: Vec<Option<i8>> = vec![None; n];
    let mut slots = vec![Slot::Zero; n];
    let mut ncols = 0;
    for start in 0..n {
        if sign[start].is_some() {
            continue;
        }
        let mut members = vec![start];
        let mut consistent = true;
        sign[start] = Some(1);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let si = sign[i].unwrap();
            // The relations are symmetric, so scanning outgoing edges from
            // every member covers the whole class.
            for (j, s) in neighbours(i) {
                let want = si * s;
                match sign[j] {
                    None => {
                        sign[j] = Some(want);
                        members.push(j);
                        queue.push_back(j);
                    }
                    Some(have) if have != want => consistent = false,
                    Some(_) => {}
                }
            }
        }
        if consistent {
            for &m in &members {
                slots[m] = Slot::Free {
                    column: ncols,
                    sign: sign[m].unwrap(),
                };
            }
            ncols += 1;
        }
    }
    (slots, ncols)
}

/// `sum_h Phi(x h) - a_l Phi(x)` as a combination of free columns.
fn hecke_minus_eigen(
    p1: &P1List,
    slots: &[Slot],
    mats: &[Mat2],
    a_ell: &Rational,
    i: usize,
) -> BTreeMap<usize, Rational> {
    let (c, d) = signed_rep(p1, i);
    let mut row = SparseRow::new();
    let one = Rational::one();
    for m in mats {
        let j = p1.index_of(c * m[0] + d * m[2], c * m[1] + d * m[3]);
        add_slot(&mut row, slots[j], &one);
    }
    add_slot(&mut row, slots[i], &-a_ell.clone());
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn engine() -> &'static SymbolEngine {
        static ENGINE: OnceLock<SymbolEngine> = OnceLock::new();
        ENGINE.get_or_init(|| SymbolEngine::build().expect("engine builds"))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn build_shape() {
        let e = engine();
        assert_eq!(e.manin_symbols().len(), 324);
        assert_eq!(e.eigenspace_dimension(), 1);
        assert_eq!(e.cut_primes(), &[2, 5, 7]);
        assert_eq!(e.identity_value(), q(-1, 3));
        assert_eq!(e.l_ratio(), q(1, 3));
    }

    #[test]
    fn functional_is_hecke_eigen_and_star_fixed() {
        let e = engine();
        assert!(e.is_star_invariant());
        for ell in [2u64, 5, 7, 11, 13] {
            assert_eq!(e.hecke_eigenvalue(ell), Some(q(a_p(ell), 1)), "T_{ell}");
        }
    }

    #[test]
    fn small_denominators() {
        let e = engine();
        assert_eq!(e.s_value(0, 1).unwrap(), q(0, 1));
        assert_eq!(e.s_value(1, 2).unwrap(), q(-1, 1));
        assert_eq!(e.s_value(1, 4).unwrap(), q(-1, 2));
        assert_eq!(e.s_value(3, 4).unwrap(), q(-1, 2));
        assert_eq!(e.s_value(3, 16).unwrap(), q(-1, 2));
        assert_eq!(e.s_value(11, 32).unwrap(), q(-1, 1));
        assert_eq!(e.s_value(2, 4).unwrap(), q(-1, 1));
    }

    #[test]
    fn rejects_bad_denominators() {
        let e = engine();
        assert!(matches!(e.s_value(1, 0), Err(Error::ZeroDenominator)));
        assert!(matches!(
            e.s_value(1, 3),
            Err(Error::DenominatorNotCoprime { .. })
        ));
        assert!(matches!(
            e.s_value(2, 6),
            Err(Error::DenominatorNotCoprime { .. })
        ));
        // 3/9 reduces to 1/3, still rejected; 9/12 reduces to 3/4 and is fine.
        assert!(e.s_value(3, 9).is_err());
        assert_eq!(e.s_value(9, 12).unwrap(), q(-1, 2));
    }

    #[test]
    fn cache_round_trip_is_idempotent() {
        let e = engine();
        for t in [5i64, 7, 11, 13] {
            for k in 0..t {
                e.twice_s(k, t).unwrap();
            }
        }
        let mut buf = Vec::new();
        e.save_cache(&mut buf).unwrap();
        let fresh = SymbolEngine::build().unwrap();
        let first = fresh.load_cache(&buf[..]).unwrap();
        assert_eq!(first, e.cache_len());
        assert_eq!(fresh.load_cache(&buf[..]).unwrap(), 0);
        assert_eq!(fresh.cache_entries(), e.cache_entries());
    }

    #[test]
    fn conflicting_cache_record_is_rejected() {
        let e = SymbolEngine::build().unwrap();
        e.twice_s(1, 5).unwrap();
        let (t, k, v) = e.cache_entries()[0];
        let bad = format!("{t},{k},{}\n", v + 2);
        assert!(matches!(
            e.load_cache(bad.as_bytes()),
            Err(Error::CacheFormat { .. })
        ));
    }
}
