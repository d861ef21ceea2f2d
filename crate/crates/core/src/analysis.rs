//! Reports built on the engine: algebraic L-values of quadratic twists,
//! valuations of specialized Mazur–Tate elements, the mod-4 structure of
//! the order-8 specialization, and the search for admissible prime pairs.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grpring::{rational_to_i64, GroupRingElement};
use crate::mazur_tate::{
    congruent_mod_2, euler_factor, p_psi_m, specialize, specialize_twisted, vanishes,
    xi_cyclotomic, Character, CyclotomicNumber, Val2,
};
use crate::modsym::SymbolEngine;
use crate::numth::{
    a_n, a_p, admissible_factors, class_number, divisors, is_in_s, kronecker, PairReport,
};
use crate::Rational;

/// `q_1 = 1`; `(2^n + 7)/3` for odd `n >= 3`; `(2^n - 1)/3` for even `n`.
pub fn q_sequence(n: u32) -> Result<u64> {
    match n {
        0 => Err(Error::LevelTooSmall { min: 1, got: 0 }),
        1 => Ok(1),
        _ if n % 2 == 1 => Ok(((1u64 << n) + 7) / 3),
        _ => Ok(((1u64 << n) - 1) / 3),
    }
}

/// `q_n / 2^(n-1)`.
pub fn expected_valuation(n: u32) -> Result<Val2> {
    Ok(Val2::finite(q_sequence(n)? as i64, 1i64 << (n - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistLReport {
    pub m: i64,
    pub p: u64,
    pub q: u64,
    /// `L(E^(m), 1) / Omega` as the integer `sum chi(x) 2S(x/m)`.
    pub value: i64,
    pub valuation: Option<u32>,
    pub odd: bool,
    /// `((a_p - 2)(a_q - 2) - (p - 1)(q - 1)) / 3`.
    pub euler_prediction: i64,
    pub euler_congruence_holds: bool,
}

/// Algebraic L-value of the twist by `Q(sqrt m)`, `m = pq` admissible.
pub fn algebraic_l_quadratic(engine: &SymbolEngine, m: i64) -> Result<TwistLReport> {
    let (p, q) = admissible_factors(m).ok_or(Error::InvalidTwist(m))?;
    let value = (1..=(m - 1) / 2)
        .into_par_iter()
        .map(|x| -> Result<i64> {
            match kronecker(x, m as u64) {
                0 => Ok(0),
                s => Ok(s as i64 * engine.twice_s(x, m)?),
            }
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let numerator = (a_p(p) - 2) * (a_p(q) - 2) - (p as i64 - 1) * (q as i64 - 1);
    let euler_prediction = numerator / 3;
    let euler_congruence_holds = numerator % 3 == 0 && (value - euler_prediction) % 2 == 0;
    Ok(TwistLReport {
        m,
        p,
        q,
        value,
        valuation: (value != 0).then(|| value.trailing_zeros()),
        odd: value % 2 != 0,
        euler_prediction,
        euler_congruence_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationRow {
    pub n: u32,
    pub value: CyclotomicNumber,
    pub valuation: Val2,
    pub expected: Val2,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationReport {
    pub m: i64,
    pub rho1_vanishes: bool,
    pub rows: Vec<ValuationRow>,
}

impl ValuationReport {
    pub fn all_match(&self) -> bool {
        self.rho1_vanishes && self.rows.iter().all(|r| r.matches)
    }
}

/// Valuations of `rho_n(xi_(2^(n+2))(m))` for `2 <= n <= n_max` against
/// `q_n / 2^(n-1)`, plus the vanishing at `n = 1`.
pub fn twisted_valuation_report(
    engine: &SymbolEngine,
    m: i64,
    n_max: u32,
) -> Result<ValuationReport> {
    if n_max == 0 {
        return Err(Error::LevelTooSmall { min: 1, got: 0 });
    }
    let rho1_vanishes = vanishes(&specialize_twisted(engine, 1, m)?);
    let rows = (2..=n_max)
        .map(|n| {
            let value = specialize_twisted(engine, n, m)?;
            valuation_row(n, value)
        })
        .collect::<Result<_>>()?;
    Ok(ValuationReport {
        m,
        rho1_vanishes,
        rows,
    })
}

fn valuation_row(n: u32, value: CyclotomicNumber) -> Result<ValuationRow> {
    let valuation = value.val2();
    let expected = expected_valuation(n)?;
    Ok(ValuationRow {
        n,
        matches: valuation == expected,
        value,
        valuation,
        expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicRow {
    pub n: u32,
    pub element: GroupRingElement,
    pub mu: u32,
    pub lambda: u64,
    pub q_n: u64,
    pub specialization: ValuationRow,
}

impl CyclotomicRow {
    pub fn matches(&self) -> bool {
        self.mu == 0 && self.lambda == self.q_n && self.specialization.matches
    }
}

/// mu, lambda and `v(psi_n(xi_(Q_n)))` for `2 <= n <= n_max`.
pub fn cyclotomic_valuation_report(
    engine: &SymbolEngine,
    n_max: u32,
) -> Result<Vec<CyclotomicRow>> {
    (2..=n_max)
        .map(|n| {
            let element = xi_cyclotomic(engine, n)?;
            let specialization = valuation_row(n, specialize(&element, n)?)?;
            Ok(CyclotomicRow {
                n,
                mu: element.mu_invariant()?,
                lambda: element.lambda_invariant()?,
                q_n: q_sequence(n)?,
                element,
                specialization,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCheck {
    /// Which two coefficients are added, 1-based.
    pub pair: (usize, usize),
    /// Residues `x` mod 32 on the right-hand side.
    pub residues: [i64; 4],
    pub lhs: i64,
    /// `2 sum S(x/32)` over `residues`.
    pub rhs: i64,
    pub expected_residue: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rho3Report {
    pub m: i64,
    /// `rho_3(xi_32(m)) = c1 z + c2 z^2 + c3 z^3 + c4 z^4`.
    pub c: [i64; 4],
    pub congruences: Vec<CongruenceCheck>,
    pub valuation: Val2,
}

impl Rho3Report {
    pub fn all_hold(&self) -> bool {
        self.congruences.iter().all(|c| c.holds) && self.valuation == Val2::finite(5, 4)
    }
}

/// Coefficients of the order-8 twisted specialization in the basis
/// `z, z^2, z^3, z^4` and the four mod-4 relations between them.
pub fn rho3_coefficient_report(engine: &SymbolEngine, m: i64) -> Result<Rho3Report> {
    let value = specialize_twisted(engine, 3, m)?;
    let coord = |i: usize| rational_to_i64(&value.coeffs()[i]).expect("integral specialization");
    // z^4 = -1 moves the constant coordinate to c4 with a sign flip.
    let c = [coord(1), coord(2), coord(3), -coord(0)];
    let relations: [((usize, usize), [i64; 2], i64); 4] = [
        ((1, 4), [5, 15], 0),
        ((2, 3), [3, 7], 0),
        ((1, 2), [5, 7], 2),
        ((3, 4), [3, 15], 2),
    ];
    let congruences = relations
        .iter()
        .map(
            |&((i, j), [x, y], expected_residue)| -> Result<CongruenceCheck> {
                let residues = [x, 32 - x, y, 32 - y];
                let rhs = residues
                    .iter()
                    .map(|&r| engine.twice_s(r, 32))
                    .sum::<Result<i64>>()?;
                let lhs = c[i - 1] + c[j - 1];
                Ok(CongruenceCheck {
                    pair: (i, j),
                    residues,
                    lhs,
                    rhs,
                    expected_residue,
                    holds: (lhs - rhs).rem_euclid(4) == 0 && rhs.rem_euclid(4) == expected_residue,
                })
            },
        )
        .collect::<Result<_>>()?;
    Ok(Rho3Report {
        m,
        c,
        congruences,
        valuation: value.val2(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSumRow {
    pub k: i64,
    /// `sum S(x/32)` over `x = ±5k, ±15k` reduced into `[1, 32]`.
    pub sum: Rational,
    pub inverse: i64,
    /// `sum(k) + sum(k^-1 mod 32)`.
    pub pair_total: Rational,
}

/// Sums of `S(x/32)` over the orbit `{±5k, ±15k}` for every odd `k < 32`.
pub fn orbit_sum_table(engine: &SymbolEngine) -> Result<Vec<OrbitSumRow>> {
    let orbit_sum = |k: i64| -> Result<Rational> {
        let mut total = Rational::zero();
        for x in [5 * k, -5 * k, 15 * k, -15 * k] {
            total += engine.s_value(x.rem_euclid(32), 32)?;
        }
        Ok(total)
    };
    (1..32)
        .step_by(2)
        .map(|k| {
            let inverse = (1..32)
                .step_by(2)
                .find(|j| (k * j) % 32 == 1)
                .expect("odd k is a unit");
            let sum = orbit_sum(k)?;
            let pair_total = &sum + orbit_sum(inverse)?;
            Ok(OrbitSumRow {
                k,
                sum,
                inverse,
                pair_total,
            })
        })
        .collect()
}

/// `(lhs, rhs)` of the Hecke relation
/// `sum_(x mod l) S((b + x)/l) = a_l S(b) - S(l b) + sum_(x mod l) S(x/l)`
/// at `b = k/t`.
pub fn hecke_relation_sides(
    engine: &SymbolEngine,
    k: i64,
    t: i64,
    ell: u64,
) -> Result<(Rational, Rational)> {
    let l = ell as i64;
    let mut lhs = Rational::zero();
    let mut constant = Rational::zero();
    for x in 0..l {
        lhs += engine.s_value(k + x * t, l * t)?;
        constant += engine.s_value(x, l)?;
    }
    let rhs = Rational::from_integer(a_p(ell).into()) * engine.s_value(k, t)?
        - engine.s_value(l * k, t)?
        + constant;
    Ok((lhs, rhs))
}

/// `P_(1, M)(S)`, the sum of `S(x/M)` over units mod `M`.
pub fn trivial_character_sum(engine: &SymbolEngine, modulus: i64) -> Result<Rational> {
    let v = p_psi_m(engine, &Character::Trivial, modulus)?;
    Ok(v.coeffs()[0].clone())
}

/// `(sum_(l | M) sum_(x mod l) S(x/l), (a_M - sigma(M)) / 3)`.
pub fn divisor_sum_sides(engine: &SymbolEngine, modulus: u64) -> Result<(Rational, Rational)> {
    let mut lhs = Rational::zero();
    for l in divisors(modulus) {
        for x in 0..l as i64 {
            lhs += engine.s_value(x, l as i64)?;
        }
    }
    let rhs = Rational::new(
        (a_n(modulus) - crate::numth::sigma(modulus) as i64).into(),
        3.into(),
    );
    Ok((lhs, rhs))
}

/// `(P_(1,M)(S), (prod_(p | M)(a_p - 2) - phi(M)) / 3)` for squarefree `M`.
pub fn squarefree_trivial_sides(
    engine: &SymbolEngine,
    modulus: u64,
) -> Result<(Rational, Rational)> {
    let lhs = trivial_character_sum(engine, modulus as i64)?;
    let product: i64 = crate::numth::factorize(modulus)
        .iter()
        .map(|&(p, _)| a_p(p) - 2)
        .product();
    let rhs = Rational::new(
        (product - crate::numth::euler_phi(modulus) as i64).into(),
        3.into(),
    );
    Ok((lhs, rhs))
}

/// `(P_(1,M)(S), (a_M - 2 a_(M/l) + a_(M/l^2) - phi(M)) / 3)` for `M = l^e`,
/// `e >= 2`.
pub fn prime_power_trivial_sides(
    engine: &SymbolEngine,
    modulus: u64,
) -> Result<(Rational, Rational)> {
    let ell = match crate::numth::factorize(modulus).as_slice() {
        [(l, e)] if *e >= 2 => *l,
        _ => {
            return Err(Error::IncompatibleModulus {
                modulus: modulus as i64,
                character: 1,
            })
        }
    };
    let lhs = trivial_character_sum(engine, modulus as i64)?;
    let rhs = Rational::new(
        (a_n(modulus) - 2 * a_n(modulus / ell) + a_n(modulus / (ell * ell))
            - crate::numth::euler_phi(modulus) as i64)
            .into(),
        3.into(),
    );
    Ok((lhs, rhs))
}

/// `(P_(psi, M l), (a_l - psi(l) - conj psi(l)) P_(psi, M))` for a prime
/// `l` not dividing `M`.
pub fn euler_factor_sides(
    engine: &SymbolEngine,
    character: &Character,
    modulus: i64,
    ell: u64,
) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    let lhs = p_psi_m(engine, character, modulus * ell as i64)?;
    let base = p_psi_m(engine, character, modulus)?;
    Ok((lhs, &euler_factor(character, ell) * &base))
}

/// Whether `rho_n(xi(m)) = prod_(l | m)(a_l - psi(l) - conj psi(l)) psi_n(xi_(Q_n))`
/// holds coordinatewise mod 2.
pub fn twisted_congruence_mod_2(engine: &SymbolEngine, n: u32, m: i64) -> Result<bool> {
    let (p, q) = admissible_factors(m).ok_or(Error::InvalidTwist(m))?;
    let psi = Character::psi(n)?;
    let twisted = specialize_twisted(engine, n, m)?;
    let base = specialize(&xi_cyclotomic(engine, n)?, n)?;
    let rhs = &(&euler_factor(&psi, p) * &euler_factor(&psi, q)) * &base;
    Ok(congruent_mod_2(&twisted, &rhs))
}

/// All ordered pairs `(p, q)` of distinct admissible primes with `pq < bound`,
/// `(-2p / q) = 1` and `3` dividing neither `h(-q)` nor `h(-6pq)`; sorted by
/// `(m, p)`.
pub fn search_pairs(bound: u64) -> Vec<PairReport> {
    let primes: Vec<u64> = (7..bound.div_ceil(7).max(8))
        .step_by(12)
        .filter(|&p| is_in_s(p))
        .collect();
    let mut rows: Vec<PairReport> = primes
        .par_iter()
        .flat_map_iter(|&p| {
            let primes = &primes;
            primes.iter().filter_map(move |&q| {
                let m = p * q;
                if p == q || m >= bound || kronecker(-2 * p as i64, q) != 1 {
                    return None;
                }
                let h_q = class_number(-(q as i64)).expect("valid discriminant");
                let h_6pq = class_number(-6 * m as i64).expect("valid discriminant");
                (!h_q.is_multiple_of(3) && !h_6pq.is_multiple_of(3)).then(|| PairReport {
                    m,
                    a_m: a_p(p) * a_p(q),
                    p,
                    q,
                    h_q,
                    h_6pq,
                })
            })
        })
        .collect();
    rows.sort_by_key(|r| (r.m, r.p));
    rows
}

/// Published admissible pairs with `m < 5000`, as
/// `(m, a_m, p, q, h(-q), h(-6pq))`.
pub const REFERENCE_PAIRS: [(u64, i64, u64, u64, u64, u64); 14] = [
    (217, -35, 31, 7, 1, 16),
    (721, -65, 103, 7, 1, 64),
    (889, -95, 7, 127, 5, 80),
    (1561, 25, 223, 7, 1, 80),
    (1897, 145, 271, 7, 1, 64),
    (2569, 175, 367, 7, 1, 80),
    (2881, -65, 67, 43, 1, 112),
    (3193, 91, 31, 103, 5, 112),
    (3661, -215, 523, 7, 1, 160),
    (4249, 145, 607, 7, 1, 176),
    (4333, 85, 619, 7, 1, 64),
    (4417, -5, 7, 631, 13, 80),
    (4429, 169, 43, 103, 5, 80),
    (4837, 205, 691, 7, 1, 80),
];

pub fn reference_pairs() -> Vec<PairReport> {
    REFERENCE_PAIRS
        .iter()
        .map(|&(m, a_m, p, q, h_q, h_6pq)| PairReport {
            m,
            a_m,
            p,
            q,
            h_q,
            h_6pq,
        })
        .collect()
}

/// Comparison of a search result against a reference list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairComparison {
    /// Reference rows with no row for the same `(p, q)`.
    pub missing: Vec<PairReport>,
    /// `(reference, found)` where the ordered pair agrees but a field differs.
    pub mismatched: Vec<(PairReport, PairReport)>,
    /// Found rows whose `(p, q)` is absent from the reference.
    pub extra: Vec<PairReport>,
}

impl PairComparison {
    /// Every reference row is reproduced exactly; extras are allowed.
    pub fn reference_reproduced(&self) -> bool {
        self.missing.is_empty() && self.mismatched.is_empty()
    }
}

pub fn compare_pairs(found: &[PairReport], reference: &[PairReport]) -> PairComparison {
    let mut cmp = PairComparison::default();
    for r in reference {
        match found.iter().find(|f| (f.p, f.q) == (r.p, r.q)) {
            None => cmp.missing.push(r.clone()),
            Some(f) if f != r => cmp.mismatched.push((r.clone(), f.clone())),
            Some(_) => {}
        }
    }
    cmp.extra = found
        .iter()
        .filter(|f| !reference.iter().any(|r| (r.p, r.q) == (f.p, f.q)))
        .cloned()
        .collect();
    cmp
}
