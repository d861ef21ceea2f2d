//! Exact sparse row reduction over Q, just enough to extract kernels of
//! relation matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

/// A sparse row: column -> nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Incrementally maintained reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    /// pivot column -> row with a 1 in that column and zeros in every other
    /// pivot column.
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        // Reduce against existing pivots. Pivot rows only touch their own
        // pivot column among pivot columns, so one pass suffices.
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for col in hits {
            let factor = match row.get(&col) {
                Some(f) => f.clone(),
                None => continue,
            };
            axpy(&mut row, &-factor, &self.pivots[&col]);
        }
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.pivots.values_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                axpy(other, &-f, &row);
            }
        }
        self.pivots.insert(pivot, row);
        true
    }

    /// Basis of `{x : A x = 0}`, one dense vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (&p, row) in &self.pivots {
                    if let Some(coef) = row.get(&free) {
                        v[p] = -coef.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// `row += factor * other`, dropping cancelled entries.
fn axpy(row: &mut SparseRow, factor: &Rational, other: &SparseRow) {
    for (&c, v) in other {
        let entry = row.entry(c).or_insert_with(Rational::zero);
        *entry += factor * v;
        if entry.is_zero() {
            row.remove(&c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, q(v))).collect()
    }

    #[test]
    fn kernel_of_small_system() {
        // x0 + x1 + x2 = 0, x0 - x2 = 0  =>  kernel spanned by (1, -2, 1).
        let mut e = Echelon::new(3);
        assert!(e.push(row(&[(0, 1), (1, 1), (2, 1)])));
        assert!(e.push(row(&[(0, 1), (2, -1)])));
        assert!(!e.push(row(&[(0, 2), (1, 1)])));
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q(1), q(-2), q(1)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let rows = [
            row(&[(0, 3), (2, 1), (4, -2)]),
            row(&[(1, 1), (3, 5)]),
            row(&[(0, 1), (1, 1), (4, 7)]),
        ];
        let mut e = Echelon::new(5);
        for r in rows.iter().cloned() {
            e.push(r);
        }
        assert_eq!(e.rank(), 3);
        for v in e.kernel() {
            for r in &rows {
                let dot: Rational = r.iter().map(|(&c, a)| a * &v[c]).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
