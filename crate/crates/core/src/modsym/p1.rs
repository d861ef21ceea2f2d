//! The projective line over `Z/NZ`, indexing Manin symbols `(c:d)`.

use num_integer::Integer;

/// Normalised representatives of `P^1(Z/NZ)` with constant-time lookup.
#[derive(Debug, Clone)]
pub struct P1List {
    level: u64,
    reps: Vec<(u64, u64)>,
    /// `index[c * N + d]` is the class of `(c:d)`, or `u32::MAX` when
    /// `gcd(c, d, N) > 1`.
    index: Vec<u32>,
}

impl P1List {
    pub fn new(level: u64) -> Self {
        assert!(level >= 1);
        let n = level as usize;
        let units: Vec<u64> = (1..level.max(2)).filter(|u| u.gcd(&level) == 1).collect();
        let units = if level == 1 { vec![0] } else { units };
        let mut index = vec![u32::MAX; n * n];
        let mut reps = Vec::new();
        for c in 0..level {
            for d in 0..level {
                let slot = (c * level + d) as usize;
                if index[slot] != u32::MAX || c.gcd(&d).gcd(&level) != 1 {
                    continue;
                }
                let class = reps.len() as u32;
                reps.push((c, d));
                for &u in &units {
                    let (uc, ud) = (u * c % level, u * d % level);
                    index[(uc * level + ud) as usize] = class;
                }
            }
        }
        P1List { level, reps, index }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    /// Index of the class of `(c:d)`; panics if `gcd(c, d, N) > 1`.
    pub fn index_of(&self, c: i64, d: i64) -> usize {
        let n = self.level as i64;
        let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
        let i = self.index[(c * n + d) as usize];
        assert!(i != u32::MAX, "({c}:{d}) is not in P^1(Z/{n})");
        i as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_matches_index_formula() {
        assert_eq!(P1List::new(243).len(), 324);
        assert_eq!(P1List::new(11).len(), 12);
        assert_eq!(P1List::new(35).len(), 48);
    }

    #[test]
    fn normalisation_is_unit_invariant() {
        let p1 = P1List::new(243);
        for i in 0..p1.len() {
            let (c, d) = p1.rep(i);
            for u in [2i64, 5, 7, 242] {
                assert_eq!(p1.index_of(u * c as i64, u * d as i64), i);
            }
        }
    }
}
