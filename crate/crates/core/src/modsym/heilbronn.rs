//! Heilbronn matrices of determinant `p` realising the Hecke operator
//! `T_p` on Manin symbols: `(c:d) T_p = sum_h (c:d) h`.

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
pub type Mat2 = [i64; 4];

/// Cremona's list for a prime `p`.
pub fn heilbronn_cremona(p: i64) -> Vec<Mat2> {
    let mut out = vec![[1, 0, 0, p]];
    if p == 2 {
        out.extend([[2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]]);
        return out;
    }
    for r in -(p / 2)..=(p / 2) {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i64, 1i64);
        let (mut a, mut b) = (-p, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = round_half_away(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push([x1, x2, y1, y2]);
        }
    }
    out
}

/// `a / b` rounded to the nearest integer, ties away from zero.
fn round_half_away(a: i64, b: i64) -> i64 {
    let negative = (a < 0) != (b < 0);
    let (a, b) = (a.abs(), b.abs());
    let q = (2 * a + b) / (2 * b);
    if negative {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_equal_p() {
        for p in [2, 3, 5, 7, 11, 13] {
            for m in heilbronn_cremona(p) {
                assert_eq!(m[0] * m[3] - m[1] * m[2], p, "{m:?}");
            }
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_away(5, 2), 3);
        assert_eq!(round_half_away(-5, 2), -3);
        assert_eq!(round_half_away(7, 3), 2);
        assert_eq!(round_half_away(-7, 3), -2);
    }
}
