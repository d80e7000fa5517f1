//! Smith normal form of integer matrices (diagonal only).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::webhom::IntMatrix;

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive. Their count is
/// the rank.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                sub_row(&mut a, r, t, &q);
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide everything left, else fold the
                // offending row in and go again
                let bad = (t + 1..rows)
                    .find(|&r| (t + 1..cols).any(|c| !a[r][c].is_multiple_of(&a[t][t])));
                match bad {
                    None => break,
                    Some(r) => {
                        let one = -BigInt::one();
                        sub_row(&mut a, t, r, &one);
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for r in t..rows {
                if !a[r][t].is_zero() && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if !a[t][c].is_zero() && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            if best.1 == t {
                a.swap(t, best.0);
            } else {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn smallest(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| v.abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

fn sub_row(a: &mut [Vec<BigInt>], r: usize, src: usize, q: &BigInt) {
    let source = a[src].clone();
    for (x, s) in a[r].iter_mut().zip(&source) {
        *x -= q * s;
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn small_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(invariant_factors(&m), ints(&[2, 6, 12]));
        let z = IntMatrix::zeros(2, 3);
        assert!(invariant_factors(&z).is_empty());
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(invariant_factors(&d), ints(&[1, 6]));
    }

    proptest! {
        #[test]
        fn product_of_factors_is_gcd_of_maximal_minors(entries in proptest::collection::vec(-6i64..6, 9)) {
            let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            let f = invariant_factors(&m);
            for w in f.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let det = m.det().abs();
            if f.len() == 3 {
                prop_assert_eq!(f.iter().product::<BigInt>(), det);
            } else {
                prop_assert!(det.is_zero());
            }
            // d_1 is the gcd of all entries
            let g = rows.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(&BigInt::from(*x)));
            if !g.is_zero() {
                prop_assert_eq!(&f[0], &g);
            }
        }
    }
}
