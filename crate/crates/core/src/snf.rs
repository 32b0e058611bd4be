//! Integer matrix normal forms: Smith normal form, row echelon lattice
//! bases, and lattice membership over `BigInt`.
//!
//! Inputs are dense rows. Large relation matrices are first compressed to an
//! echelon lattice basis (row operations only, via extended-gcd pivoting),
//! after which the Smith reduction runs on a matrix no taller than its width.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) of the row
/// lattice of the input, together with the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors different from 1: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d != BigInt::from(1)).cloned().collect()
    }
}

/// Echelon basis of the lattice spanned by `rows` (row operations only).
/// Each returned row's leftmost nonzero entry is positive and sits in a
/// column strictly to the right of the previous row's.
pub fn row_echelon(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut pivots: Vec<Option<Vec<BigInt>>> = vec![None; cols];
    for row in rows {
        let mut r = row.clone();
        r.resize(cols, BigInt::zero());
        insert_row(&mut pivots, r);
    }
    pivots.into_iter().flatten().collect()
}

fn insert_row(pivots: &mut [Option<Vec<BigInt>>], mut r: Vec<BigInt>) {
    loop {
        let Some(c) = r.iter().position(|x| !x.is_zero()) else {
            return;
        };
        match &mut pivots[c] {
            slot @ None => {
                if r[c].is_negative() {
                    for x in r.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                *slot = Some(r);
                return;
            }
            Some(p) => {
                if (&r[c] % &p[c]).is_zero() {
                    let q = &r[c] / &p[c];
                    for (ri, pi) in r.iter_mut().zip(p.iter()) {
                        *ri -= &q * pi;
                    }
                } else {
                    // Combine so the pivot becomes the gcd, then continue
                    // reducing the remainder row.
                    let ec = BigInt::extended_gcd(&p[c], &r[c]);
                    let (g, x, y) = (ec.gcd, ec.x, ec.y);
                    let pc = &p[c] / &g;
                    let rc = &r[c] / &g;
                    let old_p = p.clone();
                    for (pi, ri) in p.iter_mut().zip(r.iter()) {
                        *pi = &x * &*pi + &y * ri;
                    }
                    for (ri, pi) in r.iter_mut().zip(old_p.iter()) {
                        *ri = &pc * &*ri - &rc * pi;
                    }
                    debug_assert_eq!(p[c], g);
                    debug_assert!(r[c].is_zero());
                }
            }
        }
    }
}

/// Does `v` lie in the lattice spanned by `rows`?
pub fn lattice_contains(rows: &[Vec<BigInt>], v: &[BigInt], cols: usize) -> bool {
    let basis = row_echelon(rows, cols);
    let mut w = v.to_vec();
    w.resize(cols, BigInt::zero());
    for b in &basis {
        let c = b.iter().position(|x| !x.is_zero()).expect("echelon rows nonzero");
        if w[c].is_zero() {
            continue;
        }
        if !(&w[c] % &b[c]).is_zero() {
            return false;
        }
        let q = &w[c] / &b[c];
        for (wi, bi) in w.iter_mut().zip(b.iter()) {
            *wi -= &q * bi;
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// Smith normal form of the lattice spanned by `rows` inside `Z^cols`.
pub fn smith_normal_form(rows: &[Vec<BigInt>], cols: usize) -> SmithNormalForm {
    // Row-compress first so the core reduction is at most cols x cols.
    let mut m = row_echelon(rows, cols);
    let mut diagonal = Vec::new();
    let mut top = 0usize; // active submatrix starts at (top, ...)
    let nrows = m.len();
    while top < nrows {
        // Find the nonzero entry of minimal absolute value in the submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in top..nrows {
            for j in 0..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                if best
                    .map(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(top, bi);
        // Clear column bj with row ops, column content with col ops; repeat
        // until the pivot divides everything it faces.
        loop {
            let mut dirty = false;
            for i in top + 1..nrows {
                if m[i][bj].is_zero() {
                    continue;
                }
                let q = div_round(&m[i][bj], &m[top][bj]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &q * &m[top][j];
                        m[i][j] -= t;
                    }
                }
                if !m[i][bj].is_zero() {
                    m.swap(top, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in 0..cols {
                if j == bj || m[top][j].is_zero() {
                    continue;
                }
                let q = div_round(&m[top][j], &m[top][bj]);
                if !q.is_zero() {
                    for i in top..nrows {
                        let t = &q * &m[i][bj];
                        m[i][j] -= t;
                    }
                }
                if !m[top][j].is_zero() {
                    // Move the smaller remainder into pivot position.
                    for i in top..nrows {
                        m[i].swap(j, bj);
                    }
                    dirty = true;
                    break;
                }
            }
            if !dirty {
                break;
            }
        }
        // Pivot must divide every remaining entry for the invariant-factor
        // chain; if not, fold the offending row in and redo.
        let p = m[top][bj].clone();
        let mut offender = None;
        'scan: for i in top + 1..nrows {
            for j in 0..cols {
                if !(&m[i][j] % &p).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let row = m[i].clone();
            for (a, b) in m[top].iter_mut().zip(row.iter()) {
                *a += b;
            }
            continue;
        }
        diagonal.push(p.abs());
        // Retire the pivot row and column.
        m[top][bj] = BigInt::zero();
        top += 1;
    }
    SmithNormalForm { diagonal }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Round-to-nearest division keeps remainders at most |b|/2.
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        let s = smith_normal_form(&m(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]), 3);
        assert_eq!(s.diagonal, m(&[&[1, 1, 2]])[0]);
        assert_eq!(s.torsion(), vec![BigInt::from(2)]);

        let s = smith_normal_form(&m(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.diagonal, m(&[&[1, 6]])[0]);

        let s = smith_normal_form(&m(&[&[2, 4], &[6, 8]]), 2);
        assert_eq!(s.diagonal, m(&[&[2, 4]])[0]);

        let s = smith_normal_form(&m(&[&[0, 0], &[0, 0]]), 2);
        assert!(s.diagonal.is_empty());

        // Rectangular with redundant rows.
        let s = smith_normal_form(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 2, 4]]), 3);
        assert_eq!(s.diagonal, m(&[&[1, 1]])[0]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn echelon_spans_same_lattice() {
        let rows = m(&[&[4, 6, 2], &[6, 9, 3], &[2, 3, 5]]);
        let e = row_echelon(&rows, 3);
        for r in &rows {
            assert!(lattice_contains(&e, r, 3));
        }
        for r in &e {
            assert!(lattice_contains(&rows, r, 3));
        }
    }

    #[test]
    fn membership() {
        let rows = m(&[&[2, 0], &[0, 2]]);
        assert!(lattice_contains(&rows, &m(&[&[4, -2]])[0], 2));
        assert!(!lattice_contains(&rows, &m(&[&[1, 0]])[0], 2));
        assert!(lattice_contains(&rows, &m(&[&[0, 0]])[0], 2));
        // Empty lattice contains only zero.
        assert!(!lattice_contains(&[], &m(&[&[1]])[0], 1));
        assert!(lattice_contains(&[], &m(&[&[0]])[0], 1));
    }

    #[test]
    fn divisibility_chain_holds() {
        let s = smith_normal_form(
            &m(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]),
            3,
        );
        for w in s.diagonal.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "{:?}", s.diagonal);
        }
        let prod: BigInt = s.diagonal.iter().product();
        assert_eq!(prod, BigInt::from(900)); // |det| preserved
    }
}
