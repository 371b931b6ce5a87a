//! Smith normal form over Z and row-lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Diagonal of the Smith normal form of `m`: nonnegative entries
/// d1 | d2 | ... of length min(rows, cols), zeros trailing.
///
/// Pivot choice is fixed (smallest nonzero absolute value, ties broken by
/// lowest row then column) so the elimination path is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.rows();
    let cols = m.cols();
    let k = rows.min(cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| m.row(r).to_vec()).collect();

    for i in 0..k {
        loop {
            let Some((pr, pc)) = select_pivot(&a, i, rows, cols) else {
                break; // remaining block is zero
            };
            a.swap(i, pr);
            swap_cols(&mut a, i, pc);

            let mut dirty = false;
            // clear column i below the pivot
            for r in i + 1..rows {
                if !a[r][i].is_zero() {
                    let q = div_round(&a[r][i], &a[i][i]);
                    for c in i..cols {
                        let v = &a[r][c] - &q * &a[i][c];
                        a[r][c] = v;
                    }
                    if !a[r][i].is_zero() {
                        dirty = true; // smaller remainder became a better pivot
                    }
                }
            }
            // clear row i right of the pivot
            for c in i + 1..cols {
                if !a[i][c].is_zero() {
                    let q = div_round(&a[i][c], &a[i][i]);
                    for r in i..rows {
                        let v = &a[r][c] - &q * &a[r][i];
                        a[r][c] = v;
                    }
                    if !a[i][c].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot divides every entry of the trailing block, or we fold a
            // bad row in and keep reducing
            let bad = (i + 1..rows)
                .flat_map(|r| (i + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&a[r][c] % &a[i][i]).is_zero());
            match bad {
                Some((r, _)) => {
                    for c in i..cols {
                        let v = &a[i][c] + &a[r][c];
                        a[i][c] = v;
                    }
                }
                None => break,
            }
        }
    }

    (0..k).map(|i| a[i][i].abs()).collect()
}

/// Smallest-|value| nonzero entry of the block at (from, from) and below.
fn select_pivot(
    a: &[Vec<BigInt>],
    from: usize,
    rows: usize,
    cols: usize,
) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in from..rows {
        for c in from..cols {
            if a[r][c].is_zero() {
                continue;
            }
            let mag = a[r][c].abs();
            let better = match &best {
                None => true,
                Some((m, _, _)) => mag < *m,
            };
            if better {
                best = Some((mag, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Quotient rounded to nearest, so the remainder has magnitude <= |d|/2.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let two_r = r.abs() * 2;
    if two_r > d.abs() {
        if (n.is_negative()) == (d.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Whether `v` lies in the Z-span of the rows of `m`.
///
/// Row-reduces a copy of `m` to an integer echelon form using row operations
/// only, then greedily reduces `v` against the pivots.
pub fn in_row_space(m: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), m.cols(), "vector length must match column count");
    let cols = m.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, column)
    let mut top = 0usize;

    for col in 0..cols {
        loop {
            let mut best: Option<(BigInt, usize)> = None;
            for r in top..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let mag = rows[r][col].abs();
                if best.as_ref().map(|(m, _)| mag < *m).unwrap_or(true) {
                    best = Some((mag, r));
                }
            }
            let Some((_, pr)) = best else { break };
            rows.swap(top, pr);
            let mut any_left = false;
            for r in top + 1..rows.len() {
                if !rows[r][col].is_zero() {
                    let q = div_round(&rows[r][col], &rows[top][col]);
                    for c in 0..cols {
                        let val = &rows[r][c] - &q * &rows[top][c];
                        rows[r][c] = val;
                    }
                    if !rows[r][col].is_zero() {
                        any_left = true;
                    }
                }
            }
            if !any_left {
                pivots.push((top, col));
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }

    let mut w: Vec<BigInt> = v.to_vec();
    for &(r, col) in &pivots {
        if w[col].is_zero() {
            continue;
        }
        let (q, rem) = w[col].div_rem(&rows[r][col]);
        if !rem.is_zero() {
            return false;
        }
        for c in 0..cols {
            let val = &w[c] - &q * &rows[r][c];
            w[c] = val;
        }
    }
    w.iter().all(Zero::is_zero)
}
