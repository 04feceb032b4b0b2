//! Smith normal form of small integer matrices.
//!
//! Row and column operations over `Z` (swap, negate, add an integer multiple)
//! reduce the matrix to a diagonal whose nonzero entries d1 | d2 | ... are the
//! invariant factors. The relation matrices this crate diagonalizes are a few
//! hundred rows at most, so a dense implementation with minimum-pivot
//! selection is plenty; entries are i128 and every product is checked, so
//! coefficient growth aborts loudly instead of wrapping.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Snf {
    /// Nonzero invariant factors in divisibility order.
    pub diag: Vec<i128>,
}

impl Snf {
    /// Rank over Z.
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Rank over F2: factors that stay nonzero mod 2. A cross-check oracle
    /// for the elimination-based span tests.
    #[cfg(test)]
    pub fn rank_mod2(&self) -> usize {
        self.diag.iter().filter(|d| *d % 2 != 0).count()
    }
}

#[inline]
fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("matrix entry overflow: {a} * {b}"))
}

#[inline]
fn sub_mul(a: i128, q: i128, b: i128) -> i128 {
    a.checked_sub(mul(q, b))
        .unwrap_or_else(|| panic!("matrix entry overflow: {a} - {q} * {b}"))
}

/// Position of a minimal-magnitude nonzero entry in the submatrix at (k, k),
/// if any.
fn min_pivot(m: &[Vec<i128>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, &v) in row.iter().enumerate().skip(k) {
            if v != 0 && best.is_none_or(|(_, _, b)| v.abs() < b.abs()) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_rows(m: &mut [Vec<i128>], a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub(crate) fn smith_normal_form(mat: &[Vec<i128>]) -> Snf {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    debug_assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");

    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows && k < cols {
        let Some((pi, pj)) = min_pivot(&m, k) else {
            break;
        };
        swap_rows(&mut m, k, pi);
        swap_cols(&mut m, k, pj);

        // Clear row k and column k. Rounded quotients shrink the residues,
        // so re-finding the minimal pivot terminates.
        loop {
            let pivot = m[k][k];
            let mut dirty = false;
            for i in (k + 1)..rows {
                if m[i][k] != 0 {
                    let q = m[i][k].div_euclid(pivot);
                    if q != 0 {
                        let (head, tail) = m.split_at_mut(i);
                        for (entry, &p) in tail[0][k..].iter_mut().zip(&head[k][k..]) {
                            *entry = sub_mul(*entry, q, p);
                        }
                    }
                    if m[i][k] != 0 {
                        swap_rows(&mut m, k, i);
                        dirty = true;
                    }
                }
            }
            for j in (k + 1)..cols {
                if m[k][j] != 0 {
                    let q = m[k][j].div_euclid(m[k][k]);
                    if q != 0 {
                        for row in m.iter_mut().skip(k) {
                            row[j] = sub_mul(row[j], q, row[k]);
                        }
                    }
                    if m[k][j] != 0 {
                        swap_cols(&mut m, k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility pass: the pivot must divide every remaining entry.
        // Folding an offending row into row k strictly shrinks the pivot.
        let pivot = m[k][k];
        let offender = (k + 1..rows).find(|&i| m[i][k + 1..].iter().any(|&v| v % pivot != 0));
        if let Some(i) = offender {
            let (head, tail) = m.split_at_mut(i);
            for (entry, &v) in head[k][k..].iter_mut().zip(&tail[0][k..]) {
                *entry = entry
                    .checked_add(v)
                    .unwrap_or_else(|| panic!("matrix entry overflow in row fold"));
            }
            continue;
        }

        diag.push(m[k][k].abs());
        k += 1;
    }
    Snf { diag }
}
