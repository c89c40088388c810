//! Small exact linear solves over the rationals (Gaussian elimination).
//!
//! In exact arithmetic any nonzero pivot is valid, so no pivoting strategy
//! beyond "first nonzero" is needed. Systems here are tiny (Fourier-mode
//! matching and moment kernels, at most a few dozen rows).

use num_traits::{One, Zero};

use crate::trig_algebra::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x = &*x / &inv;
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in c..cols {
                    let sub = &m[r][cc] * &f;
                    m[i][cc] = &m[i][cc] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` exactly. Returns one solution (free variables set to 0),
/// or `None` when the system is inconsistent.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return Some(Vec::new());
    }
    let nc = a[0].len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&nc) {
        return None; // a pivot in the augmented column means 0 = nonzero
    }
    let mut x = vec![Rational::zero(); nc];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][nc].clone();
    }
    Some(x)
}

/// Basis of the null space of `A` (right kernel), as vectors of length
/// `A`'s column count.
pub(crate) fn kernel_basis(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() {
        return Vec::new();
    }
    let nc = a[0].len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); nc];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][fc].clone();
            }
            v
        })
        .collect()
}
