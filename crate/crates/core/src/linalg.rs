//! Small exact linear algebra over [`Rational`]: row reduction, rank and
//! null spaces of dense matrices stored as row vectors.

use crate::rational::Rational;

/// Reduced row echelon form of `rows` (each of length `cols`), returning
/// the nonzero rows and the pivot column of each.
pub fn rref(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(found) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, found);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : row . x = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[Rational], vectors: &[Vec<Rational>], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// True when every row of `a` is in the row span of `b`.
pub fn span_contains(b: &[Vec<Rational>], a: &[Vec<Rational>], cols: usize) -> bool {
    let rb = rank(b, cols);
    let mut both = b.to_vec();
    both.extend_from_slice(a);
    rank(&both, cols) == rb
}
