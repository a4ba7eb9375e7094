//! Dense linear algebra over a [`Field`]. Matrices are vectors of rows.

use alloc::{vec, vec::Vec};

use crate::finite_field::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![0; cols];
            for (k, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, &x) in out.iter_mut().zip(&b[k]) {
                    *o = f.add(*o, f.mul(c, x));
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec(f: &Field, a: &Matrix, v: &[Elem]) -> Vec<Elem> {
    a.iter().map(|row| dot(f, row, v)).collect()
}

pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn map(m: &Matrix, mut g: impl FnMut(Elem) -> Elem) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|&c| g(c)).collect())
        .collect()
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|row| row.iter().all(|&c| c == 0))
}

/// In-place reduced row echelon form; returns the pivot columns. Zero
/// rows are dropped.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]).unwrap();
        for c in m[row].iter_mut() {
            *c = f.mul(*c, inv);
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || other[col] == 0 {
                continue;
            }
            let factor = other[col];
            for (o, &p) in other.iter_mut().zip(&pivot_row) {
                if p != 0 {
                    *o = f.sub(*o, f.mul(factor, p));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// RREF basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace(f: &Field, m: &Matrix, cols: usize) -> Matrix {
    let mut r = m.clone();
    for row in r.iter_mut() {
        row.resize(cols, 0);
    }
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Matrix = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect();
    rref(f, &mut basis);
    basis
}

pub fn det(f: &Field, m: &Matrix) -> Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = 1;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&i| a[i][col] != 0) else {
            return 0;
        };
        if pr != col {
            a.swap(pr, col);
            d = f.neg(d);
        }
        d = f.mul(d, a[col][col]);
        let inv = f.inv(a[col][col]).unwrap();
        for i in col + 1..n {
            if a[i][col] == 0 {
                continue;
            }
            let factor = f.mul(a[i][col], inv);
            for j in col..n {
                let t = f.mul(factor, a[col][j]);
                a[i][j] = f.sub(a[i][j], t);
            }
        }
    }
    d
}

pub fn inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Some `x` with `m x = b`, free variables set to zero.
pub fn solve(f: &Field, m: &Matrix, b: &[Elem], cols: usize) -> Option<Vec<Elem>> {
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, &c)| {
            let mut r = row.clone();
            r.resize(cols, 0);
            r.push(c);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[cols];
    }
    Some(x)
}

/// Whether `v` lies in the row span of the RREF matrix `basis`.
pub fn in_span(f: &Field, basis: &Matrix, pivots: &[usize], v: &[Elem]) -> bool {
    let mut w = v.to_vec();
    for (row, &pc) in basis.iter().zip(pivots) {
        let c = w[pc];
        if c != 0 {
            for (x, &b) in w.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
    }
    w.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_dimension() {
        let f = Field::prime(5).unwrap();
        let m = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3]];
        let ns = nullspace(&f, &m, 4);
        assert_eq!(ns.len(), 4 - rank(&f, &m));
        for v in &ns {
            assert!(mat_vec(&f, &m, v).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(7).unwrap();
        let m = vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(3));
        assert_ne!(det(&f, &m), 0);
        let x = solve(&f, &m, &[1, 2, 3], 3).unwrap();
        assert_eq!(mat_vec(&f, &m, &x), vec![1, 2, 3]);
    }
}
