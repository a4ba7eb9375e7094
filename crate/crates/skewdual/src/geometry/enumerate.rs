//! Exhaustive iterators: all subspaces of `F^n`, and all maximal isotropic
//! subspaces via the block shape `M = (A B; 0 C)` in hyperbolic
//! coordinates.

use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{HyperbolicBasis, SesquiSpace, Subspace};
use crate::error::Result;
use crate::finite_field::Field;
use crate::linalg::{self, Matrix};

/// Counter over `radix^len` digit vectors, last digit fastest.
#[derive(Clone, Debug)]
pub struct Odometer {
    radix: u64,
    digits: Vec<u64>,
    started: bool,
    done: bool,
}

impl Odometer {
    pub fn new(radix: u64, len: usize) -> Odometer {
        Odometer {
            radix,
            digits: alloc::vec![0; len],
            started: false,
            done: false,
        }
    }

    pub fn next_digits(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.radix {
                return Some(&self.digits);
            }
            *d = 0;
        }
        self.done = true;
        None
    }
}

/// Lexicographic successor of a `k`-subset of `0..n`.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every RREF matrix with `n` columns, by dimension, then pivot set in
/// lexicographic order, then free entries.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    field: Field,
    n: usize,
    dim: usize,
    max_dim: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    odo: Odometer,
    exhausted: bool,
}

impl SubspaceIter {
    /// All subspaces of dimension in `dims`, which is clamped to `0..=n`.
    pub fn new(field: &Field, n: usize, dims: core::ops::RangeInclusive<usize>) -> SubspaceIter {
        let (lo, hi) = (*dims.start(), (*dims.end()).min(n));
        let mut it = SubspaceIter {
            field: field.clone(),
            n,
            dim: lo,
            max_dim: hi,
            pivots: Vec::new(),
            free: Vec::new(),
            odo: Odometer::new(field.size(), 0),
            exhausted: lo > hi,
        };
        if !it.exhausted {
            it.pivots = (0..lo).collect();
            it.reset_free();
        }
        it
    }

    pub fn all(field: &Field, n: usize) -> SubspaceIter {
        SubspaceIter::new(field, n, 0..=n)
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((i, c));
                }
            }
        }
        self.odo = Odometer::new(self.field.size(), self.free.len());
    }

    fn advance_shape(&mut self) -> bool {
        if next_combination(&mut self.pivots, self.n) {
            return true;
        }
        if self.dim < self.max_dim {
            self.dim += 1;
            self.pivots = (0..self.dim).collect();
            return true;
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        while !self.exhausted {
            if let Some(digits) = self.odo.next_digits() {
                let mut rows = linalg::zeros(self.dim, self.n);
                for (i, &p) in self.pivots.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for (&(i, c), &d) in self.free.iter().zip(digits) {
                    rows[i][c] = d;
                }
                return Some(Subspace {
                    rows,
                    pivots: self.pivots.clone(),
                    n: self.n,
                });
            }
            if self.advance_shape() {
                self.reset_free();
            } else {
                self.exhausted = true;
            }
        }
        None
    }
}

/// Current block `A` with its complement `C` and the GF(p)-basis of
/// admissible `B` blocks.
#[derive(Clone, Debug)]
struct BlockState {
    a: Matrix,
    c: Matrix,
    free_cols: Vec<usize>,
    kernel: Matrix,
    unknowns: usize,
    odo: Odometer,
}

/// Every maximal totally isotropic subspace exactly once.
#[derive(Clone, Debug)]
pub struct IsotropicIter {
    space: SesquiSpace,
    prime: Field,
    basis: Matrix,
    s: usize,
    outer: SubspaceIter,
    block: Option<BlockState>,
}

impl IsotropicIter {
    /// The hyperbolic basis is computed from a fixed seed, so the order is
    /// reproducible.
    pub fn new(space: &SesquiSpace) -> Result<IsotropicIter> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let hb = space.hyperbolic_decomposition(&mut rng, false)?;
        Ok(IsotropicIter::with_basis(space, &hb))
    }

    pub fn with_basis(space: &SesquiSpace, hb: &HyperbolicBasis) -> IsotropicIter {
        let s = hb.half_dim();
        let f = space.field();
        IsotropicIter {
            space: space.clone(),
            prime: Field::prime(f.p()).unwrap(),
            basis: hb.matrix(),
            s,
            outer: SubspaceIter::all(f, s),
            block: None,
        }
    }

    fn open(&self, a: Matrix) -> BlockState {
        let sp = &self.space;
        let f = sp.field();
        let s = self.s;
        let d = a.len();
        let sa = linalg::map(&a, |x| sp.sigma(x));
        // rows y with A σ(y) = 0, equivalently σ(A) y = 0
        let c = linalg::nullspace(f, &sa, s);
        let c_piv: Vec<usize> = c
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        let free_cols: Vec<usize> = (0..s).filter(|j| !c_piv.contains(j)).collect();
        let m = f.degree() as usize;
        let eps = sp.epsilon();
        // columns: unknowns (i, col, t); rows: GF(p) digits of the d×d output
        let unknowns = d * free_cols.len() * m;
        let mut lin = linalg::zeros(d * d * m, unknowns);
        let mut col = 0;
        for i in 0..d {
            for &cc in &free_cols {
                for t in 0..m {
                    // basis element with GF(p) digit 1 at position t
                    let e = f.p().pow(t as u32);
                    let se = sp.sigma(e);
                    let mut out = linalg::zeros(d, d);
                    for (ai, row) in a.iter().enumerate() {
                        out[ai][i] = f.add(out[ai][i], f.mul(row[cc], se));
                        let term = f.mul(eps, f.mul(e, sp.sigma(row[cc])));
                        out[i][ai] = f.add(out[i][ai], term);
                    }
                    for (x, orow) in out.iter().enumerate() {
                        for (y, &val) in orow.iter().enumerate() {
                            for (k, dig) in f.digits(val).into_iter().enumerate() {
                                lin[(x * d + y) * m + k][col] = dig;
                            }
                        }
                    }
                    col += 1;
                }
            }
        }
        let kernel = linalg::nullspace(&self.prime, &lin, unknowns);
        let odo = Odometer::new(f.p(), kernel.len());
        BlockState {
            a,
            c,
            free_cols,
            kernel,
            unknowns,
            odo,
        }
    }

    fn assemble(&self, st: &BlockState, coeffs: &[u64]) -> Subspace {
        let f = self.space.field();
        let p = &self.prime;
        let s = self.s;
        let d = st.a.len();
        let m = f.degree() as usize;
        let mut flat = alloc::vec![0u64; st.unknowns];
        for (&c, kv) in coeffs.iter().zip(&st.kernel) {
            if c != 0 {
                for (o, &x) in flat.iter_mut().zip(kv) {
                    *o = p.add(*o, p.mul(c, x));
                }
            }
        }
        let mut rows: Matrix = Vec::with_capacity(s);
        let mut idx = 0;
        for i in 0..d {
            let mut row = st.a[i].clone();
            row.resize(2 * s, 0);
            for &cc in &st.free_cols {
                row[s + cc] = f.from_digits(&flat[idx..idx + m]).unwrap();
                idx += m;
            }
            rows.push(row);
        }
        for crow in &st.c {
            let mut row = alloc::vec![0; s];
            row.extend_from_slice(crow);
            rows.push(row);
        }
        let ambient = linalg::mat_mul(f, &rows, &self.basis);
        Subspace::span(f, &ambient, self.space.dim())
    }
}

impl Iterator for IsotropicIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if let Some(mut st) = self.block.take() {
                if let Some(coeffs) = st.odo.next_digits().map(<[u64]>::to_vec) {
                    let out = self.assemble(&st, &coeffs);
                    self.block = Some(st);
                    return Some(out);
                }
            }
            let a = self.outer.next()?;
            self.block = Some(self.open(a.rows().clone()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{count_isotropic, q_binomial, FormKind};
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn subspace_counts() {
        let f = Field::prime(3).unwrap();
        assert_eq!(SubspaceIter::all(&f, 2).count(), 6);
        assert_eq!(SubspaceIter::all(&f, 1).count(), 2);
        for d in 0..=4 {
            let n = SubspaceIter::new(&f, 4, d..=d).count();
            assert_eq!(BigUint::from(n), q_binomial(4, d as u32, 3).unwrap());
        }
    }

    #[test]
    fn isotropic_counts_match_formulas() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::make_extension(3, 2).unwrap();
        for (f, kind) in [
            (&f3, FormKind::Euclidean),
            (&f9, FormKind::Hermitian),
            (&f3, FormKind::Symplectic),
            (&f9, FormKind::SkewHermitian),
        ] {
            for s in 1..=2 {
                let sp = SesquiSpace::hyperbolic(f, kind, s).unwrap();
                let all: Vec<Subspace> = IsotropicIter::new(&sp).unwrap().collect();
                assert!(
                    all.iter()
                        .all(|x| x.dim() == s && sp.is_isotropic(x.rows())),
                    "{kind} s={s}"
                );
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
                assert_eq!(
                    BigUint::from(all.len()),
                    count_isotropic(kind, s as u32, f.size()).unwrap(),
                    "{kind} s={s}"
                );
            }
        }
    }

    // rank of the B system over GF(p) is m d(d+1)/2 in the Euclidean case
    #[test]
    fn block_system_rank() {
        let f9 = Field::make_extension(3, 2).unwrap();
        let f25 = Field::make_extension(5, 2).unwrap();
        for (f, kind) in [
            (&f9, FormKind::Euclidean),
            (&f25, FormKind::Euclidean),
            (&f9, FormKind::Symplectic),
            (&f9, FormKind::Hermitian),
            (&f25, FormKind::SkewHermitian),
        ] {
            let sp = SesquiSpace::hyperbolic(f, kind, 3).unwrap();
            let it = IsotropicIter::new(&sp).unwrap();
            let m = f.degree() as usize;
            for a in SubspaceIter::all(f, 3).step_by(7) {
                let d = a.dim();
                let st = it.open(a.rows().clone());
                let rank = st.unknowns - st.kernel.len();
                let want = match kind {
                    FormKind::Euclidean => m * d * (d + 1) / 2,
                    FormKind::Symplectic => m * d * d.saturating_sub(1) / 2,
                    _ => m * d * d / 2,
                };
                assert_eq!(st.unknowns, m * d * d);
                assert_eq!(rank, want, "{kind} d={d}");
            }
        }
    }
}
