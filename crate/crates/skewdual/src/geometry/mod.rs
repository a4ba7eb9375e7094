//! Sesquilinear spaces over finite fields: Witt index, hyperbolic bases,
//! uniform sampling and enumeration of maximal isotropic subspaces.
//!
//! A form is `B(x, y) = xᵀ G σ(y)` with `σ` the identity or the unique
//! involution of the field, and `G_ji = ε σ(G_ij)` with `ε = ±1`.

mod count;
mod enumerate;
mod hyperbolic;

use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};
use crate::finite_field::{Elem, Field};
use crate::linalg::{self, Matrix};

pub use count::{count_isotropic, count_subspaces, exact_sqrt, q_binomial, q_binomial_identity};
pub use enumerate::{IsotropicIter, Odometer, SubspaceIter};
pub use hyperbolic::{random_subspace, HyperbolicBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// Symmetric bilinear.
    Euclidean,
    /// Hermitian with respect to the field involution.
    Hermitian,
    /// Alternating bilinear.
    Symplectic,
    /// Skew-Hermitian.
    SkewHermitian,
}

impl FormKind {
    pub fn is_skew(self) -> bool {
        matches!(self, FormKind::Symplectic | FormKind::SkewHermitian)
    }

    pub fn uses_involution(self) -> bool {
        matches!(self, FormKind::Hermitian | FormKind::SkewHermitian)
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Euclidean => "euclidean",
            FormKind::Hermitian => "hermitian",
            FormKind::Symplectic => "symplectic",
            FormKind::SkewHermitian => "skew-hermitian",
        })
    }
}

/// A nondegenerate (skew-)symmetric or (skew-)Hermitian space `F^N`.
#[derive(Clone, Debug)]
pub struct SesquiSpace {
    field: Field,
    kind: FormKind,
    gram: Matrix,
    /// `σ = frob^sigma_power`, zero for the identity.
    sigma_power: i64,
    /// Nonzero element with `σ(a) = -a`, or zero when `σ = id`.
    alpha0: Elem,
}

impl SesquiSpace {
    pub fn new(field: &Field, kind: FormKind, gram: Matrix) -> Result<SesquiSpace> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(invalid("Gram matrix must be square"));
        }
        if gram.iter().flatten().any(|&c| !field.contains(c)) {
            return Err(invalid("Gram entry outside the field"));
        }
        let sigma_power = if kind.uses_involution() {
            if field.degree() % 2 != 0 {
                return Err(invalid("Hermitian kinds need a field of even degree"));
            }
            i64::from(field.degree() / 2)
        } else {
            0
        };
        let alpha0 = if kind.uses_involution() {
            (1..field.size())
                .map(|x| field.sub(x, field.frob(x, sigma_power)))
                .find(|&a| a != 0)
                .unwrap()
        } else {
            0
        };
        let space = SesquiSpace {
            field: field.clone(),
            kind,
            gram,
            sigma_power,
            alpha0,
        };
        let eps = space.epsilon();
        for i in 0..n {
            for j in 0..n {
                let expect = field.mul(eps, space.sigma(space.gram[i][j]));
                if space.gram[j][i] != expect {
                    return Err(invalid("Gram matrix does not have the declared symmetry"));
                }
            }
        }
        if linalg::det(field, &space.gram) == 0 {
            return Err(invalid("degenerate form"));
        }
        Ok(space)
    }

    /// Standard hyperbolic space of dimension `2s`: `B(e_i, e_{s+i}) = 1`.
    pub fn hyperbolic(field: &Field, kind: FormKind, s: usize) -> Result<SesquiSpace> {
        let mut g = linalg::zeros(2 * s, 2 * s);
        let eps = if kind.is_skew() { field.neg(1) } else { 1 };
        for i in 0..s {
            g[i][s + i] = 1;
            g[s + i][i] = eps;
        }
        SesquiSpace::new(field, kind, g)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn sigma(&self, a: Elem) -> Elem {
        if self.sigma_power == 0 {
            a
        } else {
            self.field.frob(a, self.sigma_power)
        }
    }

    pub fn sigma_vec(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&c| self.sigma(c)).collect()
    }

    pub fn epsilon(&self) -> Elem {
        if self.kind.is_skew() {
            self.field.neg(1)
        } else {
            1
        }
    }

    /// Element with `σ(a) = -a`, zero when `σ` is trivial.
    pub fn alpha0(&self) -> Elem {
        self.alpha0
    }

    /// Size of the fixed field of `σ`.
    pub fn fixed_field_size(&self) -> u64 {
        if self.sigma_power == 0 {
            self.field.size()
        } else {
            exact_sqrt(self.field.size()).unwrap()
        }
    }

    pub fn form(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.field;
        let sy = self.sigma_vec(y);
        let mut acc = 0;
        for (row, &xi) in self.gram.iter().zip(x) {
            if xi != 0 {
                acc = f.add(acc, f.mul(xi, linalg::dot(f, row, &sy)));
            }
        }
        acc
    }

    /// Row vector of the functional `x ↦ B(x, w)`.
    pub fn functional(&self, w: &[Elem]) -> Vec<Elem> {
        linalg::mat_vec(&self.field, &self.gram, &self.sigma_vec(w))
    }

    /// Whether the rows of `m` span a totally isotropic subspace.
    pub fn is_isotropic(&self, m: &Matrix) -> bool {
        m.iter().all(|x| m.iter().all(|y| self.form(x, y) == 0))
    }

    /// Gram matrix of the rows of `m`.
    pub fn restrict(&self, m: &Matrix) -> Matrix {
        m.iter()
            .map(|x| m.iter().map(|y| self.form(x, y)).collect())
            .collect()
    }

    /// Whether the Witt index equals half the dimension.
    pub fn witt_index_is_maximal(&self) -> Result<bool> {
        let n = self.dim();
        if n % 2 != 0 {
            return Err(invalid("odd dimension has no maximal isotropic half"));
        }
        Ok(match self.kind {
            FormKind::Euclidean => {
                let f = &self.field;
                let mut d = linalg::det(f, &self.gram);
                if (n / 2) % 2 == 1 {
                    d = f.neg(d);
                }
                f.is_square(d)
            }
            _ => true,
        })
    }

    /// A solution `λ` of `B(u + λv, u + λv) = 0`, uniform among all
    /// solutions, or `None` when there is none.
    pub fn solve_isotropy_equation<R: rand::Rng + ?Sized>(
        &self,
        u: &[Elem],
        v: &[Elem],
        rng: &mut R,
    ) -> Option<Elem> {
        let f = &self.field;
        // skew-Hermitian forms become Hermitian after scaling by alpha0
        let scale = if self.kind == FormKind::SkewHermitian {
            self.alpha0
        } else {
            1
        };
        let h = |x: &[Elem], y: &[Elem]| f.mul(scale, self.form(x, y));
        if self.kind == FormKind::Symplectic {
            return Some(f.random(rng));
        }
        let (b, a, c) = (h(u, u), h(u, v), h(v, v));
        let two = f.from_int(2);
        if c == 0 {
            // b + λ·(v,u) + σ(λ)·(u,v) = 0, linear over the fixed field
            let vu = h(v, u);
            if vu == 0 {
                return (b == 0).then(|| {
                    if self.sigma_power == 0 {
                        f.random(rng)
                    } else {
                        0
                    }
                });
            }
            let half = f.div(f.neg(b), two).unwrap();
            if self.sigma_power == 0 {
                return f.div(half, vu);
            }
            let x = f.random(rng);
            let t = f.add(x, self.sigma(x));
            let alpha = f.mul(self.alpha0, t);
            return f.div(f.add(half, alpha), vu);
        }
        let disc = f.sub(f.mul(a, self.sigma(a)), f.mul(b, c));
        let delta = if disc == 0 {
            0
        } else if self.sigma_power == 0 {
            let d = f.sqrt(disc)?;
            if rng.gen::<bool>() {
                f.neg(d)
            } else {
                d
            }
        } else {
            let sub = f.degree() / 2;
            let d0 = f.norm_preimage(disc, sub, rng).ok()?;
            let q0 = self.fixed_field_size();
            f.mul(d0, f.pow(f.random_nonzero(rng), q0 - 1))
        };
        f.div(f.sub(delta, a), c)
    }
}

/// A subspace of `F^n` stored as its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Matrix,
    pivots: Vec<usize>,
    n: usize,
}

impl Subspace {
    /// Row span of `m`, which need not be reduced or independent.
    pub fn span(field: &Field, m: &Matrix, n: usize) -> Subspace {
        let mut rows = m.clone();
        let pivots = linalg::rref(field, &mut rows);
        Subspace { rows, pivots, n }
    }

    /// Trusts that `rows` is already in RREF with no zero rows.
    pub fn from_rref(rows: Matrix, n: usize) -> Subspace {
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|&c| c != 0).unwrap())
            .collect();
        Subspace { rows, pivots, n }
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
            n,
        }
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        linalg::in_span(field, &self.rows, &self.pivots, v)
    }
}
