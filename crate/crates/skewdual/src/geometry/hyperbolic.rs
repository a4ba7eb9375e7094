//! Randomised hyperbolic decompositions and uniform sampling.

use alloc::vec::Vec;
use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use super::{q_binomial, FormKind, SesquiSpace, Subspace};
use crate::error::{invalid, Error, Result};
use crate::finite_field::{Elem, Field};
use crate::linalg::{self, Matrix};

/// Trials allowed per hyperbolic plane before giving up. Every kind
/// succeeds with probability at least 2/9 per trial.
const TRIALS_PER_PLANE: u128 = 400;

/// Vectors `u_1..u_s, v_1..v_s` with `B(u_i, v_i) = 1` and every other
/// product zero except `B(v_i, u_i) = ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicBasis {
    pub u: Matrix,
    pub v: Matrix,
}

impl HyperbolicBasis {
    /// Rows `u_1..u_s` then `v_1..v_s`.
    pub fn matrix(&self) -> Matrix {
        self.u.iter().chain(&self.v).cloned().collect()
    }

    pub fn half_dim(&self) -> usize {
        self.u.len()
    }
}

fn random_combination<R: Rng + ?Sized>(
    f: &Field,
    basis: &Matrix,
    n: usize,
    rng: &mut R,
) -> Vec<Elem> {
    let mut out = alloc::vec![0; n];
    for b in basis {
        let c = f.random(rng);
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

fn axpy(f: &Field, y: &mut [Elem], a: Elem, x: &[Elem]) {
    for (o, &c) in y.iter_mut().zip(x) {
        *o = f.add(*o, f.mul(a, c));
    }
}

impl SesquiSpace {
    /// Orthogonal sum of hyperbolic planes, built by rejection sampling.
    /// With `swap` set, a pair whose second vector is isotropic is retried
    /// with the roles exchanged.
    pub fn hyperbolic_decomposition<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        swap: bool,
    ) -> Result<HyperbolicBasis> {
        if !self.witt_index_is_maximal()? {
            return Err(Error::NonExistence);
        }
        let f = self.field().clone();
        let n = self.dim();
        let s = n / 2;
        let mut functionals: Matrix = Vec::new();
        let mut out = HyperbolicBasis {
            u: Vec::new(),
            v: Vec::new(),
        };
        // the symplectic route and the scaled skew-Hermitian one reuse the
        // Hermitian algorithm with the right bookkeeping below
        let inner = match self.kind() {
            FormKind::SkewHermitian => {
                let a = self.alpha0();
                let g = linalg::map(self.gram(), |c| f.mul(a, c));
                Some(SesquiSpace::new(&f, FormKind::Hermitian, g)?)
            }
            _ => None,
        };
        let space = inner.as_ref().unwrap_or(self);
        while out.u.len() < s {
            let perp = linalg::nullspace(&f, &functionals, n);
            let mut found = None;
            for _ in 0..TRIALS_PER_PLANE {
                let mut u = random_combination(&f, &perp, n, rng);
                let mut v = random_combination(&f, &perp, n, rng);
                if linalg::rank(&f, &alloc::vec![u.clone(), v.clone()]) < 2 {
                    continue;
                }
                if space.kind() == FormKind::Symplectic {
                    if space.form(&u, &v) == 0 {
                        continue;
                    }
                    found = Some((u, v));
                    break;
                }
                if space.form(&v, &v) == 0 {
                    if swap && space.form(&u, &u) != 0 {
                        core::mem::swap(&mut u, &mut v);
                    } else {
                        continue;
                    }
                }
                let Some(l) = space.solve_isotropy_equation(&u, &v, rng) else {
                    continue;
                };
                axpy(&f, &mut u, l, &v);
                if space.form(&u, &v) == 0 {
                    continue;
                }
                let l2 = space
                    .solve_isotropy_equation(&v, &u, rng)
                    .expect("linear case is solvable");
                axpy(&f, &mut v, l2, &u);
                found = Some((u, v));
                break;
            }
            let Some((u, mut v)) = found else {
                return Err(Error::BudgetExceeded {
                    needed: TRIALS_PER_PLANE + 1,
                    budget: TRIALS_PER_PLANE,
                });
            };
            let c = f.inv(space.sigma(space.form(&u, &v))).unwrap();
            v = v.iter().map(|&x| f.mul(c, x)).collect();
            if inner.is_some() {
                // B(u, -alpha0 v) = alpha0^{-1} alpha0 = 1
                let m = f.neg(self.alpha0());
                v = v.iter().map(|&x| f.mul(m, x)).collect();
            }
            functionals.push(self.functional(&u));
            functionals.push(self.functional(&v));
            out.u.push(u);
            out.v.push(v);
        }
        Ok(out)
    }

    /// Uniformly distributed maximal totally isotropic subspace.
    pub fn random_isotropic_maximal<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Subspace> {
        let hb = self.hyperbolic_decomposition(rng, false)?;
        Ok(Subspace::span(self.field(), &hb.u, self.dim()))
    }
}

/// Uniformly distributed subspace of `F^n`, all dimensions included.
pub fn random_subspace<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Result<Subspace> {
    let n32 = u32::try_from(n).map_err(|_| invalid("dimension too large"))?;
    let weights: Vec<BigUint> = (0..=n32)
        .map(|d| q_binomial(n32, d, field.size()))
        .collect::<Result<_>>()?;
    let total: BigUint = weights.iter().sum();
    let mut x = rng.gen_biguint_below(&total);
    let mut d = 0;
    for (i, w) in weights.iter().enumerate() {
        if &x < w {
            d = i;
            break;
        }
        x -= w;
    }
    loop {
        let m: Matrix = (0..d)
            .map(|_| (0..n).map(|_| field.random(rng)).collect())
            .collect();
        let sub = Subspace::span(field, &m, n);
        if sub.dim() == d {
            return Ok(sub);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(space: &SesquiSpace, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hb = space
            .hyperbolic_decomposition(&mut rng, seed % 2 == 0)
            .unwrap();
        let g = space.restrict(&hb.matrix());
        let want = SesquiSpace::hyperbolic(space.field(), space.kind(), hb.half_dim()).unwrap();
        assert_eq!(&g, want.gram());
    }

    #[test]
    fn all_kinds_reach_standard_gram() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::make_extension(3, 2).unwrap();
        for seed in 0..10 {
            for (f, kind) in [
                (&f3, FormKind::Euclidean),
                (&f9, FormKind::Hermitian),
                (&f3, FormKind::Symplectic),
                (&f9, FormKind::SkewHermitian),
            ] {
                let sp = SesquiSpace::hyperbolic(f, kind, 3).unwrap();
                check(&sp, seed);
            }
        }
    }

    #[test]
    fn random_subspace_dimensions() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut counts = [0usize; 3];
        for _ in 0..6000 {
            counts[random_subspace(&f, 2, &mut rng).unwrap().dim()] += 1;
        }
        assert!((counts[1] as f64 / 6000.0 - 4.0 / 6.0).abs() < 0.03);
    }
}
