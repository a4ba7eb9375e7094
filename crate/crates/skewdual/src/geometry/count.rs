//! Exact counts: Gaussian binomials and the numbers of maximal isotropic
//! subspaces.

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::FormKind;
use crate::error::{invalid, Result};

fn big(q: u64) -> BigUint {
    BigUint::from(q)
}

/// `[n, k]_q`, the number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn q_binomial(n: u32, k: u32, q: u64) -> Result<BigUint> {
    if k > n {
        return Err(invalid("k > n in q-binomial"));
    }
    let q = big(q);
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..k {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    Ok(num / den)
}

/// Number of all subspaces of `GF(q)^n`.
pub fn count_subspaces(n: u32, q: u64) -> BigUint {
    (0..=n).map(|k| q_binomial(n, k, q).unwrap()).sum()
}

/// Square root of a square prime power, as an integer.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let r = q.isqrt();
    (r * r == q).then_some(r)
}

/// Number of totally isotropic subspaces of dimension `s` in a space of
/// dimension `2s` with maximal Witt index, over a field with `q_f`
/// elements. Hermitian kinds need a square `q_f`.
pub fn count_isotropic(kind: FormKind, s: u32, q_f: u64) -> Result<BigUint> {
    let q = big(q_f);
    let factors: Vec<BigUint> = match kind {
        FormKind::Euclidean => (0..s).map(|i| q.pow(i) + 1u32).collect(),
        FormKind::Hermitian | FormKind::SkewHermitian => {
            let r = big(exact_sqrt(q_f)
                .ok_or_else(|| invalid("Hermitian forms need a square field size"))?);
            (0..s).map(|i| r.pow(2 * i + 1) + 1u32).collect()
        }
        FormKind::Symplectic => (1..=s).map(|d| q.pow(d) + 1u32).collect(),
    };
    Ok(factors.into_iter().product())
}

/// Both sides of `Π_{k<n} (1 + q^k t) = Σ_k q^C(k,2) [n,k]_q t^k`, for
/// `t = t_num^(1/t_root)` with `t_root ∈ {1, 2}`. With `t_root = 2` only
/// even powers of `t` are combined with `q`, so the inputs must keep
/// every term integral: `q` itself must be a square.
pub fn q_binomial_identity(n: u32, q: u64, t: u64) -> (BigUint, BigUint) {
    let qb = big(q);
    let tb = big(t);
    let lhs = (0..n).map(|k| qb.pow(k) * &tb + 1u32).product::<BigUint>();
    let mut rhs = BigUint::zero();
    for k in 0..=n {
        rhs += qb.pow(k * k.saturating_sub(1) / 2) * q_binomial(n, k, q).unwrap() * tb.pow(k);
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(q_binomial(6, 3, 3).unwrap(), BigUint::from(33880u32));
        assert_eq!(count_subspaces(2, 3), BigUint::from(6u32));
        assert_eq!(
            count_isotropic(FormKind::Euclidean, 3, 3).unwrap(),
            BigUint::from(80u32)
        );
        assert_eq!(
            count_isotropic(FormKind::Hermitian, 1, 9).unwrap(),
            BigUint::from(4u32)
        );
        assert_eq!(
            count_isotropic(FormKind::Symplectic, 2, 3).unwrap(),
            BigUint::from(40u32)
        );
        assert_eq!(
            count_isotropic(FormKind::Symplectic, 3, 3).unwrap(),
            BigUint::from(1120u32)
        );
    }

    #[test]
    fn identity_at_t_one() {
        for q in [3, 5, 7, 9] {
            let (l, r) = q_binomial_identity(5, q, 1);
            assert_eq!(l, r);
        }
    }
}
