//! The algebra `K ⊗_F F_l = F_l[Z]/Q(Z)`, where `K = F[Z]/Q(Z)` and
//! `F ⊂ F_l`. It is a product of fields but is kept as one quotient ring;
//! the operations that need units (norm preimages, Hilbert 90) only ever
//! produce elements that are units or zero.

use alloc::{sync::Arc, vec, vec::Vec};
use rand::Rng;

use super::{poly, Elem, Field};
use crate::error::{invalid, Error, Result};

/// Element of an [`EtaleAlgebra`]: `r` coordinates over `F_l` in the
/// power basis `1, Z, ..., Z^(r-1)`.
pub type AlgElem = Vec<Elem>;

#[derive(Clone)]
pub struct EtaleAlgebra(Arc<Inner>);

struct Inner {
    base: Field,
    scalars: Field,
    modulus: Vec<Elem>,
    r: usize,
    /// `theta[j][i]`: coordinates over `F` of `θ^j(Z^i)`.
    theta: Vec<Vec<Vec<Elem>>>,
    traces: Vec<Elem>,
    is_field: bool,
}

impl core::fmt::Debug for EtaleAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "EtaleAlgebra(r = {}, scalars = {:?})",
            self.0.r, self.0.scalars
        )
    }
}

impl EtaleAlgebra {
    /// Builds `K ⊗_F F_l` from `K` (an extension of `F`) and `F_l ⊇ F`.
    pub fn new(k: &Field, base: &Field, scalars: &Field) -> Result<EtaleAlgebra> {
        if k.base() != Some(base) {
            return Err(invalid("K must be a direct extension of F"));
        }
        if scalars.degree() % base.degree() != 0 || scalars.p() != base.p() {
            return Err(invalid("F_l must contain F"));
        }
        let modulus = k.modulus().to_vec();
        let r = modulus.len() - 1;
        let nf = base.degree() as i64;
        let bs = base.size();
        let theta: Vec<Vec<Vec<Elem>>> = (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| k.base_coords(k.frob(bs.pow(i as u32), nf * j as i64)))
                    .collect()
            })
            .collect();
        let traces = (0..r)
            .map(|i| (0..r).fold(0, |acc, j| base.add(acc, theta[j][i][0])))
            .collect();
        let is_field = poly::is_irreducible(scalars, &modulus);
        Ok(EtaleAlgebra(Arc::new(Inner {
            base: base.clone(),
            scalars: scalars.clone(),
            modulus,
            r,
            theta,
            traces,
            is_field,
        })))
    }

    pub fn rank(&self) -> usize {
        self.0.r
    }

    /// The coefficient field `F_l`.
    pub fn scalars(&self) -> &Field {
        &self.0.scalars
    }

    pub fn base(&self) -> &Field {
        &self.0.base
    }

    pub fn is_field(&self) -> bool {
        self.0.is_field
    }

    pub fn zero(&self) -> AlgElem {
        vec![0; self.0.r]
    }

    pub fn one(&self) -> AlgElem {
        self.scalar(1)
    }

    pub fn scalar(&self, c: Elem) -> AlgElem {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// `Z^i` reduced.
    pub fn z_pow(&self, i: usize) -> AlgElem {
        let mut v = self.zero();
        if i < self.0.r {
            v[i] = 1;
            v
        } else {
            self.pow(
                &{
                    let mut z = self.zero();
                    z[1 % self.0.r] = 1;
                    z
                },
                i as u64,
            )
        }
    }

    pub fn is_zero(&self, a: &AlgElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Scalar when `a` lies in `F_l`.
    pub fn as_scalar(&self, a: &AlgElem) -> Option<Elem> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let f = &self.0.scalars;
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let f = &self.0.scalars;
        a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        let f = &self.0.scalars;
        a.iter().map(|&x| f.neg(x)).collect()
    }

    pub fn scale(&self, c: Elem, a: &AlgElem) -> AlgElem {
        let f = &self.0.scalars;
        a.iter().map(|&x| f.mul(c, x)).collect()
    }

    fn pad(&self, mut v: Vec<Elem>) -> AlgElem {
        v.resize(self.0.r, 0);
        v
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let f = &self.0.scalars;
        let r = self.0.r;
        let mut prod = vec![0; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = f.add(prod[i + j], f.mul(x, y));
                }
            }
        }
        for i in (r..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..r {
                let t = f.mul(c, self.0.modulus[j]);
                prod[i - r + j] = f.sub(prod[i - r + j], t);
            }
        }
        prod.truncate(r);
        prod
    }

    pub fn pow(&self, a: &AlgElem, mut e: u64) -> AlgElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &AlgElem) -> Option<AlgElem> {
        let f = &self.0.scalars;
        let (d, s, _) = poly::xgcd(f, &poly::trim(a.clone()), &self.0.modulus);
        (d.len() == 1).then(|| self.pad(s))
    }

    pub fn is_unit(&self, a: &AlgElem) -> bool {
        let f = &self.0.scalars;
        poly::gcd(f, &poly::trim(a.clone()), &self.0.modulus).len() == 1
    }

    /// `θ^j(a)`, with `θ` the `|F|`-power Frobenius of `K` extended
    /// `F_l`-linearly.
    pub fn theta(&self, a: &AlgElem, j: i64) -> AlgElem {
        let r = self.0.r;
        let j = j.rem_euclid(r as i64) as usize;
        if j == 0 {
            return a.clone();
        }
        let f = &self.0.scalars;
        let m = &self.0.theta[j];
        let mut out = self.zero();
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &t) in out.iter_mut().zip(&m[i]) {
                if t != 0 {
                    *o = f.add(*o, f.mul(c, t));
                }
            }
        }
        out
    }

    pub fn trace(&self, a: &AlgElem) -> Elem {
        let f = &self.0.scalars;
        a.iter()
            .zip(&self.0.traces)
            .fold(0, |acc, (&c, &t)| f.add(acc, f.mul(c, t)))
    }

    pub fn norm(&self, a: &AlgElem) -> Elem {
        let mut acc = a.clone();
        for j in 1..self.0.r {
            acc = self.mul(&acc, &self.theta(a, j as i64));
        }
        acc[0]
    }

    /// Applies a map on the scalars coefficientwise.
    pub fn map_scalars(&self, a: &AlgElem, map: &FieldMap) -> AlgElem {
        a.iter().map(|&c| map.apply(c)).collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        (0..self.0.r).map(|_| self.0.scalars.random(rng)).collect()
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        loop {
            let a = self.random(rng);
            if self.is_unit(&a) {
                return a;
            }
        }
    }

    /// Some `x` with `Norm(x) = y`, for `y` a unit of `F_l`.
    pub fn norm_preimage<R: Rng + ?Sized>(&self, y: Elem, rng: &mut R) -> Result<AlgElem> {
        let f = &self.0.scalars;
        if y == 0 {
            return Err(Error::NotInvertible);
        }
        if y == 1 {
            return Ok(self.one());
        }
        for _ in 0..10_000 {
            let x = self.random_unit(rng);
            let n = self.norm(&x);
            if let Some(e) = f.discrete_log(n, y) {
                let out = self.pow(&x, e);
                debug_assert_eq!(self.norm(&out), y);
                return Ok(out);
            }
        }
        Err(Error::NotInvertible)
    }

    /// A unit `ζ` with `θ(ζ) = z ζ`, for `z` of norm 1: the inverse of
    /// the first nonzero value of `v ↦ Σ_i (Π_{j<i} θ^j(z)) θ^i(v)` on
    /// the power basis.
    pub fn hilbert90(&self, z: &AlgElem) -> Result<AlgElem> {
        if self.norm(z) != 1 {
            return Err(invalid("Hilbert 90 needs an element of norm 1"));
        }
        let r = self.0.r;
        let mut coef = Vec::with_capacity(r);
        let mut c = self.one();
        for i in 0..r {
            coef.push(c.clone());
            c = self.mul(&c, &self.theta(z, i as i64));
        }
        for j in 0..r {
            let v = self.z_pow(j);
            let mut b = self.zero();
            for (i, ci) in coef.iter().enumerate() {
                b = self.add(&b, &self.mul(ci, &self.theta(&v, i as i64)));
            }
            if !self.is_zero(&b) {
                let zeta = self.inv(&b).ok_or(Error::NotInvertible)?;
                debug_assert_eq!(self.theta(&zeta, 1), self.mul(z, &zeta));
                return Ok(zeta);
            }
        }
        Err(Error::NotInvertible)
    }
}

/// An `F`-linear map between two extensions of `F`, given by the image of
/// the generator of the source.
#[derive(Clone, Debug)]
pub struct FieldMap {
    src: Field,
    dst: Field,
    images: Vec<Elem>,
    trivial_src: bool,
}

impl FieldMap {
    /// The map sending the generator of `src` over `base` to `gen_image`.
    pub fn new(base: &Field, src: &Field, dst: &Field, gen_image: Elem) -> FieldMap {
        let trivial_src = src.degree() == base.degree();
        let n = if trivial_src { 1 } else { src.rel_degree() };
        let mut images = Vec::with_capacity(n);
        let mut cur = 1;
        for _ in 0..n {
            images.push(cur);
            cur = dst.mul(cur, gen_image);
        }
        FieldMap {
            src: src.clone(),
            dst: dst.clone(),
            images,
            trivial_src,
        }
    }

    pub fn identity(f: &Field) -> FieldMap {
        FieldMap {
            src: f.clone(),
            dst: f.clone(),
            images: vec![1],
            trivial_src: true,
        }
    }

    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: Elem) -> Elem {
        if self.trivial_src {
            return a;
        }
        let d = &self.dst;
        self.src
            .base_coords(a)
            .iter()
            .zip(&self.images)
            .fold(0, |acc, (&c, &img)| d.add(acc, d.mul(c, img)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf9_over_gf3() -> (Field, Field) {
        let f = Field::prime(3).unwrap();
        let k = Field::canonical_extension(&f, 2).unwrap();
        (f, k)
    }

    #[test]
    fn trace_and_norm_of_one() {
        let (f, k) = gf9_over_gf3();
        let a = EtaleAlgebra::new(&k, &f, &f).unwrap();
        assert_eq!(a.trace(&a.one()), 2);
        assert_eq!(a.norm(&a.one()), 1);
    }

    #[test]
    fn hilbert90_minus_one() {
        let (f, k) = gf9_over_gf3();
        let a = EtaleAlgebra::new(&k, &f, &f).unwrap();
        let z = a.scalar(2);
        let zeta = a.hilbert90(&z).unwrap();
        assert_eq!(a.mul(&zeta, &zeta), a.scalar(2));
    }

    #[test]
    fn split_algebra_units() {
        // K = GF(9) tensored with itself splits as two copies of GF(9)
        let (f, k) = gf9_over_gf3();
        let a = EtaleAlgebra::new(&k, &f, &k).unwrap();
        assert!(!a.is_field());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for y in 1..9 {
            let x = a.norm_preimage(y, &mut rng).unwrap();
            assert_eq!(a.norm(&x), y);
        }
    }
}
