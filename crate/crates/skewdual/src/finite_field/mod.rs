//! Finite fields `GF(p^n)` of odd characteristic, built as towers over a
//! prime field, and the étale algebras `K ⊗ F_l` used by the decomposition.
//!
//! An element is a plain integer code. Its base-`p` digits are the
//! coordinates over `GF(p)` in the tower basis, constant term first, so
//! a field embeds into any tower built on it with the identity on codes.

mod etale;
pub mod poly;

pub use etale::{AlgElem, EtaleAlgebra, FieldMap};

use alloc::{boxed::Box, collections::BTreeMap, sync::Arc, vec, vec::Vec};
use core::fmt;
use rand::Rng;

use crate::arith;
use crate::error::{invalid, Error, Result};

/// Integer code of a field element.
pub type Elem = u64;

/// Fields up to this size get discrete log tables.
const TABLE_LIMIT: u64 = 1 << 20;
/// Fields up to this size also get full addition and multiplication tables.
const SMALL_LIMIT: u64 = 1 << 10;
const NONE: u32 = u32::MAX;

/// Description of a field: a monic modulus over a base field (or over
/// `GF(p)` when `base` is absent), coefficients as codes, constant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub degree: u32,
    pub modulus: Vec<u64>,
    pub base: Option<Box<FieldSpec>>,
}

/// A finite field of odd characteristic. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u64,
    degree: u32,
    size: u64,
    base: Option<Field>,
    modulus: Vec<Elem>,
    arith: Arith,
}

enum Arith {
    Prime,
    Log(LogTables),
    Tower { frob: Vec<Vec<Vec<u64>>> },
}

struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
    zech: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for Field {}

/// Multiplication in `base[x]/(modulus)` on codes, without tables.
struct Tower<'a> {
    base: &'a Field,
    modulus: &'a [Elem],
}

impl Tower<'_> {
    fn rel(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.rel();
        let bs = self.base.size();
        let x = decode(a, bs, n);
        let y = decode(b, bs, n);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    let t = self.base.mul(xi, yj);
                    prod[i + j] = self.base.add(prod[i + j], t);
                }
            }
        }
        for i in (n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let t = self.base.mul(c, self.modulus[j]);
                prod[i - n + j] = self.base.sub(prod[i - n + j], t);
            }
        }
        encode(&prod[..n], bs)
    }

    fn pow(&self, mut a: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

fn decode(mut a: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut() {
        *slot = a % radix;
        a /= radix;
    }
    out
}

fn encode(digits: &[u64], radix: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * radix + d)
}

fn digit_add(p: u64, degree: u32, mut a: u64, mut b: u64) -> u64 {
    let (mut out, mut scale) = (0u64, 1u64);
    for _ in 0..degree {
        let d = (a % p + b % p) % p;
        out += d * scale;
        scale = scale.wrapping_mul(p);
        a /= p;
        b /= p;
    }
    out
}

fn digit_neg(p: u64, degree: u32, mut a: u64) -> u64 {
    let (mut out, mut scale) = (0u64, 1u64);
    for _ in 0..degree {
        let d = (p - a % p) % p;
        out += d * scale;
        scale = scale.wrapping_mul(p);
        a /= p;
    }
    out
}

impl Field {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !arith::is_prime(p) || p >= 1 << 31 {
            return Err(invalid("p must be an odd prime below 2^31"));
        }
        Ok(Field(Arc::new(Inner {
            p,
            degree: 1,
            size: p,
            base: None,
            modulus: vec![0, 1],
            arith: Arith::Prime,
        })))
    }

    /// `GF(p^n)` with the canonical modulus over `GF(p)`.
    pub fn make_extension(p: u64, n: u32) -> Result<Field> {
        let gf = Field::prime(p)?;
        match n {
            0 => Err(invalid("extension degree must be positive")),
            1 => Ok(gf),
            _ => Field::canonical_extension(&gf, n),
        }
    }

    /// Extension of `base` of degree `n` by its canonical modulus.
    pub fn canonical_extension(base: &Field, n: u32) -> Result<Field> {
        let m = poly::canonical_irreducible(base, n as usize)?;
        Field::extension(base, &m)
    }

    /// `base[x]/(modulus)`; the modulus must be monic and irreducible.
    pub fn extension(base: &Field, modulus: &[Elem]) -> Result<Field> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(invalid("modulus must be monic of positive degree"));
        }
        if modulus.iter().any(|&c| c >= base.size()) {
            return Err(invalid("modulus coefficient outside the base field"));
        }
        if !poly::is_irreducible(base, modulus) {
            return Err(Error::Reducible);
        }
        let rel = (modulus.len() - 1) as u32;
        let degree = base.degree() * rel;
        let size = base
            .size()
            .checked_pow(rel)
            .filter(|&s| s < 1 << 62)
            .ok_or_else(|| invalid("field larger than 2^62 elements"))?;
        let p = base.p();
        let tower = Tower { base, modulus };
        let arith = if size <= TABLE_LIMIT {
            Arith::Log(build_tables(&tower, p, degree, size))
        } else {
            Arith::Tower {
                frob: build_frobenius(&tower, p, degree),
            }
        };
        Ok(Field(Arc::new(Inner {
            p,
            degree,
            size,
            base: Some(base.clone()),
            modulus: modulus.to_vec(),
            arith,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    /// Relative modulus over the base (or `x` for a prime field).
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    pub fn rel_degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    pub fn has_tables(&self) -> bool {
        !matches!(self.0.arith, Arith::Tower { .. })
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            degree: self.rel_degree() as u32,
            modulus: self.0.modulus.clone(),
            base: self
                .0
                .base
                .as_ref()
                .filter(|b| !b.is_prime_field())
                .map(|b| Box::new(b.spec())),
        }
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, i: i64) -> Elem {
        i.rem_euclid(self.0.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => {
                let s = a + b;
                if s >= self.0.p {
                    s - self.0.p
                } else {
                    s
                }
            }
            Arith::Log(t) => {
                if !t.add.is_empty() {
                    return t.add[(a * self.0.size + b) as usize] as u64;
                }
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = self.0.size - 1;
                let (la, lb) = (t.log[a as usize] as u64, t.log[b as usize] as u64);
                let z = t.zech[((lb + n - la) % n) as usize];
                if z == NONE {
                    0
                } else {
                    t.exp[(la + z as u64) as usize] as u64
                }
            }
            Arith::Tower { .. } => digit_add(self.0.p, self.0.degree, a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => {
                if a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            Arith::Log(t) => {
                if a == 0 {
                    0
                } else {
                    let n = self.0.size - 1;
                    t.exp[(t.log[a as usize] as u64 + n / 2) as usize] as u64
                }
            }
            Arith::Tower { .. } => digit_neg(self.0.p, self.0.degree, a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => a * b % self.0.p,
            Arith::Log(t) => {
                if !t.mul.is_empty() {
                    return t.mul[(a * self.0.size + b) as usize] as u64;
                }
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64
                }
            }
            Arith::Tower { .. } => self.tower().mul(a, b),
        }
    }

    fn tower(&self) -> Tower<'_> {
        Tower {
            base: self.0.base.as_ref().expect("tower field has a base"),
            modulus: &self.0.modulus,
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.0.arith {
            Arith::Prime => arith::pow_mod(a, e, self.0.p),
            Arith::Log(t) => {
                let n = self.0.size - 1;
                let l = arith::mul_mod(t.log[a as usize] as u64, e % n, n);
                t.exp[l as usize] as u64
            }
            Arith::Tower { .. } => self.tower().pow(a, e),
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        Some(match &self.0.arith {
            Arith::Prime => arith::mod_inverse(a, self.0.p).expect("prime modulus"),
            Arith::Log(t) => {
                let n = self.0.size - 1;
                t.exp[((n - t.log[a as usize] as u64) % n) as usize] as u64
            }
            Arith::Tower { .. } => self.pow(a, self.0.size - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^(p^j)`; `j` may be negative and is reduced modulo the degree.
    pub fn frob(&self, a: Elem, j: i64) -> Elem {
        let j = j.rem_euclid(self.0.degree as i64) as u32;
        if j == 0 || a <= 1 {
            return a;
        }
        match &self.0.arith {
            Arith::Prime => a,
            Arith::Log(t) => {
                let n = self.0.size - 1;
                let e = arith::pow_mod(self.0.p, j as u64, n);
                let l = arith::mul_mod(t.log[a as usize] as u64, e, n);
                t.exp[l as usize] as u64
            }
            Arith::Tower { frob } => {
                let p = self.0.p;
                let digits = decode(a, p, self.0.degree as usize);
                let m = &frob[j as usize];
                let mut out = vec![0u64; digits.len()];
                for (k, &d) in digits.iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    for (o, &c) in out.iter_mut().zip(&m[k]) {
                        *o = (*o + d * c) % p;
                    }
                }
                encode(&out, p)
            }
        }
    }

    /// Coordinates over `GF(p)`, constant term first.
    pub fn digits(&self, a: Elem) -> Vec<u64> {
        decode(a, self.0.p, self.0.degree as usize)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<Elem> {
        if digits.len() > self.0.degree as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(invalid("coordinate vector does not fit the field"));
        }
        Ok(encode(digits, self.0.p))
    }

    /// Coordinates over the immediate base field.
    pub fn base_coords(&self, a: Elem) -> Vec<Elem> {
        let bs = self.0.base.as_ref().map_or(self.0.p, |b| b.size());
        if self.is_prime_field() {
            return vec![a];
        }
        decode(a, bs, self.rel_degree())
    }

    pub fn from_base_coords(&self, c: &[Elem]) -> Elem {
        match &self.0.base {
            None => c.first().copied().unwrap_or(0),
            Some(b) => encode(c, b.size()),
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.0.size
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.0.size)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.0.size)
    }

    /// Euler's criterion.
    pub fn is_square(&self, a: Elem) -> bool {
        if a == 0 {
            return true;
        }
        if let Arith::Log(t) = &self.0.arith {
            return t.log[a as usize] % 2 == 0;
        }
        self.pow(a, (self.0.size - 1) / 2) == 1
    }

    /// A square root, the smaller code of the two when there are two.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let root = match &self.0.arith {
            Arith::Log(t) => t.exp[(t.log[a as usize] / 2) as usize] as u64,
            _ => self.tonelli_shanks(a),
        };
        Some(root.min(self.neg(root)))
    }

    fn tonelli_shanks(&self, a: Elem) -> Elem {
        let q1 = self.0.size - 1;
        let e = q1.trailing_zeros();
        let m = q1 >> e;
        let z = (2..self.0.size)
            .find(|&c| !self.is_square(c))
            .expect("odd field has non-squares");
        let mut c = self.pow(z, m);
        let mut x = self.pow(a, m.div_ceil(2));
        let mut t = self.pow(a, m);
        let mut s = e;
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(s - i - 1) {
                b = self.mul(b, b);
            }
            x = self.mul(x, b);
            c = self.mul(b, b);
            t = self.mul(t, c);
            s = i;
        }
        x
    }

    /// Relative trace to the subfield of degree `sub` over `GF(p)`.
    pub fn trace_to(&self, a: Elem, sub: u32) -> Elem {
        debug_assert!(self.0.degree % sub == 0);
        let mut acc = 0;
        for i in 0..self.0.degree / sub {
            acc = self.add(acc, self.frob(a, (i * sub) as i64));
        }
        acc
    }

    /// Relative norm to the subfield of degree `sub` over `GF(p)`.
    pub fn norm_to(&self, a: Elem, sub: u32) -> Elem {
        debug_assert!(self.0.degree % sub == 0);
        let mut acc = 1;
        for i in 0..self.0.degree / sub {
            acc = self.mul(acc, self.frob(a, (i * sub) as i64));
        }
        acc
    }

    /// Whether `a` lies in the subfield of degree `sub`.
    pub fn in_subfield(&self, a: Elem, sub: u32) -> bool {
        self.frob(a, sub as i64) == a
    }

    /// Smallest `e` with `g^e = a`, if any.
    pub fn discrete_log(&self, g: Elem, a: Elem) -> Option<u64> {
        if g == 0 || a == 0 {
            return None;
        }
        let n = self.0.size - 1;
        if let Arith::Log(t) = &self.0.arith {
            let (lg, la) = (t.log[g as usize] as u64, t.log[a as usize] as u64);
            let d = arith::gcd(lg, n);
            if la % d != 0 {
                return None;
            }
            let m = n / d;
            let inv = arith::mod_inverse(lg / d, m).unwrap_or(0);
            return Some(arith::mul_mod(la / d, inv, m));
        }
        self.bsgs(g, a, n)
    }

    fn bsgs(&self, g: Elem, a: Elem, n: u64) -> Option<u64> {
        let m = n.isqrt() + 1;
        if m > 1 << 22 {
            return None;
        }
        let mut baby = BTreeMap::new();
        let mut cur = 1;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = self.mul(cur, g);
        }
        let step = self.inv(self.pow(g, m))?;
        let mut gamma = a;
        for i in 0..=m {
            if let Some(&j) = baby.get(&gamma) {
                return Some(i * m + j);
            }
            gamma = self.mul(gamma, step);
        }
        None
    }

    /// `x` with `Norm_{self/sub}(x) = y`, found by random search for an
    /// element whose norm generates enough of the subfield, then a
    /// discrete logarithm.
    pub fn norm_preimage<R: Rng + ?Sized>(&self, y: Elem, sub: u32, rng: &mut R) -> Result<Elem> {
        if y == 0 {
            return Err(Error::NotInvertible);
        }
        if !self.in_subfield(y, sub) {
            return Err(invalid("norm target outside the subfield"));
        }
        if y == 1 {
            return Ok(1);
        }
        for _ in 0..10_000 {
            let x = self.random_nonzero(rng);
            let nx = self.norm_to(x, sub);
            if let Some(e) = self.discrete_log(nx, y) {
                let out = self.pow(x, e);
                debug_assert_eq!(self.norm_to(out, sub), y);
                return Ok(out);
            }
        }
        Err(Error::NotInvertible)
    }

    /// Generator of the multiplicative group, for fields with tables.
    pub fn primitive_element(&self) -> Option<Elem> {
        match &self.0.arith {
            Arith::Log(t) => Some(t.exp[1] as u64),
            Arith::Prime => {
                let n = self.0.p - 1;
                let f = arith::prime_factors(n);
                (2..self.0.p).find(|&g| f.iter().all(|&l| arith::pow_mod(g, n / l, self.0.p) != 1))
            }
            Arith::Tower { .. } => None,
        }
    }
}

fn build_tables(tower: &Tower<'_>, p: u64, degree: u32, size: u64) -> LogTables {
    let n = size - 1;
    let factors = arith::prime_factors(n);
    let g = (2..size)
        .find(|&g| factors.iter().all(|&l| tower.pow(g, n / l) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; size as usize];
    let mut cur = 1u64;
    for i in 0..n as usize {
        exp[i] = cur as u32;
        exp[i + n as usize] = cur as u32;
        log[cur as usize] = i as u32;
        cur = tower.mul(cur, g);
    }
    let mut zech = vec![NONE; n as usize];
    for d in 0..n as usize {
        let v = digit_add(p, degree, 1, exp[d] as u64);
        if v != 0 {
            zech[d] = log[v as usize];
        }
    }
    let (mut add, mut mul) = (Vec::new(), Vec::new());
    if size <= SMALL_LIMIT {
        let s = size as usize;
        add = vec![0u16; s * s];
        mul = vec![0u16; s * s];
        for a in 0..s {
            for b in 0..s {
                add[a * s + b] = digit_add(p, degree, a as u64, b as u64) as u16;
                if a != 0 && b != 0 {
                    mul[a * s + b] = exp[(log[a] + log[b]) as usize] as u16;
                }
            }
        }
    }
    LogTables {
        log,
        exp,
        zech,
        add,
        mul,
    }
}

fn build_frobenius(tower: &Tower<'_>, p: u64, degree: u32) -> Vec<Vec<Vec<u64>>> {
    let d = degree as usize;
    let basis: Vec<u64> = (0..d).map(|i| p.pow(i as u32)).collect();
    let first: Vec<Vec<u64>> = basis
        .iter()
        .map(|&e| decode(tower.pow(e, p), p, d))
        .collect();
    let mut out = Vec::with_capacity(d);
    out.push((0..d).map(|i| decode(basis[i], p, d)).collect::<Vec<_>>());
    for j in 1..d {
        let prev: &Vec<Vec<u64>> = &out[j - 1];
        // column k of M_j = M_1 applied to column k of M_{j-1}
        let next = prev
            .iter()
            .map(|col| {
                let mut acc = vec![0u64; d];
                for (k, &c) in col.iter().enumerate() {
                    if c != 0 {
                        for (a, &m) in acc.iter_mut().zip(&first[k]) {
                            *a = (*a + c * m) % p;
                        }
                    }
                }
                acc
            })
            .collect();
        out.push(next);
    }
    out
}
