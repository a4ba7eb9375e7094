//! Dense univariate polynomials over a [`Field`], coefficients constant
//! term first. The zero polynomial is the empty vector.

use alloc::{vec, vec::Vec};

use super::{Elem, Field};
use crate::error::{invalid, Result};

pub type Poly = Vec<Elem>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[Elem]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn add(k: &Field, f: &[Elem], g: &[Elem]) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            k.add(
                f.get(i).copied().unwrap_or(0),
                g.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

pub fn sub(k: &Field, f: &[Elem], g: &[Elem]) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            k.sub(
                f.get(i).copied().unwrap_or(0),
                g.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

pub fn scale(k: &Field, c: Elem, f: &[Elem]) -> Poly {
    trim(f.iter().map(|&a| k.mul(c, a)).collect())
}

pub fn mul(k: &Field, f: &[Elem], g: &[Elem]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    trim(out)
}

/// Euclidean division `f = q g + r`. Panics on `g = 0`.
pub fn divrem(k: &Field, f: &[Elem], g: &[Elem]) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let inv = k.inv(g[dg]).unwrap();
    let mut r = trim(f.to_vec());
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - dg];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = k.mul(r[dr], inv);
        q[dr - dg] = c;
        for (j, &gj) in g[..=dg].iter().enumerate() {
            let t = k.mul(c, gj);
            r[dr - dg + j] = k.sub(r[dr - dg + j], t);
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(k: &Field, f: &[Elem], g: &[Elem]) -> Poly {
    divrem(k, f, g).1
}

pub fn monic(k: &Field, f: &[Elem]) -> Poly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => scale(k, k.inv(f[d]).unwrap(), f),
    }
}

pub fn gcd(k: &Field, f: &[Elem], g: &[Elem]) -> Poly {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// Returns `(d, s, t)` with `s f + t g = d`, `d` monic.
pub fn xgcd(k: &Field, f: &[Elem], g: &[Elem]) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(f.to_vec()), trim(g.to_vec()));
    let (mut s0, mut s1) = (vec![1], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        let t = sub(k, &t0, &mul(k, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let c = k.inv(r0[d]).unwrap();
            (scale(k, c, &r0), scale(k, c, &s0), scale(k, c, &t0))
        }
    }
}

pub fn mulmod(k: &Field, f: &[Elem], g: &[Elem], m: &[Elem]) -> Poly {
    rem(k, &mul(k, f, g), m)
}

pub fn powmod(k: &Field, f: &[Elem], mut e: u64, m: &[Elem]) -> Poly {
    let mut acc = rem(k, &[1], m);
    let mut b = rem(k, f, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &b, m);
        }
        b = mulmod(k, &b, &b, m);
        e >>= 1;
    }
    acc
}

pub fn derivative(k: &Field, f: &[Elem]) -> Poly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(k.from_int(i as i64), c))
            .collect(),
    )
}

pub fn eval(k: &Field, f: &[Elem], x: Elem) -> Elem {
    f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

/// `x^deg f · f(1/x)`.
pub fn reciprocal(f: &[Elem]) -> Poly {
    let mut g = trim(f.to_vec());
    g.reverse();
    trim(g)
}

/// Ben-Or irreducibility test.
pub fn is_irreducible(k: &Field, f: &[Elem]) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = monic(k, f);
    let x = vec![0, 1];
    let mut xp = rem(k, &x, &f);
    for _ in 1..=n / 2 {
        xp = powmod(k, &xp, k.size(), &f);
        if gcd(k, &f, &sub(k, &xp, &x)).len() != 1 {
            return false;
        }
    }
    true
}

/// The first monic irreducible of degree `n` when tuples
/// `(c_0, ..., c_{n-1})` are listed lexicographically with `c_0` leading.
pub fn canonical_irreducible(k: &Field, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(invalid("degree must be positive"));
    }
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    let qs = k.size();
    let total = qs
        .checked_pow(n as u32)
        .ok_or_else(|| invalid("search space too large"))?;
    // f[0] is the leading digit; start past the candidates with f[0] = 0
    for mut idx in total / qs..total {
        let mut f = vec![0; n + 1];
        f[n] = 1;
        for i in (0..n).rev() {
            f[i] = idx % qs;
            idx /= qs;
        }
        if f[0] != 0 && is_irreducible(k, &f) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn is_squarefree(k: &Field, f: &[Elem]) -> bool {
    gcd(k, f, &derivative(k, f)).len() == 1
}

/// Ordering key for monic factors: degree, then coefficients from the
/// constant term.
fn factor_key(f: &Poly) -> (usize, Poly) {
    (f.len(), f.clone())
}

/// Factors a squarefree polynomial into sorted monic irreducibles.
/// Deterministic: splitting polynomials are tried in a fixed order.
pub fn factor_squarefree(k: &Field, f: &[Elem]) -> Vec<Poly> {
    let f = monic(k, f);
    let n = degree(&f).unwrap_or(0);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    // distinct-degree split
    let mut rest = f.clone();
    let x = vec![0, 1];
    let mut xp = rem(k, &x, &rest);
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        xp = powmod(k, &xp, k.size(), &rest);
        let g = gcd(k, &rest, &sub(k, &xp, &x));
        if g.len() > 1 {
            equal_degree(k, &g, d, &mut out);
            rest = divrem(k, &rest, &g).0;
            xp = rem(k, &xp, &rest);
        }
        d += 1;
    }
    if degree(&rest).unwrap_or(0) > 0 {
        out.push(monic(k, &rest));
    }
    out.sort_by_key(factor_key);
    out
}

fn equal_degree(k: &Field, f: &Poly, d: usize, out: &mut Vec<Poly>) {
    let n = degree(f).unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let qs = k.size();
    let half = (qs - 1) / 2;
    let mut seed: u64 = 1;
    loop {
        seed += 1;
        // next candidate of degree < n from the counter digits
        let mut a = Vec::with_capacity(n);
        let mut s = seed;
        while s > 0 && a.len() < n {
            a.push(s % qs);
            s /= qs;
        }
        let a = trim(a);
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        // a^((q^d - 1) / 2) = (a^(1 + q + ... + q^(d-1)))^((q - 1) / 2)
        let mut t = rem(k, &a, f);
        let mut acc = t.clone();
        for _ in 1..d {
            t = powmod(k, &t, qs, f);
            acc = mulmod(k, &acc, &t, f);
        }
        let b = powmod(k, &acc, half, f);
        let g = gcd(k, f, &sub(k, &b, &[1]));
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(k, f, &g).0;
            equal_degree(k, &g, d, out);
            equal_degree(k, &monic(k, &h), d, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn high_degree_modulus() {
        let k = Field::prime(3).unwrap();
        let m = canonical_irreducible(&k, 18).unwrap();
        assert_eq!(
            m,
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 1]
        );
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let k = Field::prime(3).unwrap();
        assert_eq!(canonical_irreducible(&k, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn quadratic_scan_matches() {
        let k = Field::prime(3).unwrap();
        let mut irr = 0;
        for c0 in 0..3 {
            for c1 in 0..3 {
                let f = vec![c0, c1, 1];
                let has_root = (0..3).any(|x| eval(&k, &f, x) == 0);
                assert_eq!(is_irreducible(&k, &f), !has_root);
                irr += usize::from(!has_root);
            }
        }
        assert_eq!(irr, 3);
    }

    #[test]
    fn factor_y5_minus_1_over_gf3() {
        let k = Field::prime(3).unwrap();
        let f = vec![2, 0, 0, 0, 0, 1];
        let fs = factor_squarefree(&k, &f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], vec![2, 1]);
        assert_eq!(fs[1], vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn factor_product_roundtrip() {
        let k = Field::make_extension(5, 2).unwrap();
        let f = vec![k.neg(1), 0, 0, 0, 0, 0, 0, 0, 1];
        let fs = factor_squarefree(&k, &f);
        let prod = fs.iter().fold(vec![1], |acc, g| mul(&k, &acc, g));
        assert_eq!(prod, f);
        assert!(fs.iter().all(|g| is_irreducible(&k, g)));
    }

    #[test]
    fn xgcd_bezout() {
        let k = Field::prime(7).unwrap();
        let f = vec![1, 2, 3, 1];
        let g = vec![5, 0, 1];
        let (d, s, t) = xgcd(&k, &f, &g);
        assert_eq!(add(&k, &mul(&k, &s, &f), &mul(&k, &t, &g)), d);
    }
}
