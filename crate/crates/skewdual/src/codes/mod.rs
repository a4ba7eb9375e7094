//! Selfdual skew cyclic codes: existence, counting, sampling, enumeration,
//! duals and minimum distance.
//!
//! A code is a left ideal `E f` of `E = K[X;θ]/(P(X^r))`, stored through
//! its normalized generator `f`, the monic right divisor of `P(X^r)`.

mod inseparable;

use alloc::{sync::Arc, vec, vec::Vec};
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::arith;
use crate::decomposition::{cyclic_central, Decomposition};
use crate::error::{invalid, Error, Result};
use crate::finite_field::{poly, Elem, Field};
use crate::geometry::{
    count_isotropic, count_subspaces, random_subspace, HyperbolicBasis, IsotropicIter, SesquiSpace,
    Subspace, SubspaceIter,
};
use crate::ore::{self, CentralModulus, GlobalRing, OrePoly, SkewRing};

pub use inseparable::{Dedup, InseparableContext, InseparableIter, TwistSpec, TwistedIter};

/// Seed of the norm preimages chosen by the decomposition. It changes the
/// enumeration order, never the set of codes.
pub const DECOMPOSITION_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Central {
    /// `Y^k - 1`.
    Cyclic(usize),
    /// Coefficients of `P(Y)` over `F`, constant term first.
    Explicit(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeParameters {
    /// `|F|`.
    pub q: u64,
    /// `[K:F]`.
    pub r: usize,
    pub central: Central,
    /// Modulus of `K` over `F`; the canonical one when absent.
    pub field_modulus: Option<Vec<Elem>>,
}

impl CodeParameters {
    pub fn cyclic(q: u64, r: usize, k: usize) -> CodeParameters {
        CodeParameters {
            q,
            r,
            central: Central::Cyclic(k),
            field_modulus: None,
        }
    }

    pub fn with_central(q: u64, r: usize, p_of_y: Vec<Elem>) -> CodeParameters {
        CodeParameters {
            q,
            r,
            central: Central::Explicit(p_of_y),
            field_modulus: None,
        }
    }

    /// Length of the codes over `K`.
    pub fn length(&self) -> usize {
        let deg = match &self.central {
            Central::Cyclic(k) => *k,
            Central::Explicit(p) => poly::degree(p).unwrap_or(0),
        };
        self.r * deg
    }
}

/// A code given by its normalized generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewCode {
    params: Arc<CodeParameters>,
    generator: OrePoly<Elem>,
    dim: usize,
}

impl SkewCode {
    pub fn params(&self) -> &CodeParameters {
        &self.params
    }

    pub fn generator(&self) -> &[Elem] {
        &self.generator
    }

    /// Dimension over `K`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn length(&self) -> usize {
        self.params.length()
    }
}

/// Closed-form existence test for `P = Y^k - 1`.
pub fn exists_closed_form(q: u64, r: usize, k: usize) -> bool {
    r % 2 == 0 && k % 2 == 1 && (r / 2) % 2 == 1 && q % 4 == 3
}

/// Splits `P = R^(p^m)` with `R` squarefree; `None` for other shapes.
fn radical(f: &Field, p_of_y: &[Elem]) -> Option<(Vec<Elem>, usize)> {
    let p = f.p() as usize;
    let mut cur = poly::trim(p_of_y.to_vec());
    let mut mult = 1;
    while cur.len() > 1 && poly::derivative(f, &cur).is_empty() {
        cur = cur.iter().step_by(p).map(|&c| f.frob(c, -1)).collect();
        mult *= p;
    }
    poly::is_squarefree(f, &cur).then_some((cur, mult))
}

/// The ambient ring `K[X;θ]/(P(X^r))` with its decomposition.
#[derive(Clone, Debug)]
pub struct CodeSpace {
    params: Arc<CodeParameters>,
    f: Field,
    k: Field,
    ring: GlobalRing,
    central: Vec<Elem>,
    modulus: CentralModulus,
    /// Decomposition of the squarefree part of `P`.
    radical: Decomposition,
    /// `P = radical^multiplicity`.
    multiplicity: usize,
}

impl CodeSpace {
    pub fn new(params: &CodeParameters) -> Result<CodeSpace> {
        let (p, n) =
            arith::prime_power(params.q).ok_or_else(|| invalid("q must be a prime power"))?;
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if params.r == 0 || params.r > u32::MAX as usize {
            return Err(invalid("r must be positive"));
        }
        let f = Field::make_extension(p, n)?;
        let k = match &params.field_modulus {
            Some(m) => {
                if m.len() != params.r + 1 {
                    return Err(invalid("field modulus must have degree r"));
                }
                Field::extension(&f, m)?
            }
            None => Field::canonical_extension(&f, params.r as u32)?,
        };
        let central = match &params.central {
            Central::Cyclic(0) => return Err(invalid("k must be positive")),
            Central::Cyclic(kk) => cyclic_central(&f, *kk),
            Central::Explicit(c) => {
                if c.iter().any(|&x| x >= f.size()) {
                    return Err(invalid("coefficient outside F"));
                }
                let c = poly::trim(c.clone());
                if c.len() < 2 || c[0] == 0 {
                    return Err(invalid("P must have positive degree and P(0) != 0"));
                }
                poly::monic(&f, &c)
            }
        };
        let ring = GlobalRing::new(&k, &f);
        let modulus = CentralModulus::new(&ring, &central, params.r)?;
        let (rad, multiplicity) = radical(&f, &central).ok_or(Error::Inseparable)?;
        let radical = Decomposition::new(&k, &f, &rad, DECOMPOSITION_SEED)?;
        Ok(CodeSpace {
            params: Arc::new(params.clone()),
            f,
            k,
            ring,
            central,
            modulus,
            radical,
            multiplicity,
        })
    }

    pub fn params(&self) -> &CodeParameters {
        &self.params
    }

    pub fn base_field(&self) -> &Field {
        &self.f
    }

    pub fn field(&self) -> &Field {
        &self.k
    }

    pub fn ring(&self) -> &GlobalRing {
        &self.ring
    }

    pub fn modulus(&self) -> &CentralModulus {
        &self.modulus
    }

    /// `P(Y)`, monic.
    pub fn central(&self) -> &[Elem] {
        &self.central
    }

    pub fn length(&self) -> usize {
        self.modulus.degree()
    }

    pub fn is_separable(&self) -> bool {
        self.multiplicity == 1
    }

    /// `p^m` with `P = R^(p^m)`, `R` squarefree.
    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// The decomposition of `E`; separable moduli only.
    pub fn decomposition(&self) -> Result<&Decomposition> {
        if self.is_separable() {
            Ok(&self.radical)
        } else {
            Err(Error::Inseparable)
        }
    }

    /// Decomposition of the squarefree part of `P`.
    pub fn radical_decomposition(&self) -> &Decomposition {
        &self.radical
    }

    /// The code `E f`, normalized.
    pub fn code(&self, f: &[Elem]) -> Result<SkewCode> {
        if f.iter().any(|&c| c >= self.k.size()) {
            return Err(invalid("coefficient outside K"));
        }
        let generator = self.modulus.normalize(&self.ring, f)?;
        let dim = self.length() - ore::degree(&generator).unwrap_or(0);
        Ok(SkewCode {
            params: self.params.clone(),
            generator,
            dim,
        })
    }

    pub(crate) fn wrap(&self, generator: OrePoly<Elem>) -> SkewCode {
        let dim = self.length() - ore::degree(&generator).unwrap_or(0);
        SkewCode {
            params: self.params.clone(),
            generator,
            dim,
        }
    }

    /// Existence of a selfdual code, from the component Witt indices.
    pub fn exists_by_components(&self) -> bool {
        self.radical.components().iter().all(|c| match &c.space {
            None => true,
            Some(sp) => sp.witt_index_is_maximal().unwrap_or(false),
        })
    }

    pub fn exists_selfdual(&self) -> bool {
        match self.params.central {
            Central::Cyclic(k) => exists_closed_form(self.f.size(), self.params.r, k),
            Central::Explicit(_) => self.exists_by_components(),
        }
    }

    /// Exact number of selfdual codes.
    pub fn count_selfdual(&self) -> Result<BigUint> {
        let d = self.decomposition()?;
        if !self.exists_by_components() {
            return Ok(BigUint::from(0u32));
        }
        let mut total = BigUint::one();
        for l in d.slots() {
            let c = &d.components()[l];
            total *= match &c.space {
                Some(sp) => count_isotropic(sp.kind(), (self.params.r / 2) as u32, c.q())?,
                None => count_subspaces(self.params.r as u32, c.q()),
            };
        }
        Ok(total)
    }

    /// A uniformly distributed selfdual code.
    pub fn random_selfdual<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SkewCode> {
        let d = self.decomposition()?;
        if !self.exists_by_components() {
            return Err(Error::NonExistence);
        }
        let family = d
            .slots()
            .into_iter()
            .map(|l| {
                let c = &d.components()[l];
                match &c.space {
                    Some(sp) => sp.random_isotropic_maximal(rng),
                    None => random_subspace(&c.field, self.params.r, rng),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.wrap(d.code_from_subspaces(&family)?))
    }

    /// Every selfdual code exactly once, in a fixed order.
    pub fn enumerate_selfdual(&self) -> Result<SelfdualIter<'_>> {
        let d = self.decomposition()?;
        let mut sources = Vec::new();
        if self.exists_by_components() {
            for l in d.slots() {
                let c = &d.components()[l];
                sources.push(match &c.space {
                    Some(sp) => {
                        let mut rng =
                            <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x5eed);
                        let hb = sp.hyperbolic_decomposition(&mut rng, false)?;
                        Source::Isotropic(sp.clone(), hb)
                    }
                    None => Source::Free(c.field.clone()),
                });
            }
        }
        let done = sources.is_empty();
        Ok(SelfdualIter {
            space: self,
            sources,
            iters: Vec::new(),
            current: Vec::new(),
            done,
        })
    }

    pub fn is_selforthogonal(&self, code: &SkewCode) -> bool {
        self.modulus.is_selforthogonal(&self.ring, &code.generator)
    }

    /// `f f* = 0` and `deg f` is half the length.
    pub fn is_selfdual(&self, code: &SkewCode) -> bool {
        2 * code.dim == self.length() && self.is_selforthogonal(code)
    }

    pub fn dual(&self, code: &SkewCode) -> Result<SkewCode> {
        Ok(self.wrap(self.modulus.dual(&self.ring, &code.generator)?))
    }

    /// Whether `a ⊆ b` as ideals: the generator of `b` right-divides that
    /// of `a`.
    pub fn is_subcode(&self, a: &SkewCode, b: &SkewCode) -> bool {
        ore::right_divmod(&self.ring, &a.generator, &b.generator).is_ok_and(|(_, r)| r.is_empty())
    }

    /// Basis `X^i f`, `i < dim`, as vectors of length `n`.
    pub fn generator_matrix(&self, code: &SkewCode) -> Vec<Vec<Elem>> {
        let n = self.length();
        (0..code.dim)
            .map(|i| {
                let mut row = vec![0; n];
                for (j, &c) in code.generator.iter().enumerate() {
                    row[i + j] = self.ring.theta(&c, i as i64);
                }
                row
            })
            .collect()
    }

    /// Minimum Hamming weight over nonzero codewords by walking the whole
    /// span; `None` for the zero code.
    pub fn min_distance(&self, code: &SkewCode, budget: u128) -> Result<Option<usize>> {
        let rows = self.generator_matrix(code);
        min_weight(&self.k, &rows, budget)
    }
}

/// Minimum weight of the nonzero vectors of the span of `rows`, visiting
/// one vector per line. Fails when `|F|^rows` exceeds `budget`.
pub fn min_weight(f: &Field, rows: &[Vec<Elem>], budget: u128) -> Result<Option<usize>> {
    let Some(first) = rows.first() else {
        return Ok(None);
    };
    let needed = (f.size() as u128)
        .checked_pow(rows.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = first.len();
    let mut best = n;
    // the first nonzero coefficient is 1
    for lead in 0..rows.len() {
        let mut stack = vec![rows[lead].clone()];
        walk(f, rows, lead + 1, &mut stack, &mut best);
    }
    Ok(Some(best))
}

fn walk(f: &Field, rows: &[Vec<Elem>], next: usize, stack: &mut Vec<Vec<Elem>>, best: &mut usize) {
    let acc = stack.last().unwrap();
    if next == rows.len() {
        let w = acc.iter().filter(|&&c| c != 0).count();
        *best = (*best).min(w);
        return;
    }
    let acc = acc.clone();
    for c in 0..f.size() {
        let v: Vec<Elem> = acc
            .iter()
            .zip(&rows[next])
            .map(|(&a, &b)| f.add(a, f.mul(c, b)))
            .collect();
        stack.push(v);
        walk(f, rows, next + 1, stack, best);
        stack.pop();
    }
}

#[derive(Clone, Debug)]
enum Source {
    Isotropic(SesquiSpace, HyperbolicBasis),
    Free(Field),
}

#[derive(Clone, Debug)]
enum SlotIter {
    Isotropic(IsotropicIter),
    Free(SubspaceIter),
}

impl Iterator for SlotIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        match self {
            SlotIter::Isotropic(it) => it.next(),
            SlotIter::Free(it) => it.next(),
        }
    }
}

/// Cartesian odometer over the slot iterators, last slot fastest.
#[derive(Clone, Debug)]
pub struct SelfdualIter<'a> {
    space: &'a CodeSpace,
    sources: Vec<Source>,
    iters: Vec<SlotIter>,
    current: Vec<Subspace>,
    done: bool,
}

impl SelfdualIter<'_> {
    fn open(&self, i: usize) -> SlotIter {
        match &self.sources[i] {
            Source::Isotropic(sp, hb) => SlotIter::Isotropic(IsotropicIter::with_basis(sp, hb)),
            Source::Free(f) => SlotIter::Free(SubspaceIter::all(f, self.space.params.r)),
        }
    }

    fn advance(&mut self) -> bool {
        if self.iters.is_empty() {
            for i in 0..self.sources.len() {
                let mut it = self.open(i);
                let Some(v) = it.next() else { return false };
                self.iters.push(it);
                self.current.push(v);
            }
            return true;
        }
        for i in (0..self.iters.len()).rev() {
            if let Some(v) = self.iters[i].next() {
                self.current[i] = v;
                for j in i + 1..self.iters.len() {
                    self.iters[j] = self.open(j);
                    self.current[j] = self.iters[j].next().expect("nonempty slot");
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SelfdualIter<'_> {
    type Item = Result<SkewCode>;

    fn next(&mut self) -> Option<Result<SkewCode>> {
        if self.done {
            return None;
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        let d = &self.space.radical;
        Some(
            d.code_from_subspaces(&self.current)
                .map(|g| self.space.wrap(g)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hashbrown::HashSet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_from_components() {
        let s = CodeSpace::new(&CodeParameters::cyclic(3, 6, 1)).unwrap();
        assert_eq!(s.count_selfdual().unwrap(), BigUint::from(80u32));
        let s = CodeSpace::new(&CodeParameters::cyclic(3, 2, 1)).unwrap();
        assert_eq!(s.count_selfdual().unwrap(), BigUint::from(2u32));
        let s = CodeSpace::new(&CodeParameters::cyclic(5, 6, 1)).unwrap();
        assert!(!s.exists_selfdual());
        assert_eq!(s.count_selfdual().unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn closed_form_matches_witt_tests() {
        for q in [3u64, 5, 7, 9, 11] {
            for r in [2usize, 4, 6] {
                for k in 1..=6usize {
                    let Ok(s) = CodeSpace::new(&CodeParameters::cyclic(q, r, k)) else {
                        continue;
                    };
                    assert_eq!(
                        s.exists_by_components(),
                        exists_closed_form(q, r, k),
                        "q={q} r={r} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_is_complete_small() {
        for (q, r, k) in [(3, 2, 1), (7, 2, 1), (3, 2, 5), (3, 6, 1)] {
            let s = CodeSpace::new(&CodeParameters::cyclic(q, r, k)).unwrap();
            let codes: Vec<SkewCode> = s
                .enumerate_selfdual()
                .unwrap()
                .map(Result::unwrap)
                .collect();
            let set: HashSet<&[Elem]> = codes.iter().map(|c| c.generator()).collect();
            assert_eq!(BigUint::from(set.len()), s.count_selfdual().unwrap());
            assert_eq!(set.len(), codes.len());
            assert!(codes
                .iter()
                .all(|c| s.is_selfdual(c) && s.dual(c).unwrap() == *c));
        }
    }

    #[test]
    fn random_codes_are_selfdual() {
        let s = CodeSpace::new(&CodeParameters::with_central(3, 4, vec![1, 0, 1])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let c = s.random_selfdual(&mut rng).unwrap();
            assert!(s.is_selfdual(&c));
        }
    }

    #[test]
    fn trivial_codes() {
        let s = CodeSpace::new(&CodeParameters::cyclic(3, 2, 1)).unwrap();
        let zero = s.code(&[]).unwrap();
        assert!(s.is_selforthogonal(&zero) && !s.is_selfdual(&zero));
        assert_eq!(s.min_distance(&zero, 10).unwrap(), None);
        let full = s.code(&[1]).unwrap();
        assert_eq!(full.dim(), 2);
        assert_eq!(s.min_distance(&full, 100).unwrap(), Some(1));
        assert!(matches!(
            s.min_distance(&full, 80),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn radical_of_powers() {
        let f = Field::prime(3).unwrap();
        let (r, m) = radical(&f, &cyclic_central(&f, 9)).unwrap();
        assert_eq!((r, m), (cyclic_central(&f, 1), 9));
        assert!(radical(&f, &[1, 2, 1]).is_none());
    }
}
