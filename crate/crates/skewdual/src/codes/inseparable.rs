//! Purely inseparable moduli `(Y - 1)^(p^m)`: selfdual generators are
//! products `f_(p^m - 1) ... f_1 f_0` of degree-`s` factors, each selfdual
//! for a form twisted by the constant term of the product to its right.
//!
//! With `X` acting on `K` as `θ`, `E_1 = K[X;θ]/(X^r - 1)` is `End_F(K)`
//! and `f*` is the adjoint of `f` for `Tr(ab)`. A monic `g` of degree `s`
//! with `g ξX^t g* ≡ 0` corresponds to `V = ker g(θ)` isotropic for
//! `(a, b) ↦ Tr(a θ^t(ξ^-1 b))`: symmetric for `t = 0`, alternating for
//! `t = s` when `θ^s(ξ) = -ξ`.

use alloc::{sync::Arc, vec, vec::Vec};
use hashbrown::{HashMap, HashSet};

use super::{Central, CodeParameters, CodeSpace, SkewCode};
use crate::error::{invalid, Error, Result};
use crate::finite_field::{Elem, Field};
use crate::geometry::{FormKind, IsotropicIter, SesquiSpace};
use crate::linalg::Matrix;
use crate::ore::{self, CentralModulus, GlobalRing, OrePoly, SkewRing};

/// The twist `ξ X^t`, `t ∈ {0, s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistSpec {
    pub xi: Elem,
    pub t: usize,
}

/// Data shared by the twisted enumerations of one modulus.
#[derive(Clone, Debug)]
pub struct InseparableContext {
    space: CodeSpace,
    s: usize,
    levels: usize,
    /// `X^r - 1`.
    unit: CentralModulus,
    /// Selfdual generators of `E_1`.
    base: Vec<OrePoly<Elem>>,
}

impl InseparableContext {
    /// Needs `P = (Y - 1)^(p^m)` with `m ≥ 1` and `r` even.
    pub fn new(params: &CodeParameters) -> Result<InseparableContext> {
        let space = CodeSpace::new(params)?;
        let f = space.base_field();
        if space.is_separable() || space.radical_decomposition().central() != [f.neg(1), 1] {
            return Err(invalid("the modulus must be (Y - 1)^(p^m) with m >= 1"));
        }
        let r = params.r;
        if r % 2 != 0 {
            return Err(invalid("r must be even"));
        }
        let unit_params = CodeParameters {
            central: Central::Cyclic(1),
            ..params.clone()
        };
        let unit_space = CodeSpace::new(&unit_params)?;
        let base = unit_space
            .enumerate_selfdual()?
            .map(|c| c.map(|c| c.generator))
            .collect::<Result<Vec<_>>>()?;
        let unit = CentralModulus::cyclic(space.ring(), r);
        Ok(InseparableContext {
            s: r / 2,
            levels: space.multiplicity(),
            space,
            unit,
            base,
        })
    }

    pub fn space(&self) -> &CodeSpace {
        &self.space
    }

    pub fn half(&self) -> usize {
        self.s
    }

    /// `p^m`, the number of factors.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Selfdual generators of `K[X;θ]/(X^r - 1)`.
    pub fn untwisted(&self) -> &[OrePoly<Elem>] {
        &self.base
    }

    fn ring(&self) -> &GlobalRing {
        self.space.ring()
    }

    fn k(&self) -> &Field {
        self.space.field()
    }

    fn check(&self, twist: &TwistSpec) -> Result<()> {
        let k = self.k();
        if twist.xi == 0 || twist.xi >= k.size() {
            return Err(invalid("twist must be a nonzero element of K"));
        }
        if twist.t == self.s {
            if self.ring().theta(&twist.xi, self.s as i64) != k.neg(twist.xi) {
                return Err(invalid("a twist with t = s needs θ^s(ξ) = -ξ"));
            }
        } else if twist.t != 0 {
            return Err(invalid("t must be 0 or s"));
        }
        Ok(())
    }

    /// `g ξX^t g* ≡ 0 mod X^r - 1`.
    pub fn is_twisted_selforthogonal(&self, g: &[Elem], twist: &TwistSpec) -> bool {
        let ring = self.ring();
        let tw = ore::monomial(ring, twist.xi, twist.t);
        let rhs = ore::mul(ring, &tw, &self.unit.star(ring, g));
        self.unit.mul(ring, g, &rhs).is_empty()
    }

    /// The form `(a, b) ↦ Tr(a θ^t(ξ^-1 b))` on `K` over `F`.
    pub fn twisted_form(&self, twist: &TwistSpec) -> Result<SesquiSpace> {
        self.check(twist)?;
        let (k, ring) = (self.k(), self.ring());
        let r = 2 * self.s;
        let basis: Vec<Elem> = (0..r).map(|i| unit_vector(k, i, r)).collect();
        let xi_inv = k.inv(twist.xi).unwrap();
        let gram: Matrix = basis
            .iter()
            .map(|&a| {
                basis
                    .iter()
                    .map(|&b| ring.trace(k.mul(a, ring.theta(&k.mul(xi_inv, b), twist.t as i64))))
                    .collect()
            })
            .collect();
        let kind = if twist.t == 0 {
            FormKind::Euclidean
        } else {
            FormKind::Symplectic
        };
        SesquiSpace::new(self.space.base_field(), kind, gram)
    }

    /// Every monic `g` of degree `s` with `g ξX^t g* ≡ 0`. Square `ξ` with
    /// `t = 0` transport the untwisted codes by `g = θ^s(γ) f γ^-1`,
    /// `γ^2 = ξ`; the others go through the isotropic subspaces of the
    /// twisted form.
    pub fn twisted_enumerate(&self, twist: &TwistSpec) -> Result<TwistedIter<'_>> {
        self.check(twist)?;
        let k = self.k();
        if twist.t == 0 {
            if let Some(gamma) = k.sqrt(twist.xi) {
                let left = self.ring().theta(&gamma, self.s as i64);
                let right = k.inv(gamma).unwrap();
                return Ok(TwistedIter {
                    ctx: self,
                    inner: Inner::Transport {
                        pos: 0,
                        left,
                        right,
                    },
                });
            }
        }
        let space = self.twisted_form(twist)?;
        if !space.witt_index_is_maximal()? {
            return Ok(TwistedIter {
                ctx: self,
                inner: Inner::Empty,
            });
        }
        Ok(TwistedIter {
            ctx: self,
            inner: Inner::Geometric(IsotropicIter::new(&space)?),
        })
    }

    /// `ξ` scaled by `F^×` so that its first nonzero coordinate is 1.
    pub fn canonical_twist(&self, xi: Elem) -> Elem {
        let k = self.k();
        let f = self.space.base_field();
        let lead = k.base_coords(xi).into_iter().find(|&c| c != 0).unwrap_or(1);
        k.mul(f.inv(lead).unwrap(), xi)
    }

    /// Raw products, duplicates included.
    pub fn enumerate(&self) -> InseparableIter<'_> {
        let first = self.twisted_list(TwistSpec { xi: 1, t: 0 }, &mut HashMap::new());
        let mut it = InseparableIter {
            ctx: self,
            stack: Vec::new(),
            cache: HashMap::new(),
            raw: 0,
            error: None,
        };
        match first {
            Ok(list) => it.stack.push(Level {
                list,
                pos: 0,
                prefix: vec![1],
                c: 1,
            }),
            Err(e) => it.error = Some(e),
        }
        it
    }

    /// Distinct generators only.
    pub fn enumerate_dedup(&self) -> Dedup<InseparableIter<'_>> {
        Dedup::new(self.enumerate())
    }

    fn twisted_list(
        &self,
        twist: TwistSpec,
        cache: &mut HashMap<TwistSpec, Arc<Vec<OrePoly<Elem>>>>,
    ) -> Result<Arc<Vec<OrePoly<Elem>>>> {
        let key = TwistSpec {
            xi: self.canonical_twist(twist.xi),
            t: twist.t,
        };
        if let Some(l) = cache.get(&key) {
            return Ok(l.clone());
        }
        let list = Arc::new(self.twisted_enumerate(&key)?.collect::<Result<Vec<_>>>()?);
        cache.insert(key, list.clone());
        Ok(list)
    }
}

fn unit_vector(k: &Field, i: usize, r: usize) -> Elem {
    let mut v = vec![0; r];
    v[i] = 1;
    k.from_base_coords(&v)
}

#[derive(Clone, Debug)]
enum Inner {
    Transport { pos: usize, left: Elem, right: Elem },
    Geometric(IsotropicIter),
    Empty,
}

/// Iterator over the twisted selfdual generators of `E_1`.
#[derive(Clone, Debug)]
pub struct TwistedIter<'a> {
    ctx: &'a InseparableContext,
    inner: Inner,
}

impl Iterator for TwistedIter<'_> {
    type Item = Result<OrePoly<Elem>>;

    fn next(&mut self) -> Option<Result<OrePoly<Elem>>> {
        let ring = self.ctx.ring();
        let k = self.ctx.k();
        match &mut self.inner {
            Inner::Empty => None,
            Inner::Transport { pos, left, right } => {
                let f = self.ctx.base.get(*pos)?;
                *pos += 1;
                Some(Ok(ore::scale_right(
                    ring,
                    &ore::scale_left(ring, left, f),
                    right,
                )))
            }
            Inner::Geometric(it) => {
                let v = it.next()?;
                let factors = v
                    .rows()
                    .iter()
                    .map(|row| {
                        let e = k.from_base_coords(row);
                        let q = k.mul(ring.theta(&e, 1), k.inv(e).ok_or(Error::NotInvertible)?);
                        Ok(vec![k.neg(q), 1])
                    })
                    .collect::<Result<Vec<_>>>();
                Some(factors.and_then(|fs| ore::llcm(ring, &fs)))
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Level {
    list: Arc<Vec<OrePoly<Elem>>>,
    pos: usize,
    /// Product of the factors chosen below this level.
    prefix: OrePoly<Elem>,
    /// Twist scalar of this level.
    c: Elem,
}

/// Depth-first walk over the factor choices; the twist of each level is
/// `-g_0 c` from the factor `g` and twist `c` of the level below.
#[derive(Clone, Debug)]
pub struct InseparableIter<'a> {
    ctx: &'a InseparableContext,
    stack: Vec<Level>,
    cache: HashMap<TwistSpec, Arc<Vec<OrePoly<Elem>>>>,
    raw: u64,
    error: Option<Error>,
}

impl InseparableIter<'_> {
    /// Products yielded so far.
    pub fn raw_count(&self) -> u64 {
        self.raw
    }

    /// The error that stopped the walk, if any.
    pub fn error(&self) -> Option<&Error> {
        self.error.as_ref()
    }
}

impl Iterator for InseparableIter<'_> {
    type Item = SkewCode;

    fn next(&mut self) -> Option<SkewCode> {
        let ctx = self.ctx;
        let (ring, k) = (ctx.ring(), ctx.k());
        loop {
            let depth = self.stack.len();
            let lvl = self.stack.last_mut()?;
            let Some(g) = lvl.list.get(lvl.pos) else {
                self.stack.pop();
                continue;
            };
            lvl.pos += 1;
            let f = ore::mul(ring, g, &lvl.prefix);
            if depth == ctx.levels {
                self.raw += 1;
                return Some(ctx.space.wrap(f));
            }
            let c = k.mul(k.neg(g[0]), lvl.c);
            let t = if depth % 2 == 1 { ctx.s } else { 0 };
            match ctx.twisted_list(TwistSpec { xi: c, t }, &mut self.cache) {
                Ok(list) => self.stack.push(Level {
                    list,
                    pos: 0,
                    prefix: f,
                    c,
                }),
                Err(e) => {
                    self.error = Some(e);
                    self.stack.clear();
                    return None;
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Packed(u128),
    Plain(Vec<Elem>),
}

fn key(g: &[Elem], size: u64) -> Key {
    let bits = 64 - (size - 1).leading_zeros();
    if bits as usize * g.len() <= 128 {
        Key::Packed(g.iter().fold(0u128, |acc, &c| (acc << bits) | c as u128))
    } else {
        Key::Plain(g.to_vec())
    }
}

/// Drops repeated generators, remembering every one seen.
#[derive(Clone, Debug)]
pub struct Dedup<I> {
    inner: I,
    seen: HashSet<Key>,
}

impl<I> Dedup<I> {
    pub fn new(inner: I) -> Dedup<I> {
        Dedup {
            inner,
            seen: HashSet::new(),
        }
    }

    pub fn inner(&self) -> &I {
        &self.inner
    }

    pub fn distinct(&self) -> usize {
        self.seen.len()
    }
}

impl<I: Iterator<Item = SkewCode>> Iterator for Dedup<I> {
    type Item = SkewCode;

    fn next(&mut self) -> Option<SkewCode> {
        loop {
            let code = self.inner.next()?;
            let g = code.generator();
            // monic: the leading 1 carries no information
            let size = code.params().q.pow(code.params().r as u32);
            if self.seen.insert(key(&g[..g.len() - 1], size)) {
                return Some(code);
            }
        }
    }
}
