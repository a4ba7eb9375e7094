//! Splitting of `K[X;θ]/(P(X^r))` along the factors of a separable
//! palindromic `P(Y)`, and the explicit bijection between selfdual codes
//! and families of subspaces.
//!
//! For each monic irreducible factor `P_l` of `P`, `F_l = F[Y]/P_l` and
//! `K_l = K ⊗ F_l`. The component ring `K_l[X;θ]/(X^r - y_l)` acts on
//! `K_l` through `X ↦ x_l θ` with `Norm(x_l) = y_l`.

use alloc::{vec, vec::Vec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::finite_field::{poly, AlgElem, Elem, EtaleAlgebra, Field, FieldMap};
use crate::geometry::{FormKind, SesquiSpace, Subspace};
use crate::linalg::{self, Matrix};
use crate::ore::{self, CentralModulus, GlobalRing, OrePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    /// `τ(l) = l` and `y_l = ±1`: symmetric bilinear form.
    Euclidean,
    /// `τ(l) = l` and `y_l ≠ ±1`: Hermitian form.
    Hermitian,
    /// `τ(l) ≠ l`.
    NonPalindromic,
}

impl core::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            SymmetryClass::Euclidean => "euclidean",
            SymmetryClass::Hermitian => "hermitian",
            SymmetryClass::NonPalindromic => "nonpalindromic",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    /// Monic irreducible factor `P_l(Y)` over `F`.
    pub factor: Vec<Elem>,
    /// `F_l`; equal to `F` when `P_l` is linear.
    pub field: Field,
    /// `K_l = K ⊗ F_l`.
    pub alg: EtaleAlgebra,
    /// Image of `Y` in `F_l`.
    pub y: Elem,
    pub x: AlgElem,
    pub tau: usize,
    /// `F_l → F_τ(l)` induced by `Y ↦ 1/Y`.
    pub sigma: FieldMap,
    pub z: AlgElem,
    pub zeta: AlgElem,
    pub class: SymmetryClass,
    /// `P_l(X^r)`.
    pub modulus: CentralModulus,
    /// The trace form on `K_l`, for self-paired components.
    pub space: Option<SesquiSpace>,
}

impl Component {
    /// `q_l = |F_l|`.
    pub fn q(&self) -> u64 {
        self.field.size()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    f: Field,
    k: Field,
    ring: GlobalRing,
    r: usize,
    central: Vec<Elem>,
    modulus: CentralModulus,
    components: Vec<Component>,
    /// CRT idempotents `e_l(Y)` over `F`.
    idempotents: Vec<Vec<Elem>>,
}

fn is_palindromic(f: &Field, p: &[Elem]) -> bool {
    let p = poly::trim(p.to_vec());
    if p.first().is_none_or(|&c| c == 0) {
        return false;
    }
    let rec = poly::reciprocal(&p);
    poly::monic(f, &rec) == poly::monic(f, &p)
}

/// `Y^k - 1` over `F`.
pub fn cyclic_central(f: &Field, k: usize) -> Vec<Elem> {
    let mut p = vec![0; k + 1];
    p[0] = f.neg(1);
    p[k] = 1;
    p
}

impl Decomposition {
    /// Decomposition of `K[X;θ]/(P(X^r))` for `K` a direct extension of
    /// `F`. The norm preimages `x_l` are drawn from `seed`.
    pub fn new(k: &Field, f: &Field, central: &[Elem], seed: u64) -> Result<Decomposition> {
        if k.base() != Some(f) {
            return Err(invalid("K must be a direct extension of F"));
        }
        let central = poly::monic(f, central);
        if central.len() < 2 {
            return Err(invalid("central modulus must have positive degree"));
        }
        if !poly::is_squarefree(f, &central) {
            return Err(Error::Inseparable);
        }
        if !is_palindromic(f, &central) {
            return Err(Error::NotPalindromic);
        }
        let ring = GlobalRing::new(k, f);
        let r = ring.order();
        let modulus = CentralModulus::new(&ring, &central, r)?;
        let factors = poly::factor_squarefree(f, &central);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        // fields, algebras, y_l, τ
        let mut fields = Vec::new();
        let mut ys = Vec::new();
        for pl in &factors {
            if pl.len() == 2 {
                fields.push(f.clone());
                ys.push(f.neg(pl[0]));
            } else {
                fields.push(Field::extension(f, pl)?);
                ys.push(f.size());
            }
        }
        let taus: Vec<usize> = factors
            .iter()
            .map(|pl| {
                let rec = poly::monic(f, &poly::reciprocal(pl));
                factors
                    .iter()
                    .position(|m| *m == rec)
                    .expect("palindromic modulus")
            })
            .collect();
        let n = factors.len();
        let mut algs = Vec::with_capacity(n);
        let mut sigmas = Vec::with_capacity(n);
        let mut xs = Vec::with_capacity(n);
        for l in 0..n {
            let alg = EtaleAlgebra::new(k, f, &fields[l])?;
            let t = taus[l];
            let y_t_inv = fields[t].inv(ys[t]).unwrap();
            sigmas.push(FieldMap::new(f, &fields[l], &fields[t], y_t_inv));
            xs.push(alg.norm_preimage(ys[l], &mut rng)?);
            algs.push(alg);
        }
        // z_l = x_l σ_τ(x_τ), then ζ_l
        let mut zs = Vec::with_capacity(n);
        for l in 0..n {
            let t = taus[l];
            let sx = algs[l].map_scalars(&xs[t], &sigmas[t]);
            zs.push(algs[l].mul(&xs[l], &sx));
        }
        let mut zetas: Vec<Option<AlgElem>> = vec![None; n];
        for l in 0..n {
            if zetas[l].is_some() {
                continue;
            }
            let t = taus[l];
            let alg = &algs[l];
            let zeta = alg.hilbert90(&zs[l])?;
            if t == l {
                let sig = |a: &AlgElem| alg.map_scalars(a, &sigmas[l]);
                let z1 = alg.add(&zeta, &sig(&zeta));
                let chosen = if !alg.is_zero(&z1) {
                    z1
                } else {
                    let yinv = alg.scalar(fields[l].inv(ys[l]).unwrap());
                    let w = alg.mul(&zeta, &yinv);
                    alg.add(&w, &sig(&w))
                };
                if !alg.is_unit(&chosen) {
                    return Err(Error::NotInvertible);
                }
                zetas[l] = Some(chosen);
            } else {
                zetas[t] = Some(algs[t].map_scalars(&zeta, &sigmas[l]));
                zetas[l] = Some(zeta);
            }
        }
        let mut components = Vec::with_capacity(n);
        for l in 0..n {
            let zeta = zetas[l].take().unwrap();
            let alg = algs[l].clone();
            let fl = fields[l].clone();
            let class = if taus[l] != l {
                SymmetryClass::NonPalindromic
            } else if ys[l] == 1 || ys[l] == fl.neg(1) {
                SymmetryClass::Euclidean
            } else {
                SymmetryClass::Hermitian
            };
            let space = match class {
                SymmetryClass::NonPalindromic => None,
                _ => {
                    let kind = if class == SymmetryClass::Euclidean {
                        FormKind::Euclidean
                    } else {
                        FormKind::Hermitian
                    };
                    let traces: Vec<Elem> = (0..2 * r - 1)
                        .map(|i| alg.trace(&alg.mul(&zeta, &alg.z_pow(i))))
                        .collect();
                    let g: Matrix = (0..r)
                        .map(|i| (0..r).map(|j| traces[i + j]).collect())
                        .collect();
                    Some(SesquiSpace::new(&fl, kind, g)?)
                }
            };
            components.push(Component {
                factor: factors[l].clone(),
                modulus: CentralModulus::new(&ring, &factors[l], r)?,
                field: fl,
                alg,
                y: ys[l],
                x: xs[l].clone(),
                tau: taus[l],
                sigma: sigmas[l].clone(),
                z: zs[l].clone(),
                zeta,
                class,
                space,
            });
        }
        let idempotents = factors
            .iter()
            .map(|pl| {
                let co = poly::divrem(f, &central, pl).0;
                let (_, s, _) = poly::xgcd(f, &co, pl);
                poly::rem(f, &poly::mul(f, &s, &co), &central)
            })
            .collect();
        Ok(Decomposition {
            f: f.clone(),
            k: k.clone(),
            ring,
            r,
            central,
            modulus,
            components,
            idempotents,
        })
    }

    /// `K[X;θ]/(X^(rk) - 1)`.
    pub fn cyclic(k: &Field, f: &Field, kk: usize, seed: u64) -> Result<Decomposition> {
        if kk == 0 {
            return Err(invalid("k must be positive"));
        }
        Decomposition::new(k, f, &cyclic_central(f, kk), seed)
    }

    pub fn base(&self) -> &Field {
        &self.f
    }

    pub fn big(&self) -> &Field {
        &self.k
    }

    pub fn ring(&self) -> &GlobalRing {
        &self.ring
    }

    /// `[K:F]`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn central(&self) -> &[Elem] {
        &self.central
    }

    pub fn modulus(&self) -> &CentralModulus {
        &self.modulus
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Components that carry a free parameter: every self-paired one and
    /// the smaller index of each pair.
    pub fn slots(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&l| self.components[l].tau >= l)
            .collect()
    }

    pub fn sesquilinear_form(&self, l: usize) -> Result<&SesquiSpace> {
        self.components
            .get(l)
            .ok_or_else(|| invalid("no such component"))?
            .space
            .as_ref()
            .ok_or_else(|| invalid("nonpalindromic components carry no form"))
    }

    /// `κ` in `K` as an element of `K_l`.
    fn embed(&self, kappa: Elem) -> AlgElem {
        let mut v = self.k.base_coords(kappa);
        v.resize(self.r, 0);
        v
    }

    /// Image of `f` in `K_l[X;θ]/(X^r - y_l)`, degree below `r`.
    pub fn project(&self, l: usize, f: &[Elem]) -> OrePoly<AlgElem> {
        let c = &self.components[l];
        let alg = &c.alg;
        let reduced = c.modulus.reduce(&self.ring, f);
        let mut out = vec![alg.zero(); self.r];
        for (i, &kappa) in reduced.iter().enumerate() {
            if kappa == 0 {
                continue;
            }
            let (a, b) = (i / self.r, i % self.r);
            let term = alg.scale(c.field.pow(c.y, a as u64), &self.embed(kappa));
            out[b] = alg.add(&out[b], &term);
        }
        ore::trim(alg, out)
    }

    /// Coordinates of `a ∈ K_l` over `K` in the basis `1, y_l, y_l^2, ...`.
    fn k_coords(&self, l: usize, a: &AlgElem) -> Vec<Elem> {
        let c = &self.components[l];
        let dl = c.factor.len() - 1;
        let mut by_j: Vec<Vec<Elem>> = vec![vec![0; self.r]; dl];
        for (i, &ci) in a.iter().enumerate() {
            let coords = if dl == 1 {
                vec![ci]
            } else {
                c.field.base_coords(ci)
            };
            for (j, &cij) in coords.iter().enumerate() {
                by_j[j][i] = cij;
            }
        }
        by_j.iter().map(|kc| self.k.from_base_coords(kc)).collect()
    }

    /// Replaces `y_l` by `X^r`: the inverse of [`Decomposition::project`]
    /// up to multiples of `P_l(X^r)`.
    pub fn lift(&self, l: usize, g: &[AlgElem]) -> OrePoly<Elem> {
        let dl = self.components[l].factor.len() - 1;
        let mut out = vec![0; g.len().max(1) + self.r * dl];
        for (m, coeff) in g.iter().enumerate() {
            for (j, kappa) in self.k_coords(l, coeff).into_iter().enumerate() {
                let pos = m + self.r * j;
                out[pos] = self.k.add(out[pos], kappa);
            }
        }
        ore::trim(&self.ring, out)
    }

    /// `llcm(X - x_l θ(v)/v)` over the basis of `V`; needs `K_l` to be a
    /// field.
    fn llcm_generator(&self, l: usize, v: &Subspace) -> Result<OrePoly<AlgElem>> {
        let c = &self.components[l];
        let alg = &c.alg;
        let factors = v
            .rows()
            .iter()
            .map(|vi| {
                let inv = alg.inv(vi).ok_or(Error::NotInvertible)?;
                let q = alg.mul(&alg.mul(&c.x, &alg.theta(vi, 1)), &inv);
                Ok(vec![alg.neg(&q), alg.one()])
            })
            .collect::<Result<Vec<_>>>()?;
        ore::llcm(alg, &factors)
    }

    /// The monic `f ∈ K[X;θ]` of degree `dim V · deg P_l` whose image at
    /// `l` vanishes exactly on `V`, by linear algebra over `K`.
    fn annihilator(&self, l: usize, v: &Subspace) -> Result<OrePoly<Elem>> {
        let c = &self.components[l];
        let alg = &c.alg;
        let dl = c.factor.len() - 1;
        let big_d = v.dim() * dl;
        // (x θ)^b = N_b θ^b, and X^(ar+b) acts as y^a N_b θ^b
        let mut norms = Vec::with_capacity(self.r);
        let mut acc = alg.one();
        for b in 0..self.r {
            norms.push(acc.clone());
            acc = alg.mul(&acc, &alg.theta(&c.x, b as i64));
        }
        let act = |i: usize, w: &AlgElem| {
            let (a, b) = (i / self.r, i % self.r);
            let t = alg.mul(&norms[b], &alg.theta(w, b as i64));
            alg.scale(c.field.pow(c.y, a as u64), &t)
        };
        let mut m = linalg::zeros(big_d, big_d);
        let mut rhs = vec![0; big_d];
        for (j, vj) in v.rows().iter().enumerate() {
            for i in 0..=big_d {
                let coords = self.k_coords(l, &act(i, vj));
                for (e, &val) in coords.iter().enumerate() {
                    if i == big_d {
                        rhs[j * dl + e] = self.k.neg(val);
                    } else {
                        m[j * dl + e][i] = val;
                    }
                }
            }
        }
        let mut f = linalg::solve(&self.k, &m, &rhs, big_d).ok_or(Error::NotInvertible)?;
        f.push(1);
        Ok(f)
    }

    /// Normalized generator of the component code matching `V` at `l`,
    /// as an element of `K[X;θ]` dividing `P_l(X^r)`.
    pub fn generator_at(&self, l: usize, v: &Subspace) -> Result<OrePoly<Elem>> {
        let c = &self.components[l];
        if c.alg.is_field() {
            let g = self.llcm_generator(l, v)?;
            c.modulus.normalize(&self.ring, &self.lift(l, &g))
        } else {
            self.annihilator(l, v)
        }
    }

    /// Partner generator at `τ(l)` from `f_l f_τ* = P_l(X^r)`.
    fn partner_generator(&self, l: usize, fl: &[Elem]) -> Result<OrePoly<Elem>> {
        let c = &self.components[l];
        let (h, rest) = ore::left_divmod(&self.ring, c.modulus.poly(), fl)?;
        if !rest.is_empty() {
            return Err(Error::NotDivisible);
        }
        // X^D h*, which generates the same left ideal as h*
        let dd = ore::degree(&h).unwrap_or(0);
        let mut rev = vec![0; dd + 1];
        for (i, hi) in h.iter().enumerate() {
            rev[dd - i] = self.k.frob(*hi, self.ring.nf as i64 * (dd - i) as i64);
        }
        let t = c.tau;
        self.components[t].modulus.normalize(&self.ring, &rev)
    }

    /// The generator in `K[X;θ]` with the given component generators.
    fn crt(&self, parts: &[OrePoly<Elem>]) -> Result<OrePoly<Elem>> {
        let mut acc: OrePoly<Elem> = Vec::new();
        for (e, g) in self.idempotents.iter().zip(parts) {
            let mut ex = vec![0; e.len().saturating_sub(1) * self.r + 1];
            for (i, &c) in e.iter().enumerate() {
                ex[i * self.r] = c;
            }
            acc = ore::add(
                &self.ring,
                &acc,
                &ore::mul(&self.ring, &ore::trim(&self.ring, ex), g),
            );
        }
        self.modulus.normalize(&self.ring, &acc)
    }

    /// Normalized generator of the selfdual code for one subspace per
    /// slot: isotropic of dimension `r/2` on self-paired components, any
    /// subspace of `K_l` on the others.
    pub fn code_from_subspaces(&self, family: &[Subspace]) -> Result<OrePoly<Elem>> {
        let slots = self.slots();
        if family.len() != slots.len() {
            return Err(invalid("one subspace per slot is required"));
        }
        let mut parts: Vec<Option<OrePoly<Elem>>> = vec![None; self.components.len()];
        for (&l, v) in slots.iter().zip(family) {
            let c = &self.components[l];
            if v.ambient_dim() != self.r {
                return Err(invalid("subspace has the wrong ambient dimension"));
            }
            if let Some(space) = &c.space {
                if 2 * v.dim() != self.r || !space.is_isotropic(v.rows()) {
                    return Err(invalid("subspace is not maximal isotropic"));
                }
            }
            let fl = self.generator_at(l, v)?;
            if c.tau != l {
                parts[c.tau] = Some(self.partner_generator(l, &fl)?);
            }
            parts[l] = Some(fl);
        }
        let parts: Vec<OrePoly<Elem>> = parts.into_iter().map(Option::unwrap).collect();
        self.crt(&parts)
    }

    /// Generator of the code with arbitrary component subspaces (all
    /// components, no duality constraint).
    pub fn code_from_all_subspaces(&self, family: &[Subspace]) -> Result<OrePoly<Elem>> {
        if family.len() != self.components.len() {
            return Err(invalid("one subspace per component is required"));
        }
        let parts = family
            .iter()
            .enumerate()
            .map(|(l, v)| self.generator_at(l, v))
            .collect::<Result<Vec<_>>>()?;
        self.crt(&parts)
    }

    /// `ker (f mod P_l)(x_l θ)`.
    pub fn kernel_at(&self, l: usize, f: &[Elem]) -> Subspace {
        let c = &self.components[l];
        let g = self.project(l, f);
        let m = ore::eval_semilinear(&c.alg, &g, &c.x);
        let ker = linalg::nullspace(&c.field, &m, self.r);
        Subspace::from_rref(ker, self.r)
    }

    /// The subspaces at every slot; inverse of
    /// [`Decomposition::code_from_subspaces`].
    pub fn subspaces_from_code(&self, f: &[Elem]) -> Vec<Subspace> {
        self.slots()
            .into_iter()
            .map(|l| self.kernel_at(l, f))
            .collect()
    }

    /// The subspaces at every component.
    pub fn all_subspaces_from_code(&self, f: &[Elem]) -> Vec<Subspace> {
        (0..self.components.len())
            .map(|l| self.kernel_at(l, f))
            .collect()
    }

    /// Generator of the dual code.
    pub fn dual_code(&self, f: &[Elem]) -> Result<OrePoly<Elem>> {
        self.modulus.dual(&self.ring, f)
    }

    /// Whether `E f` is selfdual: `f f* = 0` and `deg f` is half the
    /// length.
    pub fn is_selfdual(&self, f: &[Elem]) -> bool {
        ore::degree(f).is_some_and(|d| 2 * d == self.modulus.degree())
            && self.modulus.is_selforthogonal(&self.ring, f)
    }
}
