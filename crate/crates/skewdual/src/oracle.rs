//! Brute force at tiny sizes: every subspace is listed and tested
//! directly, without the decomposition.

use alloc::{vec, vec::Vec};
use num_traits::ToPrimitive;

use crate::codes::{Central, CodeParameters, CodeSpace};
use crate::error::{invalid, Error, Result};
use crate::finite_field::{Elem, Field};
use crate::geometry::{count_subspaces, q_binomial, Odometer, SesquiSpace, Subspace, SubspaceIter};
use crate::linalg;
use crate::ore::SkewRing;

/// Default cap on the number of subspaces scanned.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub params: CodeParameters,
    /// Subspaces of `K^n` scanned.
    pub scanned: u64,
    /// `X`-stable subspaces.
    pub ideals: Vec<Subspace>,
    pub selforthogonal: Vec<Subspace>,
    pub selfdual: Vec<Subspace>,
}

/// `X · (a_0, ..., a_(n-1))` for `X^n = 1`: twisted cyclic shift.
fn shift(ring: &impl SkewRing<E = Elem>, v: &[Elem]) -> Vec<Elem> {
    let n = v.len();
    (0..n).map(|i| ring.theta(&v[(i + n - 1) % n], 1)).collect()
}

fn orthogonal_rows(k: &Field, rows: &[Vec<Elem>]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, a)| rows[i..].iter().all(|b| linalg::dot(k, a, b) == 0))
}

/// Every left ideal of `K[X;θ]/(X^(rk) - 1)` found as an `X`-stable
/// subspace of `K^(rk)`, with selfduality for `Σ a_i b_i`.
pub fn brute_codes(params: &CodeParameters, budget: u64) -> Result<OracleReport> {
    if !matches!(params.central, Central::Cyclic(_)) {
        return Err(invalid("the oracle handles Y^k - 1 only"));
    }
    let space = CodeSpace::new(params)?;
    let (k, ring) = (space.field(), space.ring());
    let n = space.length();
    let total = count_subspaces(n as u32, k.size());
    let scanned = total
        .to_u64()
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded {
            needed: total.to_u128().unwrap_or(u128::MAX),
            budget: budget as u128,
        })?;
    let mut report = OracleReport {
        params: params.clone(),
        scanned,
        ideals: Vec::new(),
        selforthogonal: Vec::new(),
        selfdual: Vec::new(),
    };
    for sub in SubspaceIter::all(k, n) {
        if !sub
            .rows()
            .iter()
            .all(|row| sub.contains(k, &shift(ring, row)))
        {
            continue;
        }
        if orthogonal_rows(k, sub.rows()) {
            if 2 * sub.dim() == n {
                report.selfdual.push(sub.clone());
            }
            report.selforthogonal.push(sub.clone());
        }
        report.ideals.push(sub);
    }
    Ok(report)
}

/// Minimum weight of the nonzero vectors spanned by `rows`, visiting all
/// of `K^dim`.
pub fn brute_min_weight(k: &Field, rows: &[Vec<Elem>]) -> Option<usize> {
    let n = rows.first()?.len();
    let mut odo = Odometer::new(k.size(), rows.len());
    let mut best: Option<usize> = None;
    while let Some(coeffs) = odo.next_digits() {
        let mut v = vec![0; n];
        for (c, row) in coeffs.iter().zip(rows) {
            for (x, &y) in v.iter_mut().zip(row) {
                *x = k.add(*x, k.mul(*c, y));
            }
        }
        let w = v.iter().filter(|&&x| x != 0).count();
        if w > 0 {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best
}

/// Count and list of the totally isotropic subspaces of half dimension,
/// by scanning all of them.
pub fn brute_isotropic(space: &SesquiSpace, budget: u64) -> Result<(u64, Vec<Subspace>)> {
    let n = space.dim();
    if n % 2 != 0 {
        return Err(invalid("odd dimension"));
    }
    let total = q_binomial(n as u32, (n / 2) as u32, space.field().size())?;
    if total.to_u64().is_none_or(|t| t > budget) {
        return Err(Error::BudgetExceeded {
            needed: total.to_u128().unwrap_or(u128::MAX),
            budget: budget as u128,
        });
    }
    let found: Vec<Subspace> = SubspaceIter::new(space.field(), n, n / 2..=n / 2)
        .filter(|v| space.is_isotropic(v.rows()))
        .collect();
    Ok((found.len() as u64, found))
}
