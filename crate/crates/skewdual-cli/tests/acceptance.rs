//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails. Time limits are pinned below.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use skewdual::codes::{exists_closed_form, CodeParameters, CodeSpace, InseparableContext};
use skewdual::geometry::{
    count_isotropic, exact_sqrt, q_binomial, q_binomial_identity, random_subspace, FormKind,
    IsotropicIter, SesquiSpace, Subspace,
};
use skewdual::ore::{self, OrePoly};
use skewdual::{linalg, oracle, Elem, Field};

const SMALL_COUNT_LIMIT: Duration = Duration::from_secs(1);
const ENUMERATION_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const SEGRE_LIMIT: Duration = Duration::from_secs(300);
const CHI_SQUARE_LIMIT: Duration = Duration::from_secs(300);
const FLAGSHIP_LIMIT: Duration = Duration::from_secs(2 * 3600);
const SINGLE_CODE_LIMIT: Duration = Duration::from_secs(2);

const CHI_SQUARE_ALPHA: f64 = 1e-3;
const CHI_SQUARE_DRAWS: usize = 80_000;
/// Subspaces the brute-force isotropic scan may visit per cell.
const BRUTE_BUDGET: u64 = 3_000_000;
/// Random instances per parameter set for the property checks.
const PROPERTY_CASES: usize = 100;
/// Largest allowed ratio of the s = 4 median to the s = 2 median.
const MAX_MEDIAN_GROWTH: f64 = 64.0;
/// Draws per cell when timing single-code generation.
const TIMING_DRAWS: usize = 5;

const FLAGSHIP_DEDUP: usize = 2_360_960;
const FLAGSHIP_RAW_BOUND: u64 = 80 * 1120 * 80;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: usize, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!(
            "{} [{id:>2}] {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

// Reference existence table for s = 2, 3, 4. Rows: Y^j - 1 for odd j ≤ 9, then
// Y^j + 1 for j = 1..9. Columns: q = 3, 5, 7, 9. "-" marks no codes,
// "i" an inseparable modulus, a number a reference time in ms.
const EXISTENCE_TABLE: [[&str; 14]; 3] = [
    [
        "- - - -",
        "i - - i",
        "- i - -",
        "- - i -",
        "i - - i",
        "9 9 16 21",
        "16 6 15 15",
        "i 26 22 i",
        "18 21 35 48",
        "62 i 111 128",
        "i 47 59 i",
        "80 300 i 250",
        "463 87 113 108",
        "i 218 125 i",
    ],
    [
        "21 - 207 -",
        "i - 42 i",
        "101 i 129 -",
        "195 - i -",
        "i - 342 i",
        "- 21 - 56",
        "152 12 36 32",
        "i 57 - i",
        "38 47 74 141",
        "- i - 317",
        "i 101 139 i",
        "- 398 i 601",
        "209 270 270 280",
        "i 450 - i",
    ],
    [
        "- - - -",
        "i - - i",
        "- i - -",
        "- - i -",
        "i - - i",
        "59 49 58 177",
        "78 29 89 69",
        "i 128 90 i",
        "88 108 174 412",
        "220 i 336 723",
        "i 200 388 i",
        "286 387 i 1367",
        "406 551 586 2159",
        "i 691 784 i",
    ],
];

const QS: [u64; 4] = [3, 5, 7, 9];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Cell {
    NoCodes,
    Inseparable,
    Timed(u32),
}

struct TableCell {
    s: usize,
    q: u64,
    /// `(j, +1 or -1)` for `Y^j ± 1`.
    j: usize,
    plus: bool,
    cell: Cell,
}

impl TableCell {
    fn params(&self) -> CodeParameters {
        if self.plus {
            let mut m = vec![0; self.j + 1];
            m[0] = 1;
            m[self.j] = 1;
            CodeParameters::with_central(self.q, 2 * self.s, m)
        } else {
            CodeParameters::cyclic(self.q, 2 * self.s, self.j)
        }
    }

    fn label(&self) -> String {
        format!(
            "s={} q={} Y^{}{}1",
            self.s,
            self.q,
            self.j,
            if self.plus { '+' } else { '-' }
        )
    }
}

fn table_cells() -> Vec<TableCell> {
    let mut out = Vec::new();
    for (i, table) in EXISTENCE_TABLE.iter().enumerate() {
        for (row, text) in table.iter().enumerate() {
            let (j, plus) = if row < 5 {
                (2 * row + 1, false)
            } else {
                (row - 4, true)
            };
            for (col, tok) in text.split_whitespace().enumerate() {
                let cell = match tok {
                    "-" => Cell::NoCodes,
                    "i" => Cell::Inseparable,
                    t => Cell::Timed(t.parse().unwrap()),
                };
                out.push(TableCell {
                    s: i + 2,
                    q: QS[col],
                    j,
                    plus,
                    cell,
                });
            }
        }
    }
    out
}

fn criterion_1(rep: &mut Report) {
    let t = Instant::now();
    let count = CodeSpace::new(&CodeParameters::cyclic(3, 6, 1)).and_then(|s| s.count_selfdual());
    let qb = q_binomial(6, 3, 3);
    let dt = t.elapsed();
    let ok = count.as_ref().ok() == Some(&big(80))
        && qb.as_ref().ok() == Some(&big(33880))
        && dt < SMALL_COUNT_LIMIT;
    rep.line(
        1,
        "count q=3 r=6 k=1",
        ok,
        format!(
            "{count:?} selfdual among {qb:?} half-dimensional, {}",
            ms(dt)
        ),
    );
}

fn criterion_2(rep: &mut Report) {
    let t = Instant::now();
    let count = CodeSpace::new(&CodeParameters::cyclic(3, 18, 1)).and_then(|s| s.count_selfdual());
    let dt = t.elapsed();
    let want: BigUint = "469740602936729600".parse().unwrap();
    let ok = count.as_ref().ok() == Some(&want) && dt < SMALL_COUNT_LIMIT;
    rep.line(
        2,
        "count q=3 r=18 k=1",
        ok,
        format!("{count:?}, {}", ms(dt)),
    );
}

fn criterion_3(rep: &mut Report) {
    let (mut checked, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    for c in table_cells() {
        let p = skewdual::arith::prime_power(c.q).unwrap().0 as usize;
        let separable = c.j % p != 0;
        if separable == (c.cell == Cell::Inseparable) {
            bad.push(format!("{} separability", c.label()));
            continue;
        }
        if !separable {
            skipped += 1;
            continue;
        }
        let got = match CodeSpace::new(&c.params()) {
            Ok(space) => space.exists_selfdual(),
            Err(e) => {
                bad.push(format!("{}: {e}", c.label()));
                continue;
            }
        };
        let want = matches!(c.cell, Cell::Timed(_));
        if !c.plus && got != exists_closed_form(c.q, 2 * c.s, c.j) {
            bad.push(format!("{} closed form", c.label()));
        }
        if got != want {
            bad.push(c.label());
        }
        checked += 1;
    }
    rep.line(
        3,
        "existence table",
        bad.is_empty(),
        format!(
            "{checked} separable cells checked, {skipped} inseparable skipped, mismatches {bad:?}"
        ),
    );
}

fn criterion_4(rep: &mut Report) {
    let t = Instant::now();
    let space = CodeSpace::new(&CodeParameters::cyclic(3, 6, 1)).unwrap();
    let codes: Vec<_> = space
        .enumerate_selfdual()
        .unwrap()
        .collect::<Result<_, _>>()
        .unwrap();
    let dt = t.elapsed();
    let distinct: HashSet<&[Elem]> = codes.iter().map(|c| c.generator()).collect();
    let all_ok = codes.iter().all(|c| {
        space.is_selforthogonal(c)
            && c.generator().len() == 4
            && *c.generator().last().unwrap() == 1
    });
    let ok = codes.len() == 80 && distinct.len() == 80 && all_ok && dt < ENUMERATION_LIMIT;
    rep.line(
        4,
        "enumeration q=3 r=6 k=1",
        ok,
        format!(
            "{} codes, {} distinct, monic degree 3 and f f* = 0: {all_ok}, {}",
            codes.len(),
            distinct.len(),
            ms(dt)
        ),
    );
}

fn spans(space: &CodeSpace) -> Vec<Subspace> {
    let mut v: Vec<Subspace> = space
        .enumerate_selfdual()
        .unwrap()
        .map(|c| {
            Subspace::span(
                space.field(),
                &space.generator_matrix(&c.unwrap()),
                space.length(),
            )
        })
        .collect();
    v.sort_by(|a, b| a.rows().cmp(b.rows()));
    v
}

fn criterion_5(rep: &mut Report) {
    let t = Instant::now();
    let mut detail = Vec::new();
    let mut ok = true;
    for (q, expect_empty) in [(3, false), (7, false), (5, true)] {
        let params = CodeParameters::cyclic(q, 2, 1);
        let space = CodeSpace::new(&params).unwrap();
        let ours = spans(&space);
        let mut theirs = oracle::brute_codes(&params, oracle::DEFAULT_BUDGET)
            .unwrap()
            .selfdual;
        theirs.sort_by(|a, b| a.rows().cmp(b.rows()));
        ok &= ours == theirs && ours.is_empty() == expect_empty;
        detail.push(format!("q={q}: {} vs {}", ours.len(), theirs.len()));
    }
    let dt = t.elapsed();
    ok &= dt < ORACLE_LIMIT;
    rep.line(
        5,
        "oracle equivalence r=2 k=1",
        ok,
        format!("{}, {}", detail.join("; "), ms(dt)),
    );
}

fn criterion_6(rep: &mut Report) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let (mut cells, mut brute_cells) = (0, 0);
    let kinds = [
        FormKind::Euclidean,
        FormKind::Hermitian,
        FormKind::Symplectic,
        FormKind::SkewHermitian,
    ];
    for kind in kinds {
        for q in QS {
            if kind.uses_involution() && exact_sqrt(q).is_none() {
                continue;
            }
            let (p, e) = skewdual::arith::prime_power(q).unwrap();
            let field = Field::make_extension(p, e).unwrap();
            for s in 1..=3u32 {
                let formula = count_isotropic(kind, s, q).unwrap();
                let space = SesquiSpace::hyperbolic(&field, kind, s as usize).unwrap();
                let listed = IsotropicIter::new(&space).unwrap().count();
                cells += 1;
                if big(listed as u64) != formula {
                    bad.push(format!(
                        "{kind} q={q} s={s}: formula {formula}, enumerator {listed}"
                    ));
                }
                match oracle::brute_isotropic(&space, BRUTE_BUDGET) {
                    Ok((n, _)) => {
                        brute_cells += 1;
                        if big(n) != formula {
                            bad.push(format!("{kind} q={q} s={s}: brute {n}"));
                        }
                    }
                    Err(skewdual::Error::BudgetExceeded { .. }) => {}
                    Err(e) => bad.push(format!("{kind} q={q} s={s}: {e}")),
                }
            }
        }
    }
    let dt = t.elapsed();
    rep.line(
        6,
        "Segre counts",
        bad.is_empty() && dt < SEGRE_LIMIT,
        format!(
            "{cells} cells, {brute_cells} brute-forced, mismatches {bad:?}, {}",
            ms(dt)
        ),
    );
}

fn criterion_7(rep: &mut Report) {
    let mut n = 0;
    let mut bad = Vec::new();
    for q in QS {
        let mut ts = vec![1];
        ts.extend(exact_sqrt(q));
        for t in ts {
            for s in 0..=12 {
                let (l, r) = q_binomial_identity(s, q, t);
                n += 1;
                if l != r {
                    bad.push((q, t, s));
                }
            }
        }
    }
    rep.line(
        7,
        "q-binomial identities",
        bad.is_empty(),
        format!("{n} identities, failures {bad:?}"),
    );
}

fn criterion_8(rep: &mut Report) {
    let t = Instant::now();
    let space = CodeSpace::new(&CodeParameters::cyclic(3, 6, 1)).unwrap();
    let index: HashMap<Vec<Elem>, usize> = space
        .enumerate_selfdual()
        .unwrap()
        .enumerate()
        .map(|(i, c)| (c.unwrap().generator().to_vec(), i))
        .collect();
    let mut hits = vec![0u64; index.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut stray = 0;
    for _ in 0..CHI_SQUARE_DRAWS {
        let c = space.random_selfdual(&mut rng).unwrap();
        match index.get(c.generator()) {
            Some(&i) => hits[i] += 1,
            None => stray += 1,
        }
    }
    let expected = CHI_SQUARE_DRAWS as f64 / hits.len() as f64;
    let stat: f64 = hits
        .iter()
        .map(|&h| (h as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((hits.len() - 1) as f64).unwrap();
    let p_value = 1.0 - dist.cdf(stat);
    let dt = t.elapsed();
    let ok = stray == 0 && hits.len() == 80 && p_value > CHI_SQUARE_ALPHA && dt < CHI_SQUARE_LIMIT;
    rep.line(
        8,
        "uniform sampling",
        ok,
        format!(
            "chi2 = {stat:.2} on {} dof, p = {p_value:.4}, alpha = {CHI_SQUARE_ALPHA}, {}",
            hits.len() - 1,
            ms(dt)
        ),
    );
}

fn random_poly(s: &CodeSpace, rng: &mut ChaCha8Rng) -> OrePoly<Elem> {
    let k = s.field();
    let deg = rng.gen_range(0..s.length() + 3);
    ore::trim(s.ring(), (0..=deg).map(|_| k.random(rng)).collect())
}

fn coords(s: &CodeSpace, f: &[Elem]) -> Vec<Elem> {
    let mut v = s.modulus().reduce(s.ring(), f);
    v.resize(s.length(), 0);
    v
}

/// Runs every property on one parameter set and returns the failures.
fn properties(s: &CodeSpace, seed: u64) -> Vec<&'static str> {
    let (ring, m) = (s.ring(), s.modulus());
    let d = s.decomposition().unwrap();
    let k = s.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cyclic = s.central().iter().skip(1).rev().skip(1).all(|&c| c == 0);
    let mut bad = Vec::new();
    for _ in 0..PROPERTY_CASES {
        let (f, g, h) = (
            random_poly(s, &mut rng),
            random_poly(s, &mut rng),
            random_poly(s, &mut rng),
        );
        if m.star(ring, &m.mul(ring, &f, &g)) != m.mul(ring, &m.star(ring, &g), &m.star(ring, &f))
            || m.star(ring, &m.star(ring, &f)) != m.reduce(ring, &f)
        {
            bad.push("antimorphism");
        }
        if m.pairing(ring, &f, &m.mul(ring, &g, &h))
            != m.pairing(ring, &m.mul(ring, &f, &m.star(ring, &h)), &g)
        {
            bad.push("adjunction");
        }
        let fam: Vec<Subspace> = d
            .components()
            .iter()
            .map(|c| random_subspace(&c.field, d.r(), &mut rng).unwrap())
            .collect();
        let gen = d.code_from_all_subspaces(&fam).unwrap();
        if d.all_subspaces_from_code(&gen) != fam {
            bad.push("round trip");
        }
        let c = s.code(&gen).unwrap();
        let dual = s.dual(&c).unwrap();
        if s.dual(&dual).unwrap() != c || c.dim() + dual.dim() != s.length() {
            bad.push("dual involution");
        }
        if cyclic {
            let prod = m.mul(ring, &f, &m.star(ring, &g));
            if linalg::dot(k, &coords(s, &f), &coords(s, &g)) != prod.first().copied().unwrap_or(0)
            {
                bad.push("orthogonality transport");
            }
            let rows = s.generator_matrix(&c);
            let coordinatewise = rows
                .iter()
                .all(|a| rows.iter().all(|b| linalg::dot(k, a, b) == 0));
            if coordinatewise != s.is_selforthogonal(&c) {
                bad.push("orthogonality transport");
            }
        }
    }
    bad.dedup();
    bad
}

fn criterion_9(rep: &mut Report) {
    let sets = [
        CodeParameters::cyclic(3, 2, 1),
        CodeParameters::cyclic(3, 2, 5),
        CodeParameters::cyclic(3, 6, 1),
        CodeParameters::cyclic(7, 2, 3),
        CodeParameters::cyclic(5, 2, 4),
        CodeParameters::with_central(3, 4, vec![1, 0, 1]),
        CodeParameters::with_central(9, 2, vec![1, 1]),
    ];
    let mut bad = Vec::new();
    for (i, p) in sets.iter().enumerate() {
        let s = CodeSpace::new(p).unwrap();
        for e in properties(&s, i as u64) {
            bad.push(format!("set {i}: {e}"));
        }
    }
    rep.line(
        9,
        "algebraic properties",
        bad.is_empty(),
        format!(
            "{} sets x {PROPERTY_CASES} instances, failures {bad:?}",
            sets.len()
        ),
    );
}

fn criterion_10(rep: &mut Report) {
    let t = Instant::now();
    let ctx = InseparableContext::new(&CodeParameters::cyclic(3, 6, 3)).unwrap();
    let mut it = ctx.enumerate_dedup();
    let (mut yielded, mut not_selfdual) = (0usize, Vec::new());
    for code in it.by_ref() {
        yielded += 1;
        if !ctx.space().is_selfdual(&code) && not_selfdual.len() < 3 {
            not_selfdual.push(code.generator().to_vec());
        }
    }
    let raw = it.inner().raw_count();
    let err = it.inner().error().cloned();
    let dt = t.elapsed();
    let ok = yielded == FLAGSHIP_DEDUP
        && raw <= FLAGSHIP_RAW_BOUND
        && not_selfdual.is_empty()
        && err.is_none()
        && dt < FLAGSHIP_LIMIT;
    let mut detail = format!(
        "{yielded} distinct of {raw} raw (bound {FLAGSHIP_RAW_BOUND}), {:.1} s",
        dt.as_secs_f64()
    );
    if yielded != FLAGSHIP_DEDUP {
        detail += &format!(", expected {FLAGSHIP_DEDUP}");
    }
    if !not_selfdual.is_empty() {
        detail += &format!(", not selfdual: {not_selfdual:?}");
    }
    if let Some(e) = err {
        detail += &format!(", error: {e}");
    }
    rep.line(10, "inseparable q=3 r=6 k=3", ok, detail);
}

fn criterion_11(rep: &mut Report) {
    let mut medians: HashMap<usize, Vec<Duration>> = HashMap::new();
    let mut slow = Vec::new();
    let mut worst = Duration::ZERO;
    let mut cells = 0;
    for c in table_cells() {
        let Cell::Timed(_) = c.cell else { continue };
        let space = match CodeSpace::new(&c.params()) {
            Ok(s) => s,
            Err(e) => {
                slow.push(format!("{}: {e}", c.label()));
                continue;
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(c.j as u64 * 31 + c.q);
        let mut times = Vec::new();
        for _ in 0..TIMING_DRAWS {
            let t = Instant::now();
            let code = space.random_selfdual(&mut rng);
            let dt = t.elapsed();
            if code.is_err() {
                slow.push(format!("{}: {:?}", c.label(), code.err()));
                break;
            }
            worst = worst.max(dt);
            if dt >= SINGLE_CODE_LIMIT {
                slow.push(format!("{} took {}", c.label(), ms(dt)));
            }
            times.push(dt);
        }
        times.sort();
        if let Some(&m) = times.get(times.len() / 2) {
            medians.entry(c.s).or_default().push(m);
        }
        cells += 1;
    }
    let median_of = |s: usize| {
        let mut v = medians.get(&s).cloned().unwrap_or_default();
        v.sort();
        v.get(v.len() / 2).copied().unwrap_or_default()
    };
    let (m2, m3, m4) = (median_of(2), median_of(3), median_of(4));
    let growth = m4.as_secs_f64() / m2.as_secs_f64().max(1e-9);
    let ok = slow.is_empty() && growth <= MAX_MEDIAN_GROWTH;
    rep.line(
        11,
        "single-code generation",
        ok,
        format!(
            "{cells} cells, worst {}, median s=2 {} s=3 {} s=4 {}, growth {growth:.1} (max {MAX_MEDIAN_GROWTH}), issues {slow:?}",
            ms(worst),
            ms(m2),
            ms(m3),
            ms(m4)
        ),
    );
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0 };
    criterion_1(&mut rep);
    criterion_2(&mut rep);
    criterion_3(&mut rep);
    criterion_4(&mut rep);
    criterion_5(&mut rep);
    criterion_6(&mut rep);
    criterion_7(&mut rep);
    criterion_8(&mut rep);
    criterion_9(&mut rep);
    criterion_10(&mut rep);
    criterion_11(&mut rep);
    println!("acceptance: {} of 11 criteria passed", 11 - rep.failed);
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
