//! Verification suites: every closed formula against an independent route,
//! the lattice identities on seeded random instances, and the literal
//! values reported for small parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::agreement::{gamma, gamma_enum_oracle, gamma_poly, line_count, line_count_enum, oracle_table};
use crate::distributions::{alpha_from_whitney, beta_from_alpha, whitney_from_alpha, whitney_from_beta};
use crate::exactmath::{binom, gauss, int, pow, UniPolyQ};
use crate::gfq::Field;
use crate::hwdl;
use crate::lattice::{AtomBits, RestrictionGeometry, DEFAULT_LATTICE_CAP};
use crate::polyfit::{self, AsymTarget, PolyTarget};
use crate::subspaces::{AtomSet, Subspace, Vector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    ClosedForms,
    Duality,
    Agreement,
    Asymptotics,
    ValueTables,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Identities,
        Suite::ClosedForms,
        Suite::Duality,
        Suite::Agreement,
        Suite::Asymptotics,
        Suite::ValueTables,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::ClosedForms => "closed-forms",
            Suite::Duality => "duality",
            Suite::Agreement => "agreement",
            Suite::Asymptotics => "asymptotics",
            Suite::ValueTables => "paper-tables",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::param(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Informational: a known discrepancy that is reported, not enforced.
    Note,
    /// Not run because the time budget ran out.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub budget: Option<Duration>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub budget_exhausted: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Note))
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

/// Result of one check body.
enum Outcome {
    Pass,
    Fail(String),
    Note(String),
}

fn eq_or<T: PartialEq + fmt::Debug>(lhs: T, rhs: T) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("lhs = {lhs:?}, rhs = {rhs:?}"))
    }
}

fn all_or(fails: Vec<String>) -> Outcome {
    if fails.is_empty() {
        Outcome::Pass
    } else {
        let shown: Vec<_> = fails.iter().take(5).cloned().collect();
        Outcome::Fail(format!("{} mismatches: {}", fails.len(), shown.join("; ")))
    }
}

struct Runner {
    suite: Suite,
    checks: Vec<Check>,
    deadline: Option<Instant>,
    exhausted: bool,
    rng: ChaCha8Rng,
}

impl Runner {
    fn run(&mut self, name: impl Into<String>, body: impl FnOnce(&mut ChaCha8Rng) -> Result<Outcome>) {
        let name = name.into();
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.exhausted = true;
            self.checks.push(Check { suite: self.suite, name, status: Status::Skipped, detail: None });
            return;
        }
        let (status, detail) = match body(&mut self.rng) {
            Ok(Outcome::Pass) => (Status::Pass, None),
            Ok(Outcome::Fail(d)) => (Status::Fail, Some(d)),
            Ok(Outcome::Note(d)) => (Status::Note, Some(d)),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        self.checks.push(Check { suite: self.suite, name, status, detail });
    }
}

/// Run one suite (or all of them) and collect the outcome of every check.
pub fn run(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let mut runner = Runner {
        suite,
        checks: Vec::new(),
        deadline: opts.budget.map(|b| Instant::now() + b),
        exhausted: false,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
    };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        runner.suite = s;
        runner.rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (s as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        match s {
            Suite::Identities => identities(&mut runner),
            Suite::ClosedForms => closed_forms(&mut runner),
            Suite::Duality => duality(&mut runner),
            Suite::Agreement => agreement(&mut runner),
            Suite::Asymptotics => asymptotics(&mut runner),
            Suite::ValueTables => value_tables(&mut runner),
            Suite::All => unreachable!(),
        }
    }
    VerifyReport { checks: runner.checks, budget_exhausted: runner.exhausted }
}

/// Whitney numbers of `H(q,n,d)` by Möbius inversion on the full lattice.
pub fn brute_whitney(q: u64, n: usize, d: usize) -> Result<Vec<BigInt>> {
    let f = Field::new(q)?;
    Ok(RestrictionGeometry::build(&f, &AtomSet::hwdl(&f, n, d)?)?.whitney())
}

/// `w_0..w_r` of `H(q,n,d)` from the lattice truncated at rank `r`.
pub fn brute_whitney_upto(q: u64, n: usize, d: usize, r: usize) -> Result<Vec<BigInt>> {
    let f = Field::new(q)?;
    let g = RestrictionGeometry::build_with(&f, &AtomSet::hwdl(&f, n, d)?, DEFAULT_LATTICE_CAP, Some(r))?;
    let mut w = g.whitney();
    w.resize(r + 1, BigInt::zero());
    Ok(w)
}

fn random_atoms(f: &Field, n: usize, rng: &mut ChaCha8Rng, min: usize) -> Result<AtomSet> {
    let mut pts = Subspace::full(n).points(f);
    pts.shuffle(rng);
    let k = rng.gen_range(min.min(pts.len())..=pts.len());
    AtomSet::explicit(f, n, &pts[..k])
}

fn random_subset(len: usize, rng: &mut ChaCha8Rng, p: f64) -> AtomBits {
    AtomBits::from_indices(len, (0..len).filter(|_| rng.gen_bool(p)))
}

fn identities(r: &mut Runner) {
    let f = Field::new(2).expect("F_2");
    const N: usize = 4;
    const INSTANCES: usize = 100;

    r.run("nested lattice sums, 100 random instances over F_2^4", |rng| {
        let mut fails = Vec::new();
        for k in 0..INSTANCES {
            let atoms = random_atoms(&f, N, rng, 2)?;
            let g = RestrictionGeometry::build(&f, &atoms)?;
            let na = atoms.len();
            let b = random_subset(na, rng, 0.7);
            let a = b.and(&random_subset(na, rng, 0.6));
            let la: Vec<usize> = g.sub_mobius(&a).into_keys().collect();
            let lb: Vec<usize> = g.sub_mobius(&b).into_keys().collect();
            let x = *la.choose(rng).unwrap();
            let s: Vec<usize> = lb.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let rep = g.check_nested(&a, &b, x, &s)?;
            if !rep.holds {
                fails.push(format!("instance {k}: {:?} vs {:?}", rep.lhs, rep.rhs));
            }
        }
        Ok(all_or(fails))
    });

    r.run("decomposition over atom covers, 100 random instances over F_2^4", |rng| {
        let mut fails = Vec::new();
        for k in 0..INSTANCES {
            let atoms = random_atoms(&f, N, rng, 2)?;
            let g = RestrictionGeometry::build(&f, &atoms)?;
            let na = atoms.len();
            let parts_n = rng.gen_range(2..=3);
            let mut parts: Vec<AtomBits> = (0..parts_n).map(|_| AtomBits::new(na)).collect();
            for i in 0..na {
                parts[rng.gen_range(0..parts_n)].insert(i);
                if rng.gen_bool(0.2) {
                    parts[rng.gen_range(0..parts_n)].insert(i);
                }
            }
            let rep = g.check_decomposition(&parts)?;
            if !rep.holds {
                fails.push(format!("instance {k}"));
            }
        }
        Ok(all_or(fails))
    });

    r.run("two-part decomposition, 100 random instances over F_2^4", |rng| {
        let mut fails = Vec::new();
        for k in 0..INSTANCES {
            let atoms = random_atoms(&f, N, rng, 2)?;
            let g = RestrictionGeometry::build(&f, &atoms)?;
            let na = atoms.len();
            let a = random_subset(na, rng, 0.5);
            let mut b = random_subset(na, rng, 0.3);
            for i in 0..na {
                if !a.contains(i) {
                    b.insert(i);
                }
            }
            let rep = g.check_two_part(&a, &b)?;
            if !rep.holds {
                fails.push(format!("instance {k}"));
            }
        }
        Ok(all_or(fails))
    });

    r.run("modular factorization, 100 random instances over F_2^4", |rng| {
        let mut fails = Vec::new();
        for k in 0..INSTANCES {
            // a subspace all of whose points are atoms is a modular flat
            let dim = rng.gen_range(1..N);
            let t = Subspace::random(&f, N, dim, rng);
            let mut pts: Vec<Vector> = t.points(&f);
            for p in Subspace::full(N).points(&f) {
                if !t.contains_unchecked(&f, &p) && rng.gen_bool(0.5) {
                    pts.push(p);
                }
            }
            let atoms = AtomSet::explicit(&f, N, &pts)?;
            let g = RestrictionGeometry::build(&f, &atoms)?;
            let ti = g.index_of(&t).ok_or(Error::NotInLattice)?;
            let below = g.incidence(ti).clone();
            let mut b = random_subset(atoms.len(), rng, 0.4);
            for i in 0..atoms.len() {
                if !below.contains(i) {
                    b.insert(i);
                }
            }
            let rep = g.check_modular_factor(ti, &b)?;
            if !rep.holds {
                fails.push(format!("instance {k}"));
            }
        }
        Ok(all_or(fails))
    });

    r.run("modular factorization of H(q,n,n-1) through <e_1..e_{n-1}>", |_| {
        let mut fails = Vec::new();
        for (q, n) in [(2u64, 3usize), (2, 4), (3, 3), (3, 4)] {
            let f = Field::new(q)?;
            let atoms = AtomSet::hwdl(&f, n, n - 1)?;
            let g = RestrictionGeometry::build(&f, &atoms)?;
            let t = Subspace::coordinate(n, &(0..n - 1).collect::<Vec<_>>());
            let ti = g.index_of(&t).ok_or(Error::NotInLattice)?;
            let all = AtomBits::from_indices(atoms.len(), 0..atoms.len());
            let rep = g.check_modular_factor(ti, &all)?;
            if !rep.holds {
                fails.push(format!("H({q},{n},{}): {:?} vs {:?}", n - 1, rep.lhs, rep.rhs));
            }
        }
        Ok(all_or(fails))
    });

    r.run("Möbius values from subspace distributions, random instances over F_3^3", |rng| {
        let f3 = Field::new(3)?;
        let mut fails = Vec::new();
        for k in 0..20 {
            let atoms = random_atoms(&f3, 3, rng, 2)?;
            let g = RestrictionGeometry::build(&f3, &atoms)?;
            for x in 0..g.len() {
                let m = crate::lattice::mobius_via_distribution(&f3, g.element(x), &atoms)?;
                if m != g.mobius(x) {
                    fails.push(format!("instance {k}, element {x}"));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("q-binomial product identity, r <= 8, q in {2,3,4,5}", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3, 4, 5] {
            for rr in 0..=8i64 {
                for s in 0..=rr {
                    for t in 0..=s {
                        if gauss(rr, s, q) * gauss(s, t, q) != gauss(rr, t, q) * gauss(rr - t, rr - s, q) {
                            fails.push(format!("({rr},{s},{t},{q})"));
                        }
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("binomial sum identity, d <= 5, 2d <= n <= 25", |_| {
        let mut fails = Vec::new();
        for d in 1..=5 {
            for n in 2 * d..=25 {
                let (l, rr) = hwdl::binom_identity_sides(n, d);
                if l != rr {
                    fails.push(format!("(n={n},d={d}): {l} vs {rr}"));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("two-set upper bound on subspaces meeting two coordinate blocks", |_| {
        let mut fails = Vec::new();
        for (q, n, dd, k) in [(2u64, 4usize, 2usize, 2usize), (2, 5, 2, 2), (3, 4, 2, 2), (2, 5, 3, 2), (2, 5, 2, 3)] {
            let f = Field::new(q)?;
            let s1: Vec<usize> = (0..dd).collect();
            let s2: Vec<usize> = (1..=dd).collect();
            let c = crate::distributions::two_set_meet_count(&f, n, &s1, &s2, k)?;
            let bound = crate::distributions::two_set_upper(q, n, dd, k);
            if c > bound {
                fails.push(format!("({q},{n},{dd},{k}): {c} > {bound}"));
            }
        }
        Ok(all_or(fails))
    });
}

fn whitney_grid() -> Vec<(u64, usize, usize)> {
    let mut v = Vec::new();
    for (q, nmax) in [(2u64, 5usize), (3, 5), (4, 4)] {
        for n in 1..=nmax {
            for d in 1..=n {
                v.push((q, n, d));
            }
        }
    }
    v.push((4, 5, 3));
    v.push((3, 6, 3));
    v
}

fn closed_forms(r: &mut Runner) {
    r.run("closed forms and both transforms agree with lattice Whitney numbers", |_| {
        let mut fails = Vec::new();
        for (q, n, d) in whitney_grid() {
            let brute = if (q, n) == (3, 6) { brute_whitney_upto(q, n, d, 2)? } else { brute_whitney(q, n, d)? };
            for (i, w) in brute.iter().enumerate() {
                if let Some(v) = hwdl::whitney_closed(q, n, d, i)? {
                    if &v != w {
                        fails.push(format!("w_{i}({q},{n},{d}) closed {v} lattice {w}"));
                    }
                }
            }
            if brute.len() == n + 1 {
                let alpha = alpha_from_whitney(&brute, n, q);
                let beta = beta_from_alpha(&alpha, n, q);
                if whitney_from_alpha(&alpha, n, q) != brute || whitney_from_beta(&beta, n, q) != brute {
                    fails.push(format!("transforms disagree on H({q},{n},{d})"));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("characteristic polynomials from closed forms", |_| {
        let mut fails = Vec::new();
        for (q, n, d) in whitney_grid() {
            if (q, n) == (3, 6) {
                continue;
            }
            if let Some(p) = hwdl::charpoly_closed(q, n, d)? {
                let w = brute_whitney(q, n, d)?;
                if p != crate::lattice::charpoly_from_whitney(&w) {
                    fails.push(format!("H({q},{n},{d})"));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("second Whitney number and 2-code census against enumeration", |_| {
        let mut fails = Vec::new();
        let mut grid: Vec<(u64, usize)> = (2..=6).flat_map(|n| [(2u64, n), (3, n)]).collect();
        grid.extend((2..=5).map(|n| (4u64, n)));
        for (q, n) in grid {
            for d in 2..=n {
                let w = brute_whitney_upto(q, n, d, 2)?;
                let g = hwdl::w2_general(q, n, d)?;
                if g != w[2] {
                    fails.push(format!("w_2({q},{n},{d}): formula {g} lattice {}", w[2]));
                }
                let b = hwdl::beta2_closed(q, n, d)?;
                let e = hwdl::beta2_enum(q, n, d)?;
                if b != e {
                    fails.push(format!("beta_2({q},{n},{d}): formula {b} enumeration {e}"));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("reduction formula for w_2(q,n,3) against enumeration", |_| {
        let mut fails = Vec::new();
        for (q, n) in [(2u64, 6usize), (3, 6), (2, 7)] {
            let lower: BTreeMap<usize, BigInt> =
                (2..=5).map(|t| (t, hwdl::whitney_closed(q, t, 3, 2).unwrap().unwrap())).collect();
            let red = hwdl::reduction_formula(q, n, 3, 2, &lower)?;
            let brute = brute_whitney_upto(q, n, 3, 2)?[2].clone();
            if red != brute {
                fails.push(format!("({q},{n}): {red} vs {brute}"));
            }
        }
        Ok(all_or(fails))
    });

    r.run("two forms of w_2(q,n,3), q in {2,3,4,5,7}, 6 <= n <= 12", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3, 4, 5, 7] {
            for n in 6..=12 {
                let a = hwdl::w2_d3_reduction(q, n);
                let b = hwdl::w2_d3_explicit(q, n)?;
                let c = hwdl::w2_general(q, n, 3)?;
                if a != b || a != c {
                    fails.push(format!("({q},{n}): {a} / {b} / {c}"));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("reduction formula collapses to the atom count at i = 1", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3] {
            for n in 1..=7usize {
                for d in 1..=n {
                    let lower: BTreeMap<usize, BigInt> =
                        (1..d).map(|t| (t, hwdl::whitney_exact(q, t, d, 1).unwrap())).collect();
                    let v = hwdl::reduction_formula(q, n, d, 1, &lower)?;
                    if v != -crate::subspaces::hwdl_atom_count(q, n, d) {
                        fails.push(format!("({q},{n},{d})"));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("support-size count against lattice filter", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3] {
            for n in 1..=6usize {
                for d in 1..=3usize.min(n) {
                    for i in 1..=2 {
                        if n < i * d || (q == 3 && n == 6 && d < 3) {
                            continue;
                        }
                        let (c, mob) = hwdl::support_id_count_enum(q, n, d, i)?;
                        let v = hwdl::support_id_count(q, n, d, i)?;
                        if c != v || !mob {
                            fails.push(format!("({q},{n},{d},{i}): {v} vs {c}, mobius ok {mob}"));
                        }
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("two-subspace geometries", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3] {
            for r1 in 0..=3usize {
                for r2 in 0..=3usize {
                    for rm in 0..=r1.min(r2) {
                        let n = r1 + r2 - rm;
                        if n == 0 || n > 4 || (q == 3 && n > 4) {
                            continue;
                        }
                        let w = hwdl::whitney_two_spaces_enum(q, n, r1, r2, rm)?;
                        for i in 0..=n {
                            let v = hwdl::whitney_two_spaces(q, n, r1, r2, rm, i)?;
                            let want = w.get(i).cloned().unwrap_or_default();
                            if v != want {
                                fails.push(format!("q={q} ranks ({r1},{r2},{rm}) i={i}: {v} vs {want}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("odd-weight binary geometry, n <= 5", |_| {
        let f = Field::new(2)?;
        let mut fails = Vec::new();
        for n in 1..=5 {
            let g = RestrictionGeometry::build(&f, &AtomSet::odd_weight(&f, n)?)?;
            let w = g.whitney();
            let c: Vec<BigInt> = (0..=n).map(|i| hwdl::odd_weight_whitney(n, i)).collect();
            if w != c {
                fails.push(format!("n={n}: {w:?} vs {c:?}"));
            }
        }
        Ok(all_or(fails))
    });

    r.run("critical exponents of H(q,n,d) by both definitions", |_| {
        let mut fails = Vec::new();
        for (q, n, d) in [(2u64, 3usize, 2usize), (2, 4, 2), (2, 5, 3), (3, 4, 2), (3, 5, 3), (2, 5, 2)] {
            let f = Field::new(q)?;
            if let Err(e) = RestrictionGeometry::build(&f, &AtomSet::hwdl(&f, n, d)?)?.critical_exponent() {
                fails.push(format!("H({q},{n},{d}): {e}"));
            }
        }
        Ok(all_or(fails))
    });

    r.run("w_3(2,n,3) in expanded form versus the reduction formula, 9 <= n <= 14", |_| {
        let mut diffs = Vec::new();
        for n in 9..=14 {
            let red = hwdl::w3_q2_d3_reduction(n)?;
            let shown = -hwdl::w3_q2_d3_stated(n);
            if red != shown {
                diffs.push(format!("n={n}: reduction {red}, expanded form {shown}"));
            }
        }
        Ok(if diffs.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Note(format!(
                "expanded form uses C(n,8) where the reduction has C(n,7) for t=7; {}",
                diffs.join("; ")
            ))
        })
    });
}

fn duality(r: &mut Runner) {
    r.run("duality between H(q,n,d) and H(q,n,n-d), q in {2,3}, 1 <= d < n <= 5", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3] {
            for n in 2..=5usize {
                let ws: Vec<Vec<BigInt>> =
                    (0..=n).map(|d| if d == 0 { Vec::new() } else { brute_whitney(q, n, d).unwrap() }).collect();
                for d in 1..n {
                    let (l, rr) = hwdl::duality_sides(q, n, d, &ws[d], &ws[n - d]);
                    if l != rr {
                        fails.push(format!("({q},{n},{d}): {l} vs {rr}"));
                    }
                    let (l2, r2) = hwdl::duality_residual(q, n, d)?;
                    if l2 != l || r2 != rr {
                        fails.push(format!("({q},{n},{d}): closed-form inputs disagree"));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("duality through closed forms, q in {4,5,7}, n <= 7", |_| {
        let mut fails = Vec::new();
        for q in [4u64, 5, 7] {
            for n in 2..=7usize {
                for d in 1..n {
                    let covered = |dd: usize, imax: usize| {
                        (0..=imax).all(|i| hwdl::whitney_closed(q, n, dd, i).ok().flatten().is_some())
                    };
                    if !covered(d, n - d) || !covered(n - d, d) {
                        continue;
                    }
                    let (l, rr) = hwdl::duality_residual(q, n, d)?;
                    if l != rr {
                        fails.push(format!("({q},{n},{d}): {l} vs {rr}"));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });
}

fn agreement(r: &mut Runner) {
    r.run("agreement recursion equals array enumeration, a <= 5, b <= 7", |_| {
        let mut fails = Vec::new();
        for a in 1..=5u64 {
            for b in 1..=7i64 {
                let table = oracle_table(a, b as usize)?;
                for c in 0..=b {
                    for nu in 0..=b {
                        let o: u64 = table
                            .iter()
                            .filter(|(&(w, m), _)| w == nu as usize && m >= c as usize)
                            .map(|(_, &k)| k)
                            .sum();
                        let g = gamma(a, b, c, nu)?;
                        if g != BigInt::from(o) {
                            fails.push(format!("({a},{b},{c},{nu}): {g} vs {o}"));
                        }
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("agreement polynomials evaluate to the recursion, a <= 20, b <= 6", |_| {
        let mut fails = Vec::new();
        for b in 1..=6i64 {
            for c in 0..=b {
                for nu in 0..=b {
                    let p = gamma_poly(b, c, nu)?;
                    for a in 1..=20u64 {
                        if p.eval_int(&BigInt::from(a)) != int(gamma(a, b, c, nu)?) {
                            fails.push(format!("({a},{b},{c},{nu})"));
                        }
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("agreement polynomials equal interpolation of the recursion, b <= 7", |_| {
        let mut fails = Vec::new();
        for b in 1..=7i64 {
            for c in 0..=b {
                for nu in 0..=b {
                    let chk = polyfit::check_polynomiality(PolyTarget::Gamma { b, c, nu })?;
                    if !chk.passed() {
                        fails.push(format!("({b},{c},{nu})"));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("agreement oracle spot values", |_| {
        let vals = [gamma_enum_oracle(3, 2, 1, 1)?, gamma_enum_oracle(2, 2, 1, 1)?, gamma(3, 2, 1, 1)?];
        Ok(eq_or(vals.to_vec(), vec![BigInt::from(4), BigInt::from(2), BigInt::from(4)]))
    });

    r.run("line counts against vector enumeration", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3, 4] {
            let f = Field::new(q)?;
            for n in 1..=5usize {
                if q == 4 && n > 4 {
                    continue;
                }
                let w: Vec<u32> = (0..n).map(|i| 1 + (i as u32 % (q as u32 - 1))).collect();
                for d in 1..=n {
                    for nu in 0..=n {
                        let a = line_count(q, n, d, nu, &w)?;
                        let b = line_count_enum(&f, n, d, nu, &w)?;
                        if a != b {
                            fails.push(format!("({q},{n},{d},{nu}): {a} vs {b}"));
                        }
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("degree of agreement polynomials versus nu", |_| {
        let mut odd = Vec::new();
        for b in 1..=7i64 {
            for c in 1..=b {
                for nu in c..=b {
                    let p = gamma_poly(b, c, nu)?;
                    if p.degree() != Some(nu as usize) {
                        odd.push(format!("({b},{c},{nu}) has degree {:?}", p.degree()));
                    }
                }
            }
        }
        Ok(if odd.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Note(format!("{} polynomials with degree != nu, e.g. {}", odd.len(), odd[0]))
        })
    });
}

fn asymptotics(r: &mut Runner) {
    r.run("beta_2 fitted degree and leading coefficient, n <= 5, 2 <= d <= n-2", |_| {
        let mut fails = Vec::new();
        for n in 4..=5 {
            for d in 2..=n - 2 {
                let rep = polyfit::check_asymptotics(AsymTarget::Beta { k: 2, n, d })?;
                if !rep.passed {
                    fails.push(format!("(n={n},d={d}): {:?} vs {:?}", rep.observed, rep.predicted));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("beta_k growth on n <= 5, d <= 3, k <= n-d", |_| {
        let mut fails = Vec::new();
        for n in 3..=5 {
            for d in 2..=3.min(n - 1) {
                for k in 1..=n - d {
                    let rep = polyfit::check_asymptotics(AsymTarget::Beta { k, n, d })?;
                    if !rep.passed {
                        fails.push(format!("(k={k},n={n},d={d})"));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("density of non-MDS codes, k = 2, n = 5", |_| {
        let rep = polyfit::check_asymptotics(AsymTarget::Delta { k: 2, n: 5 })?;
        Ok(if rep.passed { Outcome::Pass } else { Outcome::Fail(format!("{:?}", rep.ratios)) })
    });

    r.run("exact growth of |w_i| for d in {1,2,n-1,n}, n <= 5", |_| {
        let mut fails = Vec::new();
        for n in 1..=5usize {
            for i in 1..=n {
                let mut ds = vec![1, 2, n];
                if n >= 3 {
                    ds.push(n - 1);
                }
                ds.sort_unstable();
                ds.dedup();
                for d in ds {
                    if polyfit::whitney_growth(i, n, d).is_none() {
                        continue;
                    }
                    let rep = polyfit::check_asymptotics(AsymTarget::Whitney { i, n, d })?;
                    if !rep.passed {
                        fails.push(format!("(i={i},n={n},d={d}): {:?} vs {:?}", rep.observed, rep.predicted));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("sharp growth of w_2(q,n,n-2), n in {4,5,6}", |_| {
        let mut fails = Vec::new();
        for n in 4..=6 {
            let rep = polyfit::check_asymptotics(AsymTarget::CoRank2Sharp { n })?;
            if !rep.passed {
                fails.push(format!("n={n}: {:?}", rep.ratios));
            }
        }
        Ok(all_or(fails))
    });

    r.run("leading coefficient of w_2(q,n,3), 6 <= n <= 12", |_| {
        let mut fails = Vec::new();
        for n in 6..=12 {
            let rep = polyfit::check_asymptotics(AsymTarget::W2D3 { n })?;
            if !rep.passed {
                fails.push(format!("n={n}: {:?} vs {:?}", rep.observed, rep.predicted));
            }
        }
        Ok(all_or(fails))
    });

    r.run("stated q^4 coefficient of w_2(q,n,3)", |_| {
        let bad: Vec<usize> =
            (6..=12).filter(|&n| polyfit::w2_d3_lead(n) != polyfit::w2_d3_lead_stated(n)).collect();
        Ok(if bad.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Note(format!(
                "stated coefficient differs from the expanded form for n in {bad:?}; the expanded one vanishes at n = 0,1,2,3"
            ))
        })
    });

    r.run("O-bounds on |w_i| at large q", |_| {
        let mut fails = Vec::new();
        for (i, n, d) in [(2, 4, 2), (2, 5, 3), (3, 5, 2), (2, 6, 4), (3, 6, 2)] {
            let rep = polyfit::check_asymptotics(AsymTarget::UpperBound { i, n, d })?;
            if !rep.passed {
                fails.push(format!("(i={i},n={n},d={d}): {:?}", rep.ratios));
            }
        }
        for n in 6..=9 {
            let rep = polyfit::check_asymptotics(AsymTarget::LargeN { i: 2, n, d: 3 })?;
            if !rep.passed {
                fails.push(format!("large n={n}: {:?}", rep.ratios));
            }
        }
        Ok(all_or(fails))
    });

    r.run("polynomiality of beta_2 and w_2 on held-out prime powers", |_| {
        let mut fails = Vec::new();
        for n in 2..=5 {
            for d in 2..=n {
                for t in [PolyTarget::Beta2 { n, d }, PolyTarget::W2 { n, d }] {
                    if !polyfit::check_polynomiality(t)?.passed() {
                        fails.push(format!("{t:?}"));
                    }
                }
            }
        }
        Ok(all_or(fails))
    });
}

fn value_tables(r: &mut Runner) {
    let table: [((u64, usize, usize), UniPolyQ); 3] = [
        ((2, 5, 3), UniPolyQ::from_roots(&[1, 2, 4, 8, 10])),
        ((3, 5, 3), UniPolyQ::from_roots(&[1, 3, 9, 25, 27])),
        ((4, 5, 3), &UniPolyQ::from_roots(&[1, 4, 16]) * &UniPolyQ::from_ints([2722, -104, 1])),
    ];
    for ((q, n, d), want) in table {
        r.run(format!("characteristic polynomial of H({q},{n},{d})"), |_| {
            let w = brute_whitney(q, n, d)?;
            Ok(eq_or(crate::lattice::charpoly_from_whitney(&w), want))
        });
    }

    r.run("H(3,6,3) deflated by x - 3^i, i = 0..3", |_| {
        let w = hwdl::whitney_sequence(3, 6, 3)?;
        let roots: Vec<_> = (0..4).map(|i| int(pow(3, i))).collect();
        let quot = crate::lattice::charpoly_from_whitney(&w).deflate_roots(&roots)?;
        Ok(eq_or(quot, UniPolyQ::from_ints([1515, -76, 1])))
    });

    r.run("odd-weight geometry of F_2^3", |_| {
        let f = Field::new(2)?;
        let g = RestrictionGeometry::build(&f, &AtomSet::odd_weight(&f, 3)?)?;
        Ok(eq_or(g.charpoly()?, UniPolyQ::from_ints([-3, 6, -4, 1])))
    });

    r.run("w_2(q,t,3) for t = 2..5, q in {2,3,4}", |_| {
        let mut fails = Vec::new();
        for q in [2u64, 3, 4] {
            for t in 2..=5 {
                let w = brute_whitney_upto(q, t, 3, 2)?;
                let v = hwdl::w2_d3_small(q, t).unwrap();
                if w[2] != v {
                    fails.push(format!("({q},{t}): lattice {} table {v}", w[2]));
                }
            }
        }
        Ok(all_or(fails))
    });

    r.run("w_3(2,t,3) for t = 3..8", |_| {
        let mut fails = Vec::new();
        for &(t, v) in &hwdl::W3_Q2_D3 {
            let got = if t <= 7 {
                brute_whitney_upto(2, t, 3, 3)?[3].clone()
            } else {
                let alpha = (0..=3).map(|k| hwdl::alpha_enum_cached(2, t, 3, k)).collect::<Result<Vec<_>>>()?;
                whitney_from_alpha(&alpha, t, 2)[3].clone()
            };
            if got != BigInt::from(-v) {
                fails.push(format!("t={t}: {got} vs {}", -v));
            }
        }
        Ok(all_or(fails))
    });

    r.run("w_2(2,5,3) and w_3(2,5,3) from closed forms", |_| {
        Ok(eq_or(
            (hwdl::whitney_exact(2, 5, 3, 2)?, hwdl::whitney_exact(2, 5, 3, 3)?),
            (BigInt::from(220), BigInt::from(-820)),
        ))
    });

    r.run("alpha and beta of H(2,5,3)", |_| {
        let w = brute_whitney(2, 5, 3)?;
        let alpha = alpha_from_whitney(&w, 5, 2);
        let beta = beta_from_alpha(&alpha, 5, 2);
        Ok(eq_or(
            (alpha[1].clone(), alpha[2].clone(), beta[2].clone(), binom(5, 3)),
            (BigInt::from(6), BigInt::zero(), BigInt::from(155), BigInt::from(10)),
        ))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn zero_budget_skips() {
        let rep = run(Suite::Agreement, &VerifyOptions { seed: 1, budget: Some(Duration::ZERO) });
        assert!(rep.budget_exhausted);
        assert!(rep.checks.iter().all(|c| c.status == Status::Skipped));
        assert!(!rep.passed());
    }

    #[test]
    fn identities_are_seed_deterministic() {
        let a = run(Suite::Identities, &VerifyOptions { seed: 7, budget: None });
        let b = run(Suite::Identities, &VerifyOptions { seed: 7, budget: None });
        assert!(a.passed(), "{:?}", a.checks.iter().filter(|c| c.status == Status::Fail).collect::<Vec<_>>());
        let names = |r: &VerifyReport| r.checks.iter().map(|c| (c.name.clone(), c.status)).collect::<Vec<_>>();
        assert_eq!(names(&a), names(&b));
    }
}
