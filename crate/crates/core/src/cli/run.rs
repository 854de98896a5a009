//! The grid of cells behind each suite and the execution of one cell.
//!
//! Cell `i` draws its points from the ChaCha stream `(seed, i)`, so a
//! report does not depend on how rayon schedules the cells.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Rational;

use crate::combinatorics::{compositions, phi_map, pole_set_membership, PoleSet, PoleShift};
use crate::error::{Error, Result};
use crate::identities::duality::sym_trig_side;
use crate::identities::{
    asymptotic_deviation, kernel_eval, limit_relation_check, plane_point, quasiperiodicity, riemann_sides, side_eval,
    sym_trig_summand, trig_rewrite_holds, wk_eval, IdentityId, KernelParams, OddFunctionKind, Point, Side, Value,
};
use crate::numerics::{agreement_check, relative_deviation, Field};
use crate::residues::{
    lemma1_check, lemma2_check, lemma2_prefactor, lemma2_residue, lemma2_target, wk_residue_relation,
};
use crate::sampling::{
    cell_rng, random_elliptic_point, random_kernel_point, random_rational_point, random_scalar, random_sqrt_point,
    with_resampling,
};

use super::config::{RunConfig, Suite, Target};

/// Everything a run can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Identity(IdentityId),
    /// Per-summand agreement of the ordinary and symmetric trigonometric forms.
    Rewrite,
    Involution,
    Plane,
    Asymptotic,
    Quasiperiodicity,
    Riemann,
    Lemma1,
    Lemma2,
    Induction,
    LimitRelation,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Identity(id) => id.name(),
            Check::Rewrite => "trig_rewrite",
            Check::Involution => "involution",
            Check::Plane => "plane_vanishing",
            Check::Asymptotic => "asymptotic_zone",
            Check::Quasiperiodicity => "quasiperiodicity",
            Check::Riemann => "riemann_relation",
            Check::Lemma1 => "lemma1",
            Check::Lemma2 => "lemma2",
            Check::Induction => "induction_relation",
            Check::LimitRelation => "limit_relation",
        }
    }

    pub fn uses_subsets(self) -> bool {
        matches!(
            self,
            Check::Identity(IdentityId::KernelI1 | IdentityId::RuijMacI6 | IdentityId::RatKernelA2)
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn suite_checks(suite: Suite) -> Vec<Check> {
    use IdentityId::*;
    let main = vec![
        Check::Identity(RationalI2),
        Check::Identity(TrigI5),
        Check::Identity(SymTrigP4),
        Check::Rewrite,
        Check::Involution,
        Check::Plane,
    ];
    let elliptic = vec![Check::Identity(EllipticA6), Check::Quasiperiodicity];
    let lemmas = vec![Check::Lemma1, Check::Lemma2, Check::Induction];
    let kernels = vec![
        Check::Identity(KernelI1),
        Check::Identity(RuijMacI6),
        Check::Identity(RatKernelA2),
        Check::Riemann,
    ];
    let limits = vec![Check::Identity(RatLimitA1), Check::LimitRelation, Check::Asymptotic];
    match suite {
        Suite::Main => main,
        Suite::Elliptic => elliptic,
        Suite::Lemmas => lemmas,
        Suite::Kernels => kernels,
        Suite::Limits => limits,
        Suite::All => [main, elliptic, lemmas, kernels, limits].concat(),
    }
}

/// Extra parameter distinguishing cells with the same `(n, K)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    None,
    Nome(Rational),
    Shift(i64),
    Odd(OddFunctionKind),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::None => Ok(()),
            Param::Nome(p) => write!(f, "nome={p}"),
            Param::Shift(p) => write!(f, "p={p}"),
            Param::Odd(s) => write!(f, "s={}", s.name()),
        }
    }
}

/// One unit of work: a check at one `(n, K or r, param)` and one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub check: Check,
    pub n: usize,
    /// `K` for composition sums, `r` for subset sums; unused by some checks.
    pub degree: u32,
    pub param: Param,
    pub trial: usize,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = if self.check.uses_subsets() { "r" } else { "K" };
        write!(f, "{} n={} {label}={}", self.check, self.n, self.degree)?;
        if self.param != Param::None {
            write!(f, " {}", self.param)?;
        }
        write!(f, " trial={}", self.trial)
    }
}

fn decimal(text: &str) -> Rational {
    crate::numerics::parse_exact(text).expect("built-in constant")
}

/// Default `(n range, degree range, trials)` per check.
fn default_grid(check: Check) -> (Vec<usize>, Vec<u32>, usize) {
    use IdentityId::*;
    match check {
        Check::Identity(RationalI2 | TrigI5 | SymTrigP4 | RatLimitA1) | Check::Rewrite => {
            ((1..=3).collect(), (0..=4).collect(), 5)
        }
        Check::Identity(EllipticA6) => (vec![2], (1..=3).collect(), 1),
        Check::Identity(KernelI1 | RuijMacI6 | RatKernelA2) => ((2..=4).collect(), (0..=4).collect(), 1),
        Check::Involution => ((1..=3).collect(), (0..=4).collect(), 1),
        Check::Plane => ((1..=3).collect(), (1..=4).collect(), 1),
        Check::Asymptotic => (vec![2], vec![2], 1),
        Check::Quasiperiodicity => (vec![2], (1..=2).collect(), 1),
        Check::Riemann => (vec![1], vec![0], 10),
        Check::Lemma1 => ((2..=3).collect(), (0..=4).collect(), 1),
        Check::Lemma2 | Check::Induction => ((2..=3).collect(), (1..=4).collect(), 1),
        Check::LimitRelation => ((2..=3).collect(), vec![2], 5),
    }
}

fn min_n(check: Check) -> usize {
    match check {
        Check::Lemma1 | Check::Lemma2 | Check::Induction => 2,
        _ => 1,
    }
}

/// The cells of a run, in report order.
pub fn build_cells(config: &RunConfig) -> Vec<Cell> {
    let checks = match config.target {
        Target::Suite(suite) => suite_checks(suite),
        Target::Identity(id) => vec![Check::Identity(id)],
    };
    let mut cells = Vec::new();
    for check in checks {
        let (mut ns, mut degrees, mut trials) = default_grid(check);
        let fixed_shape = matches!(check, Check::Riemann | Check::Asymptotic);
        if !fixed_shape {
            if let Some(n) = &config.n {
                ns = n.clone();
            }
            if check.uses_subsets() {
                if let Some(r) = &config.r {
                    degrees = r.iter().map(|&r| r as u32).collect();
                }
            } else if check != Check::LimitRelation {
                if let Some(k) = &config.k {
                    degrees = k.clone();
                }
            }
        }
        if let Some(t) = config.trials {
            trials = t;
        }
        let params: Vec<Param> = match check {
            Check::Identity(IdentityId::EllipticA6) => config
                .nomes
                .clone()
                .unwrap_or_else(|| vec![decimal("0.1"), decimal("0.3")])
                .into_iter()
                .map(Param::Nome)
                .collect(),
            Check::Quasiperiodicity => config
                .nomes
                .clone()
                .unwrap_or_else(|| vec![decimal("0.2")])
                .into_iter()
                .map(Param::Nome)
                .collect(),
            Check::Identity(IdentityId::KernelI1 | IdentityId::RuijMacI6) | Check::Riemann => {
                OddFunctionKind::ALL.into_iter().map(Param::Odd).collect()
            }
            _ => vec![Param::None],
        };
        for &n in ns.iter().filter(|&&n| n >= min_n(check)) {
            for &degree in &degrees {
                if check.uses_subsets() && degree as usize > n {
                    continue;
                }
                let shifts: Vec<Param> = match check {
                    Check::Lemma1 => (-2..=2).map(Param::Shift).collect(),
                    Check::Lemma2 | Check::Induction => (1..=i64::from(degree)).map(Param::Shift).collect(),
                    _ => params.clone(),
                };
                for param in shifts {
                    for trial in 0..trials {
                        cells.push(Cell {
                            check,
                            n,
                            degree,
                            param: param.clone(),
                            trial,
                        });
                    }
                }
            }
        }
    }
    cells
}

/// What a cell produced, before digesting.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub point: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub equal: bool,
    pub max_deviation: Option<f64>,
    pub resamples: usize,
    pub detail: Option<String>,
    pub elapsed_ms: f64,
}

impl Outcome {
    fn exact(point: String, lhs: impl ToString, rhs: impl ToString, equal: bool, resamples: usize) -> Self {
        Outcome {
            point,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            equal,
            max_deviation: None,
            resamples,
            detail: None,
            elapsed_ms: 0.0,
        }
    }
}

fn join(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Runs one cell with its own random stream.
pub fn run_cell(cell: &Cell, config: &RunConfig, index: u64) -> Result<Outcome> {
    let started = Instant::now();
    let mut rng = cell_rng(config.seed, index);
    let mut outcome = evaluate(cell, config, &mut rng)?;
    outcome.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(outcome)
}

fn evaluate(cell: &Cell, config: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = cell.n;
    let total = cell.degree;
    match cell.check {
        Check::Identity(
            id @ (IdentityId::RationalI2 | IdentityId::RatLimitA1 | IdentityId::TrigI5 | IdentityId::SymTrigP4),
        ) => {
            let (diff, resamples) = with_resampling(rng, |rng| {
                let point = match id {
                    IdentityId::RationalI2 | IdentityId::RatLimitA1 => Point::Rational(random_rational_point(rng, n)?),
                    _ => Point::Sqrt(random_sqrt_point(rng, n)?),
                };
                wk_eval(id, n, total, &point)
            })?;
            Ok(Outcome::exact(
                diff.point,
                &diff.lhs,
                &diff.rhs,
                diff.value.is_zero(),
                resamples,
            ))
        }
        Check::Identity(IdentityId::EllipticA6) => elliptic(cell, config, rng),
        Check::Identity(id) => {
            let Param::Odd(s) = cell.param else {
                // The rational kernel identity always uses s(z) = z.
                return kernel(id, OddFunctionKind::Linear, n, total as usize, rng);
            };
            kernel(id, s, n, total as usize, rng)
        }
        Check::Rewrite => {
            let ((ok, lhs, rhs, point), resamples) = with_resampling(rng, |rng| {
                let pt = random_sqrt_point(rng, n)?;
                let mut ok = true;
                for k in compositions(n, total)? {
                    for side in [Side::Lhs, Side::Rhs] {
                        ok &= trig_rewrite_holds(side, &k, &pt)?;
                    }
                }
                let p4 = side_eval(IdentityId::SymTrigP4, Side::Lhs, n, total, &Point::Sqrt(pt.clone()))?;
                let i5 = side_eval(IdentityId::TrigI5, Side::Lhs, n, total, &Point::Sqrt(pt.clone()))?;
                let scale = pt.t().powi(-i64::from(total)).expect("t is nonzero");
                let scaled = Field::mul(i5.as_exact().expect("exact"), &scale);
                Ok((ok, p4.to_string(), scaled.to_string(), pt.to_string()))
            })?;
            Ok(Outcome::exact(point, lhs, rhs, ok, resamples))
        }
        Check::Involution => {
            let ((ok, lhs, rhs, point), resamples) = with_resampling(rng, |rng| {
                let pt = random_sqrt_point(rng, n)?;
                let image = pt.involution();
                let (mut ok, mut lhs, mut rhs) = (true, Rational::new(), Rational::new());
                for k in compositions(n, total)? {
                    let a = sym_trig_summand(Side::Rhs, &k, &pt)?;
                    let b = sym_trig_summand(Side::Lhs, &k, &image)?;
                    ok &= a == b;
                    lhs += a;
                    rhs += b;
                }
                Ok((ok, lhs, rhs, pt.to_string()))
            })?;
            Ok(Outcome::exact(point, lhs, rhs, ok, resamples))
        }
        Check::Plane => {
            let ((lhs, rhs, point), resamples) = with_resampling(rng, |rng| {
                let pt = plane_point(&random_sqrt_point(rng, n)?);
                Ok((
                    sym_trig_side(Side::Lhs, total, &pt)?,
                    sym_trig_side(Side::Rhs, total, &pt)?,
                    pt.to_string(),
                ))
            })?;
            let ok = lhs == 0 && rhs == 0;
            Ok(Outcome::exact(point, lhs, rhs, ok, resamples))
        }
        Check::Asymptotic => {
            let (q, t) = (Rational::from(2), Rational::from((1, 3)));
            let bits = config.precision_bits;
            let near = asymptotic_deviation(n, total, &q, &t, &Rational::from(1000), bits)?;
            let far = asymptotic_deviation(n, total, &q, &t, &Rational::from(10_000), bits)?;
            let ok = far.lhs < near.lhs && far.rhs < near.rhs && far.max() <= 1e-2;
            Ok(Outcome {
                point: format!("q={q};t={t};lambda=1000,10000"),
                lhs: Some(format!("{:e},{:e}", near.lhs, far.lhs)),
                rhs: Some(format!("{:e},{:e}", near.rhs, far.rhs)),
                equal: ok,
                max_deviation: Some(far.max()),
                resamples: 0,
                detail: Some(format!(
                    "relative deviation from the limit: lambda=1e3 lhs {:.3e} rhs {:.3e}; lambda=1e4 lhs {:.3e} rhs {:.3e}",
                    near.lhs, near.rhs, far.lhs, far.rhs
                )),
                elapsed_ms: 0.0,
            })
        }
        Check::Quasiperiodicity => {
            let Param::Nome(nome) = &cell.param else {
                unreachable!("quasiperiodicity cells carry a nome")
            };
            let policy = config.policy()?;
            let (q, resamples) = with_resampling(rng, |rng| {
                let pt = random_elliptic_point(rng, n, nome, policy.working_bits())?;
                Ok((quasiperiodicity(total, &pt, &policy)?, pt.to_string()))
            })?;
            let (q, point) = q;
            let dev = q
                .comparisons()
                .iter()
                .map(|(a, b)| relative_deviation(a, b))
                .fold(0.0, f64::max);
            Ok(Outcome {
                point,
                lhs: Some(q.lhs.to_string()),
                rhs: Some(q.rhs.to_string()),
                equal: dev <= tolerance(config),
                max_deviation: Some(dev),
                resamples,
                detail: None,
                elapsed_ms: 0.0,
            })
        }
        Check::Riemann => {
            let Param::Odd(s) = cell.param else {
                unreachable!("riemann cells carry an odd function")
            };
            let xs: Vec<Rational> = (0..4).map(|_| random_scalar(rng)).collect();
            let (lhs, rhs) = riemann_sides(s, &xs[0], &xs[1], &xs[2], &xs[3]);
            let ok = lhs == rhs;
            Ok(Outcome::exact(format!("x,y,u,v={}", join(&xs)), lhs, rhs, ok, 0))
        }
        Check::Lemma1 => {
            let Param::Shift(p) = cell.param else {
                unreachable!("lemma cells carry a shift")
            };
            let p = PoleShift(p);
            let (bijective, sizes) = bijection_holds(n, total, p)?;
            let ((ok, point), resamples) = with_resampling(rng, |rng| {
                let pt = random_sqrt_point(rng, n)?;
                Ok((lemma1_check(n, total, p, &pt)?, pt.to_string()))
            })?;
            let mut out = Outcome::exact(
                point,
                format!("|I_p|={}", sizes.0),
                format!("|II_p|={}", sizes.1),
                ok && bijective,
                resamples,
            );
            out.detail = Some(format!("bijection {}", if bijective { "verified" } else { "FAILED" }));
            Ok(out)
        }
        Check::Lemma2 => {
            let Param::Shift(p) = cell.param else {
                unreachable!("lemma cells carry a shift")
            };
            let p = PoleShift(p);
            let ((ok, lhs, rhs, point), resamples) = with_resampling(rng, |rng| {
                let pt = random_sqrt_point(rng, n)?;
                let (mut ok, mut res, mut target) = (true, Rational::new(), Rational::new());
                for k in compositions(n, total)?.filter(|k| k.get(0) >= p.0) {
                    ok &= lemma2_check(n, &k, p, &pt)?;
                    for side in [Side::Rhs, Side::Lhs] {
                        res += lemma2_residue(side, &k, p, &pt)?;
                        target += lemma2_target(side, &k, p, &pt, lemma2_prefactor)?;
                    }
                }
                Ok((ok, res, target, pt.to_string()))
            })?;
            Ok(Outcome::exact(point, lhs, rhs, ok, resamples))
        }
        Check::Induction => {
            let Param::Shift(p) = cell.param else {
                unreachable!("induction cells carry a shift")
            };
            let ((ok, point), resamples) = with_resampling(rng, |rng| {
                let pt = random_sqrt_point(rng, n)?;
                Ok((wk_residue_relation(n, total, PoleShift(p), &pt)?, pt.to_string()))
            })?;
            Ok(Outcome::exact(point, 0, 0, ok, resamples))
        }
        Check::LimitRelation => {
            let ((rel, point), resamples) = with_resampling(rng, |rng| {
                let pt = random_rational_point(rng, n)?;
                Ok((limit_relation_check(n, &pt)?, pt.to_string()))
            })?;
            let mut out = Outcome::exact(
                point,
                rel.first_differences,
                rel.second_differences,
                rel.holds(),
                resamples,
            );
            out.lhs = None;
            out.rhs = None;
            out.detail = Some(format!(
                "H1=K1 {} / H2=K2+K1 {} (differences), {} / {} (per side)",
                rel.first_differences, rel.second_differences, rel.first_per_side, rel.second_per_side
            ));
            Ok(out)
        }
    }
}

fn tolerance(config: &RunConfig) -> f64 {
    2f64.powi(-(config.tolerance_bits as i32))
}

/// `φ_p` maps `I_p` onto `II_p` and is an involution there.
pub fn bijection_holds(n: usize, total: u32, p: PoleShift) -> Result<(bool, (usize, usize))> {
    let mut first = BTreeSet::new();
    let mut second = BTreeSet::new();
    for k in compositions(n, total)? {
        match pole_set_membership(&k, p)? {
            PoleSet::InI => first.insert(k),
            PoleSet::InII => second.insert(k),
            PoleSet::Neither => false,
        };
    }
    let mut image = BTreeSet::new();
    let mut ok = true;
    for k in &first {
        let m = phi_map(k, p)?;
        ok &= phi_map(&m, p)? == *k;
        image.insert(m);
    }
    Ok((ok && image == second, (first.len(), second.len())))
}

fn kernel(id: IdentityId, s: OddFunctionKind, n: usize, r: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ((lhs, rhs, point), resamples) = with_resampling(rng, |rng| {
        let pt = random_kernel_point(rng, n);
        let params = KernelParams {
            alpha: random_scalar(rng),
            beta: Some(random_scalar(rng)),
        };
        let lhs = kernel_eval(id, Side::Lhs, s, n, r, &pt, &params)?;
        let rhs = kernel_eval(id, Side::Rhs, s, n, r, &pt, &params)?;
        let beta = params.beta.as_ref().expect("drawn above");
        let point = format!("x={};y={};alpha={};beta={beta}", join(&pt.x), join(&pt.y), params.alpha);
        Ok((lhs, rhs, point))
    })?;
    let ok = lhs == rhs;
    Ok(Outcome::exact(point, lhs, rhs, ok, resamples))
}

fn elliptic(cell: &Cell, config: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Param::Nome(nome) = &cell.param else {
        unreachable!("elliptic cells carry a nome")
    };
    let (n, total) = (cell.n, cell.degree);
    let policy = config.policy()?;
    let doubled = policy.doubled();
    let ((lo, hi), resamples) = with_resampling(rng, |rng| {
        // The same draws at twice the precision.
        let mut twin = rng.clone();
        let lo = random_elliptic_point(rng, n, nome, policy.working_bits())?;
        let hi = random_elliptic_point(&mut twin, n, nome, doubled.working_bits())?;
        Ok((
            wk_eval(IdentityId::EllipticA6, n, total, &Point::Elliptic(lo, policy))?,
            wk_eval(IdentityId::EllipticA6, n, total, &Point::Elliptic(hi, doubled))?,
        ))
    })?;
    let numeric = |v: &Value| v.as_numeric().expect("elliptic values are numeric").clone();
    let (lhs, rhs) = (numeric(&lo.lhs), numeric(&lo.rhs));
    let dev = relative_deviation(&lhs, &rhs);
    let stable = agreement_check(&lhs, &numeric(&hi.lhs), &policy) && agreement_check(&rhs, &numeric(&hi.rhs), &policy);
    Ok(Outcome {
        point: lo.point,
        lhs: Some(lhs.to_string()),
        rhs: Some(rhs.to_string()),
        equal: dev <= tolerance(config) && stable,
        max_deviation: Some(dev),
        resamples,
        detail: Some(format!("stable under doubling: {stable}")),
        elapsed_ms: 0.0,
    })
}

/// A cell that could not be evaluated (invalid input or exhausted
/// resampling).
#[derive(Debug, Clone)]
pub struct CellFailure {
    pub index: usize,
    pub cell: String,
    pub error: Error,
}

impl fmt::Display for CellFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell {} ({}): {}", self.index, self.cell, self.error)
    }
}

/// Runs every cell in parallel; results come back in cell order.
pub fn run_cells(cells: &[Cell], config: &RunConfig) -> std::result::Result<Vec<Outcome>, CellFailure> {
    let results: Vec<Result<Outcome>> = cells
        .par_iter()
        .enumerate()
        .map(|(i, cell)| run_cell(cell, config, i as u64))
        .collect();
    results
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            r.map_err(|error| CellFailure {
                index,
                cell: cells[index].to_string(),
                error,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::Args;

    #[test]
    fn grid_respects_overrides() {
        let config = Args {
            identity: Some("symtrig_p4".into()),
            n: Some("1..1".into()),
            k: Some("0..3".into()),
            trials: Some("1".into()),
            ..Args::default()
        }
        .resolve()
        .unwrap();
        let cells = build_cells(&config);
        assert_eq!(cells.len(), 4);
        assert!(cells
            .iter()
            .all(|c| c.n == 1 && c.check == Check::Identity(IdentityId::SymTrigP4)));
    }

    #[test]
    fn kernel_grid_skips_large_r() {
        let config = Args {
            identity: Some("kernel_i1".into()),
            n: Some("2".into()),
            ..Args::default()
        }
        .resolve()
        .unwrap();
        let cells = build_cells(&config);
        // r ∈ {0, 1, 2} for both odd functions.
        assert_eq!(cells.len(), 6);
    }

    #[test]
    fn bijection_small_cases() {
        // I_1 = {(2,1)}, II_1 = {(0,3)}.
        assert_eq!(bijection_holds(2, 3, PoleShift(1)).unwrap(), (true, (1, 1)));
        assert!(bijection_holds(2, 0, PoleShift(1)).unwrap().0);
    }

    #[test]
    fn cells_pass() {
        let config = Args {
            suite: Some("limits".into()),
            trials: Some("1".into()),
            n: Some("2".into()),
            k: Some("2".into()),
            ..Args::default()
        }
        .resolve()
        .unwrap();
        let cells = build_cells(&config);
        let outcomes = run_cells(&cells, &config).unwrap();
        for (cell, out) in cells.iter().zip(&outcomes) {
            assert!(out.equal, "{cell}: {out:?}");
        }
    }
}
