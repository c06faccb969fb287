//! Seeded theorem suites: every structural result is checked against a
//! structure-blind route from [`crate::oracle`] on random and planted inputs.
//!
//! Trial `i` of suite `s` draws from `Rng::stream(seed ^ salt(s), i)`, so a
//! failure is replayed from the `(seed, suite, trial)` triple in its report.

use serde::{Deserialize, Serialize};

use crate::linalg::{eigenvalues, nullspace, vec_norm, CMatrix};
use crate::operator::{BicomplexOperator, BicomplexVector, VectorClass};
use crate::oracle::{self, PlantedOperator, Rng, SpectrumProfile};
use crate::scalar::Bicomplex;
use crate::spectra::{self, ModifiedCase, SpectrumReport};
use crate::{Complex, Tolerances};

/// Deliberate defects used to show that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// Subtracts instead of adds the `T2` nullity in the kernel dimension.
    KernelSign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub tol: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            trials: 500,
            n_min: 1,
            n_max: 6,
            tol: Tolerances::default(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    pub n: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub statement: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// First few failures, for replay.
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard_band: Option<GuardBand>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Disagreement bookkeeping near a decision threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GuardBand {
    pub samples: usize,
    pub disagreements: usize,
}

impl GuardBand {
    pub fn rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.disagreements as f64 / self.samples as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

type TrialResult = Result<GuardBand, String>;
type SuiteFn = fn(&mut Rng, usize, SpectrumProfile, &Ctx) -> TrialResult;

struct Ctx {
    tol: Tolerances,
    fault: Option<Fault>,
}

pub struct Suite {
    pub name: &'static str,
    pub statement: &'static str,
    run: SuiteFn,
}

/// Largest tolerated share of disagreements inside a guard band.
pub const MAX_BAND_DISAGREEMENT: f64 = 1e-3;
/// Scalars drawn per trial of the singular-element suite.
pub const SCALARS_PER_TRIAL: usize = 200;

pub const SUITES: &[Suite] = &[
    Suite {
        name: "idempotent_representation",
        statement: "x = x-minus e1 + x-plus e2 with componentwise products; cartesian and real views round-trip",
        run: suite_representation,
    },
    Suite {
        name: "singular_elements",
        statement: "x is singular iff x in I1 ∪ I2 iff |z1^2 + z2^2| = 0; inverses exist exactly for non-singular x",
        run: suite_singular_elements,
    },
    Suite {
        name: "kernel_theorem",
        statement: "ker(e1 T1 + e2 T2) = ker T1 x_e ker T2",
        run: suite_kernel,
    },
    Suite {
        name: "image_theorem",
        statement: "Im(e1 T1 + e2 T2) = Im T1 x_e Im T2, with rank-nullity per component",
        run: suite_image,
    },
    Suite {
        name: "operator_singularity",
        statement: "T is singular iff T1 or T2 is singular iff ker T is nontrivial",
        run: suite_operator_singularity,
    },
    Suite {
        name: "eigenvalue_criterion",
        statement: "lambda in C1 is an eigenvalue of T iff lambda in U1 ∪ U2 iff T - lambda I is singular",
        run: suite_eigenvalue_criterion,
    },
    Suite {
        name: "modified_eigenvalue_criterion",
        statement: "kappa is a modified eigenvalue iff k1 in U1 or k2 in U2 iff T - kappa I is singular",
        run: suite_modified_criterion,
    },
    Suite {
        name: "idempotent_product_containment",
        statement: "U1 x_e U2 is properly contained in the modified spectrum",
        run: suite_containment,
    },
    Suite {
        name: "modified_spectrum_cylinders",
        statement: "modified spectrum = (U1 x_e C1) ∪ (C1 x_e U2); k1 e1 + w e2 is modified for all w when k1 in U1; it exists iff an eigenvalue exists",
        run: suite_cylinders,
    },
    Suite {
        name: "modified_eigenspace_structure",
        statement: "ME(kappa) = E1(k1) x_e {0}, {0} x_e E2(k2) or E1(k1) x_e E2(k2); one-sided eigenvectors are multiples of e1 or e2",
        run: suite_eigenspace_structure,
    },
    Suite {
        name: "eigenpair_residuals",
        statement: "every reported eigenpair satisfies ||A v - lambda v|| <= cluster (1 + ||A||) ||v||",
        run: suite_eigenpair_residuals,
    },
    Suite {
        name: "block_spectrum",
        statement: "the spectrum of diag(T1, T2) is the multiset union of U1 and U2",
        run: suite_block_spectrum,
    },
    Suite {
        name: "similarity_invariance",
        statement: "modified-eigenvalue membership is unchanged under componentwise similarity",
        run: suite_similarity,
    },
    Suite {
        name: "eigensolver_oracles",
        statement: "QR eigenvalues match characteristic-polynomial roots and known companion roots",
        run: suite_eigensolver_oracles,
    },
];

fn salt(index: usize) -> u64 {
    (index as u64 + 1).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let suites: Vec<SuiteReport> = (0..SUITES.len()).map(|i| run_suite_index(i, config)).collect();
    VerifyReport {
        all_passed: suites.iter().all(SuiteReport::ok),
        config: config.clone(),
        suites,
    }
}

/// Runs a single suite by name.
pub fn run_suite(name: &str, config: &VerifyConfig) -> Option<SuiteReport> {
    SUITES.iter().position(|s| s.name == name).map(|i| run_suite_index(i, config))
}

fn run_suite_index(index: usize, config: &VerifyConfig) -> SuiteReport {
    let suite = &SUITES[index];
    let ctx = Ctx {
        tol: config.tol,
        fault: config.fault,
    };
    let span = config.n_max.saturating_sub(config.n_min) + 1;
    let mut report = SuiteReport {
        name: suite.name.to_string(),
        statement: suite.statement.to_string(),
        trials: config.trials,
        passed: 0,
        failed: 0,
        failures: Vec::new(),
        guard_band: None,
    };
    let mut band = GuardBand::default();
    for trial in 0..config.trials {
        let n = config.n_min.max(1) + trial % span;
        let profile = SpectrumProfile::ALL[(trial / span) % SpectrumProfile::ALL.len()];
        let mut rng = Rng::stream(config.seed ^ salt(index), trial as u64);
        match (suite.run)(&mut rng, n, profile, &ctx) {
            Ok(b) => {
                band.samples += b.samples;
                band.disagreements += b.disagreements;
                report.passed += 1;
            }
            Err(detail) => {
                report.failed += 1;
                if report.failures.len() < 5 {
                    report.failures.push(Failure { trial, n, detail });
                }
            }
        }
    }
    if band.samples > 0 {
        if band.rate() >= MAX_BAND_DISAGREEMENT {
            report.failed += 1;
            report.failures.push(Failure {
                trial: config.trials,
                n: 0,
                detail: format!(
                    "guard-band disagreement rate {:.2e} over {} samples",
                    band.rate(),
                    band.samples
                ),
            });
        }
        report.guard_band = Some(band);
    }
    report
}

// a NaN comparison is false, so it fails the check
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    }};
}

fn num<T>(r: crate::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn planted(rng: &mut Rng, n: usize, profile: SpectrumProfile) -> PlantedOperator {
    oracle::random_operator(rng, n, profile)
}

fn suite_representation(rng: &mut Rng, _n: usize, _p: SpectrumProfile, _ctx: &Ctx) -> TrialResult {
    let scale = 10f64.powf(rng.uniform(-3.0, 3.0));
    let x = Bicomplex::raw(rng.complex_in(scale), rng.complex_in(scale));
    let y = Bicomplex::raw(rng.complex_in(scale), rng.complex_in(scale));
    let mag = |b: Bicomplex| b.minus().norm().max(b.plus().norm());

    let (z1, z2) = x.to_cartesian();
    let back = num(Bicomplex::from_cartesian(z1, z2))?;
    ensure!(mag(back - x) <= 4.0 * f64::EPSILON * mag(x), "cartesian round trip off by {:e}", mag(back - x));
    let u = x.to_real();
    let back = num(Bicomplex::from_real(u[0], u[1], u[2], u[3]))?;
    ensure!(mag(back - x) <= 4.0 * f64::EPSILON * mag(x), "real round trip off by {:e}", mag(back - x));

    // schoolbook product in the cartesian view
    let (w1, w2) = y.to_cartesian();
    let school = num(Bicomplex::from_cartesian(z1 * w1 - z2 * w2, z1 * w2 + z2 * w1))?;
    let prod = x * y;
    ensure!(
        mag(school - prod) <= 1e-12 * (1.0 + mag(x) * mag(y)),
        "cartesian product disagrees by {:e}",
        mag(school - prod)
    );
    ensure!(Bicomplex::E1 * Bicomplex::E2 == Bicomplex::ZERO, "e1 e2 != 0");
    ensure!(Bicomplex::E1 + Bicomplex::E2 == Bicomplex::ONE, "e1 + e2 != 1");
    Ok(GuardBand::default())
}

/// Where a scalar sits relative to the singularity threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularitySample {
    pub z1: Complex,
    pub z2: Complex,
    pub by_components: bool,
    pub by_modulus: bool,
    /// `min(|x-|, |x+|) / (tol * max(|x-|, |x+|, 1))`.
    pub ratio: f64,
}

impl SingularitySample {
    /// Within half a decade on either side of the threshold.
    pub fn in_guard_band(&self) -> bool {
        let s = 10f64.sqrt();
        self.ratio >= 1.0 / s && self.ratio <= s
    }

    pub fn agrees(&self) -> bool {
        self.by_components == self.by_modulus
    }
}

/// Draws a scalar whose smaller idempotent component is `10^-u` times the
/// larger one, `u` uniform on `[0, 16]`, so the threshold region is well
/// populated; then classifies it by both routes from its cartesian form.
pub fn singularity_sample(rng: &mut Rng, tol: f64) -> SingularitySample {
    let scale = 10f64.powf(rng.uniform(-3.0, 3.0));
    let big = rng.complex_in(scale);
    let small = rng.complex_in(scale) * 10f64.powf(-rng.uniform(0.0, 16.0));
    let x = if rng.coin() { Bicomplex::raw(big, small) } else { Bicomplex::raw(small, big) };
    let (z1, z2) = x.to_cartesian();
    let y = Bicomplex::from_cartesian(z1, z2).expect("finite");
    let (lo, hi) = {
        let (a, b) = (y.minus().norm(), y.plus().norm());
        (a.min(b), a.max(b))
    };
    SingularitySample {
        z1,
        z2,
        by_components: y.classify(tol).is_singular(),
        by_modulus: oracle::is_singular_by_modulus(z1, z2, tol),
        ratio: lo / (tol * hi.max(1.0)),
    }
}

fn suite_singular_elements(rng: &mut Rng, _n: usize, _p: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let tol = ctx.tol.singular;
    let mut band = GuardBand::default();
    for _ in 0..SCALARS_PER_TRIAL {
        let s = singularity_sample(rng, tol);
        if s.in_guard_band() {
            band.samples += 1;
            band.disagreements += usize::from(!s.agrees());
        } else {
            ensure!(s.agrees(), "routes disagree outside the guard band: {s:?}");
        }
        let x = Bicomplex::from_cartesian(s.z1, s.z2).expect("finite");
        match x.inverse(tol) {
            Ok(inv) => {
                let p = x * inv - Bicomplex::ONE;
                ensure!(!s.by_components, "inverse of a singular element");
                ensure!(p.minus().norm().max(p.plus().norm()) <= 1e-12, "x * x^-1 != 1");
            }
            Err(_) => ensure!(s.by_components, "no inverse for a non-singular element"),
        }
    }
    Ok(band)
}

fn suite_kernel(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let p = planted(rng, n, profile);
    let t = &p.operator;
    let k = t.kernel(ctx.tol.singular);
    let claimed = match ctx.fault {
        Some(Fault::KernelSign) => k.minus.dim() as i64 - k.plus.dim() as i64,
        None => (k.minus.dim() + k.plus.dim()) as i64,
    };
    let brute = oracle::brute_nullspace(&oracle::block_embed(t), ctx.tol.singular).dim() as i64;
    ensure!(claimed == brute, "kernel dimension {claimed} != block nullity {brute}");
    for (truth, side) in [(&p.t1, &k.minus), (&p.t2, &k.plus)] {
        if let Some(pl) = truth.planted.filter(|pl| pl.value == Complex::new(0.0, 0.0)) {
            ensure!(side.dim() == pl.geometric, "nullity {} != planted {}", side.dim(), pl.geometric);
        }
    }
    let bound = ctx.tol.singular * (1.0 + t.norm()) * (2 * n) as f64;
    for v in k.assemble() {
        let tv = num(t.apply(&v))?;
        ensure!(tv.norm() <= bound, "kernel vector maps to norm {:e}", tv.norm());
    }
    Ok(GuardBand::default())
}

fn suite_image(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let im = t.image(ctx.tol.singular);
    let k = t.kernel(ctx.tol.singular);
    ensure!(im.minus.dim() + k.minus.dim() == n, "rank-nullity fails for T1");
    ensure!(im.plus.dim() + k.plus.dim() == n, "rank-nullity fails for T2");
    let brute = 2 * n - oracle::brute_nullspace(&oracle::block_embed(&t), ctx.tol.singular).dim();
    ensure!(im.dim() == brute, "image dimension {} != block rank {brute}", im.dim());
    // images of random vectors lie in the product of column spaces
    let v = rng.vector(n);
    let tv = num(t.apply(&v))?;
    ensure!(
        im.distance(&tv) <= 1e-9 * (1.0 + tv.norm()),
        "T v leaves the image by {:e}",
        im.distance(&tv)
    );
    Ok(GuardBand::default())
}

fn suite_operator_singularity(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let by_det = num(t.is_singular(ctx.tol.singular))?;
    let by_kernel = !t.kernel(ctx.tol.singular).is_zero();
    let by_block = !oracle::brute_nullspace(&oracle::block_embed(&t), ctx.tol.singular).is_zero();
    ensure!(
        by_det == by_kernel && by_kernel == by_block,
        "determinant {by_det}, kernel {by_kernel}, block {by_block}"
    );
    Ok(GuardBand::default())
}

/// Candidate scalars: every member of each spectrum, a near miss next to it,
/// and a few random points.
///
/// A determinant only resolves an `m`-fold eigenvalue at distance about
/// `tol^(1/m)`, so the near-miss offset grows with the largest multiplicity
/// close by in either component.
fn lambda_candidates(rng: &mut Rng, report: &SpectrumReport, t: &BicomplexOperator, tol: f64) -> Vec<Complex> {
    let mut out = Vec::new();
    let nearby = |z: Complex| {
        [&report.upsilon1, &report.upsilon2]
            .iter()
            .map(|set| set.values().iter().filter(|(w, _)| (w - z).norm() <= 0.1).map(|&(_, k)| k).sum::<usize>())
            .max()
            .unwrap_or(1)
    };
    for &(z, _) in report.upsilon1.values().iter().chain(report.upsilon2.values()) {
        let m = nearby(z);
        let offset = (1.0 + t.norm()) * (100.0 * tol).powf(1.0 / m as f64).max(1e-4);
        out.push(z);
        out.push(z + Complex::new(offset, 0.0));
    }
    out.extend((0..3).map(|_| rng.complex_in(4.0)));
    out
}

fn suite_eigenvalue_criterion(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let p = planted(rng, n, profile);
    let t = &p.operator;
    let report = num(spectra::component_spectra(t, &ctx.tol))?;
    for truth in [&p.t1, &p.t2] {
        if let Some(pl) = truth.planted {
            ensure!(report.is_eigenvalue(pl.value), "planted {} missing from the spectrum", pl.value);
        }
    }
    for lambda in lambda_candidates(rng, &report, t, ctx.tol.singular) {
        let member = report.is_eigenvalue(lambda);
        let shifted = num(t.shift(num(Bicomplex::from_complex(lambda))?))?;
        let singular = num(shifted.is_singular(ctx.tol.singular))?;
        let block = !oracle::brute_nullspace(&oracle::block_embed(&shifted), ctx.tol.singular).is_zero();
        ensure!(
            member == singular && singular == block,
            "lambda {lambda}: member {member}, det {singular}, block {block}"
        );
    }
    Ok(GuardBand::default())
}

fn kappa_candidates(rng: &mut Rng, report: &SpectrumReport) -> Vec<Bicomplex> {
    let mut out = Vec::new();
    let far = |rng: &mut Rng| rng.complex_in(4.0);
    for &(k1, _) in report.upsilon1.values() {
        out.push(Bicomplex::raw(k1, far(rng)));
        for &(k2, _) in report.upsilon2.values() {
            out.push(Bicomplex::raw(k1, k2));
        }
    }
    for &(k2, _) in report.upsilon2.values() {
        out.push(Bicomplex::raw(far(rng), k2));
    }
    out.extend((0..3).map(|_| Bicomplex::raw(far(rng), far(rng))));
    out
}

fn suite_modified_criterion(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let report = num(spectra::component_spectra(&t, &ctx.tol))?;
    for kappa in kappa_candidates(rng, &report) {
        let case = report.modified_case(kappa);
        let criterion = report.upsilon1.contains(kappa.minus()) || report.upsilon2.contains(kappa.plus());
        let singular = num(num(t.shift(kappa))?.is_singular(ctx.tol.singular))?;
        let block = !num(oracle::brute_modified_eigenspace(&t, kappa, ctx.tol.singular))?.is_zero();
        ensure!(
            case.is_some() == criterion && criterion == singular && singular == block,
            "kappa {kappa}: case {case:?}, det {singular}, block {block}"
        );
    }
    Ok(GuardBand::default())
}

fn suite_containment(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let rec = num(spectra::contains_idempotent_product(&t, &ctx.tol))?;
    ensure!(rec.pairs_checked > 0, "no pairs to check");
    ensure!(rec.pairs_checked == rec.pairs_passed, "{} of {} pairs fail", rec.pairs_checked - rec.pairs_passed, rec.pairs_checked);
    let w = rec.witness.ok_or("no proper-containment witness")?;
    let block = !num(oracle::brute_modified_eigenspace(&t, w, ctx.tol.singular))?.is_zero();
    ensure!(block, "witness {w} is not confirmed by the block oracle");
    Ok(GuardBand::default())
}

fn suite_cylinders(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let report = num(spectra::component_spectra(&t, &ctx.tol))?;
    let desc = report.upsilon();
    ensure!(!report.eigenvalues.is_empty() && !desc.is_empty(), "empty spectrum for n = {n}");
    for _ in 0..20 {
        let kappa = rng.bicomplex();
        let via_case = report.modified_case(kappa).is_some();
        ensure!(desc.contains(kappa) == via_case, "description and criterion disagree at {kappa}");
        if via_case {
            continue;
        }
        let block = !num(oracle::brute_modified_eigenspace(&t, kappa, ctx.tol.singular))?.is_zero();
        ensure!(!block, "random kappa {kappa} rejected but block system is singular");
    }
    let samples: Vec<Complex> = (0..4).map(|_| rng.complex_in(10.0)).collect();
    for (from_minus, set) in [(true, &report.upsilon1), (false, &report.upsilon2)] {
        for &(base, _) in set.values() {
            let fam = num(spectra::modified_family(&t, from_minus, base, &samples, &ctx.tol))?;
            for m in fam {
                ensure!(desc.contains(m.kappa), "family member {} outside the cylinders", m.kappa);
                let block = !num(oracle::brute_modified_eigenspace(&t, m.kappa, ctx.tol.singular))?.is_zero();
                ensure!(block, "family member {} not confirmed by the block oracle", m.kappa);
            }
        }
    }
    Ok(GuardBand::default())
}

/// A value certainly outside `set`.
fn outside(rng: &mut Rng, report_set: &crate::EigenSet) -> Complex {
    let r = 1.0 + report_set.threshold() + report_set.values().iter().map(|(z, _)| z.norm()).fold(0.0, f64::max);
    Complex::from_polar(r + rng.uniform(0.0, 1.0), rng.uniform(0.0, std::f64::consts::TAU))
}

fn suite_eigenspace_structure(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let p = planted(rng, n, profile);
    let t = &p.operator;
    let report = num(spectra::component_spectra(t, &ctx.tol))?;
    let pick = |truth: &oracle::ComponentTruth, set: &crate::EigenSet, rng: &mut Rng| match truth.planted {
        Some(pl) => pl.value,
        None => set.values()[rng.below(set.len())].0,
    };
    let k1 = pick(&p.t1, &report.upsilon1, rng);
    let k2 = pick(&p.t2, &report.upsilon2, rng);
    let kappas = [
        (Bicomplex::raw(k1, outside(rng, &report.upsilon2)), ModifiedCase::OnlyMinus),
        (Bicomplex::raw(outside(rng, &report.upsilon1), k2), ModifiedCase::OnlyPlus),
        (Bicomplex::raw(k1, k2), ModifiedCase::Both),
    ];
    let bound = spectra::residual_bound(t, &ctx.tol);
    for (kappa, want) in kappas {
        let me = num(spectra::modified_eigenspace_with(t, &report, kappa, &ctx.tol))?;
        ensure!(me.case == want, "case {:?} != {want:?} at {kappa}", me.case);
        let brute = num(oracle::brute_modified_eigenspace(t, kappa, ctx.tol.singular))?;
        ensure!(me.dim() == brute.dim(), "{want:?}: structure dimension {} != block nullity {}", me.dim(), brute.dim());
        for (truth, side, used) in [(&p.t1, me.minus_basis(), want != ModifiedCase::OnlyPlus), (&p.t2, me.plus_basis(), want != ModifiedCase::OnlyMinus)] {
            if let (Some(pl), true) = (truth.planted, used) {
                ensure!(side.dim() == pl.geometric, "{want:?}: side dimension {} != planted geometric {}", side.dim(), pl.geometric);
            }
        }
        ensure!(me.all_eigenvectors_singular == want.is_one_sided(), "singular flag wrong for {want:?}");
        if want.is_one_sided() {
            let classes = me.basis_classes(ctx.tol.singular);
            ensure!(classes.iter().all(|&c| c == VectorClass::SingularNonzero), "{want:?} basis classes {classes:?}");
            // random members of the space, not just basis vectors
            let combo = random_combination(rng, &me.assembled, n);
            ensure!(combo.classify(ctx.tol.singular) == VectorClass::SingularNonzero, "one-sided member is not singular");
        }
        let r = num(me.max_residual(t))?;
        ensure!(r <= bound, "{want:?}: residual {r:e} above {bound:e}");
        for v in &me.assembled {
            let rv = num(oracle::residual(t, kappa, v))?;
            ensure!(rv <= bound, "oracle residual {rv:e} above {bound:e}");
        }
        // a vector outside the space must be rejected by the residual test
        let probe = rng.vector(n);
        if me.space.distance(&probe) > 0.1 * probe.norm() {
            let rv = num(oracle::residual(t, kappa, &probe))?;
            ensure!(rv > 10.0 * bound, "random vector has residual {rv:e} <= 10x bound");
        }
    }
    Ok(GuardBand::default())
}

fn random_combination(rng: &mut Rng, basis: &[BicomplexVector], n: usize) -> BicomplexVector {
    let mut minus = vec![Complex::new(0.0, 0.0); n];
    let mut plus = minus.clone();
    for v in basis {
        let c = rng.complex() + Complex::new(2.0, 0.0);
        for i in 0..n {
            minus[i] += c * v.minus()[i];
            plus[i] += c * v.plus()[i];
        }
    }
    BicomplexVector::new(minus, plus).expect("finite")
}

fn suite_eigenpair_residuals(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let report = num(spectra::component_spectra(&t, &ctx.tol))?;
    for (m, set, spaces) in [(t.t1(), &report.upsilon1, &report.eigenspaces1), (t.t2(), &report.upsilon2, &report.eigenspaces2)] {
        ensure!(set.total_multiplicity() == n, "multiplicities sum to {}", set.total_multiplicity());
        check_eigenpairs(m, set, spaces, &ctx.tol)?;
    }
    Ok(GuardBand::default())
}

/// Residual, orthonormality and geometric <= algebraic for one decomposition.
pub(crate) fn check_eigenpairs(
    m: &CMatrix,
    set: &crate::EigenSet,
    spaces: &[crate::CSubspace],
    tol: &Tolerances,
) -> Result<f64, String> {
    let bound = tol.cluster * (1.0 + m.frobenius_norm());
    let mut worst = 0.0f64;
    for (&(lambda, mult), space) in set.values().iter().zip(spaces) {
        ensure!(space.dim() >= 1 && space.dim() <= mult, "eigenspace dim {} for multiplicity {mult}", space.dim());
        for v in space.basis() {
            let av = num(m.mul_vec(v))?;
            let r: Vec<Complex> = av.iter().zip(v).map(|(a, b)| a - lambda * b).collect();
            let res = vec_norm(&r) / vec_norm(v);
            worst = worst.max(res / (1.0 + m.frobenius_norm()));
            ensure!(res <= bound, "eigenpair residual {res:e} above {bound:e}");
        }
        for (i, u) in space.basis().iter().enumerate() {
            for (j, w) in space.basis().iter().enumerate() {
                let g = crate::linalg::dot(u, w);
                let want = if i == j { 1.0 } else { 0.0 };
                ensure!((g - want).norm() <= 1e-10, "eigenspace basis not orthonormal");
            }
        }
    }
    Ok(worst)
}

fn suite_block_spectrum(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    let report = num(spectra::component_spectra(&t, &ctx.tol))?;
    let block = oracle::block_embed(&t);
    let raw = num(eigenvalues(&block))?;
    let merged = num(crate::linalg::cluster_eigenvalues(&block, &raw, &ctx.tol))?;
    let mut ours = oracle::flatten(report.upsilon1.values());
    ours.extend(oracle::flatten(report.upsilon2.values()));
    let theirs = oracle::flatten(merged.values());
    let d = oracle::matched_distance(&ours, &theirs);
    let allowed = merged.threshold();
    ensure!(d <= allowed, "block spectrum differs by {d:e} (allowed {allowed:e})");
    Ok(GuardBand::default())
}

fn suite_similarity(rng: &mut Rng, n: usize, profile: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let t = planted(rng, n, profile).operator;
    // P = Q D with unitary Q and D in [0.5, 2]: condition number at most 4
    let q = rng.unitary(n);
    let d: Vec<Complex> = (0..n).map(|_| Complex::new(rng.uniform(0.5, 2.0), 0.0)).collect();
    let d_inv: Vec<Complex> = d.iter().map(|z| 1.0 / z).collect();
    let p = num(q.matmul(&CMatrix::from_diagonal(&d)))?;
    let p_inv = num(CMatrix::from_diagonal(&d_inv).matmul(&q.adjoint()))?;
    let conj = |m: &CMatrix| p.matmul(m).and_then(|x| x.matmul(&p_inv));
    let s = num(BicomplexOperator::new(num(conj(t.t1()))?, num(conj(t.t2()))?))?;
    let a = num(spectra::component_spectra(&t, &ctx.tol))?;
    let b = num(spectra::component_spectra(&s, &ctx.tol))?;
    for kappa in kappa_candidates(rng, &a) {
        ensure!(a.modified_case(kappa) == b.modified_case(kappa), "membership of {kappa} changes under similarity");
    }
    Ok(GuardBand::default())
}

fn suite_eigensolver_oracles(rng: &mut Rng, n: usize, _p: SpectrumProfile, ctx: &Ctx) -> TrialResult {
    let n = n.min(4);
    // companion matrix with separated known roots
    let mut roots: Vec<Complex> = Vec::new();
    while roots.len() < n {
        let z = rng.complex_in(3.0);
        if roots.iter().all(|r| (r - z).norm() > 0.3) {
            roots.push(z);
        }
    }
    let comp = oracle::companion_matrix(&oracle::polynomial_from_roots(&roots));
    let got = num(eigenvalues(&comp))?;
    let d = oracle::matched_distance(&got, &roots);
    ensure!(d <= 1e-7, "companion roots off by {d:e}");
    let dec = num(crate::linalg::eigen_decompose(&comp, &ctx.tol))?;
    check_eigenpairs(&comp, &dec.eigenvalues, &dec.eigenspaces, &ctx.tol)?;

    // random matrix against its characteristic polynomial
    let a = rng.matrix(n, n);
    let got = num(eigenvalues(&a))?;
    let poly = num(oracle::characteristic_polynomial(&a))?;
    let want = oracle::polynomial_roots(&poly);
    let d = oracle::matched_distance(&got, &want);
    ensure!(d <= 1e-7 * (1.0 + a.frobenius_norm()), "char-poly roots off by {d:e}");
    let dec = num(crate::linalg::eigen_decompose(&a, &ctx.tol))?;
    check_eigenpairs(&a, &dec.eigenvalues, &dec.eigenspaces, &ctx.tol)?;
    // nullspace of a shift by a computed eigenvalue is nontrivial
    ensure!(!nullspace(&num(a.shifted(got[0]))?, ctx.tol.singular).is_zero(), "shift by an eigenvalue is regular");
    Ok(GuardBand::default())
}
