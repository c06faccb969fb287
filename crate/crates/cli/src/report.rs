//! Report payloads and their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use bcspec::io::{ScalarJson, VectorJson};
use bcspec::spectra::{self, fmt_complex, ContainmentRecord, EigenspaceSum, ModifiedCase};
use bcspec::verify::{SuiteReport, VerifyConfig, VerifyReport};
use bcspec::{
    Bicomplex, BicomplexMatrix, BicomplexOperator, Complex, EigenSet, Error, IdealClass, Tolerances, VectorClass,
};

use crate::{complex_pair, scalar_json, PairKind};

pub trait Render {
    fn text(&self) -> String;
}

#[derive(Serialize)]
pub struct Envelope<'a, T> {
    pub command: &'a str,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub result: &'a T,
}

impl<T: Render> Render for Envelope<'_, T> {
    fn text(&self) -> String {
        format!(
            "{} (tol {:e}, cluster tol {:e}, seed {})\n{}",
            self.command,
            self.tolerances.singular,
            self.tolerances.cluster,
            self.seed,
            self.result.text()
        )
    }
}

fn bc(x: Bicomplex) -> String {
    x.to_string()
}

/// Reads back a canonical scalar from its `idem` field.
fn canon(j: &ScalarJson) -> Bicomplex {
    let a = j.idem.expect("canonical form");
    Bicomplex::new(Complex::new(a[0], a[1]), Complex::new(a[2], a[3])).expect("finite")
}

// ---------------------------------------------------------------- decompose

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecomposeReport {
    Scalar(Box<ScalarDecomposition>),
    Matrix(MatrixDecomposition),
}

#[derive(Serialize)]
pub struct ScalarDecomposition {
    pub idem: [f64; 4],
    pub cart: [f64; 4],
    pub real: [f64; 4],
    pub class: IdealClass,
    pub singular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<ScalarJson>,
    /// `x * x^-1`, which should be 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_check: Option<ScalarJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ScalarDecomposition {
    pub fn new(x: Bicomplex, tol: f64) -> Self {
        let canon = scalar_json(x);
        let class = x.classify(tol);
        let inverse = x.inverse(tol).ok();
        ScalarDecomposition {
            idem: canon.idem.expect("canonical form"),
            cart: canon.cart.expect("canonical form"),
            real: x.to_real(),
            class,
            singular: class.is_singular(),
            inverse: inverse.map(scalar_json),
            product_check: inverse.map(|y| scalar_json(x * y)),
            note: class.is_singular().then(|| Error::SingularElement.to_string()),
        }
    }
}

#[derive(Serialize)]
pub struct MatrixDecomposition {
    pub rows: usize,
    pub cols: usize,
    pub minus: Vec<Vec<Complex>>,
    pub plus: Vec<Vec<Complex>>,
    pub entry_classes: Vec<Vec<IdealClass>>,
}

impl MatrixDecomposition {
    pub fn new(m: &BicomplexMatrix, tol: f64) -> Self {
        let (rows, cols) = (m.minus().rows(), m.minus().cols());
        MatrixDecomposition {
            rows,
            cols,
            minus: m.minus().to_rows(),
            plus: m.plus().to_rows(),
            entry_classes: (0..rows)
                .map(|i| (0..cols).map(|j| m.entry(i, j).classify(tol)).collect())
                .collect(),
        }
    }
}

impl Render for DecomposeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            DecomposeReport::Scalar(d) => {
                let x = Bicomplex::new(Complex::new(d.idem[0], d.idem[1]), Complex::new(d.idem[2], d.idem[3]))
                    .expect("finite");
                let (z1, z2) = x.to_cartesian();
                let _ = writeln!(s, "idempotent: {x}");
                let _ = writeln!(s, "cartesian:  z1 = {}, z2 = {}", fmt_complex(z1), fmt_complex(z2));
                let _ = writeln!(s, "real:       {:?}", d.real);
                let _ = writeln!(s, "class:      {:?}", d.class);
                match &d.inverse {
                    Some(inv) => {
                        let y = canon(inv);
                        let _ = writeln!(s, "inverse:    {y}");
                    }
                    None => {
                        let _ = writeln!(s, "inverse:    none ({})", d.note.as_deref().unwrap_or(""));
                    }
                }
            }
            DecomposeReport::Matrix(m) => {
                let _ = writeln!(s, "{}x{} matrix", m.rows, m.cols);
                for (label, rows) in [("minus", &m.minus), ("plus", &m.plus)] {
                    let _ = writeln!(s, "{label}:");
                    for r in rows {
                        let cells: Vec<String> = r.iter().map(|&z| fmt_complex(z)).collect();
                        let _ = writeln!(s, "  [{}]", cells.join(", "));
                    }
                }
                let _ = writeln!(s, "entry classes: {:?}", m.entry_classes);
            }
        }
        s
    }
}

// ----------------------------------------------------------------- spectrum

#[derive(Serialize)]
pub struct EigenEntry {
    pub value: [f64; 2],
    pub multiplicity: usize,
    pub eigenspace_dim: usize,
}

#[derive(Serialize)]
pub struct CombinedEntry {
    pub value: [f64; 2],
    pub multiplicity: usize,
    pub in_upsilon1: bool,
    pub in_upsilon2: bool,
    /// `dim ker(T - lambda I)` over C1.
    pub eigenspace_dim: usize,
}

#[derive(Serialize)]
pub struct SpectrumOut {
    pub n: usize,
    pub upsilon1: Vec<EigenEntry>,
    pub upsilon2: Vec<EigenEntry>,
    pub eigenvalues: Vec<CombinedEntry>,
    pub modified_spectrum: String,
    pub containment: ContainmentRecord,
    /// Largest `||A v - lambda v||` over all reported component eigenpairs.
    pub max_residual: f64,
    pub residual_bound: f64,
}

fn entries(set: &EigenSet, spaces: &[bcspec::CSubspace]) -> Vec<EigenEntry> {
    set.values()
        .iter()
        .zip(spaces)
        .map(|(&(z, m), s)| EigenEntry {
            value: complex_pair(z),
            multiplicity: m,
            eigenspace_dim: s.dim(),
        })
        .collect()
}

fn component_residual(m: &bcspec::CMatrix, set: &EigenSet, spaces: &[bcspec::CSubspace]) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for (&(z, _), s) in set.values().iter().zip(spaces) {
        for v in s.basis() {
            let av = m.mul_vec(v)?;
            let r: Vec<Complex> = av.iter().zip(v).map(|(a, b)| a - z * b).collect();
            worst = worst.max(bcspec::linalg::vec_norm(&r));
        }
    }
    Ok(worst)
}

impl SpectrumOut {
    pub fn new(t: &BicomplexOperator, tol: &Tolerances) -> Result<Self, Error> {
        let r = spectra::component_spectra(t, tol)?;
        let eigenvalues = r
            .eigenvalues
            .values()
            .iter()
            .map(|&(z, m)| -> Result<CombinedEntry, Error> {
                Ok(CombinedEntry {
                    value: complex_pair(z),
                    multiplicity: m,
                    in_upsilon1: r.upsilon1.contains(z),
                    in_upsilon2: r.upsilon2.contains(z),
                    eigenspace_dim: spectra::modified_eigenspace_with(t, &r, Bicomplex::from_complex(z)?, tol)?.dim(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let max_residual = component_residual(t.t1(), &r.upsilon1, &r.eigenspaces1)?
            .max(component_residual(t.t2(), &r.upsilon2, &r.eigenspaces2)?);
        Ok(SpectrumOut {
            n: t.rows(),
            upsilon1: entries(&r.upsilon1, &r.eigenspaces1),
            upsilon2: entries(&r.upsilon2, &r.eigenspaces2),
            eigenvalues,
            modified_spectrum: r.upsilon().to_string(),
            containment: spectra::contains_idempotent_product(t, tol)?,
            max_residual,
            residual_bound: spectra::residual_bound(t, tol),
        })
    }
}

fn fmt_pair(v: [f64; 2]) -> String {
    fmt_complex(Complex::new(v[0], v[1]))
}

impl Render for SpectrumOut {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        for (label, set) in [("U1", &self.upsilon1), ("U2", &self.upsilon2)] {
            let _ = writeln!(s, "{label}:");
            for e in set {
                let _ = writeln!(
                    s,
                    "  {}  (algebraic {}, geometric {})",
                    fmt_pair(e.value),
                    e.multiplicity,
                    e.eigenspace_dim
                );
            }
        }
        let _ = writeln!(s, "eigenvalues of T:");
        for e in &self.eigenvalues {
            let _ = writeln!(
                s,
                "  {}  in U1: {}, in U2: {}, eigenspace dim {}",
                fmt_pair(e.value),
                e.in_upsilon1,
                e.in_upsilon2,
                e.eigenspace_dim
            );
        }
        let _ = writeln!(s, "modified spectrum: {}", self.modified_spectrum);
        let c = &self.containment;
        let _ = writeln!(s, "U1 x_e U2 contained: {}/{} pairs", c.pairs_passed, c.pairs_checked);
        if let (Some(w), Some(case)) = (c.witness, c.witness_case) {
            let _ = writeln!(s, "proper-containment witness: {} ({case:?})", bc(w));
        }
        let _ = writeln!(s, "max residual {:e} (bound {:e})", self.max_residual, self.residual_bound);
        s
    }
}

// ---------------------------------------------------------- modified / eigenspace

#[derive(Serialize)]
pub struct EigenspaceOut {
    pub dim: usize,
    pub minus_dim: usize,
    pub plus_dim: usize,
    pub minus_basis: Vec<Vec<Complex>>,
    pub plus_basis: Vec<Vec<Complex>>,
    pub assembled: Vec<VectorJson>,
    pub basis_classes: Vec<VectorClass>,
    pub all_eigenvectors_singular: bool,
    pub max_residual: f64,
    pub residual_bound: f64,
}

#[derive(Serialize)]
pub struct ModifiedReport {
    pub kappa: ScalarJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<[f64; 2]>,
    pub member: bool,
    pub case: Option<ModifiedCase>,
    pub k1_in_upsilon1: bool,
    pub k2_in_upsilon2: bool,
    pub eigenspace: Option<EigenspaceOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl ModifiedReport {
    pub fn new(t: &BicomplexOperator, kappa: Bicomplex, lambda: Option<Complex>, tol: &Tolerances) -> Result<Self, Error> {
        let r = spectra::component_spectra(t, tol)?;
        let case = r.modified_case(kappa);
        let eigenspace = match case {
            None => None,
            Some(_) => {
                let me = spectra::modified_eigenspace_with(t, &r, kappa, tol)?;
                Some(EigenspaceOut {
                    dim: me.dim(),
                    minus_dim: me.minus_basis().dim(),
                    plus_dim: me.plus_basis().dim(),
                    minus_basis: me.minus_basis().basis().to_vec(),
                    plus_basis: me.plus_basis().basis().to_vec(),
                    assembled: me.assembled.iter().map(VectorJson::from_vector).collect(),
                    basis_classes: me.basis_classes(tol.singular),
                    all_eigenvectors_singular: me.all_eigenvectors_singular,
                    max_residual: me.max_residual(t)?,
                    residual_bound: spectra::residual_bound(t, tol),
                })
            }
        };
        let verdict = case.is_none().then(|| {
            let err = if lambda.is_some() { Error::NotEigenvalue } else { Error::NotModifiedEigenvalue };
            err.to_string()
        });
        Ok(ModifiedReport {
            kappa: scalar_json(kappa),
            lambda: lambda.map(complex_pair),
            member: case.is_some(),
            case,
            k1_in_upsilon1: r.upsilon1.contains(kappa.minus()),
            k2_in_upsilon2: r.upsilon2.contains(kappa.plus()),
            eigenspace,
            verdict,
        })
    }
}

impl Render for ModifiedReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let kappa = canon(&self.kappa);
        let _ = writeln!(s, "kappa = {}", bc(kappa));
        let _ = writeln!(
            s,
            "k1 in U1: {}, k2 in U2: {}",
            self.k1_in_upsilon1, self.k2_in_upsilon2
        );
        match (&self.case, &self.eigenspace) {
            (Some(case), Some(e)) => {
                let _ = writeln!(s, "member: yes ({case:?})");
                let _ = writeln!(s, "dimension {} = {} (minus) + {} (plus)", e.dim, e.minus_dim, e.plus_dim);
                for v in &e.assembled {
                    let VectorJson::Components { minus, plus } = v else { continue };
                    let entries: Vec<String> = minus
                        .iter()
                        .zip(plus)
                        .map(|(&m, &p)| bc(Bicomplex::new(m, p).expect("finite")))
                        .collect();
                    let _ = writeln!(s, "  ({})", entries.join(", "));
                }
                let _ = writeln!(s, "basis classes: {:?}", e.basis_classes);
                let _ = writeln!(s, "all eigenvectors singular: {}", e.all_eigenvectors_singular);
                let _ = writeln!(s, "max residual {:e} (bound {:e})", e.max_residual, e.residual_bound);
            }
            _ => {
                let _ = writeln!(s, "member: no ({})", self.verdict.as_deref().unwrap_or(""));
            }
        }
        s
    }
}

// --------------------------------------------------------------------- verify

impl Render for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "{} trials per suite, n in {}..={}", c.trials, c.n_min, c.n_max);
        for suite in &self.suites {
            let _ = writeln!(s, "{}", suite_line(suite));
        }
        let _ = writeln!(s, "{}", if self.all_passed { "all suites passed" } else { "FAILURES" });
        s
    }
}

fn suite_line(suite: &SuiteReport) -> String {
    let mut line = format!(
        "{:4} {:32} {}/{}",
        if suite.ok() { "ok" } else { "FAIL" },
        suite.name,
        suite.passed,
        suite.trials
    );
    if let Some(b) = suite.guard_band {
        let _ = write!(line, "  guard band {}/{}", b.disagreements, b.samples);
    }
    if let Some(f) = suite.failures.first() {
        let _ = write!(line, "  first failure: trial {} n {}: {}", f.trial, f.n, f.detail);
    }
    line
}

// ----------------------------------------------------------------- explore-sum

#[derive(Serialize)]
pub struct SumReport {
    pub kappa: ScalarJson,
    pub kappa2: ScalarJson,
    #[serde(flatten)]
    pub sum: EigenspaceSum,
    pub finding: String,
}

impl SumReport {
    pub fn new(a: Bicomplex, b: Bicomplex, sum: EigenspaceSum) -> Self {
        let finding = if sum.is_direct {
            format!(
                "computed: the sum is direct for this pair (dimensions {} + {} = {})",
                sum.dim_first, sum.dim_second, sum.sum_dim
            )
        } else {
            format!(
                "computed: the sum is not direct for this pair (intersection dimension {})",
                sum.intersection_dim
            )
        };
        SumReport {
            kappa: scalar_json(a),
            kappa2: scalar_json(b),
            sum,
            finding,
        }
    }
}

impl Render for SumReport {
    fn text(&self) -> String {
        let a = canon(&self.kappa);
        let b = canon(&self.kappa2);
        format!(
            "kappa = {}\nkappa2 = {}\ndim ME(kappa) = {}, dim ME(kappa2) = {}\nsum dim {}, intersection dim {}, direct: {}\n{}\n",
            bc(a),
            bc(b),
            self.sum.dim_first,
            self.sum.dim_second,
            self.sum.sum_dim,
            self.sum.intersection_dim,
            self.sum.is_direct,
            self.finding
        )
    }
}

#[derive(Serialize, Default, Clone, Copy)]
pub struct Tally {
    pub pairs: usize,
    pub direct: usize,
    pub not_direct: usize,
}

#[derive(Serialize)]
pub struct Witness {
    pub trial: usize,
    pub n: usize,
    pub kind: PairKind,
    pub cases: (ModifiedCase, ModifiedCase),
    pub kappa: ScalarJson,
    pub kappa2: ScalarJson,
    pub intersection_dim: usize,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub fixed_operator: bool,
    pub totals: Tally,
    pub by_kind: BTreeMap<String, Tally>,
    /// First non-direct pairs found, up to [`MAX_WITNESSES`].
    pub witnesses: Vec<Witness>,
    pub finding: String,
}

pub const MAX_WITNESSES: usize = 10;

fn kind_key(kind: PairKind) -> String {
    serde_json::to_value(kind).expect("unit variant").as_str().expect("string").to_string()
}

impl SearchReport {
    pub fn new(cfg: &VerifyConfig, fixed_operator: bool) -> Self {
        SearchReport {
            trials: cfg.trials,
            n_min: cfg.n_min,
            n_max: cfg.n_max,
            fixed_operator,
            totals: Tally::default(),
            by_kind: BTreeMap::new(),
            witnesses: Vec::new(),
            finding: String::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn record(
        &mut self,
        trial: usize,
        n: usize,
        kind: PairKind,
        cases: (ModifiedCase, ModifiedCase),
        a: Bicomplex,
        b: Bicomplex,
        sum: EigenspaceSum,
    ) {
        let tally = self.by_kind.entry(kind_key(kind)).or_default();
        for t in [&mut *tally, &mut self.totals] {
            t.pairs += 1;
            if sum.is_direct {
                t.direct += 1;
            } else {
                t.not_direct += 1;
            }
        }
        if !sum.is_direct && self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                trial,
                n,
                kind,
                cases,
                kappa: scalar_json(a),
                kappa2: scalar_json(b),
                intersection_dim: sum.intersection_dim,
            });
        }
        self.finding = format!(
            "computed over {} sampled pairs: {} direct, {} not direct; sampled counts only, no general claim",
            self.totals.pairs, self.totals.direct, self.totals.not_direct
        );
    }
}

impl Render for SearchReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} trials, n in {}..={}{}",
            self.trials,
            self.n_min,
            self.n_max,
            if self.fixed_operator { " (fixed operator)" } else { "" }
        );
        for (kind, t) in &self.by_kind {
            let _ = writeln!(s, "  {kind:14} pairs {:5}  direct {:5}  not direct {:5}", t.pairs, t.direct, t.not_direct);
        }
        for w in &self.witnesses {
            let a = canon(&w.kappa);
            let b = canon(&w.kappa2);
            let _ = writeln!(
                s,
                "  witness trial {} n {}: {} and {} meet in dimension {}",
                w.trial,
                w.n,
                bc(a),
                bc(b),
                w.intersection_dim
            );
        }
        let _ = writeln!(s, "{}", self.finding);
        s
    }
}
