//! Analysis pipeline behind the `mdsep` binary: criteria ladder, verdict,
//! decompositions, and their text / JSON renderings.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::criteria::{
    bisep_triads, frobenius_bound, l1_general, l1_raw, l1_svd, l1_svd_best, l2_triads, slice_singular_values, Criterion,
    CriterionResult,
};
use crate::ensembles::{
    bisep_ensemble, hosvd_ensemble, l1_ensemble, l1_general_ensemble, l2_ensemble_grouped, verify_ensemble,
    EnsembleCheck, SeparableEnsemble,
};
use crate::error::{input, Error, Result};
use crate::fixtures::{EXAMPLE_1, EXAMPLE_2};
use crate::hosvd::{hosvd, hosvd_l1_from, HosvdResult};
use crate::hs::{
    density_from_general, min_pt_eigenvalue, pairing_defect, spectrum, validate_density, GeneralHsTensor,
    MdsTensor, Qubit, ValidityReport,
};
use crate::input::{read_tensor_file, TensorInput};
use crate::numerics::{ComplexMatrix, RealMatrix};
use crate::states::{noisy_criterion, noisy_ensemble, noisy_hs, NoisyStateSpec};
use crate::unfolding::unfold;

/// Mode selection for slice-based criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeSel {
    Fixed(Qubit),
    #[default]
    Best,
}

impl ModeSel {
    fn allows(self, q: Qubit) -> bool {
        match self {
            ModeSel::Fixed(m) => m == q,
            ModeSel::Best => true,
        }
    }
}

impl FromStr for ModeSel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best" => Ok(ModeSel::Best),
            _ => s.parse().map(ModeSel::Fixed),
        }
    }
}

/// Tensors bundled with the binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Example1,
    Example2,
}

impl Builtin {
    pub fn tensor(self) -> MdsTensor<f64> {
        match self {
            Builtin::Example1 => MdsTensor::from_dense(&EXAMPLE_1),
            Builtin::Example2 => MdsTensor::from_sparse(EXAMPLE_2),
        }
        .expect("bundled tensor is valid")
    }

    fn name(self) -> &'static str {
        match self {
            Builtin::Example1 => "example-1",
            Builtin::Example2 => "example-2",
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example-1" | "example1" | "1" => Ok(Builtin::Example1),
            "example-2" | "example2" | "2" => Ok(Builtin::Example2),
            _ => Err(input(format!("unknown built-in tensor {s:?} (expected example-1 or example-2)"))),
        }
    }
}

/// Where the operator came from.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Source {
    Tensor { label: String, tensor: TensorInput },
    State(NoisyStateSpec<f64>),
}

impl Source {
    pub fn file(path: &std::path::Path) -> Result<Self> {
        Ok(Source::Tensor {
            label: path.display().to_string(),
            tensor: read_tensor_file(path)?,
        })
    }

    pub fn builtin(b: Builtin) -> Self {
        Source::Tensor {
            label: b.name().to_string(),
            tensor: TensorInput::Mds(b.tensor()),
        }
    }

    /// Scales an MDS source; other sources are rejected.
    pub fn scaled(self, k: f64) -> Result<Self> {
        match self {
            Source::Tensor {
                label,
                tensor: TensorInput::Mds(t),
            } => Ok(Source::Tensor {
                label: format!("{label} x {}", sig(k)),
                tensor: TensorInput::Mds(MdsTensor::from_finite(*t.scaled(k).as_array())?),
            }),
            _ => Err(input("--scale applies to MDS tensors only")),
        }
    }

    pub fn general(&self) -> GeneralHsTensor<f64> {
        match self {
            Source::Tensor { tensor, .. } => tensor.to_general(),
            Source::State(spec) => noisy_hs(spec),
        }
    }

    pub fn mds(&self) -> Option<MdsTensor<f64>> {
        match self {
            Source::Tensor { tensor, .. } => tensor.as_mds(),
            Source::State(_) => None,
        }
    }

    pub fn density(&self) -> ComplexMatrix<f64> {
        density_from_general(&self.general())
    }

    pub fn describe(&self) -> String {
        match self {
            Source::Tensor {
                label,
                tensor: TensorInput::Mds(_),
            } => format!("{label} (MDS tensor)"),
            Source::Tensor { label, .. } => format!("{label} (general tensor)"),
            Source::State(s) => format!("noisy {} state, p = {}", s.family, sig(s.p)),
        }
    }

    fn require_mds(&self, what: &str) -> Result<MdsTensor<f64>> {
        self.mds()
            .ok_or_else(|| input(format!("{what} needs an MDS tensor; {} is not one", self.describe())))
    }
}

/// Ensemble forms produced by `decompose`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    L1,
    L1Rotated,
    L2,
    Bisep,
    Hosvd,
    Noisy,
}

impl Form {
    pub const ALL: [Form; 6] = [Form::L1, Form::L1Rotated, Form::L2, Form::Bisep, Form::Hosvd, Form::Noisy];

    pub fn name(self) -> &'static str {
        match self {
            Form::L1 => "l1",
            Form::L1Rotated => "l1-rotated",
            Form::L2 => "l2",
            Form::Bisep => "bisep",
            Form::Hosvd => "hosvd",
            Form::Noisy => "noisy",
        }
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Form::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| input(format!("unknown form {s:?} (expected l1, l1-rotated, l2, bisep, hosvd or noisy)")))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "not a density matrix")]
    NotDensity,
    #[serde(rename = "fully separable (certified)")]
    FullySeparable,
    #[serde(rename = "biseparable (certified)")]
    Biseparable,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotDensity => "not a density matrix",
            Verdict::FullySeparable => "fully separable (certified)",
            Verdict::Biseparable => "biseparable (certified)",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pairing {
    /// `max_i |λ_i + λ_{9-i} - 1/4|` over the ascending spectrum.
    pub max_defect: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtEntry {
    pub qubit: Qubit,
    pub min_eigenvalue: f64,
}

/// The ensemble behind a certified verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub criterion: Criterion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<u8>,
    pub value: f64,
    pub form: Form,
    pub terms: usize,
    pub identity_weight: f64,
    pub check: EnsembleCheck<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub validity: ValidityReport<f64>,
    /// Eigenvalues of ρ, ascending.
    pub spectrum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Pairing>,
    pub partial_transpose: Vec<PtEntry>,
    /// Some partial transpose has a negative eigenvalue: the state is entangled.
    pub npt: bool,
    pub criteria: Vec<CriterionResult<f64>>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip)]
    pub ensemble: Option<SeparableEnsemble<f64>>,
}

/// A candidate certificate: criterion, the form that realises it, and a
/// constructor for the ensemble.
type Candidate<'a> = (CriterionResult<f64>, Form, Box<dyn Fn() -> Result<SeparableEnsemble<f64>> + 'a>);

fn candidates<'a>(source: &'a Source, mode: ModeSel, criteria: &[CriterionResult<f64>]) -> Vec<Candidate<'a>> {
    let mut out: Vec<Candidate<'a>> = Vec::new();
    for c in criteria.iter().filter(|c| c.satisfied).cloned() {
        let q = c.mode.unwrap_or(Qubit::A);
        match (c.name, source) {
            (Criterion::L1Raw, _) => {
                let t = source.mds().expect("l1_raw is only computed for MDS input");
                out.push((c, Form::L1, Box::new(move || l1_ensemble(&t, false, Qubit::A))));
            }
            (Criterion::L1Svd, _) if mode.allows(q) => {
                let t = source.mds().expect("MDS");
                out.push((c, Form::L1Rotated, Box::new(move || l1_ensemble(&t, true, q))));
            }
            (Criterion::L2Triads, _) => {
                let t = source.mds().expect("MDS");
                out.push((c, Form::L2, Box::new(move || l2_ensemble_grouped(&t, q))));
            }
            (Criterion::HosvdL1, _) => {
                let t = source.mds().expect("MDS");
                out.push((c, Form::Hosvd, Box::new(move || hosvd_ensemble(&t, q))));
            }
            (Criterion::L1General, _) => {
                let g = source.general();
                out.push((c, Form::L1, Box::new(move || l1_general_ensemble(&g))));
            }
            (Criterion::NoisyFamily, Source::State(spec)) => {
                out.push((c, Form::Noisy, Box::new(move || noisy_ensemble(spec))));
            }
            (Criterion::BisepTriads, _) => {
                let t = source.mds().expect("MDS");
                out.push((c, Form::Bisep, Box::new(move || bisep_ensemble(&t))));
            }
            _ => {}
        }
    }
    // full separability before biseparability; stable, so ladder order is kept
    out.sort_by_key(|(c, _, _)| c.name.implication() != crate::criteria::Implication::FullySeparable);
    out
}

/// Runs every applicable criterion and tries to certify the strongest
/// verdict available.
pub fn analyze(source: &Source, mode: ModeSel) -> Result<AnalysisReport> {
    let rho = source.density();
    let validity = validate_density(&rho)?;
    let spectrum = spectrum(&rho)?;
    let mds = source.mds();
    let pairing = mds.map(|_| {
        let max_defect = pairing_defect(&spectrum);
        Pairing {
            max_defect,
            ok: max_defect <= 1e-9,
        }
    });
    let partial_transpose = Qubit::ALL
        .into_iter()
        .map(|qubit| min_pt_eigenvalue(&rho, qubit).map(|min_eigenvalue| PtEntry { qubit, min_eigenvalue }))
        .collect::<Result<Vec<_>>>()?;
    let npt = partial_transpose.iter().any(|e| e.min_eigenvalue < -1e-10);

    let criteria = match (&mds, source) {
        (Some(t), _) => ladder(t, mode),
        (None, Source::State(spec)) => vec![l1_general(&source.general()), noisy_criterion(spec)],
        (None, _) => vec![l1_general(&source.general())],
    };

    let mut verdict = if validity.is_density() {
        Verdict::Inconclusive
    } else {
        Verdict::NotDensity
    };
    let mut certificate = None;
    let mut ensemble = None;
    if validity.is_density() {
        for (c, form, build) in candidates(source, mode, &criteria) {
            let Ok(e) = build() else { continue };
            let check = verify_ensemble(&e, &rho);
            if !check.ok {
                continue;
            }
            verdict = match c.name.implication() {
                crate::criteria::Implication::FullySeparable => Verdict::FullySeparable,
                crate::criteria::Implication::Biseparable => Verdict::Biseparable,
                crate::criteria::Implication::Necessary => continue,
            };
            certificate = Some(Certificate {
                criterion: c.name,
                mode: c.mode.map(Qubit::mode),
                value: c.value,
                form,
                terms: e.terms.len(),
                identity_weight: e.identity_weight(),
                check,
            });
            ensemble = Some(e);
            break;
        }
    }

    Ok(AnalysisReport {
        input: source.describe(),
        validity,
        spectrum,
        pairing,
        partial_transpose,
        npt,
        criteria,
        verdict,
        certificate,
        ensemble,
    })
}

/// Criteria for an MDS tensor in ladder order.
fn ladder(t: &MdsTensor<f64>, mode: ModeSel) -> Vec<CriterionResult<f64>> {
    let h = hosvd(t);
    let hosvd_l1 = match mode {
        ModeSel::Fixed(q) => hosvd_l1_from(&h, q),
        ModeSel::Best => crate::criteria::best_of(Qubit::ALL.map(|q| hosvd_l1_from(&h, q))),
    };
    let mut v = vec![frobenius_bound(t), l1_raw(t)];
    v.extend(Qubit::ALL.map(|q| l1_svd(t, q)));
    v.push(l2_triads(t, Qubit::C));
    v.push(bisep_triads(t));
    v.push(hosvd_l1);
    v
}

/// A decomposition ready to be written out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub form: Form,
    pub criterion: CriterionResult<f64>,
    pub check: EnsembleCheck<f64>,
    pub ensemble: SeparableEnsemble<f64>,
}

/// Builds the requested ensemble. `Best` picks the smallest criterion value
/// for `l1-rotated` and `hosvd`, and the C grouping for `l2`.
pub fn decompose(source: &Source, form: Form, mode: ModeSel) -> Result<Decomposition> {
    let need = |what: &str| source.require_mds(&format!("form {what}"));
    let (criterion, ensemble) = match form {
        Form::L1 => match source.mds() {
            Some(t) => (l1_raw(&t), l1_ensemble(&t, false, Qubit::A)?),
            None => {
                let g = source.general();
                (l1_general(&g), l1_general_ensemble(&g)?)
            }
        },
        Form::L1Rotated => {
            let t = need("l1-rotated")?;
            let c = match mode {
                ModeSel::Fixed(q) => l1_svd(&t, q),
                ModeSel::Best => l1_svd_best(&t),
            };
            let q = c.mode.unwrap_or(Qubit::A);
            (c, l1_ensemble(&t, true, q)?)
        }
        Form::L2 => {
            let t = need("l2")?;
            let q = match mode {
                ModeSel::Fixed(q) => q,
                ModeSel::Best => Qubit::C,
            };
            (l2_triads(&t, q), l2_ensemble_grouped(&t, q)?)
        }
        Form::Bisep => {
            let t = need("bisep")?;
            (bisep_triads(&t), bisep_ensemble(&t)?)
        }
        Form::Hosvd => {
            let t = need("hosvd")?;
            let h = hosvd(&t);
            let c = match mode {
                ModeSel::Fixed(q) => hosvd_l1_from(&h, q),
                ModeSel::Best => crate::criteria::best_of(Qubit::ALL.map(|q| hosvd_l1_from(&h, q))),
            };
            let q = c.mode.unwrap_or(Qubit::A);
            (c, hosvd_ensemble(&t, q)?)
        }
        Form::Noisy => match source {
            Source::State(spec) => (noisy_criterion(spec), noisy_ensemble(spec)?),
            _ => return Err(input("form noisy needs a --state source")),
        },
    };
    let check = verify_ensemble(&ensemble, &source.density());
    Ok(Decomposition {
        form,
        criterion,
        check,
        ensemble,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HosvdReport {
    pub input: String,
    /// `[U1, U2, U3]` as row-major 3x3 arrays.
    pub factors: [[[f64; 3]; 3]; 3],
    pub mode_singular_values: [[f64; 3]; 3],
    /// Core unfoldings along modes 1, 2, 3 (3x9 rows).
    pub core_unfoldings: [[[f64; 9]; 3]; 3],
    /// Slice singular values of the core, per mode and slice.
    pub core_slice_singular_values: [[[f64; 3]; 3]; 3],
    pub criteria: Vec<CriterionResult<f64>>,
    pub reconstruction_error: f64,
}

pub fn hosvd_report(source: &Source, mode: ModeSel) -> Result<HosvdReport> {
    let t = source.require_mds("hosvd")?;
    let h: HosvdResult<f64> = hosvd(&t);
    let rows3 = |m: &RealMatrix<f64>| [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]));
    let rows9 = |m: &RealMatrix<f64>| [0, 1, 2].map(|i| std::array::from_fn(|j| m[(i, j)]));
    Ok(HosvdReport {
        input: source.describe(),
        factors: [0, 1, 2].map(|k| rows3(&h.factors[k])),
        mode_singular_values: h.mode_singular_values,
        core_unfoldings: Qubit::ALL.map(|q| rows9(&unfold(&h.core, q).m)),
        core_slice_singular_values: Qubit::ALL.map(|q| slice_singular_values(&h.core, q)),
        criteria: Qubit::ALL
            .into_iter()
            .filter(|&q| mode.allows(q))
            .map(|q| hosvd_l1_from(&h, q))
            .collect(),
        reconstruction_error: h.reconstruct().max_abs_diff(&t),
    })
}

/// 12 significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if r.abs() < 1e-4 || r.abs() >= 1e12 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
            if let Some(m) = serde_json::Number::from_f64(if r == 0.0 { 0.0 } else { r }) {
                *n = m;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with floats rounded to 12 significant digits.
pub fn to_json<S: Serialize>(x: &S) -> String {
    let mut v = serde_json::to_value(x).expect("report serializes");
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn criterion_label(c: &CriterionResult<f64>) -> String {
    match (c.name, c.mode) {
        (Criterion::L2Triads, Some(q)) => format!("{} (group {})", c.name.label(), q.mode()),
        (_, Some(q)) => format!("{} (mode {})", c.name.label(), q.mode()),
        (_, None) => c.name.label().to_string(),
    }
}

/// One line per criterion.
pub fn render_criteria(out: &mut String, criteria: &[CriterionResult<f64>]) {
    for c in criteria {
        let _ = writeln!(
            out,
            "  {:<22} {:>16} <= {}  {}",
            criterion_label(c),
            sig(c.value),
            sig(c.threshold),
            yes(c.satisfied)
        );
    }
}

impl AnalysisReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let v = &self.validity;
        let _ = writeln!(s, "input: {}", self.input);
        let _ = writeln!(
            s,
            "hermitian: {}  unit trace: {}  psd: {}  mds: {}",
            yes(v.hermitian),
            yes(v.unit_trace),
            yes(v.psd),
            yes(v.is_mds)
        );
        let spec: Vec<String> = self.spectrum.iter().map(|&x| sig(x)).collect();
        let _ = writeln!(s, "spectrum: {}", spec.join(" "));
        if let Some(p) = self.pairing {
            let _ = writeln!(s, "pairing defect: {} ({})", sig(p.max_defect), if p.ok { "ok" } else { "broken" });
        }
        let pt: Vec<String> = self
            .partial_transpose
            .iter()
            .map(|e| format!("{} {}", e.qubit, sig(e.min_eigenvalue)))
            .collect();
        let _ = writeln!(s, "partial transpose min eigenvalue: {}", pt.join("  "));
        if self.npt {
            let _ = writeln!(s, "note: negative partial transpose, the state is entangled");
        }
        let _ = writeln!(s, "criteria:");
        render_criteria(&mut s, &self.criteria);
        let _ = write!(s, "verdict: {}", self.verdict);
        if let Some(c) = &self.certificate {
            let mode = c.mode.map(|m| format!(" mode {m}")).unwrap_or_default();
            let _ = write!(
                s,
                " via {}{mode} = {}, {} ensemble of {} terms, residual {}",
                c.criterion.label(),
                sig(c.value),
                c.form,
                c.terms,
                sig(c.check.residual)
            );
        }
        s.push('\n');
        s
    }
}

impl Decomposition {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "form: {}", self.form);
        render_criteria(&mut s, std::slice::from_ref(&self.criterion));
        let _ = writeln!(
            s,
            "terms: {}  identity weight: {}  weight sum: {}",
            self.ensemble.terms.len(),
            sig(self.ensemble.identity_weight()),
            sig(self.check.weight_sum)
        );
        let _ = writeln!(
            s,
            "reconstruction residual: {}  min term eigenvalue: {}  verified: {}",
            sig(self.check.residual),
            sig(self.check.min_term_eigenvalue),
            yes(self.check.ok)
        );
        s
    }
}

impl HosvdReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", self.input);
        for (k, u) in self.factors.iter().enumerate() {
            let _ = writeln!(s, "U{}:", k + 1);
            for row in u {
                let _ = writeln!(s, "  {}", row.map(sig).join(" "));
            }
        }
        for (k, sv) in self.mode_singular_values.iter().enumerate() {
            let _ = writeln!(s, "mode {} singular values: {}", k + 1, sv.map(sig).join(" "));
        }
        for (k, m) in self.core_unfoldings.iter().enumerate() {
            let _ = writeln!(s, "core unfolding {}:", k + 1);
            for row in m {
                let _ = writeln!(s, "  {}", row.map(sig).join(" "));
            }
        }
        let _ = writeln!(s, "criteria:");
        render_criteria(&mut s, &self.criteria);
        let _ = writeln!(s, "reconstruction error: {}", sig(self.reconstruction_error));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::Family;

    #[test]
    fn example_1_certified_through_mode_1() {
        let r = analyze(&Source::builtin(Builtin::Example1), ModeSel::Best).unwrap();
        assert_eq!(r.verdict, Verdict::FullySeparable);
        let c = r.certificate.unwrap();
        assert_eq!((c.criterion, c.mode), (Criterion::L1Svd, Some(1)));
        assert!(c.check.ok);
        assert!(r.pairing.unwrap().ok);
        assert!(!r.npt);
    }

    #[test]
    fn fixed_mode_restricts_certificate() {
        let r = analyze(&Source::builtin(Builtin::Example1), ModeSel::Fixed(Qubit::C)).unwrap();
        let c = r.certificate.unwrap();
        assert_eq!((c.criterion, c.mode), (Criterion::L1Svd, Some(3)));
    }

    #[test]
    fn scaled_example_not_density() {
        let src = Source::builtin(Builtin::Example1).scaled(3.0).unwrap();
        let r = analyze(&src, ModeSel::Best).unwrap();
        assert_eq!(r.verdict, Verdict::NotDensity);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn noisy_states() {
        let ghz = Source::State(NoisyStateSpec::new(Family::Ghz, 0.2).unwrap());
        let r = analyze(&ghz, ModeSel::Best).unwrap();
        assert_eq!(r.verdict, Verdict::FullySeparable);
        assert_eq!(r.certificate.unwrap().form, Form::Noisy);
        let w = Source::State(NoisyStateSpec::new(Family::W, 0.25).unwrap());
        let r = analyze(&w, ModeSel::Best).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.npt);
    }

    #[test]
    fn decompose_forms() {
        let src = Source::builtin(Builtin::Example1);
        let d = decompose(&src, Form::L1Rotated, ModeSel::Best).unwrap();
        assert!(d.check.ok);
        assert_eq!(d.criterion.mode, Some(Qubit::B));
        assert!(matches!(decompose(&src, Form::L1, ModeSel::Best), Err(Error::Refused { .. })));
        assert!(matches!(decompose(&src, Form::Noisy, ModeSel::Best), Err(Error::Input(_))));
        let small = src.scaled(0.5).unwrap();
        for form in [Form::L1, Form::L2, Form::Bisep, Form::Hosvd] {
            let d = decompose(&small, form, ModeSel::Best).unwrap();
            assert!(d.check.ok, "{form}");
        }
    }

    #[test]
    fn json_rounding() {
        let s = to_json(&[0.1 + 0.2, 1.0 / 3.0, 0.0]);
        assert!(s.contains("0.3,") || s.contains("0.3\n"), "{s}");
        assert!(s.contains("0.333333333333"), "{s}");
        assert!(!s.contains("0.3333333333333"), "{s}");
    }

    #[test]
    fn mode_sel_parse() {
        assert_eq!("best".parse::<ModeSel>().unwrap(), ModeSel::Best);
        assert_eq!("2".parse::<ModeSel>().unwrap(), ModeSel::Fixed(Qubit::B));
        assert!("4".parse::<ModeSel>().is_err());
    }
}
