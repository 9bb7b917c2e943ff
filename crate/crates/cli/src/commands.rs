//! The subcommands, as functions from parsed arguments to a text report.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use randers_core::algebra::describe_vector;
use randers_core::classify::{case_report, classify_randers, expected_case_report};
use randers_core::flag::{flag_curvature_case, DouglasRanders, ExactFlagCurvature};
use randers_core::hypercomplex::{verify_hyper_hermitian, verify_hypercomplex};
use randers_core::scalar::{format_scalar, int, to_f64};
use randers_core::{
    AlgebraVector, CatalogCase, Evidence, Flag, LieAlgebra, MetricTensor, RandersStructure,
    RiemannianGeometry,
};

use crate::definition::Definition;
use crate::error::{describe_jacobi, CliError};
use crate::format::{parse_vector, sig12};
use crate::sampling::Sampler;

/// Output of a command. `success == false` means a verification ran and
/// failed; errors that prevent running are reported as `CliError`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub success: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, success: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

/// An algebra with metric, from the catalog or from a definition file.
#[derive(Debug, Clone)]
pub struct Setup {
    pub case: Option<CatalogCase>,
    pub definition: Definition,
}

impl Setup {
    /// Catalog algebra with its orthonormal metric.
    pub fn from_case(case: CatalogCase) -> Self {
        let definition = Definition { algebra: case.algebra(), metric: MetricTensor::identity(4), q: None, hypercomplex: None };
        Self { case: Some(case), definition }
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        Ok(Self { case: None, definition: load_definition(path)? })
    }

    pub fn labels(&self) -> &[String] {
        self.definition.algebra.labels()
    }

    pub fn dim(&self) -> usize {
        self.definition.algebra.dim()
    }

    /// `Q` from the command line, falling back to the definition file.
    pub fn q(&self, arg: Option<&str>) -> Result<AlgebraVector, CliError> {
        match (arg, &self.definition.q) {
            (Some(text), _) => parse_vector(text, self.dim()).map_err(|e| CliError::Input(format!("--Q: {e}"))),
            (None, Some(q)) => Ok(q.clone()),
            (None, None) => Err(CliError::Usage("--Q is required unless the definition file sets Q".into())),
        }
    }

    pub fn randers(&self, q: AlgebraVector) -> Result<RandersStructure, CliError> {
        let geometry = RiemannianGeometry::new(self.definition.algebra.clone(), self.definition.metric.clone())?;
        Ok(RandersStructure::new(geometry, q)?)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Reads and fully validates a definition file.
pub fn load_definition(path: &Path) -> Result<Definition, CliError> {
    Definition::parse(&read_file(path)?).map_err(|source| CliError::Definition { path: path.to_path_buf(), source })
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn headers(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn describe_brackets(alg: &LieAlgebra) -> String {
    let n = alg.dim();
    let labels = alg.labels();
    let parts: Vec<String> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !alg.basis_bracket(i, j).is_zero())
        .map(|(i, j)| format!("[{}, {}] = {}", labels[i], labels[j], describe_vector(alg.basis_bracket(i, j), labels)))
        .collect();
    if parts.is_empty() {
        "abelian".into()
    } else {
        parts.join("; ")
    }
}

pub fn catalog(format: Format) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for case in CatalogCase::ALL {
        let alg = case.algebra();
        let labels = alg.labels().to_vec();
        let report = case_report(case.id(), &RiemannianGeometry::orthonormal(alg.clone()))?;
        rows.push(vec![
            case.id().to_string(),
            describe_brackets(&alg),
            alg.derived_algebra().describe(&labels),
            report.douglas_subspace.describe(&labels),
            report.berwald_subspace.describe(&labels),
        ]);
    }
    let text = match format {
        Format::Csv => csv_text(&headers(&["case", "brackets", "derived_algebra", "douglas", "berwald"]), &rows)?,
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(out, "case {}", r[0]).unwrap();
                writeln!(out, "  brackets:           {}", r[1]).unwrap();
                writeln!(out, "  derived algebra:    {}", r[2]).unwrap();
                writeln!(out, "  Douglas directions: {}", r[3]).unwrap();
                writeln!(out, "  Berwald directions: {}", r[4]).unwrap();
            }
            out
        }
    };
    Ok(Report::ok(text))
}

/// Recomputes the Douglas and Berwald directions of the non-abelian catalog
/// algebras and compares them with the known classification. `overrides`
/// replaces the algebra and metric of individual cases.
pub fn theorem(overrides: &[(CatalogCase, Definition)], format: Format) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    let mut non_berwald = Vec::new();
    for case in CatalogCase::NON_ABELIAN {
        let geometry = match overrides.iter().rev().find(|(c, _)| *c == case) {
            Some((_, d)) if d.algebra.dim() != 4 => {
                return Err(CliError::Usage(format!("override for case {} must be four-dimensional", case.id())));
            }
            Some((_, d)) => RiemannianGeometry::new(d.algebra.clone(), d.metric.clone())?,
            None => RiemannianGeometry::orthonormal(case.algebra()),
        };
        let labels = geometry.algebra().labels().to_vec();
        let found = case_report(case.id(), &geometry)?;
        let expected = expected_case_report(case).expect("non-abelian cases have an expected report");
        let describe = |s: &randers_core::Subspace| s.describe(&labels);
        let matches = found == expected;
        if !matches {
            if found.douglas_subspace != expected.douglas_subspace {
                diffs.push(format!(
                    "case {}: Douglas directions expected {}, found {}",
                    case.id(),
                    describe(&expected.douglas_subspace),
                    describe(&found.douglas_subspace)
                ));
            }
            if found.berwald_subspace != expected.berwald_subspace {
                diffs.push(format!(
                    "case {}: Berwald directions expected {}, found {}",
                    case.id(),
                    describe(&expected.berwald_subspace),
                    describe(&found.berwald_subspace)
                ));
            }
        }
        if found.admits_non_berwald() {
            non_berwald.push(case.id().to_string());
        }
        rows.push(vec![
            case.id().to_string(),
            describe(&found.douglas_subspace),
            describe(&found.berwald_subspace),
            if found.admits_non_berwald() { "yes" } else { "no" }.to_string(),
            if matches { "ok" } else { "MISMATCH" }.to_string(),
        ]);
    }
    let success = diffs.is_empty();
    let text = match format {
        Format::Csv => csv_text(&headers(&["case", "douglas", "berwald", "non_berwald_douglas", "status"]), &rows)?,
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(out, "case {}: Douglas {}; Berwald {}; non-Berwald Douglas: {}; {}", r[0], r[1], r[2], r[3], r[4])
                    .unwrap();
            }
            let list = if non_berwald.is_empty() { "none".to_string() } else { non_berwald.join(", ") };
            writeln!(out, "non-Berwald Douglas metrics on cases: {list}").unwrap();
            for d in &diffs {
                writeln!(out, "diff: {d}").unwrap();
            }
            writeln!(out, "result: {}", if success { "PASS" } else { "FAIL" }).unwrap();
            out
        }
    };
    Ok(Report { text, success })
}

fn describe_evidence(e: &Evidence, labels: &[String]) -> Vec<String> {
    match e {
        Evidence::Parallel => vec!["Q is orthogonal to [g, g] and parallel".into()],
        Evidence::NotOrthogonal(items) => items
            .iter()
            .map(|(b, ip)| format!("g(Q, {}) = {} for [g, g] basis vector", describe_vector(b, labels), format_scalar(ip)))
            .collect(),
        Evidence::NotParallel(items) => items
            .iter()
            .map(|(i, d)| format!("nabla_{} Q = {}", labels[*i], describe_vector(d, labels)))
            .collect(),
    }
}

pub fn classify(setup: &Setup, q: Option<&str>) -> Result<Report, CliError> {
    let labels = setup.labels().to_vec();
    let r = setup.randers(setup.q(q)?)?;
    let c = classify_randers(&r)?;
    let mut out = String::new();
    writeln!(out, "Q = {}", describe_vector(r.q(), &labels)).unwrap();
    writeln!(out, "g(Q, Q) = {}", format_scalar(r.norm_q_squared())).unwrap();
    writeln!(out, "class: {}", c.class.name()).unwrap();
    for line in describe_evidence(&c.evidence, &labels) {
        writeln!(out, "evidence: {line}").unwrap();
    }
    Ok(Report::ok(out))
}

/// `(p, q)` for the closed-form flag curvature when `Q` has the catalog shape
/// for the case: `pZ + qW` for case 2, `qX` for cases 3 and 4.
fn closed_form_parameters(case: CatalogCase, q: &AlgebraVector) -> Option<(f64, f64)> {
    let zero = |ids: &[usize]| ids.iter().all(|&i| q[i] == int(0));
    match case {
        CatalogCase::Two if zero(&[0, 1]) => Some((to_f64(&q[2]), to_f64(&q[3]))),
        CatalogCase::Three | CatalogCase::Four if zero(&[1, 2, 3]) => Some((0.0, to_f64(&q[0]))),
        _ => None,
    }
}

fn closed_form(setup: &Setup, q: &AlgebraVector, flag: &Flag, k_g: f64) -> Option<f64> {
    let case = setup.case?;
    let (p, qq) = closed_form_parameters(case, q)?;
    let v = flag.pole().to_f64();
    flag_curvature_case(case, p, qq, [v[0], v[1], v[2], v[3]], k_g).ok().map(|r| r.k_f)
}

pub fn flag(setup: &Setup, q: Option<&str>, v: &str, u: &str, format: Format) -> Result<Report, CliError> {
    let n = setup.dim();
    let q = setup.q(q)?;
    let v = parse_vector(v, n).map_err(|e| CliError::Input(format!("--V: {e}")))?;
    let u = parse_vector(u, n).map_err(|e| CliError::Input(format!("--U: {e}")))?;
    let flag = Flag::new(v, u)?;
    let r = setup.randers(q.clone())?;
    let d = DouglasRanders::new(&r)?;
    let dh = d.deng_hou_exact(&flag)?;
    let s = d.simplified_exact(&flag)?;
    let sf = s.to_f64();
    let closed = closed_form(setup, &q, &flag, sf.k_g);
    let fields: Vec<(&str, String)> = vec![
        ("K_F", sig12(sf.k_f)),
        ("K_g", sig12(sf.k_g)),
        ("K_g_exact", format_scalar(&s.k_g)),
        ("correction", sig12(sf.correction)),
        ("F", sig12(sf.f_value)),
        ("g_VV", format_scalar(&s.g_vv)),
        ("K_F_deng_hou", sig12(to_f64(&dh.k_f))),
        ("K_F_simplified", sig12(sf.k_f)),
        ("K_F_closed_form", closed.map_or_else(|| "n/a".into(), sig12)),
    ];
    let text = match format {
        Format::Csv => csv_text(
            &fields.iter().map(|(k, _)| k.to_string()).collect::<Vec<_>>(),
            &[fields.iter().map(|(_, v)| v.clone()).collect()],
        )?,
        Format::Text => fields.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
    };
    Ok(Report::ok(text))
}

fn sweep_row(flag: &Flag, e: &ExactFlagCurvature) -> Vec<String> {
    let f = e.to_f64();
    let mut row: Vec<String> = flag.pole().iter().map(format_scalar).collect();
    row.extend([
        sig12(f.k_g),
        sig12(f.k_f),
        sig12(f.correction),
        (e.k_f.cmp(&int(0)) == e.k_g.cmp(&int(0))).to_string(),
        format_scalar(&e.k_g),
    ]);
    row
}

/// Flag curvature on `samples` seeded random flags, as CSV. Rows are
/// computed in parallel and emitted in sample order.
pub fn sweep(setup: &Setup, q: Option<&str>, samples: u64, seed: u64) -> Result<Report, CliError> {
    let n = setup.dim();
    let r = setup.randers(setup.q(q)?)?;
    let d = DouglasRanders::new(&r)?;
    let sampler = Sampler::new(seed);
    let rows = (0..samples)
        .into_par_iter()
        .map(|i| {
            let flag = sampler.flag(n, i);
            d.simplified_exact(&flag).map(|e| sweep_row(&flag, &e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut header: Vec<String> = if n == 4 {
        headers(&["a", "b", "c", "d"])
    } else {
        (1..=n).map(|k| format!("v{k}")).collect()
    };
    header.extend(headers(&["K_g", "K_F", "correction", "sign_match", "K_g_exact"]));
    Ok(Report::ok(csv_text(&header, &rows)?))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

/// Validates a definition file and describes the resulting geometry.
pub fn check(path: &Path) -> Result<Report, CliError> {
    let def = Definition::parse_unchecked(&read_file(path)?)
        .map_err(|source| CliError::Definition { path: path.to_path_buf(), source })?;
    let labels = def.algebra.labels().to_vec();
    let mut out = String::new();
    let mut success = true;
    writeln!(out, "basis: {}", labels.join(", ")).unwrap();
    writeln!(out, "brackets: {}", describe_brackets(&def.algebra)).unwrap();
    let violations = def.algebra.jacobi_check();
    writeln!(out, "Jacobi identity: {}", status(violations.is_empty())).unwrap();
    for v in &violations {
        writeln!(out, "  {}", describe_jacobi(v, &labels)).unwrap();
    }
    writeln!(out, "metric: positive definite").unwrap();
    if violations.is_empty() {
        let geometry = RiemannianGeometry::new(def.algebra.clone(), def.metric.clone())?;
        let report = case_report(0, &geometry)?;
        writeln!(out, "derived algebra: {}", def.algebra.derived_algebra().describe(&labels)).unwrap();
        writeln!(out, "Douglas directions: {}", report.douglas_subspace.describe(&labels)).unwrap();
        writeln!(out, "Berwald directions: {}", report.berwald_subspace.describe(&labels)).unwrap();
        if let Some(q) = &def.q {
            writeln!(out, "Q = {}", describe_vector(q, &labels)).unwrap();
            match RandersStructure::new(geometry, q.clone()) {
                Ok(r) => writeln!(out, "class: {}", classify_randers(&r)?.class.name()).unwrap(),
                Err(e) => {
                    success = false;
                    writeln!(out, "Q: FAILED: {e}").unwrap();
                }
            }
        }
    } else {
        success = false;
    }
    if let Some(t) = &def.hypercomplex {
        let ok = verify_hypercomplex(&def.algebra, t)?.passed() && verify_hyper_hermitian(&def.metric, t)?.passed();
        success &= ok;
        writeln!(out, "hypercomplex structure: {}", status(ok)).unwrap();
    }
    writeln!(out, "result: {}", if success { "PASS" } else { "FAIL" }).unwrap();
    Ok(Report { text: out, success })
}

/// Checks every axiom of the `[hypercomplex]` triple of a definition file.
pub fn hyper_verify(path: &Path) -> Result<Report, CliError> {
    let def = load_definition(path)?;
    let t = def
        .hypercomplex
        .as_ref()
        .ok_or_else(|| CliError::Input(format!("{}: no [hypercomplex] table", path.display())))?;
    let labels = def.algebra.labels().to_vec();
    let h = verify_hypercomplex(&def.algebra, t)?;
    let herm = verify_hyper_hermitian(&def.metric, t)?;
    let mut out = String::new();
    writeln!(out, "dimension divisible by 4: {}", status(h.dim_ok)).unwrap();
    for (k, s) in h.structures.iter().enumerate() {
        writeln!(out, "J{}^2 = -I: {}", k + 1, status(s.square_ok)).unwrap();
    }
    writeln!(out, "J1 J2 = J3: {}", status(h.product_ok)).unwrap();
    writeln!(out, "J2 J3 = J1: {}", status((&t.j2 * &t.j3) == t.j1)).unwrap();
    writeln!(out, "J3 J1 = J2: {}", status((&t.j3 * &t.j1) == t.j2)).unwrap();
    writeln!(out, "J2 J1 = -J3: {}", status(h.anticommute_ok)).unwrap();
    for (k, s) in h.structures.iter().enumerate() {
        let details: Vec<String> = s
            .violations
            .iter()
            .map(|v| format!("N({}, {}) = {}", labels[v.i], labels[v.j], describe_vector(&v.value, &labels)))
            .collect();
        if details.is_empty() {
            writeln!(out, "N_J{} = 0: ok", k + 1).unwrap();
        } else {
            writeln!(out, "N_J{} = 0: FAILED: {}", k + 1, details.join("; ")).unwrap();
        }
    }
    for (k, bad) in herm.violations.iter().enumerate() {
        if bad.is_empty() {
            writeln!(out, "g(J{0}., J{0}.) = g: ok", k + 1).unwrap();
        } else {
            let pairs: Vec<String> = bad.iter().map(|&(a, b)| format!("({}, {})", labels[a], labels[b])).collect();
            writeln!(out, "g(J{0}., J{0}.) = g: FAILED at {1}", k + 1, pairs.join(", ")).unwrap();
        }
    }
    let success = h.passed()
        && herm.passed()
        && (&t.j2 * &t.j3) == t.j1
        && (&t.j3 * &t.j1) == t.j2;
    writeln!(out, "result: {}", if success { "PASS" } else { "FAIL" }).unwrap();
    Ok(Report { text: out, success })
}
