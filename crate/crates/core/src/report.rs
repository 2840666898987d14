//! The full pipeline and its report.
//!
//! `input` echoes the problem; `results` depends only on the complex, the
//! mod-2 matrix and the options, so an integral matrix and its reduction
//! give identical `results`.

use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::a1_decomp::{decompose, verify, witness_names, A1Decomposition};
use crate::combinatorics::{f_vector, h_vector};
use crate::ext_charts::{assemble_e2, BigradedChart, PageStatus};
use crate::face_ring::{build_face_ring_with, FaceRingOptions, GradedAlgebraF2, Monomial, Rewrite};
use crate::ko_groups::{
    collapse_holds, e2_bound, ko_homology, periodic_cohomology, periodic_homology, reduced,
    GradedAbelianGroup,
};
use crate::problem::{Field, Mode, ProblemSpec, SpecError};
use crate::render::render_ascii;
use crate::steenrod::{check_wu_formula, is_spin, sq2_homology, sq2_operator};

pub const NO_ODD_TORSION: &str =
    "no odd torsion: away from 2 the groups are torsion-free, so Z^a ⊕ (Z/2)^b is the integral answer";
pub const PRESENTATION_ASSUMED: &str =
    "presentation assumed: for singular input the cohomology ring is taken to be the face-ring quotient";
pub const MOD2_INPUT: &str = "matrix given mod 2; existence of an integral lift was not checked";
pub const E2_ONLY: &str = "E2 only; differentials unresolved";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{module}: {message}")]
    Module { module: &'static str, message: String },
}

fn fail(module: &'static str, e: impl ToString) -> PipelineError {
    PipelineError::Module {
        module,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputSection {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub field: Field,
    pub mode: Mode,
    pub facets: Vec<Vec<usize>>,
    pub lambda: Vec<Vec<i64>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    pub integral: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSection {
    pub monomial: Vec<String>,
    pub linear: Vec<String>,
    pub rewrites: Vec<DegreeRewrites>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRewrites {
    pub degree: usize,
    pub rules: Vec<Rewrite>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sq2Matrix {
    pub from: usize,
    pub to: usize,
    pub rank: usize,
    /// Rows indexed by the target basis, columns by the source basis.
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sq2Section {
    pub matrices: Vec<Sq2Matrix>,
    pub homology: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinSection {
    pub computed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wu_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_preimage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessNames {
    pub degree: usize,
    pub c: Vec<String>,
    pub d: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSection {
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub formula: String,
    pub summands: Vec<String>,
    pub witnesses: Vec<WitnessNames>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseSection {
    pub established: bool,
    pub status: PageStatus,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Results {
    pub real_dimension: usize,
    pub f_vector: Vec<u64>,
    pub h_vector: Option<Vec<u64>>,
    pub cohomology: Vec<CohomologyRow>,
    pub relations: RelationSection,
    pub sq2: Sq2Section,
    pub spin: SpinSection,
    pub decomposition: DecompositionSection,
    pub collapse: CollapseSection,
    pub ko: Option<GradedAbelianGroup>,
    pub ko_reduced: Option<GradedAbelianGroup>,
    #[serde(rename = "KO_homology")]
    pub ko_periodic: Option<GradedAbelianGroup>,
    #[serde(rename = "KO_cohomology")]
    pub ko_cohomology: Option<GradedAbelianGroup>,
    /// Groups the E2 page would give; printed only when collapse is open.
    pub e2_bound: Option<GradedAbelianGroup>,
    pub chart: BigradedChart,
    pub warnings: Vec<String>,
    pub footnotes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub input: InputSection,
    pub results: Results,
}

/// Everything the pipeline produces, for callers that need more than the
/// report.
pub struct Computation {
    pub algebra: GradedAlgebraF2,
    pub decomposition: A1Decomposition,
    pub report: Report,
}

pub fn run_pipeline(spec: &ProblemSpec) -> Result<Report, PipelineError> {
    compute(spec).map(|c| c.report)
}

fn var_name(v: usize) -> String {
    format!("v{}", v + 1)
}

pub fn compute(spec: &ProblemSpec) -> Result<Computation, PipelineError> {
    let k = spec.complex()?;
    let lambda = spec.char_mod2(&k)?;
    let n = spec.n;
    let manifold = spec.mode == Mode::Manifold;
    let mut warnings = Vec::new();
    let mut footnotes = vec![NO_ODD_TORSION.to_string()];
    let mut notes = Vec::new();
    if spec.field == Field::Mod2 {
        notes.push(MOD2_INPUT.to_string());
    }
    if !manifold {
        footnotes.push(PRESENTATION_ASSUMED.to_string());
    }

    let f = f_vector(&k);
    let h = match h_vector(&f, n) {
        Ok(h) => Some(h),
        Err(e) if !manifold => {
            warnings.push(format!("combinatorics: {e}"));
            None
        }
        Err(e) => return Err(fail("combinatorics", e)),
    };

    let options = FaceRingOptions {
        variable_order: None,
        trust_sphere: spec.trust_sphere || manifold,
    };
    let algebra = build_face_ring_with(&k, &lambda, &options).map_err(|e| fail("face_ring", e))?;

    let op = sq2_operator(&algebra).map_err(|e| fail("steenrod", e))?;
    let homology = sq2_homology(&op);
    let spin = if manifold {
        let verdict = is_spin(&algebra, &op).map_err(|e| fail("steenrod", e))?;
        check_wu_formula(&algebra, &verdict).map_err(|e| fail("steenrod", e))?;
        SpinSection {
            computed: true,
            spin: Some(verdict.spin),
            wu_class: Some(algebra.class_name(&verdict.wu_class)),
            top_preimage: verdict.top_preimage.as_ref().map(|x| algebra.class_name(x)),
            note: None,
        }
    } else {
        SpinSection {
            computed: false,
            spin: None,
            wu_class: None,
            top_preimage: None,
            note: Some("spin test skipped for singular input".to_string()),
        }
    };

    let dec = decompose(&algebra, &op);
    verify(&dec, &algebra, &op).map_err(|e| fail("a1_decomp", e))?;

    let collapsed = collapse_holds(manifold, 2 * n);
    let status = if collapsed { PageStatus::Collapsed } else { PageStatus::E2Only };
    let max_degree = spec.max_degree.unwrap_or(2 * n as i64 + 8).max(0);
    let chart = assemble_e2(&dec, 2 * n as i64 + 8, 8, status);

    let collapse_note = if manifold {
        "quasitoric manifold: the Adams spectral sequence collapses, E2 = E_infinity".to_string()
    } else if collapsed {
        format!("singular input of dimension {} < 12: no differentials are possible", 2 * n)
    } else {
        format!(
            "{E2_ONLY}: collapse is known for manifolds and for singular input of dimension below 12, this input has dimension {}",
            2 * n
        )
    };

    let (ko, ko_red, ko_per, ko_coh, bound) = if collapsed {
        let ko = ko_homology(&dec, max_degree, true).map_err(|e| fail("ko_groups", e))?;
        let red = ko_homology(&reduced(&dec), max_degree, true).map_err(|e| fail("ko_groups", e))?;
        let per = periodic_homology(&dec, -5, max_degree, true).map_err(|e| fail("ko_groups", e))?;
        let coh = periodic_cohomology(&per, 0, max_degree).map_err(|e| fail("ko_groups", e))?;
        (Some(ko), Some(red), Some(per), Some(coh), None)
    } else {
        warnings.push(collapse_note.clone());
        (None, None, None, None, Some(e2_bound(&dec, max_degree)))
    };

    let cohomology = (0..=n)
        .map(|j| {
            let degree = 2 * j;
            let dim = algebra.dim(degree);
            let group = match dim {
                0 => "0".to_string(),
                1 => "Z".to_string(),
                d => format!("Z^{d}"),
            };
            CohomologyRow {
                degree,
                dim,
                basis: algebra.basis_monomials(degree).iter().map(Monomial::to_string).collect(),
                integral: group,
            }
        })
        .collect();

    let relations = RelationSection {
        monomial: algebra
            .monomial_relations()
            .iter()
            .map(|f| f.iter().map(|&v| var_name(v)).collect::<String>())
            .collect(),
        linear: algebra
            .linear_relations()
            .iter()
            .map(|r| r.iter_ones().map(var_name).collect::<Vec<_>>().join(" + "))
            .collect(),
        rewrites: (1..=n)
            .map(|j| DegreeRewrites {
                degree: 2 * j,
                rules: algebra.rewrites(2 * j),
            })
            .filter(|d| !d.rules.is_empty())
            .collect(),
    };

    let sq2 = Sq2Section {
        matrices: op
            .matrices()
            .iter()
            .enumerate()
            .take(n)
            .map(|(j, mat)| Sq2Matrix {
                from: 2 * j,
                to: 2 * j + 2,
                rank: mat.rank(),
                rows: mat.to_row_strings(),
            })
            .collect(),
        homology: homology.dims.clone(),
    };

    let decomposition = DecompositionSection {
        m: dec.m_mult.clone(),
        n: dec.n_mult.clone(),
        formula: dec.formula(),
        summands: dec.summary_lines(),
        witnesses: dec
            .witnesses
            .iter()
            .map(|w| WitnessNames {
                degree: w.degree,
                c: witness_names(&algebra, w.degree, &w.c),
                d: witness_names(&algebra, w.degree, &w.d),
                b: witness_names(&algebra, w.degree, &w.b),
            })
            .collect(),
    };

    let report = Report {
        input: InputSection {
            name: spec.name.clone(),
            n: spec.n,
            m: spec.m,
            field: spec.field,
            mode: spec.mode,
            facets: spec.facets.clone(),
            lambda: spec.lambda.clone(),
            notes,
        },
        results: Results {
            real_dimension: 2 * n,
            f_vector: f.0.clone(),
            h_vector: h.map(|h| h.0),
            cohomology,
            relations,
            sq2,
            spin,
            decomposition,
            collapse: CollapseSection {
                established: collapsed,
                status,
                note: collapse_note,
            },
            ko,
            ko_reduced: ko_red,
            ko_periodic: ko_per,
            ko_cohomology: ko_coh,
            e2_bound: bound,
            chart,
            warnings,
            footnotes,
        },
    };
    Ok(Computation {
        algebra,
        decomposition: dec,
        report,
    })
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

pub fn group_table(out: &mut String, title: &str, g: &GradedAbelianGroup) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "  {:>4}  {:>3}  {:>3}  {:<16}  from", "deg", "Z", "Z/2", "group");
    for e in &g.entries {
        let _ = writeln!(
            out,
            "  {:>4}  {:>3}  {:>3}  {:<16}  {}",
            e.degree,
            e.free,
            e.two,
            e.group_string(),
            e.contributions.join("; ")
        );
    }
}

pub fn report_text(report: &Report) -> String {
    let r = &report.results;
    let i = &report.input;
    let mut out = String::new();
    let _ = writeln!(out, "report: {}", i.name);
    let _ = writeln!(out, "input: n = {}, m = {}, {} mode, {} matrix", i.n, i.m, i.mode, i.field);
    for note in &i.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    let _ = writeln!(out, "real dimension: {}", r.real_dimension);
    let _ = writeln!(out, "f-vector: {}", tuple(&r.f_vector));
    match &r.h_vector {
        Some(h) => {
            let _ = writeln!(out, "h-vector: {}", tuple(h));
        }
        None => {
            let _ = writeln!(out, "h-vector: not defined");
        }
    }
    out.push('\n');

    let _ = writeln!(out, "cohomology");
    for row in &r.cohomology {
        let _ = writeln!(
            out,
            "  H^{:<2} = {:<6} mod-2 basis: {}",
            row.degree,
            row.integral,
            if row.basis.is_empty() { "-".to_string() } else { row.basis.join(", ") }
        );
    }
    let _ = writeln!(out, "relations");
    let _ = writeln!(out, "  monomial: {}", r.relations.monomial.join(", "));
    let _ = writeln!(out, "  linear:   {}", r.relations.linear.join(", "));
    for d in &r.relations.rewrites {
        let rules: Vec<String> = d.rules.iter().map(|w| format!("{} = {}", w.lhs, w.rhs)).collect();
        let _ = writeln!(out, "  degree {}: {}", d.degree, rules.join(", "));
    }
    out.push('\n');

    let _ = writeln!(out, "Sq²");
    for m in &r.sq2.matrices {
        let _ = writeln!(
            out,
            "  H^{} -> H^{}  rank {}  [{}]",
            m.from,
            m.to,
            m.rank,
            m.rows.join(" ")
        );
    }
    let _ = writeln!(out, "  Sq²-homology dims: {}", tuple(&r.sq2.homology));
    match (r.spin.spin, &r.spin.wu_class) {
        (Some(spin), Some(wu)) => {
            let _ = writeln!(out, "spin: {} (Wu class v2 = {wu})", if spin { "yes" } else { "no" });
        }
        _ => {
            let _ = writeln!(out, "spin: {}", r.spin.note.as_deref().unwrap_or("not computed"));
        }
    }
    out.push('\n');

    let _ = writeln!(out, "A(1)-module decomposition: {}", r.decomposition.formula);
    for line in &r.decomposition.summands {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "  m = {}, n = {}", tuple(&r.decomposition.m), tuple(&r.decomposition.n));
    out.push('\n');

    let _ = writeln!(out, "Adams spectral sequence: {}", r.collapse.note);
    if let Some(g) = &r.ko {
        group_table(&mut out, "ko_* (connective)", g);
    }
    if let Some(g) = &r.ko_reduced {
        group_table(&mut out, "reduced ko_*", g);
    }
    if let Some(g) = &r.ko_periodic {
        group_table(&mut out, "KO_* (periodic homology)", g);
    }
    if let Some(g) = &r.ko_cohomology {
        let _ = writeln!(out, "KO^m = Z^(rank of KO_(m-4)) ⊕ (Z/2)^(2-rank of KO_(m-5))");
        group_table(&mut out, "KO^* (periodic cohomology)", g);
    }
    if let Some(g) = &r.e2_bound {
        group_table(&mut out, "E2 bound on ko_* (differentials unresolved)", g);
    }
    out.push('\n');
    out.push_str(&render_ascii(&r.chart));

    if !r.warnings.is_empty() {
        out.push('\n');
        for w in &r.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
    }
    out.push('\n');
    for (k, f) in r.footnotes.iter().enumerate() {
        let _ = writeln!(out, "[{}] {f}", k + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn cube_report() {
        let r = run_pipeline(&library::cube()).unwrap().results;
        assert_eq!(r.f_vector, vec![6, 12, 8]);
        assert_eq!(r.h_vector, Some(vec![1, 3, 3, 1]));
        assert_eq!(r.relations.monomial, vec!["v1v6", "v2v4", "v3v5"]);
        assert_eq!(r.decomposition.m, vec![1, 1, 1, 1]);
        assert_eq!(r.decomposition.n, vec![0, 2, 0, 0]);
        assert_eq!(r.spin.spin, Some(true));
        assert!(r.collapse.established);
    }

    #[test]
    fn simplex_report_matches_cp2() {
        let r = run_pipeline(&library::simplex(2)).unwrap().results;
        let red = r.ko_reduced.unwrap();
        for d in 0..=8 {
            let expected = if d >= 2 && d % 2 == 0 { (1, 0) } else { (0, 0) };
            assert_eq!(red.ranks(d), Some(expected));
        }
        assert_eq!(r.spin.spin, Some(false));
    }

    #[test]
    fn square_cohomology_groups() {
        let r = run_pipeline(&library::square_cp2cp2()).unwrap().results;
        let groups: Vec<&str> = r.cohomology.iter().map(|c| c.integral.as_str()).collect();
        assert_eq!(groups, vec!["Z", "Z^2", "Z"]);
    }

    #[test]
    fn reduction_mod_two_gives_same_results() {
        for spec in [library::square_cp2cp2(), library::hexagon(), library::simplex(3)] {
            let a = run_pipeline(&spec).unwrap();
            let b = run_pipeline(&spec.reduced_mod2()).unwrap();
            assert_eq!(a.results, b.results, "{}", spec.name);
            assert_ne!(a.input, b.input);
        }
    }

    #[test]
    fn deterministic_output() {
        let spec = library::cube();
        let a = run_pipeline(&spec).unwrap();
        let b = run_pipeline(&spec).unwrap();
        assert_eq!(report_json(&a), report_json(&b));
        assert_eq!(report_text(&a), report_text(&b));
    }

    #[test]
    fn singular_gate() {
        let small = run_pipeline(&library::singular_cp1_power(3)).unwrap().results;
        assert!(small.collapse.established);
        assert!(small.ko.is_some());
        assert!(small.footnotes.iter().any(|f| f.starts_with("presentation assumed")));
        assert!(!small.spin.computed);
        let big = run_pipeline(&library::singular_cp1_power(6)).unwrap().results;
        assert!(!big.collapse.established);
        assert_eq!(big.chart.status, PageStatus::E2Only);
        assert!(big.ko.is_none() && big.e2_bound.is_some());
        assert!(big.warnings.iter().any(|w| w.starts_with(E2_ONLY)));
    }

    #[test]
    fn errors_name_the_module() {
        let mut spec = library::square_product();
        spec.lambda[1][3] = 2;
        let err = run_pipeline(&spec).unwrap_err();
        assert!(err.to_string().starts_with("charfun:"), "{err}");
    }
}
