//! End-to-end runs: classify, normalize, build the white graph, present the
//! branched-cover group, and decide non-left-orderability where a rule
//! applies. Also the batch harness over grid files.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{
    classify_with_moves, normalize_type1_d1, normalize_type1_dm1, parse_braid, BaldwinClass,
    BraidWord, Normalization, NormalizationOutcome,
};
use crate::diagram::{
    closure_white_graph, cycle_graph_from_params, goeritz_matrix, is_alternating_word,
    CheckerboardGraph, DecoratedCycleGraph, GraphSummary,
};
use crate::lo_checker::{
    certify_cycle_non_lo, positive_cone_search, todd_coxeter, torsion_non_lo, CertificateError,
    ConeResult, Enumeration, KnownStructure, NonLOCertificate, Verdict,
};
use crate::presentation::{
    abelianize, cycle_presentation, greene_presentation, tietze_simplify, AbelianInvariants,
    GroupPresentation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("input error: {0}")]
    Input(String),
    #[error("grid line {line}: {reason}")]
    Grid { line: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub max_cosets: usize,
    pub depth: usize,
    /// Leave out timing so output is byte-stable.
    pub canonical: bool,
    /// Re-verify certificates from their serialized JSON.
    pub recheck: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_cosets: 1_000_000,
            depth: 8,
            canonical: false,
            recheck: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub input: String,
    pub word: BraidWord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<BaldwinClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
    pub graph: GraphSummary,
    pub presentation: GroupPresentation,
    pub abelian: AbelianInvariants,
    pub determinant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NonLOCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recheck: Option<bool>,
    pub route: String,
    pub verdict: Verdict,
    /// True for verdicts taken from the literature rather than checked here.
    pub external: bool,
    pub reason: String,
    pub soundness_failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl PipelineReport {
    pub fn exit_code(&self) -> i32 {
        if !self.soundness_failures.is_empty() {
            3
        } else if self.verdict.is_non_lo() {
            0
        } else {
            1
        }
    }

    pub fn hypothesis_not_met(&self) -> bool {
        self.reason == CertificateError::HypothesisNotMet.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Base {
    graph: CheckerboardGraph,
    presentation: GroupPresentation,
    abelian: AbelianInvariants,
    det: BigInt,
    failures: Vec<String>,
}

fn base(graph: CheckerboardGraph, presentation: GroupPresentation) -> Base {
    let abelian = abelianize(&presentation);
    let det = goeritz_matrix(&graph).link_determinant();
    let mut failures = Vec::new();
    let agree = match abelian.order() {
        Some(o) => o == det,
        None => det.is_zero(),
    };
    if !agree {
        failures.push(format!(
            "determinant {det} disagrees with abelianization {:?}",
            abelian.torsion
        ));
    }
    Base {
        graph,
        presentation,
        abelian,
        det,
        failures,
    }
}

struct Decision {
    route: &'static str,
    verdict: Verdict,
    external: bool,
    reason: String,
    normalization: Option<Normalization>,
    group_order: Option<usize>,
    cone: Option<ConeResult>,
    certificate: Option<NonLOCertificate>,
    recheck: Option<bool>,
}

impl Decision {
    fn new(route: &'static str, verdict: Verdict, reason: impl Into<String>) -> Self {
        Decision {
            route,
            verdict,
            external: false,
            reason: reason.into(),
            normalization: None,
            group_order: None,
            cone: None,
            certificate: None,
            recheck: None,
        }
    }
}

fn finish(
    input: String,
    word: BraidWord,
    class: Option<BaldwinClass>,
    b: Base,
    d: Decision,
    t: Option<Instant>,
) -> PipelineReport {
    PipelineReport {
        input,
        word,
        classification: class,
        normalization: d.normalization,
        graph: b.graph.summary(),
        presentation: b.presentation,
        abelian: b.abelian,
        determinant: b.det.to_string(),
        group_order: d.group_order,
        cone: d.cone,
        certificate: d.certificate,
        recheck: d.recheck,
        route: d.route.into(),
        verdict: d.verdict,
        external: d.external,
        reason: d.reason,
        soundness_failures: b.failures,
        timing_ms: t.map(|t| (t.elapsed().as_secs_f64() * 1e3 * 1e3).round() / 1e3),
    }
}

fn certify(
    d: &DecoratedCycleGraph,
    opts: &PipelineOptions,
    dec: &mut Decision,
    failures: &mut Vec<String>,
) {
    match certify_cycle_non_lo(d) {
        Ok(c) => {
            if opts.recheck {
                let ok = NonLOCertificate::from_json(&c.to_json())
                    .and_then(|c| c.recheck())
                    .is_ok();
                if !ok {
                    failures.push("certificate failed re-verification from JSON".into());
                }
                dec.recheck = Some(ok);
            }
            dec.verdict = Verdict::NonLoCertified;
            dec.reason = format!("sign deduction, case {}", c.hypothesis.case);
            dec.certificate = Some(c);
        }
        Err(e) => {
            dec.verdict = Verdict::Inconclusive;
            dec.reason = e.to_string();
            if e != CertificateError::HypothesisNotMet {
                failures.push(format!("certificate construction failed: {e}"));
            }
        }
    }
}

fn finite_group_route(
    p: &GroupPresentation,
    abelian: &AbelianInvariants,
    opts: &PipelineOptions,
    failures: &mut Vec<String>,
) -> Decision {
    let simple = tietze_simplify(p);
    match todd_coxeter(&simple, opts.max_cosets) {
        Enumeration::Complete(table) => {
            let order = table.order();
            if let Some(ab) = abelian.order() {
                if ab.is_zero() || !(BigInt::from(order) % &ab).is_zero() {
                    failures.push(format!(
                        "abelianization order {ab} does not divide group order {order}"
                    ));
                }
            } else {
                failures.push("finite group with infinite abelianization".into());
            }
            let mut d = Decision::new(
                "finite_group",
                Verdict::NonLoFiniteGroup,
                format!("group of order {order}"),
            );
            d.group_order = Some(order);
            if opts.depth > 0 {
                d.cone = Some(positive_cone_search(&simple, &table, opts.depth));
            }
            d
        }
        Enumeration::Exhausted { defined } => Decision::new(
            "finite_group",
            Verdict::Inconclusive,
            format!("coset enumeration stopped after {defined} cosets"),
        ),
    }
}

/// Runs the full pipeline on braid text.
pub fn run_pipeline(text: &str, opts: &PipelineOptions) -> Result<PipelineReport, PipelineError> {
    let start = (!opts.canonical).then(Instant::now);
    let w = parse_braid(text).map_err(|e| PipelineError::Input(e.to_string()))?;
    let graph = closure_white_graph(&w).map_err(|e| PipelineError::Input(e.to_string()))?;
    let mut b = base(graph.clone(), greene_presentation(&graph));
    let cls = classify_with_moves(&w);

    let dec = match &cls.class {
        BaldwinClass::Type2 { .. } | BaldwinClass::Type3 { .. } => {
            finite_group_route(&b.presentation, &b.abelian, opts, &mut b.failures)
        }
        BaldwinClass::Type1 { d: 0, .. } => {
            if !is_alternating_word(&cls.reached()) {
                b.failures
                    .push("d = 0 family word is not alternating".into());
            }
            let mut d = Decision::new(
                "alternating",
                Verdict::NonLoCitedTheorem,
                "alternating closure; non-LO by a cited theorem, not checked here",
            );
            d.external = true;
            d
        }
        BaldwinClass::Type1 { d, .. } => {
            let norm = if *d == 1 {
                normalize_type1_d1(&w)
            } else {
                normalize_type1_dm1(&w)
            };
            let norm = match norm {
                Ok(n) => n,
                Err(e) => {
                    b.failures.push(format!("normalization failed: {e}"));
                    let dec = Decision::new("normalize", Verdict::Inconclusive, e.to_string());
                    return Ok(finish(text.into(), w, Some(cls.class), b, dec, start));
                }
            };
            if let Err(e) = norm.verify() {
                b.failures.push(format!("normalization transcript: {e}"));
            }
            let mut dec = match &norm.outcome {
                NormalizationOutcome::CycleForm { graph } => {
                    let cdet = goeritz_matrix(&cycle_graph_from_params(graph)).link_determinant();
                    if cdet != b.det {
                        b.failures.push(format!(
                            "cycle graph determinant {cdet} differs from closure {}",
                            b.det
                        ));
                    }
                    let mut dec = Decision::new("certificate", Verdict::Inconclusive, "");
                    certify(graph, opts, &mut dec, &mut b.failures);
                    dec
                }
                NormalizationOutcome::TorusBranchSet { q, .. } => torsion_decision(
                    &mut b,
                    BigInt::from(*q).abs(),
                    KnownStructure::Cyclic,
                    "torus branch set",
                ),
                NormalizationOutcome::ConnectedSumBranchSet { p, q } => torsion_decision(
                    &mut b,
                    BigInt::from(p * q).abs(),
                    KnownStructure::FreeProductOfCyclics,
                    "connected sum of torus links",
                ),
            };
            dec.normalization = Some(norm);
            dec
        }
        BaldwinClass::NotInFamily => Decision::new(
            "none",
            Verdict::Inconclusive,
            "not in any of the three families",
        ),
    };
    Ok(finish(text.into(), w, Some(cls.class), b, dec, start))
}

fn torsion_decision(b: &mut Base, expected: BigInt, known: KnownStructure, what: &str) -> Decision {
    if b.abelian.order() != Some(expected.clone()) {
        let msg = format!("{what} should have first homology of order {expected}");
        b.failures.push(msg.clone());
        return Decision::new("torsion", Verdict::Inconclusive, msg);
    }
    let t = torsion_non_lo(&b.abelian, known);
    Decision::new("torsion", t.verdict, format!("{what}: {}", t.reason))
}

/// Certifies a cycle-form graph given by its parameters.
pub fn run_cycle(d: &DecoratedCycleGraph, opts: &PipelineOptions) -> PipelineReport {
    let start = (!opts.canonical).then(Instant::now);
    let graph = cycle_graph_from_params(d);
    let p = cycle_presentation(d).unwrap_or_else(|_| greene_presentation(&graph));
    let mut b = base(graph, p);
    let mut dec = Decision::new("certificate", Verdict::Inconclusive, "");
    certify(d, opts, &mut dec, &mut b.failures);
    finish(format_tuple(d), d.braid_word(), None, b, dec, start)
}

pub fn format_tuple(d: &DecoratedCycleGraph) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!("({};{};{})", d.m(), join(d.a()), join(d.b()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridEntry {
    Braid(String),
    Cycle(DecoratedCycleGraph),
}

fn parse_tuple(s: &str) -> Result<DecoratedCycleGraph, String> {
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or("tuple must look like (m;a0,...,an;b1,...,bn)")?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 3 {
        return Err("tuple needs three ';'-separated fields".into());
    }
    let list = |p: &str| -> Result<Vec<u64>, String> {
        p.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u64>().map_err(|e| format!("{x:?}: {e}")))
            .collect()
    };
    let m = parts[0]
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("m: {e}"))?;
    DecoratedCycleGraph::new(m, list(parts[1])?, list(parts[2])?).map_err(|e| e.to_string())
}

/// One braid or `(m;a;b)` tuple per line; `#` starts a comment.
pub fn parse_grid(text: &str) -> Result<Vec<GridEntry>, PipelineError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let grid_err = |reason: String| PipelineError::Grid {
            line: i + 1,
            reason,
        };
        if line.starts_with('(') {
            out.push(GridEntry::Cycle(parse_tuple(line).map_err(grid_err)?));
        } else {
            parse_braid(line).map_err(|e| grid_err(e.to_string()))?;
            out.push(GridEntry::Braid(line.to_string()));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub total: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub hypothesis_not_met: usize,
    pub soundness_failures: usize,
    pub reports: Vec<PipelineReport>,
}

impl BatchSummary {
    pub fn exit_code(&self) -> i32 {
        if self.soundness_failures > 0 {
            3
        } else {
            0
        }
    }
}

/// Runs every entry in parallel; reports keep input order.
pub fn run_batch(entries: &[GridEntry], opts: &PipelineOptions) -> BatchSummary {
    let reports: Vec<PipelineReport> = entries
        .par_iter()
        .map(|e| match e {
            GridEntry::Cycle(d) => run_cycle(d, opts),
            GridEntry::Braid(s) => run_pipeline(s, opts).expect("grid braids were parsed up front"),
        })
        .collect();
    let mut verdicts = BTreeMap::new();
    for r in &reports {
        *verdicts.entry(r.verdict.as_str().to_string()).or_insert(0) += 1;
    }
    BatchSummary {
        total: reports.len(),
        verdicts,
        hypothesis_not_met: reports.iter().filter(|r| r.hypothesis_not_met()).count(),
        soundness_failures: reports
            .iter()
            .filter(|r| !r.soundness_failures.is_empty())
            .count(),
        reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon() -> PipelineOptions {
        PipelineOptions {
            canonical: true,
            recheck: true,
            ..Default::default()
        }
    }

    #[test]
    fn worked_examples() {
        let r = run_pipeline("h s1 s2^-2 s1 s2^-2", &canon()).unwrap();
        assert_eq!(r.verdict, Verdict::NonLoCertified);
        assert_eq!(r.certificate.as_ref().unwrap().hypothesis.case, 1);
        assert_eq!(r.recheck, Some(true));
        let r = run_pipeline("h^-1 s1 s2^-1 s1 s2^-2", &canon()).unwrap();
        assert_eq!(r.verdict, Verdict::NonLoCertified);
        assert_eq!(r.certificate.as_ref().unwrap().hypothesis.case, 2);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn alternating_is_external() {
        let r = run_pipeline("s1 s2^-1", &canon()).unwrap();
        assert_eq!(r.verdict, Verdict::NonLoCitedTheorem);
        assert!(r.external);
    }

    #[test]
    fn torus_routes() {
        let r = run_pipeline("h s1 s2^-1", &canon()).unwrap();
        assert_eq!(r.route, "torsion");
        assert_eq!(r.verdict, Verdict::NonLoTorsion);
        let r = run_pipeline("h^-1 s1 s2^-2", &canon()).unwrap();
        assert_eq!(r.verdict, Verdict::NonLoTorsion);
        assert!(
            r.soundness_failures.is_empty(),
            "{:?}",
            r.soundness_failures
        );
    }

    #[test]
    fn canonical_output_is_stable() {
        let a = run_pipeline("h s1 s2^-3", &canon()).unwrap().to_json();
        let b = run_pipeline("h s1 s2^-3", &canon()).unwrap().to_json();
        assert_eq!(a, b);
        assert!(!a.contains("timing_ms"));
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("# header\n\n(1;1,1;1)\nh s2^3  # type 2\n(3;2;)\n").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(
            g[0],
            GridEntry::Cycle(DecoratedCycleGraph::new(1, vec![1, 1], vec![1]).unwrap())
        );
        assert_eq!(g[1], GridEntry::Braid("h s2^3".into()));
        assert!(matches!(
            parse_grid("(1;1)"),
            Err(PipelineError::Grid { line: 1, .. })
        ));
        assert!(parse_grid("zzz").is_err());
        assert!(parse_grid("").unwrap().is_empty());
    }

    #[test]
    fn batch_records_hypothesis_not_met() {
        let g = parse_grid("(1;1,1;1)\n(2;1,1;1)").unwrap();
        let s = run_batch(&g, &canon());
        assert_eq!(s.total, 2);
        assert_eq!(s.hypothesis_not_met, 1);
        assert_eq!(s.soundness_failures, 0);
        assert_eq!(s.verdicts["NonLO_Certified"], 1);
        assert_eq!(s.exit_code(), 0);
    }
}
