//! End-to-end constructions: a monoid or lattice goes through a colored digraph, the blow-up
//! and the šip-product, with optional End verification after each stage.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{Lattice, LinearExtension, Monoid};
use crate::blowup::{blow_up, Blowup, BlowupError};
use crate::cayley::{augment_cayley, cayley_colored, CayleyError};
use crate::endo::{enumerate_endomorphisms, enumerate_graph_endomorphisms, EndoConfig, EndoError};
use crate::graphcore::{ArcColoredDigraph, SimpleGraph};
use crate::lattice_encoding::{build_encoding, EncodingError, LatticeEncoding, DEFAULT_CHAIN_CAP};
use crate::sip::{sip_product, SipError, SipProduct};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("Cayley stage: {0}")]
    Cayley(#[from] CayleyError),
    #[error("encoding stage: {0}")]
    Encoding(#[from] EncodingError),
    #[error("blow-up stage: {0}")]
    Blowup(#[from] BlowupError),
    #[error("šip stage: {0}")]
    Sip(#[from] SipError),
    #[error("{0}")]
    Input(String),
}

/// How a monoid enters the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidRoute {
    /// Colored Cayley graph, blow-up, šip-product.
    Cayley,
    /// Augmented Cayley graph straight into the šip-product.
    Augmented,
}

#[derive(Clone, Debug)]
pub enum PipelineInput {
    Monoid { monoid: Monoid, generators: Option<Vec<usize>>, route: MonoidRoute },
    Lattice { lattice: Lattice, extension: Option<LinearExtension> },
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Gadget parameter; `None` uses `choose_k`.
    pub k: Option<usize>,
    /// Enumerate End after every stage and compare with the target monoid.
    pub verify: bool,
    /// Budget for the final simple-graph stage; falls back to `endo`.
    pub final_endo: Option<EndoConfig>,
    pub endo: EndoConfig,
    pub timings: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { k: None, verify: false, final_endo: None, endo: EndoConfig::default(), timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndCheck {
    pub size: usize,
    pub isomorphic_to_target: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arcs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<usize>,
    pub loopless: bool,
    pub max_degree: usize,
    pub min_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_color_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_out: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_in: Option<usize>,
    /// Present only when the enumeration finished.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end: Option<EndCheck>,
    /// Why End was not checked, when it was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

impl StageReport {
    pub fn for_digraph(stage: &str, d: &ArcColoredDigraph) -> StageReport {
        let s = d.degree_stats();
        StageReport {
            stage: stage.into(),
            vertices: d.vertex_count(),
            arcs: Some(d.arc_count()),
            edges: None,
            colors: Some(d.color_count()),
            loopless: d.is_loopless(),
            max_degree: s.max_degree,
            min_degree: s.min_degree,
            max_color_degree: Some(s.max_color_degree),
            min_out: Some(s.min_out),
            min_in: Some(s.min_in),
            end: None,
            skipped: None,
            ms: None,
        }
    }

    pub fn for_graph(stage: &str, g: &SimpleGraph) -> StageReport {
        StageReport {
            stage: stage.into(),
            vertices: g.vertex_count(),
            arcs: None,
            edges: Some(g.edge_count()),
            colors: None,
            loopless: true,
            max_degree: g.max_degree(),
            min_degree: g.min_degree(),
            max_color_degree: None,
            min_out: None,
            min_in: None,
            end: None,
            skipped: None,
            ms: None,
        }
    }

    fn record(&mut self, outcome: Result<crate::endo::TransformationMonoid, EndoError>, target: &Monoid) {
        match outcome.and_then(|t| t.table()) {
            Ok(table) => {
                self.end = Some(EndCheck {
                    size: table.size(),
                    isomorphic_to_target: table.is_isomorphic(target),
                })
            }
            Err(e) => self.skipped = Some(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub input: String,
    pub target_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub stages: Vec<StageReport>,
}

impl PipelineReport {
    pub fn last(&self) -> &StageReport {
        self.stages.last().expect("at least one stage")
    }

    /// True when every requested End check finished and matched; `None` if any was skipped.
    pub fn verdict(&self) -> Option<bool> {
        let mut all = true;
        for s in &self.stages {
            match &s.end {
                Some(e) => all &= e.isomorphic_to_target,
                None if s.skipped.is_some() => return None,
                None => {}
            }
        }
        Some(all)
    }
}

/// All intermediate objects of a run.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub report: PipelineReport,
    pub first: ArcColoredDigraph,
    pub encoding: Option<LatticeEncoding>,
    pub blowup: Option<Blowup>,
    pub product: SipProduct,
}

impl PipelineOutput {
    pub fn graph(&self) -> &SimpleGraph {
        &self.product.graph
    }
}

fn elapsed(t: Instant, on: bool) -> Option<u64> {
    on.then(|| t.elapsed().as_millis() as u64)
}

pub fn run_pipeline(input: &PipelineInput, opts: &PipelineOptions) -> Result<PipelineOutput, PipelineError> {
    let mut stages = Vec::new();
    let t = Instant::now();
    let (name, target, first, encoding, route) = match input {
        PipelineInput::Monoid { monoid, generators, route } => {
            let gens = match generators {
                Some(g) => g.clone(),
                None => monoid
                    .minimal_generating_set()
                    .map_err(|e| PipelineError::Input(e.to_string()))?,
            };
            let (stage, d) = match route {
                MonoidRoute::Cayley => ("cayley", cayley_colored(monoid, &gens)?),
                MonoidRoute::Augmented => ("augment", augment_cayley(monoid, &gens)?),
            };
            let mut r = StageReport::for_digraph(stage, &d);
            r.ms = elapsed(t, opts.timings);
            stages.push(r);
            (format!("monoid of order {}", monoid.size()), monoid.clone(), d, None, *route)
        }
        PipelineInput::Lattice { lattice, extension } => {
            let ext = extension.clone().unwrap_or_else(|| LinearExtension::canonical(lattice));
            let enc = build_encoding(lattice, &ext, DEFAULT_CHAIN_CAP)?;
            let mut r = StageReport::for_digraph("encode", &enc.digraph);
            r.ms = elapsed(t, opts.timings);
            stages.push(r);
            let d = enc.digraph.clone();
            (format!("lattice of order {}", lattice.size()), lattice.meet_monoid(), d, Some(enc), MonoidRoute::Cayley)
        }
    };
    if opts.verify {
        let t = Instant::now();
        let r = stages.last_mut().expect("first stage");
        r.record(enumerate_endomorphisms(&first, &opts.endo), &target);
        r.ms = r.ms.map(|ms| ms + elapsed(t, true).unwrap_or(0));
    }

    let blowup = if route == MonoidRoute::Cayley {
        let t = Instant::now();
        let b = blow_up(&first)?;
        let mut r = StageReport::for_digraph("blowup", &b.digraph);
        if opts.verify {
            r.record(enumerate_endomorphisms(&b.digraph, &opts.endo), &target);
        }
        r.ms = elapsed(t, opts.timings);
        stages.push(r);
        Some(b)
    } else {
        None
    };

    let t = Instant::now();
    let sip_input = blowup.as_ref().map_or(&first, |b| &b.digraph);
    let product = sip_product(sip_input, opts.k)?;
    let mut r = StageReport::for_graph("sip", &product.graph);
    if opts.verify {
        let cfg = opts.final_endo.as_ref().unwrap_or(&opts.endo);
        r.record(enumerate_graph_endomorphisms(&product.graph, cfg), &target);
    }
    r.ms = elapsed(t, opts.timings);
    stages.push(r);

    let report = PipelineReport { input: name, target_size: target.size(), k: Some(product.k()), stages };
    Ok(PipelineOutput { report, first, encoding, blowup, product })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verified() -> PipelineOptions {
        PipelineOptions { verify: true, ..PipelineOptions::default() }
    }

    #[test]
    fn z2_through_cayley() {
        let input = PipelineInput::Monoid {
            monoid: Monoid::cyclic_group(2),
            generators: None,
            route: MonoidRoute::Cayley,
        };
        let out = run_pipeline(&input, &verified()).unwrap();
        let names: Vec<&str> = out.report.stages.iter().map(|s| s.stage.as_str()).collect();
        assert_eq!(names, ["cayley", "blowup", "sip"]);
        assert!(out.report.last().max_degree <= 3);
        assert_eq!(out.report.verdict(), Some(true));
        assert_eq!(out.report.last().end.as_ref().unwrap().size, 2);
    }

    #[test]
    fn trivial_monoid_needs_augmentation() {
        let m = Monoid::trivial();
        let cayley = PipelineInput::Monoid { monoid: m.clone(), generators: None, route: MonoidRoute::Cayley };
        assert!(matches!(run_pipeline(&cayley, &verified()), Err(PipelineError::Blowup(BlowupError::NoColors))));
        let aug = PipelineInput::Monoid { monoid: m, generators: None, route: MonoidRoute::Augmented };
        let out = run_pipeline(&aug, &verified()).unwrap();
        assert_eq!(out.report.stages.len(), 2);
        assert_eq!(out.report.verdict(), Some(true));
    }

    #[test]
    fn budget_overrun_is_reported() {
        let input = PipelineInput::Lattice { lattice: Lattice::chain(2), extension: None };
        let opts = PipelineOptions { final_endo: Some(EndoConfig::with_budget(10)), ..verified() };
        let out = run_pipeline(&input, &opts).unwrap();
        let last = out.report.last();
        assert!(last.end.is_none());
        assert!(last.skipped.as_ref().unwrap().contains("budget"));
        assert_eq!(out.report.verdict(), None);
        assert_eq!(out.report.stages[0].end.as_ref().unwrap().size, 2);
    }

    #[test]
    fn report_without_timings_is_deterministic() {
        let input = PipelineInput::Lattice { lattice: Lattice::chain(2), extension: None };
        let a = serde_json::to_string(&run_pipeline(&input, &PipelineOptions::default()).unwrap().report).unwrap();
        let b = serde_json::to_string(&run_pipeline(&input, &PipelineOptions::default()).unwrap().report).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("\"ms\""));
    }
}
