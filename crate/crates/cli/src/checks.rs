//! The `verify` targets: each builds the relevant object and lists named checks.

use serde::Serialize;

use endoforge::algebra::{babai_pultr_monoid, Lattice, LinearExtension, Monoid, DEFAULT_SIZE_CAP};
use endoforge::blowup::blow_up;
use endoforge::endo::{enumerate_endomorphisms, enumerate_graph_endomorphisms, EndoConfig, TransformationMonoid};
use endoforge::graphcore::ArcColoredDigraph;
use endoforge::lattice_encoding::{build_encoding, DEFAULT_CHAIN_CAP};
use endoforge::pipeline::{run_pipeline, PipelineInput, PipelineOptions, PipelineReport};
use endoforge::retracts::{minor_witness, retract_lattice, MinorWitness};
use endoforge::sip::{hp_graph, sip_product};

use crate::{precondition, Failure};

#[derive(Serialize, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct VerifyReport {
    pub target: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineReport>,
}

#[derive(Default)]
pub struct Checks(Vec<Check>);

impl Checks {
    pub fn add(&mut self, name: impl Into<String>, passed: bool) {
        self.0.push(Check { name: name.into(), passed, detail: None });
    }

    pub fn add_detail(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: Some(detail.into()) });
    }

    /// Records the enumeration outcome; an overrun is a failed check, never a pass.
    fn end(&mut self, what: &str, r: Result<TransformationMonoid, endoforge::endo::EndoError>) -> Option<TransformationMonoid> {
        match r {
            Ok(t) => Some(t),
            Err(e) => {
                self.add_detail(format!("enumeration of End({what}) finished"), false, e.to_string());
                None
            }
        }
    }

    pub fn report(self, target: impl Into<String>) -> VerifyReport {
        let passed = self.0.iter().all(|c| c.passed);
        VerifyReport { target: target.into(), passed, checks: self.0, pipeline: None }
    }
}

fn table(t: &TransformationMonoid) -> Monoid {
    t.table().expect("enumerated endomorphisms form a monoid")
}

pub fn encoding(l: &Lattice, cfg: &EndoConfig) -> Result<VerifyReport, Failure> {
    let ext = LinearExtension::canonical(l);
    let enc = build_encoding(l, &ext, DEFAULT_CHAIN_CAP).map_err(|e| Failure::Input(e.to_string()))?;
    let mut c = Checks::default();
    let stats = enc.digraph.degree_stats();
    c.add_detail(
        "every color has in- and out-degree at most 2",
        stats.max_color_degree <= 2,
        format!("maximum color degree {}", stats.max_color_degree),
    );
    if let Some(end) = c.end("D_L", enumerate_endomorphisms(&enc.digraph, cfg)) {
        c.add_detail("|End(D_L)| = |L|", end.len() == l.size(), format!("{} maps, |L| = {}", end.len(), l.size()));
        let all_phi = (0..l.size()).all(|w| end.contains(&enc.phi(w)));
        c.add("End(D_L) is exactly {φ_w : w ∈ L}", all_phi && end.len() == l.size());
        let ideals = (0..l.size()).all(|w| enc.fixed_petal_ideal(&enc.phi(w)).ok() == Some(w));
        c.add("φ_w fixes exactly the petals of elements below w", ideals);
        c.add("End(D_L) ≅ (L, ∧)", table(&end).is_isomorphic(&l.meet_monoid()));
    }
    Ok(c.report("encoding"))
}

pub fn blowup(d: &ArcColoredDigraph, cfg: &EndoConfig) -> Result<VerifyReport, Failure> {
    let b = blow_up(d).map_err(precondition)?;
    let mut c = Checks::default();
    let (sd, sb) = (d.degree_stats(), b.digraph.degree_stats());
    c.add("D′ is loopless", b.digraph.is_loopless());
    c.add_detail(
        "δ⁺(D′) = δ⁻(D′) = 1",
        sb.min_out == 1 && sb.min_in == 1,
        format!("δ⁺ = {}, δ⁻ = {}", sb.min_out, sb.min_in),
    );
    let bound = (sd.max_color_degree + 1).max(3);
    c.add_detail(
        "Δ(D′) ≤ max(Δ±(D) + 1, 3)",
        sb.max_degree <= bound,
        format!("Δ(D′) = {}, bound {bound}", sb.max_degree),
    );
    let base = c.end("D", enumerate_endomorphisms(d, cfg));
    let blown = c.end("D′", enumerate_endomorphisms(&b.digraph, cfg));
    if let (Some(base), Some(blown)) = (base, blown) {
        let lifts = base.maps().iter().all(|phi| b.lift(d, phi).is_ok_and(|l| blown.contains(&l)));
        c.add("every endomorphism of D lifts to one of D′", lifts);
        c.add_detail(
            "|End(D′)| = |End(D)|",
            base.len() == blown.len(),
            format!("{} and {}", blown.len(), base.len()),
        );
        c.add("End(D′) ≅ End(D)", table(&blown).is_isomorphic(&table(&base)));
    }
    Ok(c.report("blowup"))
}

pub fn sip(d: &ArcColoredDigraph, k: Option<usize>, cfg: &EndoConfig) -> Result<VerifyReport, Failure> {
    let p = sip_product(d, k).map_err(precondition)?;
    let mut c = Checks::default();
    let sd = d.degree_stats();
    let h = &p.gadget.graph;
    let delta = p.graph.max_degree();
    c.add_detail(
        "Δ(Ď) = max(Δ(D), 3)",
        delta == sd.max_degree.max(3),
        format!("Δ(Ď) = {delta}, Δ(D) = {}", sd.max_degree),
    );
    c.add(
        "|V(Ď)| = |V(D)| + |V(H^k)|·|A(D)|",
        p.graph.vertex_count() == d.vertex_count() + h.vertex_count() * d.arc_count(),
    );
    c.add("|E(Ď)| = (|E(H^k)| + 2)·|A(D)|", p.graph.edge_count() == (h.edge_count() + 2) * d.arc_count());
    let base = c.end("D", enumerate_endomorphisms(d, cfg));
    let prod = c.end("Ď", enumerate_graph_endomorphisms(&p.graph, cfg));
    if let (Some(base), Some(prod)) = (base, prod) {
        let lifts = base.maps().iter().all(|phi| p.lift(d, phi).is_ok_and(|l| prod.contains(&l)));
        c.add("every endomorphism of D lifts to one of Ď", lifts);
        c.add_detail("|End(Ď)| = |End(D)|", base.len() == prod.len(), format!("{} and {}", prod.len(), base.len()));
        c.add("End(Ď) ≅ End(D)", table(&prod).is_isomorphic(&table(&base)));
    }
    Ok(c.report("sip"))
}

pub fn gadget(k: usize, cfg: &EndoConfig) -> VerifyReport {
    let h = hp_graph(k);
    let g = &h.graph;
    let mut c = Checks::default();
    c.add_detail("|V(H^k)| = 6k + 7", g.vertex_count() == 6 * k + 7, g.vertex_count().to_string());
    c.add_detail("|E(H^k)| = 6k + 9", g.edge_count() == 6 * k + 9, g.edge_count().to_string());
    c.add_detail("girth 2k + 5", g.girth() == Some(2 * k + 5), format!("{:?}", g.girth()));
    c.add_detail("maximum degree 3", g.max_degree() == 3, g.max_degree().to_string());
    c.add_detail(
        "each face has length 2k + 5",
        h.faces.iter().all(|f| f.len() == 2 * k + 5),
        format!("{:?}", h.faces.iter().map(Vec::len).collect::<Vec<_>>()),
    );
    if let Some(end) = c.end("H^k", enumerate_graph_endomorphisms(g, cfg)) {
        c.add_detail("H^k is rigid", end.len() == 1, format!("{} endomorphisms", end.len()));
    }
    c.report(format!("gadget k={k}"))
}

pub fn bp_monoid(p: usize) -> Result<VerifyReport, Failure> {
    let bp = babai_pultr_monoid(p, DEFAULT_SIZE_CAP).map_err(|e| Failure::Input(e.to_string()))?;
    let m = &bp.monoid;
    let mut c = Checks::default();
    let rows = m.rows();
    c.add("the table is associative with identity", Monoid::new(rows, m.identity()).is_ok());
    let fact: usize = (1..=p).product();
    let want = fact.pow(3) + p * p + 3 * p;
    c.add_detail("size (p!)³ + p² + 3p", m.size() == want, format!("{} elements", m.size()));
    c.add("completely regular", m.is_completely_regular());
    let units = m.invertible_elements();
    let group = m.submonoid(&units).map_err(|e| Failure::Input(e.to_string()))?;
    let zp = Monoid::cyclic_group(p);
    c.add_detail(
        "the group of units is Z_p × Z_p",
        group.is_isomorphic(&zp.direct_product(&zp)),
        format!("{} units", units.len()),
    );
    Ok(c.report(format!("bp-monoid p={p}")))
}

pub fn pipeline(input: &PipelineInput, opts: &PipelineOptions) -> Result<VerifyReport, Failure> {
    let out = run_pipeline(input, opts).map_err(precondition)?;
    let mut c = Checks::default();
    for s in &out.report.stages {
        match (&s.end, &s.skipped) {
            (Some(e), _) => c.add_detail(
                format!("{}: End ≅ target", s.stage),
                e.isomorphic_to_target,
                format!("|End| = {}, target order {}", e.size, out.report.target_size),
            ),
            (None, Some(why)) => c.add_detail(format!("{}: enumeration finished", s.stage), false, why.clone()),
            (None, None) => {}
        }
    }
    let first = &out.report.stages[0];
    let last = out.report.last();
    let bound = match &out.blowup {
        Some(_) => (first.max_color_degree.unwrap_or(0) + 1).max(3),
        None => first.max_degree.max(3),
    };
    c.add_detail(
        format!("Δ of the final graph ≤ {bound}"),
        last.max_degree <= bound,
        format!("Δ = {}", last.max_degree),
    );
    let mut r = c.report("pipeline");
    r.pipeline = Some(out.report);
    Ok(r)
}

/// Encodes L, reads the retract lattice off End and extracts the cover-graph minor.
pub fn minor(l: &Lattice, allow_non_thick: bool, cfg: &EndoConfig) -> Result<(VerifyReport, Option<MinorWitness>), Failure> {
    let ext = LinearExtension::canonical(l);
    let enc = build_encoding(l, &ext, DEFAULT_CHAIN_CAP).map_err(|e| Failure::Input(e.to_string()))?;
    let host = enc.digraph.underlying_simple_graph();
    let mut c = Checks::default();
    let Some(end) = c.end("D_L", enumerate_endomorphisms(&enc.digraph, cfg)) else {
        return Ok((c.report("minor"), None));
    };
    let family = match retract_lattice(&end) {
        Ok(f) => f,
        Err(e) => {
            c.add_detail("the retracts form a lattice", false, e.to_string());
            return Ok((c.report("minor"), None));
        }
    };
    c.add("the retract lattice is isomorphic to L", family.lattice.poset().isomorphism(l.poset()).is_some());
    let thick = family.lattice.join_irreducibles().poset.is_thick();
    c.add_detail("J(L) is thick", thick || allow_non_thick, if thick { "thick" } else { "not thick" });
    if !thick && !allow_non_thick {
        return Ok((c.report("minor"), None));
    }
    match minor_witness(&host, &family, allow_non_thick) {
        Ok(w) => {
            let sets = &w.model.branch_sets;
            c.add("private parts are nonempty", sets.iter().all(|s| !s.is_empty()));
            c.add("private parts induce connected subgraphs", sets.iter().all(|s| !s.is_empty() && host.induces_connected(s)));
            let mut seen = std::collections::HashSet::new();
            c.add("private parts are pairwise disjoint", sets.iter().flatten().all(|v| seen.insert(*v)));
            let failures = endoforge::retracts::verify_minor_model(&host, &w.model);
            c.add_detail(
                "the minor model of the cover graph of J(L) is certified",
                failures.is_empty(),
                if failures.is_empty() {
                    format!("{} branch sets, {} edges", sets.len(), w.model.target.edge_count())
                } else {
                    failures.join("; ")
                },
            );
            Ok((c.report("minor"), Some(w)))
        }
        Err(e) => {
            c.add_detail("private parts and cover edges exist", false, e.to_string());
            Ok((c.report("minor"), None))
        }
    }
}
