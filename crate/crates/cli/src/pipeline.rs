use hyperforman::complex::{face_poset, order_complex};
use hyperforman::curvature::{DirectedError, FiltrationStep};
use hyperforman::hypernet::{geometric_complex, geometric_euler_characteristic};
use hyperforman::poset::RankConflict;
use hyperforman::{DirectedComplex, DirectedConfig, HalfInteger, Poset, Ranking, SimplicialComplex};
use serde::Serialize;

use crate::input::Input;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Order complex of the inclusion poset.
    Poset,
    /// Simplices on hypervertices and hyperedge unions.
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ChiMethod {
    Delta,
    Rank,
    Geometric,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub singletons: bool,
    pub skeleton: Option<usize>,
    pub model: Model,
    pub chain_cap: u64,
}

pub fn poset_of(input: &Input, singletons: bool) -> Poset {
    match input {
        Input::Network(h) => Poset::from_hypernetwork(h, singletons),
        Input::Poset(p) => p.clone(),
        Input::Complex(k) => face_poset(k),
    }
}

/// The complex curvature and filtration run on: the order complex by
/// default, the geometric model on request, or a complex given directly.
pub fn working_complex(input: &Input, settings: &Settings, max_dim: Option<usize>) -> Result<SimplicialComplex, CliError> {
    let dim = match (settings.skeleton, max_dim) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let truncate = |k: SimplicialComplex| match dim {
        Some(d) => k.skeleton(d),
        None => k,
    };
    Ok(match (input, settings.model) {
        (Input::Network(h), Model::Geometric) => truncate(geometric_complex(h)),
        (Input::Complex(k), _) => truncate(k.clone()),
        _ => order_complex(&poset_of(input, settings.singletons), dim, settings.chain_cap)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiEntry {
    pub method: &'static str,
    pub source: &'static str,
    pub value: Option<i64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ChiEntry {
    fn value(method: &'static str, source: &'static str, value: i64) -> Self {
        ChiEntry {
            method,
            source,
            value: Some(value),
            status: "ok",
            detail: None,
        }
    }
}

pub fn describe_conflict(p: &Poset, c: &RankConflict) -> String {
    let name = |i: usize| p.elements()[i].to_string();
    format!(
        "element {} gets rank {} via {} and rank {} via {}",
        name(c.element),
        c.first_rank,
        name(c.first_via),
        c.second_rank,
        name(c.second_via)
    )
}

pub fn chi_entries(input: &Input, settings: &Settings, method: ChiMethod) -> Result<Vec<ChiEntry>, CliError> {
    let wants = |m: ChiMethod| method == m || method == ChiMethod::All;
    let poset = poset_of(input, settings.singletons);
    let mut out = Vec::new();
    if wants(ChiMethod::Delta) {
        let k = order_complex(&poset, settings.skeleton, settings.chain_cap)?;
        out.push(ChiEntry::value("delta", "order complex of the poset", k.euler_characteristic()));
    }
    if wants(ChiMethod::Rank) {
        let source = "alternating sum of rank levels";
        out.push(match poset.rank_function() {
            Ranking::Ranked(rf) => ChiEntry::value("rank", source, rf.level_counts().chi_g()),
            Ranking::NotRanked(c) => ChiEntry {
                method: "rank",
                source,
                value: None,
                status: "not_ranked",
                detail: Some(describe_conflict(&poset, &c)),
            },
        });
    }
    if wants(ChiMethod::Geometric) {
        let source = "full geometric simplex model";
        out.push(match input {
            Input::Network(h) => ChiEntry::value("geometric", source, geometric_euler_characteristic(h)),
            Input::Complex(k) => ChiEntry::value("geometric", "input complex", k.euler_characteristic()),
            Input::Poset(_) => ChiEntry {
                method: "geometric",
                source,
                value: None,
                status: "not_applicable",
                detail: Some("input is a bare poset".into()),
            },
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectedVertex {
    pub vertex: String,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectedReport {
    pub config: DirectedConfig,
    pub vertices: Vec<DirectedVertex>,
    pub arcs: Vec<[String; 2]>,
    pub triangles: Vec<[String; 3]>,
    pub chi_directed_paper: HalfInteger,
    pub chi_directed_count: i64,
}

pub fn directed_report(input: &Input, cfg: DirectedConfig) -> Result<DirectedReport, CliError> {
    let Input::Network(h) = input else {
        return Err(CliError::Invalid("--directed needs a directed hypernetwork".into()));
    };
    if !h.has_directed_edges() {
        return Err(CliError::Invalid("--directed given for an undirected hypernetwork".into()));
    }
    let d = DirectedComplex::from_hypernetwork(h).map_err(|e: DirectedError| CliError::Invalid(e.to_string()))?;
    let label = |v: usize| d.labels()[v].clone();
    Ok(DirectedReport {
        config: cfg,
        vertices: (0..d.vertex_count())
            .map(|v| DirectedVertex {
                vertex: label(v),
                in_degree: d.io_degree(v, hyperforman::DegreeMode::In),
                out_degree: d.io_degree(v, hyperforman::DegreeMode::Out),
            })
            .collect(),
        arcs: d.arcs().map(|(u, v)| [label(u), label(v)]).collect(),
        triangles: d
            .directed_triangles(cfg.triangle_mode)
            .iter()
            .map(|t| t.vertices().map(label))
            .collect(),
        chi_directed_paper: d.chi_directed_paper(cfg),
        chi_directed_count: d.chi_directed_count(cfg),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationRow {
    pub threshold: i64,
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
    pub chi: i64,
}

impl From<&FiltrationStep> for FiltrationRow {
    fn from(s: &FiltrationStep) -> Self {
        FiltrationRow {
            threshold: s.threshold,
            f0: s.f_vector.get(0),
            f1: s.f_vector.get(1),
            f2: s.f_vector.get(2),
            chi: s.chi,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetReport {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
    pub ranked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level_counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_conflict: Option<String>,
}

pub fn poset_report(p: &Poset) -> PosetReport {
    let ranking = p.rank_function();
    let rf = ranking.ranked();
    PosetReport {
        elements: p.elements().iter().map(ToString::to_string).collect(),
        covers: p.covers().into_iter().map(|(q, r)| [q, r]).collect(),
        ranked: rf.is_some(),
        ranks: rf.map(|rf| rf.ranks().to_vec()),
        level_counts: rf.map(|rf| rf.level_counts().counts().to_vec()),
        rank_conflict: match &ranking {
            Ranking::NotRanked(c) => Some(describe_conflict(p, c)),
            Ranking::Ranked(_) => None,
        },
    }
}
