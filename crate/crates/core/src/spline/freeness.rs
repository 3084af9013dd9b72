use std::fmt;

use serde::Serialize;

use crate::decompose::{decompose, DecompositionResult, RemovalOrder, EXHAUSTIVE_EDGE_LIMIT};
use crate::error::Result;
use crate::field::Field;
use crate::graph::{classify_edges, cycle_basis, CycleBasisMode, EdgeClass, EdgeLabeledGraph};
use crate::groebner::{free_resolution, ResolutionTarget};

use super::series::{pd_relation_report, PdRelationReport};
use super::{cycle_rank, syzygy_module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Free,
    NotFree,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Free => "free",
            Verdict::NotFree => "not_free",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    #[serde(rename = "bivariate-cycle")]
    BivariateCycle,
    #[serde(rename = "single-cycle")]
    SingleCycle,
    #[serde(rename = "no-interior")]
    NoInterior,
    #[serde(rename = "decomposes")]
    Decomposes,
    #[serde(rename = "rank-≤2-decomposition")]
    RankTwoDecomposition,
    #[serde(rename = "rank-≤2-cycle")]
    RankTwoCycle,
    #[serde(rename = "pd-computation")]
    PdComputation,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::BivariateCycle => "bivariate-cycle",
            Rule::SingleCycle => "single-cycle",
            Rule::NoInterior => "no-interior",
            Rule::Decomposes => "decomposes",
            Rule::RankTwoDecomposition => "rank-≤2-decomposition",
            Rule::RankTwoCycle => "rank-≤2-cycle",
            Rule::PdComputation => "pd-computation",
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Rule::BivariateCycle => "Prop 5.1",
            Rule::SingleCycle => "Cor 5.2",
            Rule::NoInterior => "Cor 5.3",
            Rule::Decomposes => "Cor 5.5",
            Rule::RankTwoDecomposition => "Cor 5.7",
            Rule::RankTwoCycle => "Prop 5.6",
            Rule::PdComputation => "Eq. (3) + Quillen-Suslin",
        }
    }
}

/// One rule of the chain: every hypothesis with its checked value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleCheck {
    pub rule: Rule,
    pub id: &'static str,
    pub hypotheses: Vec<(String, bool)>,
    pub applies: bool,
}

impl RuleCheck {
    fn new(rule: Rule, hypotheses: Vec<(String, bool)>) -> Self {
        let applies = hypotheses.iter().all(|(_, ok)| *ok);
        RuleCheck { rule, id: rule.id(), hypotheses, applies }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreenessOptions {
    pub basis: CycleBasisMode,
    pub order: RemovalOrder,
    /// Also run the resolution after a structural rule has fired.
    pub confirm_with_pd: bool,
}

impl Default for FreenessOptions {
    fn default() -> Self {
        FreenessOptions { basis: CycleBasisMode::Minimum, order: RemovalOrder::Greedy, confirm_with_pd: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessCertificate<F: Field> {
    pub verdict: Verdict,
    pub decided_by: Option<Rule>,
    pub rule_chain: Vec<RuleCheck>,
    pub num_vars: usize,
    pub decomposition: Option<DecompositionResult<F>>,
    /// Ranks of the split cycles when the graph decomposes, otherwise of
    /// the basis cycles.
    pub cycle_ranks: Vec<usize>,
    pub pd_syzygy: Option<usize>,
    pub resolution_ranks: Option<Vec<usize>>,
    pub pd_relation: Option<PdRelationReport>,
    pub justification: String,
}

impl<F: Field> fmt::Display for FreenessCertificate<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Some(r) = self.decided_by {
            writeln!(f, "decided by: {} ({})", r.name(), r.id())?;
        }
        writeln!(f, "rule chain:")?;
        for c in &self.rule_chain {
            writeln!(f, "  [{}] {} ({})", if c.applies { "x" } else { " " }, c.rule.name(), c.id)?;
            for (h, ok) in &c.hypotheses {
                writeln!(f, "      {} {h}", if *ok { "yes" } else { "no " })?;
            }
        }
        if let Some(d) = &self.decomposition {
            writeln!(
                f,
                "decomposition: {} ({} removal steps, {} cycles, {} free edges)",
                if d.complete { "complete" } else { "incomplete" },
                d.steps.len(),
                d.s(),
                d.p()
            )?;
        }
        if !self.cycle_ranks.is_empty() {
            let rs: Vec<String> = self.cycle_ranks.iter().map(|r| r.to_string()).collect();
            writeln!(f, "cycle ranks: {}", rs.join(" "))?;
        }
        if let Some(pd) = self.pd_syzygy {
            writeln!(f, "pd B = {pd}")?;
        }
        if let Some(rs) = &self.resolution_ranks {
            let rs: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
            writeln!(f, "resolution ranks: {}", rs.join(" "))?;
        }
        if let Some(rep) = &self.pd_relation {
            for line in rep.to_string().lines() {
                writeln!(f, "  {line}")?;
            }
        }
        write!(f, "justification: {}", self.justification)
    }
}

fn is_bare_cycle<F: Field>(g: &EdgeLabeledGraph<F>) -> bool {
    let inc = g.incidence();
    g.num_edges() >= 2 && g.num_components() == 1 && inc.iter().all(|es| es.len() == 2)
}

fn find_decomposition<F: Field>(g: &EdgeLabeledGraph<F>, opts: &FreenessOptions) -> Result<DecompositionResult<F>> {
    let first = decompose(g, opts.basis, opts.order)?;
    if first.complete || opts.order == RemovalOrder::Exhaustive || g.num_edges() > EXHAUSTIVE_EDGE_LIMIT {
        return Ok(first);
    }
    let second = decompose(g, opts.basis, RemovalOrder::Exhaustive)?;
    Ok(if second.complete { second } else { first })
}

struct PdOutcome {
    pd: usize,
    ranks: Vec<usize>,
}

fn pd_of_syzygies<F: Field>(g: &EdgeLabeledGraph<F>, basis: CycleBasisMode) -> Result<PdOutcome> {
    match syzygy_module(g, basis)? {
        None => Ok(PdOutcome { pd: 0, ranks: vec![0] }),
        Some(b) => {
            let res = free_resolution(&b, ResolutionTarget::Submodule)?;
            Ok(PdOutcome { pd: res.length(), ranks: res.ranks() })
        }
    }
}

/// Decides whether the spline module is free. Structural rules are tried
/// first; homogeneous labels fall back to a minimal graded resolution of
/// the kernel of the boundary matrix.
pub fn decide_freeness<F: Field>(g: &EdgeLabeledGraph<F>, opts: FreenessOptions) -> Result<FreenessCertificate<F>> {
    let d = g.ring().nvars();
    let mut chain = Vec::new();
    let mut decided_by = None;
    let bivariate = (format!("d = {d} <= 2"), d <= 2);

    let bare = is_bare_cycle(g);
    let dim = g.cycle_space_dim();
    let basis = cycle_basis(g, opts.basis);
    let classes = classify_edges(g, &basis);
    let interior = classes.iter().filter(|c| **c == EdgeClass::Interior).count();

    let mut decomposition = None;
    let mut decomposes = None;
    let mut get_decomp = |decomposition: &mut Option<DecompositionResult<F>>| -> Result<bool> {
        if decomposes.is_none() {
            let res = find_decomposition(g, &opts)?;
            decomposes = Some(res.complete);
            *decomposition = Some(res);
        }
        Ok(decomposes.unwrap())
    };

    let fire = |chain: &mut Vec<RuleCheck>, decided_by: &mut Option<Rule>, check: RuleCheck| {
        if check.applies && decided_by.is_none() {
            *decided_by = Some(check.rule);
        }
        chain.push(check);
    };

    fire(
        &mut chain,
        &mut decided_by,
        RuleCheck::new(Rule::BivariateCycle, vec![bivariate.clone(), ("G is a cycle".into(), bare)]),
    );
    if decided_by.is_none() {
        fire(
            &mut chain,
            &mut decided_by,
            RuleCheck::new(
                Rule::SingleCycle,
                vec![bivariate.clone(), (format!("G contains only one cycle (cycle space dimension {dim})"), dim == 1)],
            ),
        );
    }
    if decided_by.is_none() {
        fire(
            &mut chain,
            &mut decided_by,
            RuleCheck::new(
                Rule::NoInterior,
                vec![bivariate.clone(), (format!("no interior edges ({interior} found)"), interior == 0)],
            ),
        );
    }
    if decided_by.is_none() && d <= 2 {
        let ok = get_decomp(&mut decomposition)?;
        fire(
            &mut chain,
            &mut decided_by,
            RuleCheck::new(Rule::Decomposes, vec![bivariate.clone(), ("G decomposes into disjoint cycles".into(), ok)]),
        );
    }

    let mut cycle_ranks = Vec::new();
    if decided_by.is_none() {
        let ok = get_decomp(&mut decomposition)?;
        let mut hyps = vec![("G decomposes into disjoint cycles".to_string(), ok)];
        if ok {
            let dec = decomposition.as_ref().unwrap();
            cycle_ranks = dec.cycles.iter().map(|c| cycle_rank(&c.labels)).collect::<Result<_>>()?;
            let max = cycle_ranks.iter().copied().max().unwrap_or(0);
            hyps.push((format!("every split cycle has rank <= 2 (largest {max})"), max <= 2));
        }
        fire(&mut chain, &mut decided_by, RuleCheck::new(Rule::RankTwoDecomposition, hyps));
    }
    if decided_by.is_none() {
        let mut hyps = vec![("G is a cycle".to_string(), bare)];
        if bare {
            let r = cycle_rank(&g.labels())?;
            hyps.push((format!("rank {r} <= 2"), r <= 2));
        }
        fire(&mut chain, &mut decided_by, RuleCheck::new(Rule::RankTwoCycle, hyps));
    }
    if cycle_ranks.is_empty() {
        cycle_ranks = basis
            .cycles()
            .iter()
            .map(|c| cycle_rank(&c.edges().iter().map(|&e| g.edge(e).label.clone()).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
    }

    let homogeneous = g.labels_homogeneous();
    let mut verdict = if decided_by.is_some() { Verdict::Free } else { Verdict::Undecided };
    let (mut pd_syzygy, mut resolution_ranks, mut pd_relation) = (None, None, None);
    if decided_by.is_none() || (opts.confirm_with_pd && homogeneous) {
        let mut hyps = vec![("every label is homogeneous".to_string(), homogeneous)];
        if homogeneous {
            let out = pd_of_syzygies(g, opts.basis)?;
            hyps.push((format!("pd B = {} is 0", out.pd), out.pd == 0));
            if decided_by.is_none() {
                verdict = if out.pd == 0 { Verdict::Free } else { Verdict::NotFree };
            }
            if bare {
                pd_relation = Some(pd_relation_report(&g.labels())?);
            }
            pd_syzygy = Some(out.pd);
            resolution_ranks = Some(out.ranks);
        }
        let check = RuleCheck::new(Rule::PdComputation, hyps);
        if decided_by.is_none() && homogeneous {
            decided_by = Some(Rule::PdComputation);
        }
        chain.push(check);
    }

    let justification = match (verdict, decided_by) {
        (Verdict::Free, Some(Rule::PdComputation)) => "the minimal graded free resolution of B has length 0, so B is \
             projective; projective modules over a polynomial ring are free (Quillen-Suslin), hence R_G = R^c + B is free"
            .to_string(),
        (Verdict::NotFree, _) => format!(
            "the minimal graded free resolution of B has length {}, so B is not projective and R_G = R^c + B is not free",
            pd_syzygy.unwrap_or(0)
        ),
        (Verdict::Free, Some(r)) => format!("all hypotheses of {} ({}) hold", r.name(), r.id()),
        _ => "no structural rule applies and the labels are not homogeneous, so no graded resolution is available"
            .to_string(),
    };

    Ok(FreenessCertificate {
        verdict,
        decided_by,
        rule_chain: chain,
        num_vars: d,
        decomposition,
        cycle_ranks,
        pd_syzygy,
        resolution_ranks,
        pd_relation,
        justification,
    })
}
