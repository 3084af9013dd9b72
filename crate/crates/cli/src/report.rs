//! Text and JSON renderings. Edges are written `e1, e2, ...` in file order.

use std::fmt::Write;

use gspline::decompose::DecompositionResult;
use gspline::graph::{BoundaryMatrix, CycleBasis, EdgeLabeledGraph, SplineReport};
use gspline::groebner::{FreeResolution, Submodule};
use gspline::poly::Polynomial;
use gspline::spline::{cycle_rank, FreenessCertificate, GeneratorSource, GradedSeriesReport, SplineBasis};
use gspline::{Field, Result};
use serde_json::{json, Value};

fn edge(e: usize) -> String {
    format!("e{}", e + 1)
}

fn edges(es: &[usize]) -> Vec<String> {
    es.iter().map(|&e| edge(e)).collect()
}

fn strs<F: Field>(ps: &[Polynomial<F>]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

pub fn ranks<F: Field>(g: &EdgeLabeledGraph<F>, basis: &CycleBasis) -> Result<(String, Value)> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut max = 0;
    for (i, c) in basis.cycles().iter().enumerate() {
        let labels: Vec<Polynomial<F>> = c.edges().iter().map(|&e| g.edge(e).label.clone()).collect();
        let r = cycle_rank(&labels)?;
        max = max.max(r);
        writeln!(text, "cycle {}: {}  rank {r}", i + 1, edges(c.edges()).join(" ")).unwrap();
        rows.push(json!({ "cycle": i + 1, "edges": edges(c.edges()), "rank": r }));
    }
    if rows.is_empty() {
        text.push_str("no cycles\n");
    } else {
        writeln!(text, "max rank: {max}").unwrap();
    }
    Ok((text, json!({ "cycles": rows, "max_rank": max })))
}

fn basis_json(basis: &CycleBasis) -> Value {
    basis.cycles().iter().map(|c| json!({ "edges": edges(c.edges()), "signs": c.signs() })).collect()
}

pub fn matrix<F: Field>(g: &EdgeLabeledGraph<F>, basis: &CycleBasis, a: &BoundaryMatrix<F>) -> (String, Value) {
    let mut text = String::new();
    for (i, c) in basis.cycles().iter().enumerate() {
        writeln!(text, "cycle {}: {}", i + 1, edges(c.edges()).join(" ")).unwrap();
    }
    writeln!(text, "columns: {}", edges(&(0..g.num_edges()).collect::<Vec<_>>()).join(" ")).unwrap();
    text.push_str(&a.to_string());
    let rows: Vec<Vec<String>> = a.rows().iter().map(|r| strs(r)).collect();
    (text, json!({ "basis": basis_json(basis), "matrix": rows }))
}

pub fn syzygies<F: Field>(b: Option<&Submodule<F>>, minimal: bool) -> Result<(String, Value)> {
    let Some(b) = b else {
        return Ok(("no edges\n".into(), json!({ "twists": null, "minimal": false, "generators": [] })));
    };
    let graded = b.is_homogeneous();
    let mut text = String::new();
    if graded {
        writeln!(text, "twists: {:?}", b.twists()).unwrap();
    }
    writeln!(text, "{} generators{}", b.generators().len(), if minimal { " (minimal)" } else { "" }).unwrap();
    let mut gens = Vec::new();
    for v in b.generators() {
        let deg = if graded { v.degree(b.twists())? } else { None };
        match deg {
            Some(d) => writeln!(text, "{v}  degree {d}").unwrap(),
            None => writeln!(text, "{v}").unwrap(),
        }
        gens.push(json!({ "coords": strs(v.coords()), "degree": deg }));
    }
    Ok((
        text,
        json!({ "twists": if graded { Some(b.twists()) } else { None }, "minimal": minimal, "generators": gens }),
    ))
}

pub fn decomposition<F: Field>(res: &DecompositionResult<F>) -> Value {
    let steps: Vec<Value> = res
        .steps
        .iter()
        .map(|s| {
            json!({
                "cycle": s.cycle + 1,
                "edge": edge(s.edge),
                "entry": s.entry.to_string(),
                "exterior": edges(&s.exterior),
                "exterior_entries": strs(&s.exterior_entries),
                "witness": strs(&s.witness),
            })
        })
        .collect();
    let cycles: Vec<Value> = res
        .cycles
        .iter()
        .map(|c| json!({ "row": c.row + 1, "edges": edges(&c.edges), "labels": strs(&c.labels), "signs": c.signs }))
        .collect();
    let matrix: Vec<Vec<String>> = res.matrix.iter().map(|r| strs(r)).collect();
    json!({
        "complete": res.complete,
        "order": res.order,
        "s": res.s(),
        "p": res.p(),
        "steps": steps,
        "cycles": cycles,
        "free_edges": edges(&res.free_edges),
        "interior_remaining": edges(&res.interior_remaining),
        "matrix": matrix,
    })
}

pub fn decomposition_text<F: Field>(g: &EdgeLabeledGraph<F>, res: &DecompositionResult<F>) -> String {
    let mut text = String::new();
    writeln!(text, "decomposes: {}", res.complete).unwrap();
    for s in &res.steps {
        let terms: Vec<String> =
            s.witness.iter().zip(&s.exterior_entries).map(|(c, a)| format!("({c})*({a})")).collect();
        writeln!(text, "remove {} from cycle {}: {} = {}", edge(s.edge), s.cycle + 1, s.entry, terms.join(" + "))
            .unwrap();
    }
    for c in &res.cycles {
        writeln!(text, "cycle {}: {}  labels {}", c.row + 1, edges(&c.edges).join(" "), strs(&c.labels).join(", "))
            .unwrap();
    }
    if !res.free_edges.is_empty() {
        writeln!(text, "free edges: {}", edges(&res.free_edges).join(" ")).unwrap();
    }
    if !res.interior_remaining.is_empty() {
        writeln!(text, "interior edges left: {}", edges(&res.interior_remaining).join(" ")).unwrap();
    }
    writeln!(text, "s = {}, p = {}", res.s(), res.p()).unwrap();
    text.push_str(&BoundaryMatrix::from_rows(g.ring(), res.matrix.clone()).to_string());
    text
}

pub fn series(rep: &GradedSeriesReport) -> (String, Value) {
    let parts = |cs: &Option<Vec<gspline::spline::ComponentSeries>>| {
        cs.as_ref().map(|cs| {
            cs.iter().map(|c| json!({ "edges": edges(&c.edges), "series": c.series.to_string() })).collect::<Vec<_>>()
        })
    };
    let v = json!({
        "num_vars": rep.num_vars,
        "components": rep.components,
        "shift": rep.shift,
        "common_degree": rep.common_degree,
        "hilbert_syzygy": rep.hilbert_syzygy.to_string(),
        "hilbert_splines": rep.hilbert_splines.to_string(),
        "hilbert_splines_direct": rep.hilbert_splines_direct.to_string(),
        "shift_identity_holds": rep.shift_identity_holds,
        "cycle_series": parts(&rep.cycle_series),
        "free_edge_series": parts(&rep.free_edge_series),
        "sum_identity_holds": rep.sum_identity_holds,
    });
    (rep.to_string(), v)
}

fn free_module(d: i64) -> String {
    match d {
        0 => "R".into(),
        d if d > 0 => format!("R(-{d})"),
        d => format!("R({})", -d),
    }
}

pub fn resolution<F: Field>(res: &FreeResolution<F>) -> (String, Value) {
    let mut text = String::new();
    let betti = res.betti_numbers();
    let mut steps = Vec::new();
    for (i, (s, b)) in res.steps().iter().zip(&betti).enumerate() {
        let shifts: Vec<String> = b.iter().map(|(&d, n)| format!("{}^{n}", free_module(d))).collect();
        writeln!(text, "F{i}: rank {}  {}", s.rank, shifts.join(" + ")).unwrap();
        let betti: Vec<[i64; 2]> = b.iter().map(|(&d, &n)| [d, n as i64]).collect();
        steps.push(json!({ "rank": s.rank, "twists": s.twists, "betti": betti }));
    }
    writeln!(text, "pd = {}", res.length()).unwrap();
    let minimal = res.is_minimal();
    let complex = res.verify_complex();
    writeln!(text, "minimal: {minimal}, complex: {complex}").unwrap();
    let v = json!({
        "target": res.target(),
        "steps": steps,
        "pd": res.length(),
        "minimal": minimal,
        "complex": complex,
        "euler_series": res.euler_series().to_string(),
    });
    (text, v)
}

pub fn certificate<F: Field>(c: &FreenessCertificate<F>) -> Value {
    let chain: Vec<Value> = c
        .rule_chain
        .iter()
        .map(|r| {
            let hyps: Vec<Value> = r.hypotheses.iter().map(|(h, ok)| json!({ "hypothesis": h, "holds": ok })).collect();
            json!({ "rule": r.rule, "id": r.id, "applies": r.applies, "hypotheses": hyps })
        })
        .collect();
    json!({
        "verdict": c.verdict,
        "rule": c.decided_by.map(|r| r.id()),
        "rule_name": c.decided_by.map(|r| r.name()),
        "rule_chain": chain,
        "num_vars": c.num_vars,
        "decomposition": c.decomposition.as_ref().map(|d| decomposition(d)),
        "cycle_ranks": c.cycle_ranks,
        "pd_syzygy": c.pd_syzygy,
        "resolution_ranks": c.resolution_ranks,
        "pd_relation": c.pd_relation,
        "justification": c.justification,
    })
}

pub fn spline_basis<F: Field>(g: &EdgeLabeledGraph<F>, b: &SplineBasis<F>) -> (String, Value) {
    let mut text = String::new();
    writeln!(text, "base vertex: {}", g.vertices()[b.base_vertex]).unwrap();
    writeln!(text, "vertices: {}", g.vertices().join(" ")).unwrap();
    let mut gens = Vec::new();
    for (f, src) in b.generators.iter().zip(&b.sources) {
        let (kind, from) = match src {
            GeneratorSource::Trivial => ("trivial", Value::Null),
            GeneratorSource::Component(c) => ("component", json!(c + 1)),
            GeneratorSource::Syzygy(v) => ("syzygy", json!(strs(v.coords()))),
        };
        let vals = strs(f.values());
        match src {
            GeneratorSource::Syzygy(v) => writeln!(text, "({})  from {v}", vals.join(", ")).unwrap(),
            GeneratorSource::Component(c) => writeln!(text, "({})  component {}", vals.join(", "), c + 1).unwrap(),
            GeneratorSource::Trivial => writeln!(text, "({})  trivial", vals.join(", ")).unwrap(),
        }
        gens.push(json!({ "values": vals, "source": kind, "syzygy": from }));
    }
    let v = json!({
        "vertices": g.vertices(),
        "base_vertex": g.vertices()[b.base_vertex],
        "minimal": b.minimal,
        "generators": gens,
    });
    (text, v)
}

pub fn verification<F: Field>(g: &EdgeLabeledGraph<F>, rep: &SplineReport<F>) -> (String, Value) {
    let mut text = format!("valid: {}\n", rep.valid);
    let mut fails = Vec::new();
    for f in &rep.failures {
        let e = g.edge(f.edge);
        writeln!(text, "{}: {} does not divide {}", edge(f.edge), e.label, f.difference).unwrap();
        fails.push(
            json!({ "edge": edge(f.edge), "label": e.label.to_string(), "difference": f.difference.to_string() }),
        );
    }
    (text, json!({ "valid": rep.valid, "failures": fails }))
}
