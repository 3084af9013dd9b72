//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with `cargo test -p gspline --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gspline::decompose::{
    decompose, remove_edge, syzygy_isomorphism, syzygy_isomorphism_inverse, ReductionState, RemovalOrder,
};
use gspline::graph::{boundary_matrix, cycle_basis, verify_spline, CycleBasisMode};
use gspline::groebner::{
    free_resolution, hilbert_series, ideal_membership, is_regular_sequence, module_membership, ModuleElement,
    RationalSeries, ResolutionTarget, Submodule,
};
use gspline::poly::Polynomial;
use gspline::spline::{
    cycle_rank, decide_freeness, graded_series_report, spline_module_generators, syzygy_module, FreenessOptions,
    GeneratorSource, Rule, Verdict,
};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const D33: &str = "ring x, y
vertices v0 v1 v2 v3
edge v0 v2 : x
edge v0 v1 : y
edge v2 v3 : y
edge v1 v3 : x
edge v1 v2 : x^2 + y^2
";

const SQUARES: &str = "ring x, y
vertices v0 v1 v2 v3
edge v0 v2 : x^2
edge v0 v1 : y^2
edge v2 v3 : y^2
edge v1 v3 : x^2
edge v1 v2 : x^2 + y^2
";

const DIAMOND: &str = "ring x, y, z, t
vertices v0 v1 v2 v3
edge v0 v1 : x^2
edge v0 v2 : y^2
edge v1 v3 : z^2
edge v2 v3 : t^2
edge v1 v2 : x*z + y*t
";

fn rows(g: &Graph, rows: &[&[&str]]) -> Vec<Vec<Poly>> {
    rows.iter().map(|r| r.iter().map(|s| poly(g.ring(), s)).collect()).collect()
}

fn same_up_to_sign(a: &[Poly], b: &[Poly]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -y)
}

fn criterion_1() -> Outcome {
    let g = graph(D33);
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    let a = state.matrix().rows();
    let want = rows(&g, &[&["x", "-y", "0", "0", "-x^2 - y^2"], &["0", "0", "-y", "x", "-x^2 - y^2"]]);
    ensure!(a.len() == 2, "expected 2 rows, got {}", a.len());
    ensure!(same_up_to_sign(&a[0], &want[0]) && same_up_to_sign(&a[1], &want[1]), "A =\n{}", state.matrix());

    let step = state.is_removable(1, 4).map_err(|e| e.to_string())?.ok_or("e5 not removable from row 2")?;
    let after = remove_edge(&state, step).map_err(|e| e.to_string())?;
    let a2 = after.matrix().rows();
    let want2 = rows(&g, &[&["0", "0", "-y", "x", "0"]]);
    ensure!(a2[0] == a[0], "row 1 changed");
    ensure!(same_up_to_sign(&a2[1], &want2[0]), "A' =\n{}", after.matrix());
    Ok(format!(
        "A and A' match exactly; A' row 2 = ({})",
        a2[1].iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    ))
}

fn criterion_2() -> Outcome {
    let g = graph(D33);
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    let step = state.is_removable(1, 4).map_err(|e| e.to_string())?.ok_or("e5 not removable")?;
    ensure!(step.exterior == vec![2, 3], "exterior edges {:?}", step.exterior);
    ensure!(step.witness == rows(&g, &[&["y", "-x"]])[0], "witness {:?}", step.witness);
    ensure!(step.witness_holds(), "witness does not re-expand the entry");
    // x^2 + y^2 = y * l3 + x * l4 with l3 = y, l4 = x
    let (l3, l4, l5) = (&g.edge(2).label, &g.edge(3).label, &g.edge(4).label);
    let (x, y) = (Polynomial::var(g.ring(), 0), Polynomial::var(g.ring(), 1));
    ensure!(&(&y * l3) + &(&x * l4) == *l5, "label relation fails");

    let before = state.matrix().clone();
    let after = remove_edge(&state, step.clone()).map_err(|e| e.to_string())?;
    let kb = before.kernel(None).map_err(|e| e.to_string())?;
    let ka = after.matrix().kernel(None).map_err(|e| e.to_string())?;
    for v in kb.generators() {
        let w = syzygy_isomorphism(&step, &before, v).map_err(|e| e.to_string())?;
        ensure!(after.matrix().annihilates(w.coords()), "phi({v}) not in ker A'");
        let back = syzygy_isomorphism_inverse(&step, after.matrix(), &w).map_err(|e| e.to_string())?;
        ensure!(&back == v, "phi^-1 phi ({v}) = {back}");
    }
    for w in ka.generators() {
        let v = step.apply_phi_inverse(w);
        ensure!(before.annihilates(v.coords()), "phi^-1({w}) not in ker A");
        ensure!(&step.apply_phi(&v) == w, "phi phi^-1 ({w}) differs");
    }
    Ok(format!(
        "witness [y, -x]; phi checked on {} + {} kernel generators",
        kb.generators().len(),
        ka.generators().len()
    ))
}

fn criterion_3() -> Outcome {
    let g = graph(SQUARES);
    let rep = graded_series_report(&g, RemovalOrder::Greedy).map_err(|e| e.to_string())?;
    let hs_b = RationalSeries::from_i64s(&[1, 0, 2], 2);
    let c1 = RationalSeries::from_i64s(&[1, 0, 1], 2);
    let c2 = RationalSeries::from_i64s(&[0, 0, 1], 2);
    let hs_r = RationalSeries::from_i64s(&[0, 0, 1, 0, 2], 2).add(&RationalSeries::from_i64s(&[1], 2));
    ensure!(rep.hilbert_syzygy == hs_b, "HS(B_G) = {}", rep.hilbert_syzygy);
    let cycles = rep.cycle_series.as_ref().ok_or("graph did not decompose")?;
    let mut parts: Vec<RationalSeries> = cycles.iter().map(|c| c.series.clone()).collect();
    ensure!(parts.len() == 2, "{} split cycles", parts.len());
    ensure!(parts.contains(&c1) && parts.contains(&c2), "cycle series {} and {}", parts[0], parts[1]);
    parts.extend(rep.free_edge_series.iter().flatten().map(|c| c.series.clone()));
    let sum = parts.iter().fold(RationalSeries::zero(2), |acc, s| acc.add(s));
    ensure!(sum == rep.hilbert_syzygy && rep.sum_identity_holds == Some(true), "sum identity fails: {sum}");
    ensure!(rep.hilbert_splines == hs_r, "HS(R_G) = {}", rep.hilbert_splines);
    ensure!(rep.hilbert_splines_direct == hs_r, "direct HS(R_G) = {}", rep.hilbert_splines_direct);
    ensure!(rep.shift_identity_holds, "shift identity flag false");
    Ok(format!("HS(B) = {}, HS(R_G) = {}", rep.hilbert_syzygy, rep.hilbert_splines.reduced()))
}

fn criterion_4() -> Outcome {
    let cases = [
        (vec!["x", "y", "z"], vec!["x^3 + y*z^2", "x^2 + y^2", "x*z^2 + y^3"], 2),
        (vec!["x", "y", "z", "t"], vec!["x^2", "y^2", "x*z + y*t"], 4),
    ];
    let mut out = Vec::new();
    for (vars, gens, pd) in cases {
        let r = ring(&vars);
        let labels: Vec<Poly> = gens.iter().map(|s| poly(&r, s)).collect();
        let start = Instant::now();
        let ideal = Submodule::ideal(&r, labels.clone()).map_err(|e| e.to_string())?;
        let res = free_resolution(&ideal, ResolutionTarget::Quotient).map_err(|e| e.to_string())?;
        let rank = cycle_rank(&labels).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure!(res.length() == pd, "pd R/I = {} for {gens:?}, expected {pd}", res.length());
        ensure!(rank == 3, "rank {rank} for {gens:?}");
        ensure!(took < Duration::from_secs(10), "took {took:?}");
        out.push(format!("pd {} rank {} in {:.0?}", res.length(), rank, took));
    }
    Ok(out.join("; "))
}

fn criterion_5() -> Outcome {
    let confirm = FreenessOptions { confirm_with_pd: true, ..Default::default() };
    // (a)
    let r = ring(&["x", "y"]);
    let mut rng = rng(5);
    let trials = 40;
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let labels: Vec<Poly> = (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=4);
                random_homogeneous(&r, d, 3, &mut rng)
            })
            .collect();
        let g = cycle_graph(&r, &labels);
        let cert = decide_freeness(&g, confirm).map_err(|e| e.to_string())?;
        ensure!(cert.verdict == Verdict::Free, "cycle {labels:?} gave {}", cert.verdict);
        ensure!(cert.decided_by == Some(Rule::BivariateCycle), "decided by {:?}", cert.decided_by);
        ensure!(cert.pd_syzygy == Some(0), "pd B = {:?} for {labels:?}", cert.pd_syzygy);
    }
    // (b)
    let g1 = graph("ring x, y, z\nedge a b : x^3 + y*z^2\nedge b c : x^2 + y^2\nedge a c : x*z^2 + y^3\n");
    let cert = decide_freeness(&g1, FreenessOptions::default()).map_err(|e| e.to_string())?;
    ensure!(cert.verdict == Verdict::Free, "G1 gave {}", cert.verdict);
    ensure!(cert.decided_by == Some(Rule::PdComputation), "G1 decided by {:?}", cert.decided_by);
    ensure!(cert.cycle_ranks == vec![3], "G1 ranks {:?}", cert.cycle_ranks);
    let rel = cert.pd_relation.as_ref().ok_or("no pd relation for G1")?;
    ensure!(rel.pd_quotient == 2 && rel.pd_syzygy == 0 && rel.relation_holds, "G1 relation {rel}");
    // (c)
    let d = graph(DIAMOND);
    let dec = decompose(&d, CycleBasisMode::Minimum, RemovalOrder::Exhaustive).map_err(|e| e.to_string())?;
    ensure!(!dec.complete, "diamond decomposes");
    let cert = decide_freeness(&d, FreenessOptions::default()).map_err(|e| e.to_string())?;
    ensure!(cert.verdict == Verdict::NotFree, "diamond gave {}", cert.verdict);
    let pd = cert.pd_syzygy.ok_or("no pd for diamond")?;
    ensure!(pd > 0, "pd B = 0");
    let b = syzygy_module(&d, CycleBasisMode::Minimum).map_err(|e| e.to_string())?.ok_or("no edges")?;
    let res = free_resolution(&b, ResolutionTarget::Submodule).map_err(|e| e.to_string())?;
    let hs = hilbert_series(&b).map_err(|e| e.to_string())?;
    ensure!(res.length() == pd, "resolution length {} vs certificate {pd}", res.length());
    ensure!(res.euler_series() == hs, "Euler series {} vs HS(B) {hs}", res.euler_series());
    let tri = ring(&["x", "y", "z", "t"]);
    let tri_labels: Vec<Poly> = ["x^2", "x*z + y*t", "y^2"].iter().map(|s| poly(&tri, s)).collect();
    let pd_tri =
        free_resolution(&Submodule::ideal(&tri, tri_labels).map_err(|e| e.to_string())?, ResolutionTarget::Quotient)
            .map_err(|e| e.to_string())?
            .length();
    ensure!(pd_tri == 4, "pd R/I on the left cycle = {pd_tri}");
    Ok(format!(
        "(a) {trials} cycles free with pd 0; (b) G1 free, pd R/I = 2; (c) diamond not_free, pd B = {pd}, ranks {:?}",
        cert.resolution_ranks.unwrap_or_default()
    ))
}

fn criterion_6() -> Outcome {
    let names = ["x1", "x2", "x3", "x4"];
    for n in 1..=4 {
        let r = ring(&names[..n]);
        let xs: Vec<Poly> = (0..n).map(|i| Polynomial::var(&r, i)).collect();
        ensure!(is_regular_sequence(&xs).map_err(|e| e.to_string())?, "x1..x{n} rejected");
        let res = free_resolution(&Submodule::ideal(&r, xs).map_err(|e| e.to_string())?, ResolutionTarget::Quotient)
            .map_err(|e| e.to_string())?;
        ensure!(res.length() == n, "pd R/<x1..x{n}> = {}", res.length());
    }
    let r = ring(&["x", "y"]);
    let bad = vec![poly(&r, "x"), poly(&r, "x*y")];
    ensure!(!is_regular_sequence(&bad).map_err(|e| e.to_string())?, "(x, xy) accepted");
    Ok("x1..xn accepted with pd n for n = 1..4; (x, xy) rejected".into())
}

fn criterion_7() -> Outcome {
    let names = ["x", "y", "z", "t"];
    let mut rng = rng(7);
    let mut by_rank = [0usize; 5];
    for _ in 0..50 {
        let r = ring(&names[..rng.gen_range(2..=4)]);
        let n = rng.gen_range(2..=6);
        // combinations of k random linear forms, so every rank up to d shows up
        let k = rng.gen_range(1..=r.nvars());
        let forms: Vec<Poly> = (0..k).map(|_| random_homogeneous(&r, 1, r.nvars(), &mut rng)).collect();
        let labels: Vec<Poly> = (0..n)
            .map(|_| {
                let l = forms.iter().fold(Polynomial::zero(&r), |acc, f| {
                    &acc + &f.scale(&Q::from_integer(rng.gen_range(-2i64..=2).into()))
                });
                if l.is_zero() {
                    forms[0].clone()
                } else {
                    l
                }
            })
            .collect();
        let rank = cycle_rank(&labels).map_err(|e| e.to_string())?;
        let res = free_resolution(
            &Submodule::ideal(&r, labels.clone()).map_err(|e| e.to_string())?,
            ResolutionTarget::Quotient,
        )
        .map_err(|e| e.to_string())?;
        ensure!(res.length() == rank, "linear cycle {labels:?}: pd {} rank {rank}", res.length());
        by_rank[rank] += 1;
    }
    let low = 40;
    for _ in 0..low {
        let r = ring(&names[..rng.gen_range(2..=4)]);
        let d = rng.gen_range(1..=3);
        let f = random_homogeneous(&r, d, 3, &mut rng);
        let g = random_homogeneous(&r, d, 3, &mut rng);
        let n = rng.gen_range(2..=6);
        let labels: Vec<Poly> = (0..n)
            .map(|_| {
                let (a, b) = (rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2));
                let l = &f.scale(&Q::from_integer(a.into())) + &g.scale(&Q::from_integer(b.into()));
                if l.is_zero() {
                    f.clone()
                } else {
                    l
                }
            })
            .collect();
        let rank = cycle_rank(&labels).map_err(|e| e.to_string())?;
        ensure!(rank <= 2, "constructed rank {rank}");
        let res = free_resolution(
            &Submodule::ideal(&r, labels.clone()).map_err(|e| e.to_string())?,
            ResolutionTarget::Quotient,
        )
        .map_err(|e| e.to_string())?;
        ensure!(res.length() <= 2, "rank {rank} cycle {labels:?}: pd {}", res.length());
    }
    Ok(format!("50 linear cycles with pd = rank (ranks 1..4: {:?}); {low} rank-<=2 cycles with pd <= 2", &by_rank[1..]))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let names = ["x", "y", "z"];
    let (mut members, mut disagreements) = (0, 0);
    let total = 100;
    for i in 0..total {
        let r = ring(&names[..rng.gen_range(2..=3)]);
        let module = i % 2 == 1;
        let rank = if module { 2 } else { 1 };
        let twists: Vec<i64> = (0..rank as i64).collect();
        let ngens = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for _ in 0..ngens {
            let deg = rng.gen_range(1..=2i64);
            let coords: Vec<Poly> =
                twists.iter().map(|&w| random_homogeneous(&r, (deg - w) as u32, 2, &mut rng)).collect();
            gens.push(coords);
        }
        let target = rng.gen_range(2..=4i64);
        let candidate: Vec<Poly> = if rng.gen_bool(0.5) {
            let mut acc = vec![Polynomial::zero(&r); rank];
            for g in &gens {
                let dg = vector_degree(g, &twists).unwrap();
                let c = random_homogeneous(&r, (target - dg) as u32, 2, &mut rng);
                for (a, x) in acc.iter_mut().zip(g) {
                    *a = &*a + &(&c * x);
                }
            }
            acc
        } else {
            twists.iter().map(|&w| random_homogeneous(&r, (target - w) as u32, 3, &mut rng)).collect()
        };
        let expected = graded_member(&candidate, &gens, &twists);
        let decided = if module {
            let elems: Vec<ModuleElement<Q>> = gens.iter().map(|g| ModuleElement::new(g.clone()).unwrap()).collect();
            let m = Submodule::new(&r, rank, elems)
                .and_then(|m| m.with_twists(twists.clone()))
                .map_err(|e| e.to_string())?;
            module_membership(&ModuleElement::new(candidate.clone()).unwrap(), &m).map_err(|e| e.to_string())?
        } else {
            let m = Submodule::ideal(&r, gens.iter().map(|g| g[0].clone()).collect()).map_err(|e| e.to_string())?;
            ideal_membership(&candidate[0], &m).map_err(|e| e.to_string())?
        };
        if decided.member != expected {
            disagreements += 1;
        }
        if let Some(w) = &decided.witness {
            let mut acc = vec![Polynomial::zero(&r); rank];
            for (c, g) in w.iter().zip(&gens) {
                for (a, x) in acc.iter_mut().zip(g) {
                    *a = &*a + &(c * x);
                }
            }
            ensure!(acc == candidate, "membership witness does not reassemble the candidate");
        }
        members += expected as usize;
    }
    ensure!(disagreements == 0, "{disagreements} disagreements out of {total}");
    Ok(format!("{total} instances ({members} members), 0 disagreements"))
}

fn criterion_9() -> Outcome {
    let r = ring(&["x", "y"]);
    let mut rng = rng(9);
    let (mut accepted, mut tried, mut gens_checked) = (0, 0, 0);
    while accepted < 50 {
        tried += 1;
        ensure!(tried < 2000, "only {accepted} decomposable graphs in {tried} draws");
        let g = random_ear_graph(&r, 8, &mut rng);
        if !decompose(&g, CycleBasisMode::Minimum, RemovalOrder::Greedy).map_err(|e| e.to_string())?.complete {
            continue;
        }
        accepted += 1;
        let basis = spline_module_generators(&g, None).map_err(|e| e.to_string())?;
        for (f, src) in basis.generators.iter().zip(&basis.sources) {
            let rep = verify_spline(&g, f).map_err(|e| e.to_string())?;
            ensure!(rep.valid, "generator fails the spline conditions on a graph with {} edges", g.num_edges());
            if !matches!(src, GeneratorSource::Trivial) {
                ensure!(f.value(basis.base_vertex).is_zero(), "generator nonzero at the base vertex");
            }
            gens_checked += 1;
        }
        let a = boundary_matrix(&g, &cycle_basis(&g, CycleBasisMode::Minimum));
        ensure!(a.rows().len() + g.num_vertices() == g.num_edges() + g.num_components(), "cycle basis size");
    }
    Ok(format!("{accepted} graphs ({tried} drawn), {gens_checked} generators verified"))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({secs:.2}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.2}s) {detail}", i + 1);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
