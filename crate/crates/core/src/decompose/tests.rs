use super::*;
use crate::field::Rational;
use crate::graph::parse_graph;
use crate::groebner::hilbert_series;
use crate::poly::parse_poly;

type Q = Rational;

fn d33(labels: [&str; 5]) -> EdgeLabeledGraph<Q> {
    let [a, b, c, d, e] = labels;
    parse_graph(&format!(
        "ring x, y\nvertices v0 v1 v2 v3\nedge v0 v2 : {a}\nedge v0 v1 : {b}\nedge v2 v3 : {c}\nedge v1 v3 : {d}\nedge v1 v2 : {e}\n"
    ))
    .unwrap()
}

fn p(g: &EdgeLabeledGraph<Q>, s: &str) -> Polynomial<Q> {
    parse_poly(s, g.ring()).unwrap()
}

fn row(g: &EdgeLabeledGraph<Q>, entries: &[&str]) -> Vec<Polynomial<Q>> {
    entries.iter().map(|s| p(g, s)).collect()
}

fn up_to_sign(a: &[Polynomial<Q>], b: &[Polynomial<Q>]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -y)
}

#[test]
fn d33_right_cycle_removal() {
    let g = d33(["x", "y", "y", "x", "x^2 + y^2"]);
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    let step = state.is_removable(1, 4).unwrap().expect("removable");
    assert_eq!(step.exterior, vec![2, 3]);
    assert!(step.witness_holds());
    // l5 = y*l3 - x*l4 with the row's signs
    assert_eq!(step.witness, row(&g, &["y", "-x"]));

    let after = remove_edge(&state, step.clone()).unwrap();
    assert_eq!(after.matrix().rows()[0], row(&g, &["x", "-y", "0", "0", "-x^2 - y^2"]));
    assert!(up_to_sign(&after.matrix().rows()[1], &row(&g, &["0", "0", "-y", "x", "0"])));

    assert!(matches!(remove_edge(&after, step), Err(Error::StaleStep)));
}

#[test]
fn errors_for_bad_pairs() {
    let g = d33(["x", "y", "y", "x", "x^2 + y^2"]);
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    assert!(matches!(state.is_removable(0, 2), Err(Error::EdgeNotOnCycle { .. })));
    assert!(matches!(state.is_removable(0, 0), Err(Error::EdgeNotInterior(0))));
}

#[test]
fn non_member_label_is_not_removable() {
    let g = d33(["x^2", "y^3", "x^2", "y^3", "x*y"]);
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    assert!(state.is_removable(0, 4).unwrap().is_none());
    assert!(state.is_removable(1, 4).unwrap().is_none());
    for order in [RemovalOrder::Greedy, RemovalOrder::Exhaustive] {
        let res = decompose(&g, CycleBasisMode::Minimum, order).unwrap();
        assert!(!res.complete);
        assert_eq!(res.interior_remaining, vec![4]);
    }
}

#[test]
fn d33_decomposes_into_two_cycles() {
    let g = d33(["x", "y", "y", "x", "x^2 + y^2"]);
    let res = decompose(&g, CycleBasisMode::Minimum, RemovalOrder::Greedy).unwrap();
    assert!(res.complete);
    assert_eq!(res.s(), 2);
    assert_eq!(res.p(), 0);
    assert_eq!(res.steps.len(), 1);
    let lens: Vec<usize> = res.cycles.iter().map(|c| c.edges.len()).collect();
    assert_eq!(lens, vec![2, 3]);
    let again = decompose(&g, CycleBasisMode::Minimum, RemovalOrder::Greedy).unwrap();
    assert_eq!(again.steps, res.steps);
}

#[test]
fn explicit_right_cycle_split() {
    let g = d33(["x", "y", "y", "x", "x^2 + y^2"]);
    let mut state = ReductionState::new(&g, CycleBasisMode::Minimum);
    state.apply(state.is_removable(1, 4).unwrap().unwrap()).unwrap();
    let split = split_off(&state).unwrap();
    assert_eq!(split.cycles.len(), 2);
    assert_eq!(split.cycles[0].labels, row(&g, &["x", "x^2 + y^2", "y"]));
    assert_eq!(split.cycles[1].labels, row(&g, &["y", "x"]));
    assert_eq!(split.matrix, state.matrix().rows().to_vec());
    assert_eq!(split.matrix.len(), 2);
}

#[test]
fn disjoint_cycles_need_no_steps() {
    let g: EdgeLabeledGraph<Q> =
        parse_graph("ring x, y\nedge a b : x\nedge b c : y\nedge a c : x\nedge d e : y\nedge e f : x\nedge d f : y\n")
            .unwrap();
    let res = decompose(&g, CycleBasisMode::Minimum, RemovalOrder::Greedy).unwrap();
    assert!(res.complete);
    assert!(res.steps.is_empty());
    assert_eq!(res.s(), 2);
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    assert_eq!(split_off(&state).unwrap().cycles.len(), 2);
}

#[test]
fn three_cycles_on_one_edge() {
    let g: EdgeLabeledGraph<Q> = parse_graph(
        "ring x, y\nedge a b : x\nedge a c : x\nedge c b : y\nedge a d : y\nedge d b : x\nedge a e : x + y\nedge e b : x - y\n",
    )
    .unwrap();
    let state = ReductionState::new(&g, CycleBasisMode::Minimum);
    assert_eq!(state.row_count(0), 3);
    let step = state.is_removable(0, 0).unwrap().unwrap();
    let after = remove_edge(&state, step).unwrap();
    assert_eq!(after.matrix().rows()[1], state.matrix().rows()[1]);
    assert_eq!(after.matrix().rows()[2], state.matrix().rows()[2]);
    // still interior (two rows); the zeroed entry is trivially removable
    let zero = after.is_removable(0, 0).unwrap().unwrap();
    assert!(zero.entry.is_zero());
    assert!(zero.witness.iter().all(Polynomial::is_zero));
    let v = ModuleElement::unit(g.ring(), 7, 0);
    assert_eq!(zero.apply_phi(&v), v);
}

#[test]
fn phi_maps_kernels_and_inverts() {
    for labels in [["x", "y", "y", "x", "x^2 + y^2"], ["x^2", "y^2", "y^2", "x^2", "x^2 + y^2"]] {
        let g = d33(labels);
        let state = ReductionState::new(&g, CycleBasisMode::Minimum);
        let step = state.is_removable(1, 4).unwrap().unwrap();
        let after = remove_edge(&state, step.clone()).unwrap();
        let twists = g.edge_twists().unwrap();
        let before_k = state.matrix().kernel(Some(&twists)).unwrap();
        let after_k = after.matrix().kernel(Some(&twists)).unwrap();
        for v in before_k.generators() {
            let w = syzygy_isomorphism(&step, state.matrix(), v).unwrap();
            assert!(after.matrix().annihilates(w.coords()));
            assert_eq!(&syzygy_isomorphism_inverse(&step, after.matrix(), &w).unwrap(), v);
        }
        for w in after_k.generators() {
            let v = step.apply_phi_inverse(w);
            assert!(state.matrix().annihilates(v.coords()));
            assert_eq!(&step.apply_phi(&v), w);
        }
        assert_eq!(hilbert_series(&before_k).unwrap(), hilbert_series(&after_k).unwrap());
        let bad = ModuleElement::unit(g.ring(), 5, 0);
        assert!(matches!(syzygy_isomorphism(&step, state.matrix(), &bad), Err(Error::NotInKernel)));
    }
}

#[test]
fn exhaustive_limit() {
    let mut text = String::from("ring x\n");
    for i in 0..13 {
        text.push_str(&format!("edge a{i} a{} : x\n", i + 1));
    }
    let g: EdgeLabeledGraph<Q> = parse_graph(&text).unwrap();
    assert!(decompose(&g, CycleBasisMode::Minimum, RemovalOrder::Exhaustive).is_err());
    assert!(decompose(&g, CycleBasisMode::Minimum, RemovalOrder::Greedy).unwrap().complete);
}
