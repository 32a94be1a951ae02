use lazyroute::generators::{qaoa_maxklin2, random_circuit, random_pauli_sequence};
use lazyroute::{
    check_compliance, route, verify_routed, Angle, Circuit, CouplingGraph, Gate, Method, RouteOptions, Tracker,
};

const TOL: f64 = 1e-9;

fn six_qubit_example() -> Circuit {
    use Gate::*;
    Circuit::from_gates(
        6,
        vec![
            H(0),
            SqrtX(4),
            Cnot(0, 4),
            Cnot(4, 2),
            T(2),
            H(2),
            SqrtX(1),
            Cnot(1, 5),
            Cnot(5, 3),
            T(3),
        ],
    )
    .unwrap()
}

fn check(c: &Circuit, g: &CouplingGraph, method: Method, opts: &RouteOptions) {
    let out = route(c, g, method, opts).unwrap();
    assert!(check_compliance(&out.circuit, g).is_empty(), "{method} on {}", g.name());
    assert!(
        verify_routed(c, &out, opts.initial.as_ref(), TOL).unwrap(),
        "{method} on {}: {c:?}",
        g.name()
    );
}

#[test]
fn example_on_lnn6_every_method() {
    let g = CouplingGraph::preset("lnn:6").unwrap();
    let c = six_qubit_example();
    for method in Method::ALL {
        for depth in 0..=2 {
            let opts = RouteOptions {
                depth: Some(depth),
                ..Default::default()
            };
            check(&c, &g, method, &opts);
        }
    }
}

#[test]
fn example_with_prepasses() {
    let g = CouplingGraph::preset("lnn:6").unwrap();
    let c = six_qubit_example();
    for (merge, reorder) in [(true, false), (false, true), (true, true)] {
        let opts = RouteOptions {
            merge,
            reorder,
            ..Default::default()
        };
        check(&c, &g, Method::Clifford, &opts);
    }
}

#[test]
fn random_circuits_small_graphs() {
    for spec in ["lnn:5", "grid:2x3", "all2all:4"] {
        let g = CouplingGraph::preset(spec).unwrap();
        for seed in 0..15 {
            for method in Method::ALL {
                let n = 2 + seed as usize % (g.n_vertices() - 1);
                let c = random_circuit(method, n, 25, seed).unwrap();
                check(&c, &g, method, &RouteOptions::default());
            }
        }
    }
}

#[test]
fn clifford_prepasses_preserve_semantics() {
    let g = CouplingGraph::preset("grid:2x3").unwrap();
    for seed in 0..10 {
        let c = random_pauli_sequence(6, 8, seed).unwrap();
        for (merge, reorder) in [(true, false), (false, true), (true, true)] {
            let opts = RouteOptions {
                merge,
                reorder,
                depth: Some(1),
                ..Default::default()
            };
            check(&c, &g, Method::Clifford, &opts);
        }
        let c = random_circuit(Method::Clifford, 5, 30, seed).unwrap();
        let opts = RouteOptions {
            merge: true,
            reorder: true,
            ..Default::default()
        };
        check(&c, &g, Method::Clifford, &opts);
    }
}

#[test]
fn qaoa_routes_on_a_line() {
    let g = CouplingGraph::preset("lnn:5").unwrap();
    let c = qaoa_maxklin2(5, 2, 7).unwrap();
    for method in Method::ALL {
        check(&c, &g, method, &RouteOptions::default());
    }
}

#[test]
fn chaining_matches_single_run() {
    let g = CouplingGraph::preset("lnn:5").unwrap();
    for method in Method::ALL {
        for seed in 0..5 {
            let c1 = random_circuit(method, 5, 15, seed).unwrap();
            let c2 = random_circuit(method, 5, 15, seed + 100).unwrap();
            let first = route(&c1, &g, method, &RouteOptions::default()).unwrap();
            let opts = RouteOptions {
                initial: Some(first.final_operator.clone()),
                ..Default::default()
            };
            let second = route(&c2, &g, method, &opts).unwrap();
            let joined = c1.concat(&c2).unwrap();
            let mut out = first.circuit.clone();
            out.extend(second.circuit.gates().iter().cloned()).unwrap();
            let combined = lazyroute::RoutedOutput {
                circuit: out,
                final_operator: second.final_operator.clone(),
                metrics: second.metrics.clone(),
            };
            assert!(verify_routed(&joined, &combined, None, TOL).unwrap(), "{method} seed {seed}");
            assert!(verify_routed(&c2, &second, opts.initial.as_ref(), TOL).unwrap());
        }
    }
}

#[test]
fn linear_accepts_permutation_initial() {
    let g = CouplingGraph::preset("lnn:4").unwrap();
    let c = random_circuit(Method::Linear, 4, 20, 1).unwrap();
    let sigma = lazyroute::Permutation::from_vec(vec![2, 0, 3, 1]).unwrap();
    let opts = RouteOptions {
        initial: Some(Tracker::Permutation(sigma)),
        ..Default::default()
    };
    check(&c, &g, Method::Linear, &opts);
    assert!(route(&c, &g, Method::Swap, &RouteOptions {
        initial: Some(Tracker::identity(Method::Linear, 4)),
        ..Default::default()
    })
    .is_err());
}

#[test]
fn narrow_circuit_is_widened() {
    let g = CouplingGraph::preset("grid:3x3").unwrap();
    let c = Circuit::from_gates(2, vec![Gate::Cnot(0, 1), Gate::Rz(1, Angle::Real(0.4))]).unwrap();
    for method in Method::ALL {
        let out = route(&c, &g, method, &RouteOptions::default()).unwrap();
        assert_eq!(out.circuit.n_qubits(), 9);
        assert!(verify_routed(&c, &out, None, TOL).unwrap());
    }
}

#[test]
fn swap_router_adds_no_work_on_compliant_input() {
    let g = CouplingGraph::preset("lnn:4").unwrap();
    let c = Circuit::from_gates(4, vec![Gate::Cnot(0, 1), Gate::Cnot(1, 2), Gate::Cnot(2, 3)]).unwrap();
    let out = route(&c, &g, Method::Swap, &RouteOptions::default()).unwrap();
    assert_eq!(out.circuit, c);
    assert!(out.final_operator.is_identity());
    assert_eq!(out.metrics.overhead_pct(), 0.0);
}

#[test]
fn verification_catches_tampering() {
    let g = CouplingGraph::preset("lnn:6").unwrap();
    let c = six_qubit_example();
    for method in Method::ALL {
        let mut out = route(&c, &g, method, &RouteOptions::default()).unwrap();
        let mut gates = out.circuit.gates().to_vec();
        let k = gates.iter().position(|g| matches!(g, Gate::Cnot(..) | Gate::Swap(..))).unwrap();
        gates.remove(k);
        out.circuit = Circuit::from_gates(6, gates).unwrap();
        assert!(!verify_routed(&c, &out, None, TOL).unwrap(), "{method}");
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn routed_output_is_equivalent_and_compliant(
            seed in any::<u64>(),
            method in prop::sample::select(Method::ALL.to_vec()),
            spec in prop::sample::select(vec!["lnn:4", "grid:2x3", "all2all:5"]),
            len in 1usize..30,
            depth in 0usize..3,
        ) {
            let g = CouplingGraph::preset(spec).unwrap();
            let c = random_circuit(method, g.n_vertices(), len, seed).unwrap();
            let opts = RouteOptions { depth: Some(depth), ..Default::default() };
            let out = route(&c, &g, method, &opts).unwrap();
            prop_assert!(check_compliance(&out.circuit, &g).is_empty());
            prop_assert!(verify_routed(&c, &out, None, TOL).unwrap());
        }
    }
}

#[test]
fn merged_t_pair_leaves_no_rotation() {
    let g = CouplingGraph::preset("lnn:2").unwrap();
    let c = Circuit::from_gates(2, vec![Gate::T(0), Gate::T(0)]).unwrap();
    let opts = RouteOptions {
        merge: true,
        ..Default::default()
    };
    let out = route(&c, &g, Method::Clifford, &opts).unwrap();
    assert!(out.circuit.is_empty());
    let s = lazyroute::CliffordTableau::from_gates(2, &[Gate::S(0)]).unwrap();
    assert_eq!(out.final_operator, Tracker::Clifford(s));
    assert!(verify_routed(&c, &out, None, TOL).unwrap());
}

#[test]
fn swap_ties_pick_first_meeting_point() {
    let g = CouplingGraph::preset("lnn:4").unwrap();
    let c = Circuit::from_gates(4, vec![Gate::Cnot(0, 3)]).unwrap();
    let opts = RouteOptions {
        depth: Some(0),
        ..Default::default()
    };
    let out = route(&c, &g, Method::Swap, &opts).unwrap();
    assert_eq!(out.circuit.gates(), &[Gate::Swap(3, 2), Gate::Swap(2, 1), Gate::Cnot(0, 1)]);
}

#[test]
fn weight_four_rotation_on_a_line() {
    let g = CouplingGraph::preset("lnn:4").unwrap();
    let axis: lazyroute::PauliString = "XYZI".parse().unwrap();
    let rot = lazyroute::PauliRotation::new(axis, Angle::Real(0.37));
    let c = Circuit::from_gates(4, vec![Gate::PauliRot(rot)]).unwrap();
    let out = route(&c, &g, Method::Clifford, &RouteOptions::default()).unwrap();
    assert_eq!(out.circuit.gates().iter().filter(|g| matches!(g, Gate::Rz(..))).count(), 1);
    assert_eq!(out.metrics.out_cnot, 2);
    assert!(verify_routed(&c, &out, None, TOL).unwrap());
}

#[test]
fn routing_is_deterministic() {
    let g = CouplingGraph::preset("grid:3x3").unwrap();
    for method in Method::ALL {
        let c = random_circuit(method, 9, 40, 77).unwrap();
        let a = route(&c, &g, method, &RouteOptions::default()).unwrap();
        let b = route(&c, &g, method, &RouteOptions::default()).unwrap();
        assert_eq!(a.circuit, b.circuit);
        assert_eq!(a.final_operator, b.final_operator);
    }
}

#[test]
fn invariant_holds_after_every_step() {
    let g = CouplingGraph::preset("lnn:5").unwrap();
    for method in Method::ALL {
        let c = random_circuit(method, 5, 25, 5).unwrap();
        let mut steps = 0;
        let mut observer = |step: lazyroute::Step<'_>| {
            let prefix = Circuit::from_gates(5, c.gates()[..step.consumed].to_vec()).unwrap();
            let emitted = Circuit::from_gates(5, step.emitted.to_vec()).unwrap();
            assert!(
                lazyroute::equivalent_up_to(&step.tracker, &prefix, &emitted, TOL).unwrap(),
                "{method} after {} gates",
                step.consumed
            );
            steps += 1;
        };
        lazyroute::route_observed(&c, &g, method, &RouteOptions::default(), Some(&mut observer)).unwrap();
        assert_eq!(steps, c.len());
    }
}
