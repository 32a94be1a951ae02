//! Shared fixtures for the routing benchmarks.

use lazyroute::generators::{qaoa_maxklin2, random_pauli_sequence};
use lazyroute::{Circuit, CouplingGraph};

pub struct Instance {
    pub name: &'static str,
    pub graph: CouplingGraph,
    pub circuit: Circuit,
}

/// MAX-2-LIN-2 on melbourne and a Pauli rotation sequence on aspen.
pub fn instances() -> Vec<Instance> {
    vec![
        Instance {
            name: "qaoa14-melbourne",
            graph: CouplingGraph::preset("melbourne").expect("preset"),
            circuit: qaoa_maxklin2(14, 2, 0).expect("valid parameters"),
        },
        Instance {
            name: "pauli16x20-aspen",
            graph: CouplingGraph::preset("aspen").expect("preset"),
            circuit: random_pauli_sequence(16, 20, 0).expect("valid parameters"),
        },
    ]
}
