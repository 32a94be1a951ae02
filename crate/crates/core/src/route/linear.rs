//! Routing with a tracked linear reversible operator.
//!
//! CNOTs and SWAPs are absorbed into `A`. A one-qubit gate on logical `q`
//! forces a fan-in that makes row `q` of `A` a unit vector `e_r`, plus a
//! fan-out making column `r` equal `e_q` when the gate is not diagonal; the
//! gate then runs on physical `r`.

use super::{Extraction, Lazy, Tracker};
use crate::arch::CouplingGraph;
use crate::circuit::Gate;
use crate::f2::LinearTable;
use crate::synth::{fan_in, fan_out};

pub struct LinearRouter<'a> {
    graph: &'a CouplingGraph,
}

impl<'a> LinearRouter<'a> {
    pub fn new(graph: &'a CouplingGraph) -> Self {
        LinearRouter { graph }
    }

    fn isolate(&self, a: &LinearTable, q: usize, root: usize, terminals: &[usize], diagonal: bool) -> Extraction<LinearTable> {
        let mut state = a.clone();
        let tree = self.graph.steiner_tree(terminals).expect("non-empty row");
        let mut gates = fan_in(&tree, terminals, root).expect("root is a terminal");
        for g in &gates {
            if let Gate::Cnot(c, t) = *g {
                state.cnot_right(c, t);
            }
        }
        if !diagonal {
            let targets: Vec<usize> = state.inverse_table().column(q).ones().collect();
            let tree = self.graph.steiner_tree(&targets).expect("non-empty column");
            let out = fan_out(&tree, &targets, root).expect("root in tree");
            for g in &out {
                if let Gate::Cnot(c, t) = *g {
                    state.cnot_right(c, t);
                }
            }
            gates.extend(out);
        }
        Extraction::new(state, gates)
    }
}

impl Lazy for LinearRouter<'_> {
    type State = LinearTable;

    fn absorb(&self, a: &mut LinearTable, g: &Gate) -> bool {
        match *g {
            Gate::Cnot(c, t) => a.cnot(c, t),
            Gate::Swap(i, j) => a.swap(i, j),
            _ => return false,
        }
        true
    }

    fn extract(&self, a: &LinearTable, g: &Gate) -> Vec<Extraction<LinearTable>> {
        let q = g.qubits()[0];
        let terminals: Vec<usize> = a.table().row(q).ones().collect();
        let diagonal = g.is_diagonal();
        terminals
            .iter()
            .map(|&root| {
                let mut e = self.isolate(a, q, root, &terminals, diagonal);
                debug_assert!(e.state.table().row(q).ones().eq([root]));
                e.gates.push(g.relabel(|_| root));
                e
            })
            .collect()
    }

    fn tracker(&self, a: &LinearTable) -> Tracker {
        Tracker::Linear(a.clone())
    }
}
