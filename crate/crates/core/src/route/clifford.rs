//! Routing with a tracked Clifford operator.
//!
//! Clifford gates are absorbed into the tableau `T`. A rotation `R_P(θ)` is
//! pushed behind `T` as `R_{P'}(sθ)` with `sP' = T†PT`, then implemented by
//! a local basis change and a fan-in onto one qubit of `supp(P')`; the
//! inverse of that Clifford prefix is folded back into `T`.

use super::{drive, Extraction, Lazy, RouteOptions, Step, Tracker};
use crate::arch::CouplingGraph;
use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::pauli::{diagonalize_local, CliffordConjugate, CliffordTableau, Direction, PauliRotation};
use crate::prepass::{as_rotation, group_rotations, merge_rotations, normalize, tree_cost};
use crate::synth::fan_in;

pub struct CliffordRouter<'a> {
    graph: &'a CouplingGraph,
    /// For rotation inputs: end (exclusive) of the commuting group starting
    /// at each position, when live reordering is on.
    group_end: Option<Vec<usize>>,
}

impl<'a> CliffordRouter<'a> {
    pub fn new(graph: &'a CouplingGraph) -> Self {
        CliffordRouter {
            graph,
            group_end: None,
        }
    }

    fn with_groups(graph: &'a CouplingGraph, sizes: &[usize]) -> Self {
        let mut ends = Vec::new();
        let mut start = 0;
        for &len in sizes {
            ends.extend(std::iter::repeat_n(start + len, len));
            start += len;
        }
        CliffordRouter {
            graph,
            group_end: Some(ends),
        }
    }
}

impl Lazy for CliffordRouter<'_> {
    type State = CliffordTableau;

    fn absorb(&self, t: &mut CliffordTableau, g: &Gate) -> bool {
        match as_rotation(t.n(), g) {
            Some(r) => r.axis().is_identity(),
            None => {
                t.apply_left(g).expect("Clifford gate");
                true
            }
        }
    }

    fn extract(&self, t: &CliffordTableau, g: &Gate) -> Vec<Extraction<CliffordTableau>> {
        let r = as_rotation(t.n(), g).expect("non-Clifford rotation");
        let pulled = PauliRotation::new(t.conjugate(r.axis(), Direction::Inverse), r.angle());
        let axis = pulled.axis();
        let support = axis.support();
        let tree = self.graph.steiner_tree(&support).expect("non-empty support");
        let (local, _) = diagonalize_local(axis);
        support
            .iter()
            .map(|&root| {
                let mut prefix = local.clone();
                prefix.extend(fan_in(&tree, &support, root).expect("root is a terminal"));
                let mut image = axis.clone();
                let mut state = t.clone();
                for gate in &prefix {
                    image.conjugate_gate(gate).expect("Clifford prefix");
                    state.apply_right(&gate.inverse()).expect("Clifford prefix");
                }
                debug_assert!(image.support() == [root] && image.is_diagonal());
                let angle = if image.is_negative() {
                    -pulled.angle()
                } else {
                    pulled.angle()
                };
                let mut gates = prefix;
                gates.push(Gate::Rz(root, angle));
                Extraction::new(state, gates)
            })
            .collect()
    }

    /// Brings the cheapest remaining member of the current commuting group to `pos`.
    fn prepare(&self, t: &CliffordTableau, gates: &mut [Gate], pos: usize) {
        let Some(ends) = &self.group_end else { return };
        let end = ends[pos];
        if end - pos < 2 {
            return;
        }
        let cost = |g: &Gate| match g {
            Gate::PauliRot(r) => tree_cost(self.graph, t, r.axis()),
            _ => usize::MAX,
        };
        // first minimum wins ties
        let best = (pos..end).min_by_key(|&k| cost(&gates[k])).unwrap_or(pos);
        gates[pos..=best].rotate_right(1);
    }

    fn tracker(&self, t: &CliffordTableau) -> Tracker {
        Tracker::Clifford(t.clone())
    }
}

/// Runs the clifford router, with the merge/reorder pre-passes when enabled.
pub(super) fn run(
    graph: &CouplingGraph,
    input: &Circuit,
    initial: CliffordTableau,
    depth: usize,
    opts: &RouteOptions,
    out: &mut Vec<Gate>,
    observer: Option<&mut dyn FnMut(Step<'_>)>,
) -> Result<CliffordTableau> {
    if !opts.merge && !opts.reorder {
        let router = CliffordRouter::new(graph);
        return Ok(drive(&router, initial, input.gates().to_vec(), depth, out, observer));
    }
    let mut seq = normalize(input)?;
    if opts.merge {
        seq = merge_rotations(&seq);
    }
    let router = if opts.reorder {
        let sizes: Vec<usize> = group_rotations(&seq.rotations).iter().map(Vec::len).collect();
        CliffordRouter::with_groups(graph, &sizes)
    } else {
        CliffordRouter::new(graph)
    };
    let gates = seq.rotations.iter().cloned().map(Gate::PauliRot).collect();
    let mut t = drive(&router, initial, gates, depth, out, observer);
    t.compose_left(&seq.trailing);
    Ok(t)
}
