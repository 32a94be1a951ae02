//! Rewriting circuits as Pauli rotation sequences, merging and grouping them.

use crate::arch::CouplingGraph;
use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::pauli::{CliffordTableau, Direction, PauliRotation, PauliString};

/// `Ũ = ⟦trailing⟧ · R_m ⋯ R_1` with `rotations = [R_1, …, R_m]`, none of
/// them at a Clifford angle.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationSequence {
    pub rotations: Vec<PauliRotation>,
    pub trailing: CliffordTableau,
}

impl RotationSequence {
    pub fn n(&self) -> usize {
        self.trailing.n()
    }

    /// The rotations as a circuit of Pauli rotation gates (trailing Clifford dropped).
    pub fn rotation_circuit(&self) -> Circuit {
        let gates = self.rotations.iter().cloned().map(Gate::PauliRot).collect();
        Circuit::from_gates(self.n(), gates).expect("rotation widths match")
    }
}

/// The rotation a non-Clifford gate implements, if any.
pub(crate) fn as_rotation(n: usize, g: &Gate) -> Option<PauliRotation> {
    match g.to_rz_form() {
        Gate::Rz(q, a) if !a.is_clifford() => Some(PauliRotation::new(PauliString::z_on(n, q), a)),
        Gate::PauliRot(r) if !r.angle().is_clifford() => Some(r),
        _ => None,
    }
}

/// Pulls every Clifford gate to the end of the circuit.
pub fn normalize(c: &Circuit) -> Result<RotationSequence> {
    let n = c.n_qubits();
    let mut u = CliffordTableau::identity(n);
    let mut rotations = Vec::new();
    for g in c.gates() {
        match as_rotation(n, g) {
            // R_P(θ)·U = U·R_{U†PU}(θ)
            Some(r) if r.axis().is_identity() => {}
            Some(r) => rotations.push(PauliRotation::new(
                u.conjugate(r.axis(), Direction::Inverse),
                r.angle(),
            )),
            None => u.apply_left(&g.to_rz_form())?,
        }
    }
    Ok(RotationSequence {
        rotations,
        trailing: u,
    })
}

/// Single-pass rotation merging.
///
/// Each rotation walks back through the rotations kept so far and merges into
/// the first one with the same axis, stopping at the first anticommuting one.
/// Rotations whose angle becomes a Clifford angle are then pulled through the
/// rest of the sequence into the trailing Clifford.
pub fn merge_rotations(seq: &RotationSequence) -> RotationSequence {
    let mut kept: Vec<PauliRotation> = Vec::with_capacity(seq.rotations.len());
    'next: for r in &seq.rotations {
        for prev in kept.iter_mut().rev() {
            if prev.axis().same_letters(r.axis()) {
                prev.set_angle(prev.angle() + r.angle());
                continue 'next;
            }
            if !prev.commutes_with(r) {
                break;
            }
        }
        kept.push(r.clone());
    }
    pull_cliffords(&kept, &seq.trailing)
}

/// Moves Clifford-angle rotations past the later ones: `R·D = D·R_{D†PD}`.
fn pull_cliffords(rotations: &[PauliRotation], trailing: &CliffordTableau) -> RotationSequence {
    let n = trailing.n();
    let mut d = CliffordTableau::identity(n);
    let mut out = Vec::new();
    for r in rotations {
        let moved = PauliRotation::new(d.conjugate(r.axis(), Direction::Inverse), r.angle());
        if moved.angle().is_clifford() {
            d.apply_right(&Gate::PauliRot(moved)).expect("Clifford angle");
        } else {
            out.push(moved);
        }
    }
    d.compose_left(trailing);
    RotationSequence {
        rotations: out,
        trailing: d,
    }
}

/// Greedy left-to-right split into runs of pairwise commuting rotations.
pub fn group_rotations(rotations: &[PauliRotation]) -> Vec<Vec<PauliRotation>> {
    let mut groups: Vec<Vec<PauliRotation>> = Vec::new();
    for r in rotations {
        match groups.last_mut() {
            Some(g) if g.iter().all(|p| p.commutes_with(r)) => g.push(r.clone()),
            _ => groups.push(vec![r.clone()]),
        }
    }
    groups
}

/// Steiner-tree size for synthesizing `axis` behind the Clifford `t`.
pub fn tree_cost(g: &CouplingGraph, t: &CliffordTableau, axis: &PauliString) -> usize {
    let support = t.conjugate(axis, Direction::Inverse).support();
    g.steiner_tree(&support).map_or(0, |tree| tree.n_edges())
}

/// Orders a commuting group by tree size behind a fixed tableau, stable on
/// ties. The Clifford router re-evaluates this choice live after each
/// extraction since the tableau changes.
pub fn reorder_within_group(
    group: &[PauliRotation],
    g: &CouplingGraph,
    t: &CliffordTableau,
) -> Vec<PauliRotation> {
    let mut keyed: Vec<(usize, &PauliRotation)> =
        group.iter().map(|r| (tree_cost(g, t, r.axis()), r)).collect();
    keyed.sort_by_key(|&(k, _)| k);
    keyed.into_iter().map(|(_, r)| r.clone()).collect()
}
