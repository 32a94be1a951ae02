//! CNOT fan-in / fan-out along Steiner trees and Pauli rotation reduction.

use crate::arch::{CouplingGraph, SteinerTree};
use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::pauli::{diagonalize_local, PauliString};

/// Mutable copy of a tree used while peeling leaves.
struct Peel {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Peel {
    fn new(tree: &SteinerTree) -> Self {
        Peel {
            vertices: tree.vertices().to_vec(),
            edges: tree.edges().to_vec(),
        }
    }

    /// Lowest-index leaf other than `skip`, with its unique neighbor.
    fn leaf(&self, skip: Option<usize>) -> Option<(usize, usize)> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| Some(v) != skip)
            .find_map(|v| {
                let mut nbrs = self.edges.iter().filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                });
                match (nbrs.next(), nbrs.next()) {
                    (Some(u), None) => Some((v, u)),
                    _ => None,
                }
            })
    }

    fn remove(&mut self, v: usize) {
        self.vertices.retain(|&w| w != v);
        self.edges.retain(|&(a, b)| a != v && b != v);
    }
}

/// CNOTs along `tree` leaving the XOR of all terminal wires on `root`.
///
/// Read as row operations (`CNOT(c, t)`: row `t` ^= row `c`), the root row
/// ends up as the sum of the terminal rows; other wires are left dirty.
pub fn fan_in(tree: &SteinerTree, terminals: &[usize], root: usize) -> Result<Vec<Gate>> {
    if !terminals.contains(&root) {
        return Err(Error::RootNotTerminal(root));
    }
    if let Some(&v) = terminals.iter().find(|&&v| !tree.contains(v)) {
        return Err(Error::NotInTree(v));
    }
    let mut carrying: Vec<usize> = terminals.to_vec();
    let mut peel = Peel::new(tree);
    let mut gates = Vec::new();
    while let Some((v, u)) = peel.leaf(Some(root)) {
        if carrying.contains(&v) {
            if carrying.contains(&u) {
                gates.push(Gate::Cnot(v, u));
            } else {
                // transplant v's value onto u
                gates.push(Gate::Cnot(u, v));
                gates.push(Gate::Cnot(v, u));
                carrying.push(u);
            }
        }
        peel.remove(v);
    }
    Ok(gates)
}

/// CNOTs along `tree` clearing a marker held on every target so that only
/// `root` keeps it.
///
/// In row-operation terms: if bit `m_i` is 1 exactly on `targets ∪ {root}`,
/// the circuit (`m_t ^= m_c` per `CNOT(c, t)`) leaves `m = e_root`, and the
/// root row is never a CNOT target. Every leaf of `tree` must be a target
/// or the root, as in a pruned Steiner tree.
pub fn fan_out(tree: &SteinerTree, targets: &[usize], root: usize) -> Result<Vec<Gate>> {
    if !tree.contains(root) {
        return Err(Error::NotInTree(root));
    }
    if let Some(&v) = targets.iter().find(|&&v| !tree.contains(v)) {
        return Err(Error::NotInTree(v));
    }
    let mut ones: Vec<usize> = targets.to_vec();
    if !ones.contains(&root) {
        ones.push(root);
    }
    let mut gates = Vec::new();
    let mut peel = Peel::new(tree);
    while let Some((v, u)) = peel.leaf(None) {
        if !ones.contains(&u) {
            gates.push(Gate::Cnot(v, u));
            ones.push(u);
        }
        peel.remove(v);
    }
    let mut peel = Peel::new(tree);
    while let Some((v, u)) = peel.leaf(Some(root)) {
        gates.push(Gate::Cnot(u, v));
        peel.remove(v);
    }
    Ok(gates)
}

/// Local basis change plus fan-in mapping the rotation axis `p` onto `±Z_target`.
///
/// Returns the Clifford prefix `c` with `c·p·c† = ±Z_target`.
pub fn reduce_pauli_rotation(
    g: &CouplingGraph,
    p: &PauliString,
    target: usize,
) -> Result<Vec<Gate>> {
    let support = p.support();
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    if !support.contains(&target) {
        return Err(Error::TargetOutsideSupport(target));
    }
    let tree = g.steiner_tree(&support)?;
    let (mut gates, _) = diagonalize_local(p);
    gates.extend(fan_in(&tree, &support, target)?);
    Ok(gates)
}
