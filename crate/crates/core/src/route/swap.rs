//! SWAP insertion with a tracked qubit permutation.
//!
//! `σ[p]` is the logical qubit currently held by physical qubit `p`.

use super::{Extraction, Lazy, Tracker};
use crate::arch::CouplingGraph;
use crate::circuit::Gate;
use crate::f2::Permutation;

pub struct SwapRouter<'a> {
    graph: &'a CouplingGraph,
}

impl<'a> SwapRouter<'a> {
    pub fn new(graph: &'a CouplingGraph) -> Self {
        SwapRouter { graph }
    }

    /// The SWAP chains bringing physical `a` and `b` together: candidate `j`
    /// walks `a` forward `j` steps along the shortest path and `b` backward
    /// over the rest.
    pub fn meeting_chains(&self, a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
        let path = self.graph.shortest_path(a, b);
        let k = path.len();
        if k <= 2 {
            return vec![Vec::new()];
        }
        (0..k - 1)
            .map(|j| {
                let mut chain: Vec<(usize, usize)> = (0..j).map(|i| (path[i], path[i + 1])).collect();
                chain.extend((j + 1..k - 1).rev().map(|i| (path[i + 1], path[i])));
                chain
            })
            .collect()
    }
}

fn on_physical(sigma: &Permutation, g: &Gate) -> Gate {
    g.relabel(|q| sigma.apply_inverse(q))
}

impl Lazy for SwapRouter<'_> {
    type State = Permutation;

    fn absorb(&self, sigma: &mut Permutation, g: &Gate) -> bool {
        match *g {
            Gate::Swap(i, j) => {
                sigma.swap_left(i, j);
                true
            }
            _ => false,
        }
    }

    fn extract(&self, sigma: &Permutation, g: &Gate) -> Vec<Extraction<Permutation>> {
        let qs = g.qubits();
        if qs.len() < 2 {
            return vec![Extraction::new(sigma.clone(), vec![on_physical(sigma, g)])];
        }
        let (a, b) = (sigma.apply_inverse(qs[0]), sigma.apply_inverse(qs[1]));
        self.meeting_chains(a, b)
            .into_iter()
            .map(|chain| {
                let mut s = sigma.clone();
                let mut gates: Vec<Gate> = Vec::with_capacity(chain.len() + 1);
                for (x, y) in chain {
                    s.swap_right(x, y);
                    gates.push(Gate::Swap(x, y));
                }
                gates.push(on_physical(&s, g));
                Extraction::new(s, gates)
            })
            .collect()
    }

    fn in_horizon(&self, g: &Gate) -> bool {
        g.arity() >= 2
    }

    fn tracker(&self, sigma: &Permutation) -> Tracker {
        Tracker::Permutation(sigma.clone())
    }
}
