//! Finite-depth exhaustive search over extraction choices.

/// A tree of choices whose nodes carry the CNOT cost of their own subcircuit.
pub trait SearchSpace {
    type Node;

    fn cost(&self, node: &Self::Node) -> usize;

    /// Choices available after committing to `node`; empty at the end of the input.
    fn expand(&self, node: &Self::Node) -> Vec<Self::Node>;
}

/// Picks the candidate whose best depth-`depth` continuation has the lowest
/// summed cost. Ties go to the first candidate; depth 0 is plain greedy.
///
/// Returns the chosen index and its leaf total, or `None` for an empty list.
pub fn recursive_search<S: SearchSpace>(
    space: &S,
    candidates: &[S::Node],
    depth: usize,
) -> Option<(usize, usize)> {
    if candidates.len() == 1 {
        return Some((0, space.cost(&candidates[0])));
    }
    let mut best: Option<(usize, usize)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let bound = best.map(|(_, s)| s);
        let score = subtree_min(space, c, depth, bound);
        if best.is_none_or(|(_, s)| score < s) {
            best = Some((i, score));
        }
    }
    best
}

/// Minimal leaf total below `node`; `bound` lets hopeless branches stop early
/// (costs are non-negative, so a partial sum already ≥ bound cannot win).
fn subtree_min<S: SearchSpace>(space: &S, node: &S::Node, depth: usize, bound: Option<usize>) -> usize {
    let own = space.cost(node);
    if depth == 0 || bound.is_some_and(|b| own >= b) {
        return own;
    }
    let children = space.expand(node);
    let mut best: Option<usize> = None;
    for child in &children {
        let limit = match (best, bound) {
            (Some(a), Some(b)) => Some(a.min(b - own)),
            (Some(a), None) => Some(a),
            (None, b) => b.map(|b| b - own),
        };
        let s = subtree_min(space, child, depth - 1, limit);
        if best.is_none_or(|b| s < b) {
            best = Some(s);
        }
    }
    own + best.unwrap_or(0)
}
