//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use lazyroute::circuit::Angle;
use lazyroute::generators::random_angle;
use lazyroute::verify::{dense_pauli, dense_tableau, dense_unitary, DenseMatrix};
use lazyroute::{
    f2_simulate, fan_in, fan_out, merge_rotations, normalize, BitRow, Circuit, CliffordTableau, CouplingGraph,
    Direction, Gate, PauliRotation, PauliString, RotationSequence, SteinerTree,
};
use rand::Rng;

/// Fan-in example tree: `r–b1–b2–y1`, `y1–b3–y2`, `y1–b4–y3`, labelled
/// r=0, b1=1, b2=2, y1=3, b3=4, y2=5, b4=6, y3=7.
pub const FAN_IN_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)];
pub const FAN_IN_TERMINALS: [usize; 4] = [0, 3, 5, 7];

/// Checks the fan-in example: CNOT count and root parity under F2 simulation.
pub fn fan_in_example() -> Result<usize, String> {
    let tree = SteinerTree::from_edges(&FAN_IN_EDGES, &FAN_IN_TERMINALS).map_err(|e| e.to_string())?;
    let gates = fan_in(&tree, &FAN_IN_TERMINALS, 0).map_err(|e| e.to_string())?;
    let m = f2_simulate(&Circuit::from_gates(8, gates.clone()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let want = BitRow::from_indices(8, FAN_IN_TERMINALS.iter().copied());
    if *m.row(0) != want {
        return Err(format!("root row {} != {}", m.row(0).to_bitstring(), want.to_bitstring()));
    }
    for g in &gates {
        let q = g.qubits();
        if !FAN_IN_EDGES.iter().any(|&(a, b)| (a, b) == (q[0], q[1]) || (b, a) == (q[0], q[1])) {
            return Err(format!("{g} is off the tree"));
        }
    }
    Ok(gates.len())
}

/// Fan-out marker oracle: with bit `m_v` set on `targets ∪ {root}`, the
/// circuit leaves only `m_root` set and never targets the root.
pub fn fan_out_ok(tree: &SteinerTree, n: usize, targets: &[usize], root: usize) -> Result<(), String> {
    let gates = fan_out(tree, targets, root).map_err(|e| e.to_string())?;
    let mut m = vec![false; n];
    for &t in targets.iter().chain([&root]) {
        m[t] = true;
    }
    for g in &gates {
        let Gate::Cnot(c, t) = *g else { return Err(format!("unexpected {g}")) };
        if t == root {
            return Err("root used as target".into());
        }
        if !tree.edges().iter().any(|&e| e == (c, t) || e == (t, c)) {
            return Err(format!("{g} is off the tree"));
        }
        m[t] ^= m[c];
    }
    let ok = (0..n).all(|v| m[v] == (v == root));
    ok.then_some(()).ok_or_else(|| format!("marker left as {m:?}"))
}

/// Random tree on `0..n` (each vertex attached to an earlier one after shuffling).
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    (1..n).map(|i| (order[rng.random_range(0..i)], order[i])).collect()
}

/// Minimum Steiner tree size by exhaustive search over vertex sets: the
/// smallest connected induced subgraph containing the terminals has
/// `|S| − 1` tree edges.
pub fn steiner_opt(g: &CouplingGraph, terminals: &[usize]) -> usize {
    let n = g.n_vertices();
    let tmask: u32 = terminals.iter().map(|&t| 1 << t).sum();
    let mut best = usize::MAX;
    for s in 0u32..1 << n {
        if s & tmask != tmask || (s.count_ones() as usize).saturating_sub(1) >= best {
            continue;
        }
        if induced_connected(g, s) {
            best = s.count_ones() as usize - 1;
        }
    }
    best
}

fn induced_connected(g: &CouplingGraph, s: u32) -> bool {
    let start = s.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if s >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == s
}

/// Checks `steiner_tree` on every terminal set of `g` with at least two
/// terminals; returns the number of sets checked.
pub fn steiner_all_terminal_sets(g: &CouplingGraph) -> Result<usize, String> {
    let n = g.n_vertices();
    let mut checked = 0;
    for tmask in 1u32..1 << n {
        let k = tmask.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let terminals: Vec<usize> = (0..n).filter(|&v| tmask >> v & 1 == 1).collect();
        let tree = g.steiner_tree(&terminals).map_err(|e| e.to_string())?;
        if !tree.is_tree() || !terminals.iter().all(|&t| tree.contains(t)) {
            return Err(format!("{} terminals {terminals:?}: not a spanning tree", g.name()));
        }
        if !tree.edges().iter().all(|&(a, b)| g.has_edge(a, b)) {
            return Err(format!("{} terminals {terminals:?}: edge off graph", g.name()));
        }
        let opt = steiner_opt(g, &terminals);
        // |T| ≤ 2(1 − 1/k)·OPT, kept in integers
        if tree.n_edges() * k > 2 * (k - 1) * opt {
            return Err(format!(
                "{} terminals {terminals:?}: {} edges vs optimum {opt}",
                g.name(),
                tree.n_edges()
            ));
        }
        checked += 1;
    }
    Ok(checked)
}

/// All connected graphs on `n` labelled vertices.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = CouplingGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).filter_map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        CouplingGraph::new(n, edges).ok()
    })
}

/// Random connected graph: a random spanning tree plus each other pair with probability `p`.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut impl Rng) -> CouplingGraph {
    let mut edges = random_tree(n, rng);
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && !edges.contains(&(b, a)) && rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    CouplingGraph::new(n, edges).expect("connected by construction")
}

pub fn random_pauli(n: usize, rng: &mut impl Rng) -> PauliString {
    let mut p = PauliString::identity(n);
    for q in 0..n {
        p.set_letter(q, ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)]).unwrap();
    }
    if rng.random_bool(0.5) {
        p = p.negated();
    }
    p
}

pub fn random_clifford_gate(n: usize, rng: &mut impl Rng) -> Gate {
    let q = rng.random_range(0..n);
    let r = if n > 1 { (q + rng.random_range(1..n)) % n } else { q };
    match rng.random_range(0..if n > 1 { 14 } else { 11 }) {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::Sdg(q),
        3 => Gate::X(q),
        4 => Gate::Y(q),
        5 => Gate::Z(q),
        6 => Gate::SqrtX(q),
        7 => Gate::SqrtXdg(q),
        8 => Gate::Rz(q, Angle::Exact(2 * rng.random_range(-3..4))),
        9 | 10 => {
            let mut p = random_pauli(n, rng);
            if p.is_identity() {
                p = PauliString::z_on(n, q);
            }
            Gate::PauliRot(PauliRotation::new(p, Angle::Exact(2 * rng.random_range(-3..4))))
        }
        11 => Gate::Swap(q, r),
        _ => Gate::Cnot(q, r),
    }
}

fn max_dev(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let d = a.dim();
    let mut m: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            m = m.max((a.get(i, j) - b.get(i, j)).norm());
        }
    }
    m
}

/// Applies `updates` random gates on either side of a tableau and of a dense
/// unitary in lock step, comparing a random signed Pauli conjugated both
/// ways after every update. Signs must match exactly, no phase freedom.
pub fn tableau_trial(n: usize, updates: usize, rng: &mut impl Rng) -> Result<(), String> {
    let mut t = CliffordTableau::identity(n);
    let mut u = DenseMatrix::identity(1 << n);
    for step in 0..updates {
        let g = random_clifford_gate(n, rng);
        if rng.random_bool(0.5) {
            t.apply_left(&g).map_err(|e| e.to_string())?;
            u.apply(&g);
        } else {
            t.apply_right(&g).map_err(|e| e.to_string())?;
            let mut a = u.adjoint();
            a.apply(&g.inverse());
            u = a.adjoint();
        }
        let p = random_pauli(n, rng);
        let dp = dense_pauli(&p);
        let fwd = u.mul(&dp).mul(&u.adjoint());
        let inv = u.adjoint().mul(&dp).mul(&u);
        let dev = max_dev(&fwd, &dense_pauli(&t.conjugate(&p, Direction::Forward)))
            .max(max_dev(&inv, &dense_pauli(&t.conjugate(&p, Direction::Inverse))));
        if dev > 1e-9 {
            return Err(format!("n={n} step {step} after {g}: P={p}, deviation {dev:e}"));
        }
    }
    if !t.is_valid() {
        return Err(format!("n={n}: invalid tableau after {updates} updates"));
    }
    if !dense_tableau(&t).approx_eq_up_to_phase(&u, 1e-9) {
        return Err(format!("n={n}: dense_tableau differs from the tracked unitary"));
    }
    Ok(())
}

/// `⟦trailing⟧·R_m⋯R_1` as a dense matrix.
pub fn dense_sequence(seq: &RotationSequence) -> DenseMatrix {
    dense_tableau(&seq.trailing).mul(&dense_unitary(&seq.rotation_circuit()).unwrap())
}

/// A random sequence with planted merge opportunities: rotations drawn from a
/// small axis pool, mostly diagonal so that repeats often commute back to
/// each other, with π/4 multiples so that some merges land on Clifford angles.
pub fn mergeable_sequence(n: usize, len: usize, rng: &mut impl Rng) -> RotationSequence {
    let mut pool: Vec<PauliString> = (0..3)
        .map(|_| {
            let mut p = PauliString::identity(n);
            for q in 0..n {
                p.set_letter(q, if rng.random_bool(0.5) { 'Z' } else { 'I' }).unwrap();
            }
            if p.is_identity() {
                p = PauliString::z_on(n, 0);
            }
            p
        })
        .collect();
    let mut extra = random_pauli(n, rng).unsigned();
    if extra.is_identity() {
        extra = PauliString::x_on(n, 0);
    }
    pool.push(extra);
    let mut rotations: Vec<PauliRotation> = (0..len)
        .map(|_| {
            let axis = pool[rng.random_range(0..pool.len())].clone();
            let angle = if rng.random_bool(0.5) {
                Angle::Exact([1, 3, 5, 7][rng.random_range(0..4)])
            } else {
                random_angle(rng)
            };
            PauliRotation::new(axis, angle)
        })
        .collect();
    // guarantee at least one adjacent same-axis pair
    let k = rng.random_range(0..len);
    rotations.insert(k, PauliRotation::new(rotations[k].axis().clone(), Angle::Exact(1)));
    let mut trailing = CliffordTableau::identity(n);
    for _ in 0..5 {
        trailing.apply_left(&random_clifford_gate(n, rng)).unwrap();
    }
    RotationSequence { rotations, trailing }
}

/// Merges `seq` and checks the outcome: fewer rotations, no Clifford angles
/// left, same unitary up to phase. Returns `(before, after)` counts.
pub fn merge_trial(seq: &RotationSequence) -> Result<(usize, usize), String> {
    let merged = merge_rotations(seq);
    let (before, after) = (seq.rotations.len(), merged.rotations.len());
    if after >= before {
        return Err(format!("no reduction: {before} -> {after}"));
    }
    if let Some(r) = merged.rotations.iter().find(|r| r.angle().is_clifford()) {
        return Err(format!("Clifford-angle rotation {} kept", r.axis()));
    }
    if !dense_sequence(seq).approx_eq_up_to_phase(&dense_sequence(&merged), 1e-9) {
        return Err("merged sequence is not equivalent".into());
    }
    Ok((before, after))
}

/// The two-T-gate case: both merge into an `S` that vanishes into the trailing Clifford.
pub fn t_pair_merge() -> Result<(), String> {
    let c = Circuit::from_gates(1, vec![Gate::T(0), Gate::T(0)]).unwrap();
    let seq = normalize(&c).map_err(|e| e.to_string())?;
    if seq.rotations.len() != 2 {
        return Err(format!("normalize gave {} rotations", seq.rotations.len()));
    }
    let merged = merge_rotations(&seq);
    if !merged.rotations.is_empty() {
        return Err(format!("{} rotations left", merged.rotations.len()));
    }
    let s = CliffordTableau::from_gates(1, &[Gate::S(0)]).map_err(|e| e.to_string())?;
    if merged.trailing != s {
        return Err("trailing Clifford is not S".into());
    }
    if !dense_unitary(&c).unwrap().approx_eq_up_to_phase(&dense_sequence(&merged), 1e-9) {
        return Err("not equivalent".into());
    }
    Ok(())
}
