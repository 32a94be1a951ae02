//! The lazy-synthesis driver and its three instantiations.
//!
//! A router keeps a classical description `h` of a deferred operator and
//! maintains `c̃_in = ⟦h⟧·c̃_out` over the gates consumed so far. Gates of the
//! tracked subgroup are absorbed into `h`; any other gate forces an
//! extraction that emits a compliant subcircuit.

mod clifford;
mod linear;
mod swap;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::arch::CouplingGraph;
use crate::circuit::{cnot_cost, Circuit, CountMode, Gate};
use crate::error::{Error, Result};
use crate::f2::{LinearTable, Permutation};
use crate::pauli::{CliffordTableau, PauliString};
use crate::search::{recursive_search, SearchSpace};

pub use clifford::CliffordRouter;
pub use linear::LinearRouter;
pub use swap::SwapRouter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Swap,
    Linear,
    Clifford,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Swap, Method::Linear, Method::Clifford];

    pub fn default_depth(self) -> usize {
        match self {
            Method::Swap => 4,
            Method::Linear | Method::Clifford => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Swap => "swap",
            Method::Linear => "linear",
            Method::Clifford => "clifford",
        }
    }

    /// Whether the router accepts `g` as input.
    pub fn admits(self, g: &Gate) -> bool {
        match (self, g) {
            (Method::Clifford, _) => true,
            (Method::Swap, Gate::PauliRot(r)) => matches!(r.axis().weight(), 1 | 2),
            (Method::Swap, _) => true,
            (Method::Linear, Gate::PauliRot(_)) => false,
            (Method::Linear, _) => true,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "swap" => Ok(Method::Swap),
            "linear" => Ok(Method::Linear),
            "clifford" => Ok(Method::Clifford),
            _ => Err(format!("unknown method `{s}` (expected swap, linear or clifford)")),
        }
    }
}

/// The deferred operator of a router.
#[derive(Clone, Debug, PartialEq)]
pub enum Tracker {
    Permutation(Permutation),
    Linear(LinearTable),
    Clifford(CliffordTableau),
}

impl Tracker {
    pub fn identity(method: Method, n: usize) -> Tracker {
        match method {
            Method::Swap => Tracker::Permutation(Permutation::identity(n)),
            Method::Linear => Tracker::Linear(LinearTable::identity(n)),
            Method::Clifford => Tracker::Clifford(CliffordTableau::identity(n)),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Tracker::Permutation(p) => p.len(),
            Tracker::Linear(t) => t.n(),
            Tracker::Clifford(t) => t.n(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Tracker::Permutation(_) => "permutation",
            Tracker::Linear(_) => "linear",
            Tracker::Clifford(_) => "tableau",
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Tracker::Permutation(p) => p.is_identity(),
            Tracker::Linear(t) => t.is_identity(),
            Tracker::Clifford(t) => t.is_identity(),
        }
    }

    pub fn inverse(&self) -> Tracker {
        match self {
            Tracker::Permutation(p) => Tracker::Permutation(p.inverse()),
            Tracker::Linear(t) => Tracker::Linear(t.inverse()),
            Tracker::Clifford(t) => Tracker::Clifford(t.inverse()),
        }
    }

    /// Linear table of a permutation or linear tracker.
    pub fn to_linear(&self) -> Option<LinearTable> {
        match self {
            Tracker::Permutation(p) => Some(LinearTable::from_permutation(p)),
            Tracker::Linear(t) => Some(t.clone()),
            Tracker::Clifford(_) => None,
        }
    }

    /// Tableau of the tracked operator; a linear map `|x⟩ ↦ |Ax⟩` sends `X_j`
    /// to `X` on column `j` of `A` and `Z_j` to `Z` on row `j` of `A⁻¹`.
    pub fn to_tableau(&self) -> CliffordTableau {
        let t = match self {
            Tracker::Clifford(t) => return t.clone(),
            other => other.to_linear().expect("linear tracker"),
        };
        let n = t.n();
        let zero = crate::f2::BitRow::zeros(n);
        let xs = (0..n)
            .map(|j| PauliString::from_bits(t.table().column(j), zero.clone(), false))
            .collect();
        let zs = (0..n)
            .map(|j| PauliString::from_bits(zero.clone(), t.inverse_table().row(j).clone(), false))
            .collect();
        CliffordTableau::from_images(xs, zs).expect("invertible linear map")
    }
}

#[derive(Clone, Debug, Default)]
pub struct RouteOptions {
    /// Lookahead depth; `None` uses the method default.
    pub depth: Option<usize>,
    /// Merge same-axis rotations before routing (clifford only).
    pub merge: bool,
    /// Synthesize the cheapest rotation of each commuting group first (clifford only).
    pub reorder: bool,
    /// Start from this operator instead of the identity, e.g. the final
    /// operator of a previous routing job.
    pub initial: Option<Tracker>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Metrics {
    pub in_cnot: usize,
    pub out_cnot: usize,
    pub in_2q: usize,
    pub out_2q: usize,
    pub wall: Duration,
}

impl Metrics {
    /// `100·(out − in)/in`, or 0 when the input has no CNOTs.
    pub fn overhead_pct(&self) -> f64 {
        if self.in_cnot == 0 {
            0.0
        } else {
            100.0 * (self.out_cnot as f64 - self.in_cnot as f64) / self.in_cnot as f64
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoutedOutput {
    /// Compliant circuit on the architecture's qubits.
    pub circuit: Circuit,
    /// `⟦final_operator⟧·c̃_out` equals the input (times the initial operator).
    pub final_operator: Tracker,
    pub metrics: Metrics,
}

/// Snapshot passed to a routing observer after each consumed input gate.
pub struct Step<'a> {
    /// Number of router input gates consumed so far.
    pub consumed: usize,
    pub emitted: &'a [Gate],
    pub tracker: Tracker,
}

/// One way to implement a gate that cannot be absorbed.
#[derive(Clone, Debug)]
pub struct Extraction<S> {
    pub state: S,
    pub gates: Vec<Gate>,
    /// CNOT-equivalent count of `gates`.
    pub cost: usize,
}

impl<S> Extraction<S> {
    fn new(state: S, gates: Vec<Gate>) -> Self {
        let cost = cnot_cost(&gates);
        Extraction { state, gates, cost }
    }
}

/// An instantiation of the lazy-synthesis scheme.
pub trait Lazy {
    type State: Clone;

    /// Absorbs `g` into the state when it belongs to the tracked subgroup.
    fn absorb(&self, state: &mut Self::State, g: &Gate) -> bool;

    /// Candidate extractions for a gate that was not absorbed, in a fixed order.
    fn extract(&self, state: &Self::State, g: &Gate) -> Vec<Extraction<Self::State>>;

    /// Whether extracting `g` consumes one level of lookahead.
    fn in_horizon(&self, _g: &Gate) -> bool {
        true
    }

    /// Hook run before gate `pos` is handled; may permute `gates[pos..]`.
    fn prepare(&self, _state: &Self::State, _gates: &mut [Gate], _pos: usize) {}

    fn tracker(&self, state: &Self::State) -> Tracker;
}

struct Node<S> {
    state: S,
    pos: usize,
    cost: usize,
}

struct Lookahead<'a, R> {
    router: &'a R,
    gates: &'a [Gate],
}

impl<R: Lazy> SearchSpace for Lookahead<'_, R> {
    type Node = Node<R::State>;

    fn cost(&self, node: &Self::Node) -> usize {
        node.cost
    }

    fn expand(&self, node: &Self::Node) -> Vec<Self::Node> {
        let mut state = node.state.clone();
        let mut extra = 0;
        for pos in node.pos..self.gates.len() {
            let g = &self.gates[pos];
            if self.router.absorb(&mut state, g) {
                continue;
            }
            let mut cands = self.router.extract(&state, g);
            if !self.router.in_horizon(g) && cands.len() == 1 {
                let e = cands.pop().expect("one candidate");
                state = e.state;
                extra += e.cost;
                continue;
            }
            return cands
                .into_iter()
                .map(|e| Node {
                    state: e.state,
                    pos: pos + 1,
                    cost: e.cost + extra,
                })
                .collect();
        }
        Vec::new()
    }
}

/// Routes `gates` one at a time, appending emitted gates to `out`.
pub(crate) fn drive<R: Lazy>(
    router: &R,
    mut state: R::State,
    mut gates: Vec<Gate>,
    depth: usize,
    out: &mut Vec<Gate>,
    mut observer: Option<&mut dyn FnMut(Step<'_>)>,
) -> R::State {
    for pos in 0..gates.len() {
        router.prepare(&state, &mut gates, pos);
        if !router.absorb(&mut state, &gates[pos]) {
            let mut cands = router.extract(&state, &gates[pos]);
            let k = if cands.len() == 1 {
                0
            } else {
                let nodes: Vec<_> = cands
                    .iter()
                    .map(|e| Node {
                        state: e.state.clone(),
                        pos: pos + 1,
                        cost: e.cost,
                    })
                    .collect();
                let space = Lookahead {
                    router,
                    gates: &gates,
                };
                recursive_search(&space, &nodes, depth).expect("at least one candidate").0
            };
            let chosen = cands.swap_remove(k);
            out.extend(chosen.gates);
            state = chosen.state;
        }
        if let Some(obs) = observer.as_mut() {
            obs(Step {
                consumed: pos + 1,
                emitted: out.as_slice(),
                tracker: router.tracker(&state),
            });
        }
    }
    state
}

/// Routes `c` onto `g`.
pub fn route(c: &Circuit, g: &CouplingGraph, method: Method, opts: &RouteOptions) -> Result<RoutedOutput> {
    route_observed(c, g, method, opts, None)
}

/// Like [`route`], calling `observer` after every router step. With the
/// clifford pre-passes enabled, steps count rotations of the normalized
/// sequence rather than input gates.
pub fn route_observed(
    c: &Circuit,
    g: &CouplingGraph,
    method: Method,
    opts: &RouteOptions,
    observer: Option<&mut dyn FnMut(Step<'_>)>,
) -> Result<RoutedOutput> {
    let start = Instant::now();
    let n = g.n_vertices();
    if c.n_qubits() > n {
        return Err(Error::CircuitTooWide {
            circuit: c.n_qubits(),
            graph: n,
        });
    }
    if (opts.merge || opts.reorder) && method != Method::Clifford {
        return Err(Error::OptionsRequireClifford);
    }
    if let Some(bad) = c.gates().iter().find(|gate| !method.admits(gate)) {
        return Err(Error::InadmissibleGate {
            method,
            gate: bad.to_string(),
        });
    }
    let initial = match &opts.initial {
        None => Tracker::identity(method, n),
        Some(t) => {
            let ok = t.n() == n
                && matches!(
                    (method, t),
                    (Method::Swap, Tracker::Permutation(_))
                        | (Method::Linear, Tracker::Linear(_) | Tracker::Permutation(_))
                        | (Method::Clifford, _)
                );
            if !ok {
                return Err(Error::TrackerMismatch(method));
            }
            t.clone()
        }
    };
    let depth = opts.depth.unwrap_or(method.default_depth());
    let input = c.widened(n);
    let mut out = Vec::new();
    let final_operator = match method {
        Method::Swap => {
            let Tracker::Permutation(p) = initial else { unreachable!() };
            let router = SwapRouter::new(g);
            let s = drive(&router, p, input.gates().to_vec(), depth, &mut out, observer);
            Tracker::Permutation(s)
        }
        Method::Linear => {
            let router = LinearRouter::new(g);
            let t = initial.to_linear().expect("checked above");
            let s = drive(&router, t, input.gates().to_vec(), depth, &mut out, observer);
            Tracker::Linear(s)
        }
        Method::Clifford => {
            let t = initial.to_tableau();
            Tracker::Clifford(clifford::run(g, &input, t, depth, opts, &mut out, observer)?)
        }
    };
    let circuit = Circuit::from_gates(n, out)?;
    let metrics = Metrics {
        in_cnot: c.count_cnots(CountMode::CnotEquivalent),
        out_cnot: circuit.count_cnots(CountMode::CnotEquivalent),
        in_2q: c.count_two_qubit(),
        out_2q: circuit.count_two_qubit(),
        wall: start.elapsed(),
    };
    Ok(RoutedOutput {
        circuit,
        final_operator,
        metrics,
    })
}
