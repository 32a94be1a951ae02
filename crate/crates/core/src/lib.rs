//! Qubit routing by lazy synthesis.
//!
//! A router walks the input circuit while tracking a classically simulable
//! operator (a qubit permutation, a linear reversible map, or a Clifford
//! tableau). Gates from that group are absorbed; the others force the
//! emission of an architecture-compliant subcircuit. The output is a compliant
//! circuit plus the residual operator, with
//! `input = ⟦final_operator⟧ · output`.
//!
//! ```
//! use lazyroute::{route, Circuit, CouplingGraph, Gate, Method, RouteOptions};
//!
//! let g = CouplingGraph::preset("lnn:4").unwrap();
//! let c = Circuit::from_gates(4, vec![Gate::H(0), Gate::Cnot(0, 3), Gate::T(3)]).unwrap();
//! let out = route(&c, &g, Method::Clifford, &RouteOptions::default()).unwrap();
//! assert!(lazyroute::check_compliance(&out.circuit, &g).is_empty());
//! ```

pub mod arch;
pub mod circuit;
pub mod error;
pub mod f2;
pub mod finalize;
pub mod generators;
pub mod pauli;
pub mod prepass;
pub mod qasm;
pub mod route;
pub mod search;
pub mod synth;
pub mod verify;

pub use arch::{CouplingGraph, SteinerTree};
pub use circuit::{count_cnots, Angle, Circuit, CountMode, Gate};
pub use error::{Error, Result};
pub use f2::{linear_update_cnot, perm_update_swap, BitMatrix, BitRow, LinearTable, Permutation};
pub use finalize::{
    apply_fix, conjugate_observable, linear_fix, sampling_fix, sampling_fix_routed, AffineFix, Observable,
};
pub use pauli::{
    conjugate_pauli, diagonalize_local, tableau_invert, tableau_update, CliffordTableau, Direction,
    PauliRotation, PauliString,
};
pub use prepass::{group_rotations, merge_rotations, normalize, reorder_within_group, RotationSequence};
pub use qasm::{emit_qasm, parse_qasm};
pub use route::{route, route_observed, Method, Metrics, RouteOptions, RoutedOutput, Step, Tracker};
pub use search::{recursive_search, SearchSpace};
pub use synth::{fan_in, fan_out, reduce_pauli_rotation};
pub use verify::{check_compliance, dense_unitary, equivalent_up_to, f2_simulate, verify_routed};
