use thiserror::Error;

use crate::route::Method;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unsupported gate `{name}`")]
    UnsupportedGate { line: usize, name: String },
    #[error("qubit {qubit} out of range for a {n}-qubit register")]
    OperandOutOfRange { qubit: usize, n: usize },
    #[error("gate {0} repeats an operand")]
    RepeatedOperand(String),
    #[error("Pauli rotations must be lowered before emitting QASM")]
    PauliRotationInQasm,
    #[error("invalid Pauli string `{0}`")]
    InvalidPauli(String),
    #[error("Pauli string of width {got} used on {expected} qubits")]
    PauliWidth { expected: usize, got: usize },
    #[error("invalid bitstring `{0}`")]
    InvalidBitstring(String),
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("matrix is singular over F2")]
    SingularMatrix,

    #[error("unknown architecture preset `{0}`")]
    UnknownPreset(String),
    #[error("malformed architecture `{0}`")]
    MalformedPreset(String),
    #[error("graph file line {line}: {message}")]
    GraphFile { line: usize, message: String },
    #[error("coupling graph is not connected")]
    Disconnected,
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("empty terminal set")]
    EmptyTerminals,
    #[error("vertex {0} is not a terminal")]
    RootNotTerminal(usize),
    #[error("vertex {0} is not in the tree")]
    NotInTree(usize),

    #[error("gate {0} is not Clifford")]
    NonClifford(String),
    #[error("images do not form a valid Clifford tableau")]
    InvalidTableau,
    #[error("rotation axis has empty support")]
    EmptySupport,
    #[error("qubit {0} is outside the rotation support")]
    TargetOutsideSupport(usize),
    #[error("rotation has a Clifford angle and must be absorbed")]
    CliffordAngleRotation,

    #[error("gate {gate} is not admissible for the {method} router")]
    InadmissibleGate { method: Method, gate: String },
    #[error("circuit has {circuit} qubits but the architecture only {graph}")]
    CircuitTooWide { circuit: usize, graph: usize },
    #[error("merge/reorder options are only available with the clifford router")]
    OptionsRequireClifford,
    #[error("initial tracker does not match the {0} router")]
    TrackerMismatch(Method),

    #[error("{n} qubits exceed the dense simulation cap of {cap}")]
    WidthOverCap { n: usize, cap: usize },
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("gate {0} is not a linear reversible gate")]
    NonLinearGate(String),
    #[error("bitstring of length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("final Pauli images do not commute")]
    NonCommutingImages,

    #[error("hamming weight {k} out of range for {n} qubits")]
    WeightOutOfRange { n: usize, k: usize },
    #[error("requested {requested} distinct items but only {available} exist")]
    NotEnoughDistinct { requested: usize, available: u128 },
    #[error("count must be at least 1")]
    EmptyCount,
}
