//! Gates, angles and circuits.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::ops::{Add, Neg};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::pauli::PauliRotation;

const CLIFFORD_TOL: f64 = 1e-12;

/// Rotation angle, either an exact multiple of π/4 or an arbitrary real.
///
/// Exact angles keep their full integer so merged sums stay meaningful; the
/// predicates below reduce modulo 8 as needed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// `k·π/4`
    Exact(i64),
    /// Radians.
    Real(f64),
}

impl Angle {
    pub fn radians(self) -> f64 {
        match self {
            Angle::Exact(k) => k as f64 * FRAC_PI_4,
            Angle::Real(r) => r,
        }
    }

    pub fn is_clifford(self) -> bool {
        self.quarter_turns().is_some()
    }

    /// Number of π/2 turns, modulo 4, when the angle is a Clifford angle.
    pub fn quarter_turns(self) -> Option<u8> {
        match self {
            Angle::Exact(k) => (k % 2 == 0).then(|| (k / 2).rem_euclid(4) as u8),
            Angle::Real(r) => {
                let m = r.rem_euclid(FRAC_PI_2);
                if m < CLIFFORD_TOL || FRAC_PI_2 - m < CLIFFORD_TOL {
                    Some(((r / FRAC_PI_2).round() as i64).rem_euclid(4) as u8)
                } else {
                    None
                }
            }
        }
    }

    /// True when the rotation is the identity up to a global phase.
    pub fn is_zero(self) -> bool {
        self.quarter_turns() == Some(0)
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::Exact(a + b),
            (a, b) => Angle::Real(a.radians() + b.radians()),
        }
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        match self {
            Angle::Exact(k) => Angle::Exact(-k),
            Angle::Real(r) => Angle::Real(-r),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Exact(0) => write!(f, "0"),
            Angle::Exact(k) => {
                let g = gcd(k.unsigned_abs(), 4) as i64;
                let (num, den) = (k / g, 4 / g);
                let sign = if num < 0 { "-" } else { "" };
                let num = num.abs();
                match (num, den) {
                    (1, 1) => write!(f, "{sign}pi"),
                    (1, d) => write!(f, "{sign}pi/{d}"),
                    (m, 1) => write!(f, "{sign}{m}*pi"),
                    (m, d) => write!(f, "{sign}{m}*pi/{d}"),
                }
            }
            Angle::Real(r) => write!(f, "{r:?}"),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    SqrtX(usize),
    SqrtXdg(usize),
    Rz(usize, Angle),
    /// `Cnot(control, target)`
    Cnot(usize, usize),
    Swap(usize, usize),
    PauliRot(PauliRotation),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
            Gate::SqrtX(_) => "sx",
            Gate::SqrtXdg(_) => "sxdg",
            Gate::Rz(..) => "rz",
            Gate::Cnot(..) => "cx",
            Gate::Swap(..) => "swap",
            Gate::PauliRot(_) => "paulirot",
        }
    }

    pub fn qubits(&self) -> SmallVec<[usize; 2]> {
        match self {
            Gate::H(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::SqrtX(q)
            | Gate::SqrtXdg(q)
            | Gate::Rz(q, _) => smallvec![*q],
            Gate::Cnot(a, b) | Gate::Swap(a, b) => smallvec![*a, *b],
            Gate::PauliRot(r) => r.axis().support().into_iter().collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.qubits().len()
    }

    pub fn is_single_qubit(&self) -> bool {
        !matches!(self, Gate::Cnot(..) | Gate::Swap(..) | Gate::PauliRot(_))
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        match self {
            Gate::Z(_) | Gate::S(_) | Gate::Sdg(_) | Gate::T(_) | Gate::Tdg(_) | Gate::Rz(..) => {
                true
            }
            Gate::PauliRot(r) => r.axis().is_diagonal(),
            _ => false,
        }
    }

    pub fn is_clifford(&self) -> bool {
        match self {
            Gate::T(_) | Gate::Tdg(_) => false,
            Gate::Rz(_, a) => a.is_clifford(),
            Gate::PauliRot(r) => r.angle().is_clifford(),
            _ => true,
        }
    }

    /// Inverse gate (up to global phase for the rotation family).
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(*q),
            Gate::Sdg(q) => Gate::S(*q),
            Gate::T(q) => Gate::Tdg(*q),
            Gate::Tdg(q) => Gate::T(*q),
            Gate::SqrtX(q) => Gate::SqrtXdg(*q),
            Gate::SqrtXdg(q) => Gate::SqrtX(*q),
            Gate::Rz(q, a) => Gate::Rz(*q, -*a),
            Gate::PauliRot(r) => Gate::PauliRot(PauliRotation::new(r.axis().clone(), -r.angle())),
            g => g.clone(),
        }
    }

    /// Same gate with every qubit `q` replaced by `f(q)`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::H(q) => Gate::H(f(*q)),
            Gate::X(q) => Gate::X(f(*q)),
            Gate::Y(q) => Gate::Y(f(*q)),
            Gate::Z(q) => Gate::Z(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::Sdg(q) => Gate::Sdg(f(*q)),
            Gate::T(q) => Gate::T(f(*q)),
            Gate::Tdg(q) => Gate::Tdg(f(*q)),
            Gate::SqrtX(q) => Gate::SqrtX(f(*q)),
            Gate::SqrtXdg(q) => Gate::SqrtXdg(f(*q)),
            Gate::Rz(q, a) => Gate::Rz(f(*q), *a),
            Gate::Cnot(a, b) => Gate::Cnot(f(*a), f(*b)),
            Gate::Swap(a, b) => Gate::Swap(f(*a), f(*b)),
            Gate::PauliRot(r) => Gate::PauliRot(PauliRotation::new(
                r.axis().relabel(&f),
                r.angle(),
            )),
        }
    }

    /// Replace `T`, `Tdg`, `S`, `Sdg` by the equivalent `Rz` (up to global phase).
    pub fn to_rz_form(&self) -> Gate {
        match *self {
            Gate::T(q) => Gate::Rz(q, Angle::Exact(1)),
            Gate::Tdg(q) => Gate::Rz(q, Angle::Exact(-1)),
            Gate::S(q) => Gate::Rz(q, Angle::Exact(2)),
            Gate::Sdg(q) => Gate::Rz(q, Angle::Exact(-2)),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Rz(q, a) => write!(f, "rz({a}) {q}"),
            Gate::Cnot(a, b) => write!(f, "cx {a},{b}"),
            Gate::Swap(a, b) => write!(f, "swap {a},{b}"),
            Gate::PauliRot(r) => write!(f, "paulirot({}) {}", r.angle(), r.axis()),
            g => write!(f, "{} {}", g.name(), g.qubits()[0]),
        }
    }
}

/// How two-qubit gates are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// SWAP = 3 CNOTs; a Pauli rotation of weight `w` counts its naive `2(w-1)` CNOTs.
    CnotEquivalent,
    /// One per gate acting on two or more qubits.
    Raw,
}

/// An ordered gate list; as a word `g1 :: g2` it denotes the operator `g2·g1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        if let Gate::PauliRot(r) = gate {
            if r.axis().len() != self.n_qubits {
                return Err(Error::PauliWidth {
                    expected: self.n_qubits,
                    got: r.axis().len(),
                });
            }
            return Ok(());
        }
        let qs = gate.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::OperandOutOfRange {
                qubit: q,
                n: self.n_qubits,
            });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::RepeatedOperand(gate.to_string()));
        }
        Ok(())
    }

    /// The same gates on a register of `n` ≥ current width.
    pub fn widened(&self, n: usize) -> Circuit {
        assert!(n >= self.n_qubits);
        if n == self.n_qubits {
            return self.clone();
        }
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::PauliRot(r) => {
                    Gate::PauliRot(PauliRotation::new(r.axis().widened(n), r.angle()))
                }
                g => g.clone(),
            })
            .collect();
        Circuit { n_qubits: n, gates }
    }

    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch(self.n_qubits, other.n_qubits));
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates,
        })
    }

    pub fn count_cnots(&self, mode: CountMode) -> usize {
        self.gates.iter().map(|g| gate_cost(g, mode)).sum()
    }

    /// Number of gates acting on two or more qubits.
    pub fn count_two_qubit(&self) -> usize {
        self.count_cnots(CountMode::Raw)
    }
}

pub(crate) fn gate_cost(g: &Gate, mode: CountMode) -> usize {
    match (g, mode) {
        (Gate::Cnot(..), _) => 1,
        (Gate::Swap(..), CountMode::CnotEquivalent) => 3,
        (Gate::Swap(..), CountMode::Raw) => 1,
        (Gate::PauliRot(r), CountMode::CnotEquivalent) => 2 * r.axis().weight().saturating_sub(1),
        (Gate::PauliRot(r), CountMode::Raw) => usize::from(r.axis().weight() >= 2),
        _ => 0,
    }
}

/// CNOT-equivalent cost of a gate list.
pub(crate) fn cnot_cost(gates: &[Gate]) -> usize {
    gates
        .iter()
        .map(|g| gate_cost(g, CountMode::CnotEquivalent))
        .sum()
}

pub fn count_cnots(c: &Circuit, mode: CountMode) -> usize {
    c.count_cnots(mode)
}
