//! Dense and F2 simulation oracles, compliance and equivalence checks.
//!
//! Basis states are little-endian: bit `i` of a basis index is qubit `i`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::arch::CouplingGraph;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, LinearTable};
use crate::pauli::{CliffordTableau, PauliString};
use crate::route::{RoutedOutput, Tracker};

pub const DEFAULT_DENSE_CAP: usize = 10;

/// Width cap for dense simulation, overridable with `LAZYROUTE_DENSE_CAP`.
pub fn dense_cap() -> usize {
    std::env::var("LAZYROUTE_DENSE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DENSE_CAP)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `2×2` matrix `[[a, b], [c, d]]` of a one-qubit gate.
fn one_qubit_matrix(g: &Gate) -> Option<[Complex64; 4]> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    let phase = |theta: f64| Complex64::from_polar(1.0, theta);
    Some(match g {
        Gate::H(_) => [h, h, h, -h],
        Gate::X(_) => [z, one, one, z],
        Gate::Y(_) => [z, c(0.0, -1.0), c(0.0, 1.0), z],
        Gate::Z(_) => [one, z, z, -one],
        Gate::S(_) => [one, z, z, c(0.0, 1.0)],
        Gate::Sdg(_) => [one, z, z, c(0.0, -1.0)],
        Gate::T(_) => [one, z, z, phase(std::f64::consts::FRAC_PI_4)],
        Gate::Tdg(_) => [one, z, z, phase(-std::f64::consts::FRAC_PI_4)],
        Gate::SqrtX(_) => [c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)],
        Gate::SqrtXdg(_) => [c(0.5, -0.5), c(0.5, 0.5), c(0.5, 0.5), c(0.5, -0.5)],
        Gate::Rz(_, a) => {
            let t = a.radians();
            [phase(-t / 2.0), z, z, phase(t / 2.0)]
        }
        _ => return None,
    })
}

/// `P·v` for a signed Pauli string.
fn apply_pauli(p: &PauliString, v: &[Complex64]) -> Vec<Complex64> {
    let n = p.len();
    let xmask: usize = (0..n).filter(|&q| p.x_bits().get(q)).map(|q| 1 << q).sum();
    let zmask: usize = (0..n).filter(|&q| p.z_bits().get(q)).map(|q| 1 << q).sum();
    let ny = (xmask & zmask).count_ones();
    // Y = iXZ on each letter
    let base = c(0.0, 1.0).powu(ny) * if p.is_negative() { -1.0 } else { 1.0 };
    let mut out = vec![c(0.0, 0.0); v.len()];
    for (x, amp) in v.iter().enumerate() {
        let sign = if (x & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[x ^ xmask] = base * sign * amp;
    }
    out
}

/// Applies `g` to a state vector in place.
pub fn apply_gate(v: &mut [Complex64], g: &Gate) {
    match *g {
        Gate::Cnot(ctl, tgt) => {
            for i in 0..v.len() {
                if i >> ctl & 1 == 1 && i >> tgt & 1 == 0 {
                    v.swap(i, i | 1 << tgt);
                }
            }
        }
        Gate::Swap(a, b) => {
            for i in 0..v.len() {
                if i >> a & 1 == 1 && i >> b & 1 == 0 {
                    v.swap(i, i ^ (1 << a) ^ (1 << b));
                }
            }
        }
        Gate::PauliRot(ref r) => {
            let theta = r.angle().radians();
            let pv = apply_pauli(r.axis(), v);
            let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            for (a, b) in v.iter_mut().zip(pv) {
                *a = *a * cs - c(0.0, sn) * b;
            }
        }
        ref g => {
            let q = g.qubits()[0];
            let m = one_qubit_matrix(g).expect("one-qubit gate");
            for i in 0..v.len() {
                if i >> q & 1 == 0 {
                    let j = i | 1 << q;
                    let (a, b) = (v[i], v[j]);
                    v[i] = m[0] * a + m[1] * b;
                    v[j] = m[2] * a + m[3] * b;
                }
            }
        }
    }
}

/// Square complex matrix stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    fn from_columns(dim: usize, columns: Vec<Vec<Complex64>>) -> Self {
        DenseMatrix {
            dim,
            data: columns.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[Complex64] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    /// Left-multiplies by `g`.
    pub fn apply(&mut self, g: &Gate) {
        for col in self.data.chunks_mut(self.dim) {
            apply_gate(col, g);
        }
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for col in 0..d {
            for row in 0..d {
                data[row * d + col] = self.get(row, col).conj();
            }
        }
        DenseMatrix { dim: d, data }
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for j in 0..d {
            for k in 0..d {
                let b = rhs.get(k, j);
                if b == c(0.0, 0.0) {
                    continue;
                }
                for i in 0..d {
                    data[j * d + i] += self.get(i, k) * b;
                }
            }
        }
        DenseMatrix { dim: d, data }
    }

    /// Equal up to one global phase, with max entry deviation below `tol`.
    pub fn approx_eq_up_to_phase(&self, other: &DenseMatrix, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some(k) = (0..self.data.len()).max_by(|&a, &b| {
            self.data[a].norm().total_cmp(&self.data[b].norm())
        }) else {
            return true;
        };
        if other.data[k].norm() < 1e-12 {
            return false;
        }
        let phase = self.data[k] / other.data[k];
        let phase = phase / phase.norm();
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (a - phase * b).norm() < tol)
    }
}

fn check_width(n: usize) -> Result<()> {
    let cap = dense_cap();
    if n > cap {
        return Err(Error::WidthOverCap { n, cap });
    }
    Ok(())
}

pub fn dense_unitary(c: &Circuit) -> Result<DenseMatrix> {
    check_width(c.n_qubits())?;
    let mut m = DenseMatrix::identity(1 << c.n_qubits());
    for g in c.gates() {
        m.apply(g);
    }
    Ok(m)
}

pub fn dense_pauli(p: &PauliString) -> DenseMatrix {
    let d = 1 << p.len();
    let id = DenseMatrix::identity(d);
    DenseMatrix::from_columns(d, (0..d).map(|j| apply_pauli(p, id.column(j))).collect())
}

/// `|x⟩ ↦ |Ax⟩`.
pub fn dense_linear(a: &BitMatrix) -> DenseMatrix {
    let n = a.nrows();
    let d = 1 << n;
    let mut columns = vec![vec![c(0.0, 0.0); d]; d];
    for (x, col) in columns.iter_mut().enumerate() {
        let mut y = 0usize;
        for i in 0..n {
            let parity = (0..n).filter(|&j| a.get(i, j) && x >> j & 1 == 1).count() % 2;
            y |= parity << i;
        }
        col[y] = c(1.0, 0.0);
    }
    DenseMatrix::from_columns(d, columns)
}

/// A unitary with the given tableau, fixed up to global phase: the column of
/// `|0⟩` is the joint +1 eigenvector of the `Z_i` images and the column of
/// `|x⟩` applies the `X_i` images selected by `x`.
pub fn dense_tableau(t: &CliffordTableau) -> DenseMatrix {
    let n = t.n();
    let d = 1 << n;
    let project = |mut v: Vec<Complex64>| {
        for i in 0..n {
            let pv = apply_pauli(t.image_z(i), &v);
            for (a, b) in v.iter_mut().zip(pv) {
                *a = (*a + b) * 0.5;
            }
        }
        v
    };
    let psi0 = (0..d)
        .map(|b| {
            let mut e = vec![c(0.0, 0.0); d];
            e[b] = c(1.0, 0.0);
            project(e)
        })
        .find(|v| v.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6)
        .expect("stabilizer state exists");
    let norm = psi0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let psi0: Vec<Complex64> = psi0.into_iter().map(|a| a / norm).collect();
    let columns = (0..d)
        .map(|x| {
            let mut v = psi0.clone();
            for i in (0..n).filter(|&i| x >> i & 1 == 1) {
                v = apply_pauli(t.image_x(i), &v);
            }
            v
        })
        .collect();
    DenseMatrix::from_columns(d, columns)
}

pub fn dense_tracker(h: &Tracker) -> Result<DenseMatrix> {
    check_width(h.n())?;
    Ok(match h {
        Tracker::Clifford(t) => dense_tableau(t),
        other => dense_linear(other.to_linear().expect("linear tracker").table()),
    })
}

/// Whether `c̃_in = ⟦h⟧·c̃_out` up to global phase.
///
/// Checked as `c̃_out·c̃_in† = ⟦h⟧†`, which only needs gate applications.
pub fn equivalent_up_to(h: &Tracker, c_in: &Circuit, c_out: &Circuit, tol: f64) -> Result<bool> {
    if c_in.n_qubits() != c_out.n_qubits() || c_in.n_qubits() != h.n() {
        return Err(Error::WidthMismatch(c_in.n_qubits(), c_out.n_qubits()));
    }
    let mut m = dense_unitary(c_in)?.adjoint();
    for g in c_out.gates() {
        m.apply(g);
    }
    let expected = dense_tracker(&h.inverse())?;
    Ok(m.approx_eq_up_to_phase(&expected, tol))
}

/// Checks a routing result against its input: `c̃_in·⟦initial⟧ = ⟦h⟧·c̃_out`.
pub fn verify_routed(input: &Circuit, routed: &RoutedOutput, initial: Option<&Tracker>, tol: f64) -> Result<bool> {
    let n = routed.circuit.n_qubits();
    let widened = input.widened(n);
    let Some(init) = initial.filter(|t| !t.is_identity()) else {
        return equivalent_up_to(&routed.final_operator, &widened, &routed.circuit, tol);
    };
    check_width(n)?;
    // c̃_out·⟦init⟧†·c̃_in† = ⟦h⟧†
    let mut m = dense_unitary(&widened)?.adjoint();
    m = dense_tracker(&init.inverse())?.mul(&m);
    for g in routed.circuit.gates() {
        m.apply(g);
    }
    let expected = dense_tracker(&routed.final_operator.inverse())?;
    Ok(m.approx_eq_up_to_phase(&expected, tol))
}

/// Linear map implemented by a CNOT/SWAP circuit, as `|x⟩ ↦ |Mx⟩`.
pub fn f2_simulate(c: &Circuit) -> Result<BitMatrix> {
    let mut t = LinearTable::identity(c.n_qubits());
    for g in c.gates() {
        match *g {
            Gate::Cnot(a, b) => t.cnot(a, b),
            Gate::Swap(a, b) => t.swap(a, b),
            ref other => return Err(Error::NonLinearGate(other.to_string())),
        }
    }
    Ok(t.table().clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub gate: Gate,
}

/// Gates acting on more than one qubit that do not sit on a coupling edge.
pub fn check_compliance(c: &Circuit, g: &CouplingGraph) -> Vec<Violation> {
    c.gates()
        .iter()
        .enumerate()
        .filter(|(_, gate)| {
            let qs = gate.qubits();
            match qs.len() {
                0 | 1 => false,
                2 => qs[0] >= g.n_vertices() || qs[1] >= g.n_vertices() || !g.has_edge(qs[0], qs[1]),
                _ => true,
            }
        })
        .map(|(index, gate)| Violation {
            index,
            gate: gate.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Angle;
    use crate::pauli::{CliffordConjugate, Direction};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn circuit(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(n, gates).unwrap()
    }

    #[test]
    fn hadamard_matrix() {
        let m = dense_unitary(&circuit(1, vec![Gate::H(0)])).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((m.get(0, 0).re - h).abs() < 1e-12 && (m.get(1, 1).re + h).abs() < 1e-12);
        assert!(dense_unitary(&Circuit::new(2)).unwrap() == DenseMatrix::identity(4));
    }

    #[test]
    fn cnot_conjugates_zz_to_iz() {
        let cx = dense_unitary(&circuit(2, vec![Gate::Cnot(0, 1)])).unwrap();
        let zz = dense_pauli(&"ZZ".parse().unwrap());
        let iz = dense_pauli(&"IZ".parse().unwrap());
        assert!(cx.mul(&zz).mul(&cx.adjoint()).approx_eq_up_to_phase(&iz, 1e-12));
    }

    #[test]
    fn gate_then_inverse_is_identity() {
        let gates = [
            Gate::H(0),
            Gate::S(1),
            Gate::T(0),
            Gate::SqrtX(1),
            Gate::Rz(0, Angle::Real(0.7)),
            Gate::Cnot(1, 0),
            Gate::Swap(0, 1),
            Gate::PauliRot("XY".parse::<PauliString>().unwrap().to_rotation(Angle::Real(0.4))),
        ];
        for g in gates {
            let m = dense_unitary(&circuit(2, vec![g.clone(), g.inverse()])).unwrap();
            assert!(m.approx_eq_up_to_phase(&DenseMatrix::identity(4), 1e-12), "{g}");
        }
    }

    #[test]
    fn sqrt_x_squares_to_x() {
        let a = dense_unitary(&circuit(1, vec![Gate::SqrtX(0), Gate::SqrtX(0)])).unwrap();
        let x = dense_unitary(&circuit(1, vec![Gate::X(0)])).unwrap();
        assert_eq!(a, x);
    }

    #[test]
    fn rotation_angles_match_gates() {
        let t = dense_unitary(&circuit(1, vec![Gate::T(0)])).unwrap();
        let rz = dense_unitary(&circuit(1, vec![Gate::Rz(0, Angle::Exact(1))])).unwrap();
        let pr = dense_unitary(&circuit(
            1,
            vec![Gate::PauliRot("Z".parse::<PauliString>().unwrap().to_rotation(Angle::Exact(1)))],
        ))
        .unwrap();
        assert!(t.approx_eq_up_to_phase(&rz, 1e-12));
        assert!(rz.approx_eq_up_to_phase(&pr, 1e-12));
        assert!(!t.approx_eq_up_to_phase(&DenseMatrix::identity(2), 1e-3));
    }

    fn random_clifford(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<Gate> {
        (0..len)
            .map(|_| {
                let q = rng.random_range(0..n);
                let mut r = rng.random_range(0..n.max(2) - 1);
                if r >= q {
                    r += 1;
                }
                match rng.random_range(0..if n > 1 { 10 } else { 8 }) {
                    0 => Gate::H(q),
                    1 => Gate::S(q),
                    2 => Gate::Sdg(q),
                    3 => Gate::SqrtX(q),
                    4 => Gate::SqrtXdg(q),
                    5 => Gate::X(q),
                    6 => Gate::Y(q),
                    7 => Gate::Z(q),
                    8 => Gate::Cnot(q, r),
                    _ => Gate::Swap(q, r),
                }
            })
            .collect()
    }

    #[test]
    fn tableau_matches_dense_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.random_range(1..=4);
            let gates = random_clifford(&mut rng, n, 25);
            let t = CliffordTableau::from_gates(n, &gates).unwrap();
            let u = dense_unitary(&circuit(n, gates)).unwrap();
            assert!(dense_tableau(&t).approx_eq_up_to_phase(&u, 1e-9));
            assert!(dense_tableau(&t.inverse()).approx_eq_up_to_phase(&u.adjoint(), 1e-9));
        }
    }

    #[test]
    fn single_gate_conjugation_signs() {
        let n = 2;
        for g in [
            Gate::H(0),
            Gate::S(0),
            Gate::Sdg(0),
            Gate::SqrtX(0),
            Gate::SqrtXdg(0),
            Gate::X(0),
            Gate::Y(0),
            Gate::Z(0),
            Gate::Cnot(0, 1),
            Gate::Cnot(1, 0),
            Gate::Swap(0, 1),
        ] {
            let u = dense_unitary(&circuit(n, vec![g.clone()])).unwrap();
            for s in ["XI", "YI", "ZI", "IX", "IY", "IZ", "XY", "YZ", "ZX", "YY"] {
                let p: PauliString = s.parse().unwrap();
                let mut q = p.clone();
                q.conjugate_gate(&g).unwrap();
                let want = u.mul(&dense_pauli(&p)).mul(&u.adjoint());
                assert!(dense_pauli(&q).approx_eq_up_to_phase(&want, 1e-12), "{g} on {s}");
                // exact sign, not just up to phase
                let d = dense_pauli(&q);
                assert!((0..4).all(|i| (0..4).all(|j| (d.get(i, j) - want.get(i, j)).norm() < 1e-12)));
                let t = CliffordTableau::from_gates(n, std::slice::from_ref(&g)).unwrap();
                assert_eq!(t.conjugate(&p, Direction::Forward), q);
            }
        }
    }

    #[test]
    fn linear_and_permutation_trackers() {
        let c = circuit(3, vec![Gate::Cnot(0, 1), Gate::Swap(1, 2), Gate::Cnot(2, 0)]);
        let m = f2_simulate(&c).unwrap();
        let u = dense_unitary(&c).unwrap();
        assert_eq!(dense_linear(&m), u);
        let h = Tracker::Linear(LinearTable::from_matrix(m).unwrap());
        assert!(dense_tableau(&h.to_tableau()).approx_eq_up_to_phase(&u, 1e-12));
        assert!(f2_simulate(&circuit(1, vec![Gate::H(0)])).is_err());
    }

    #[test]
    fn equivalence_detects_missing_gate() {
        let c = circuit(2, vec![Gate::H(0), Gate::Cnot(0, 1), Gate::T(1)]);
        let id = Tracker::identity(crate::route::Method::Clifford, 2);
        assert!(equivalent_up_to(&id, &c, &c, 1e-9).unwrap());
        let short = circuit(2, vec![Gate::H(0), Gate::Cnot(0, 1)]);
        assert!(!equivalent_up_to(&id, &c, &short, 1e-9).unwrap());
    }

    #[test]
    fn compliance() {
        let g = CouplingGraph::preset("lnn:6").unwrap();
        assert!(check_compliance(&circuit(6, vec![Gate::Cnot(0, 1)]), &g).is_empty());
        let v = check_compliance(&circuit(6, vec![Gate::H(0), Gate::Cnot(0, 5)]), &g);
        assert_eq!(v, vec![Violation { index: 1, gate: Gate::Cnot(0, 5) }]);
    }

    #[test]
    fn width_cap() {
        assert!(matches!(
            dense_unitary(&Circuit::new(DEFAULT_DENSE_CAP + 20)),
            Err(Error::WidthOverCap { .. })
        ));
    }
}
