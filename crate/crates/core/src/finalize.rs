//! Handling the residual final operator of a routed circuit.
//!
//! A routed circuit `c_out` with final operator `h` prepares `⟦h⟧·c̃_out|0⟩`.
//! Rather than running `h`, one can either conjugate the measured observable
//! by it, or run a cheaper diagonalizing circuit and post-process the sampled
//! bit strings with an affine map.

use crate::arch::CouplingGraph;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitRow, LinearTable};
use crate::pauli::{CliffordConjugate, CliffordTableau, Direction, PauliString};
use crate::route::{route, Method, RouteOptions, Tracker};

/// `Σ α_i P_i` with distinct, unsigned Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    terms: Vec<(f64, PauliString)>,
}

impl Observable {
    /// Folds signs into coefficients and merges repeated strings.
    pub fn new(terms: impl IntoIterator<Item = (f64, PauliString)>) -> Self {
        let mut out: Vec<(f64, PauliString)> = Vec::new();
        for (alpha, p) in terms {
            let alpha = alpha * f64::from(p.sign());
            let p = p.unsigned();
            match out.iter_mut().find(|(_, q)| *q == p) {
                Some((a, _)) => *a += alpha,
                None => out.push((alpha, p)),
            }
        }
        Observable { terms: out }
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }
}

/// `⟦h⟧†·H·⟦h⟧`, term by term; measuring it on `c̃_out|0⟩` matches measuring
/// `H` on the input state.
pub fn conjugate_observable(h: &Tracker, obs: &Observable) -> Observable {
    let t = h.to_tableau();
    Observable::new(
        obs.terms()
            .iter()
            .map(|(alpha, p)| (*alpha, t.conjugate(p, Direction::Inverse))),
    )
}

/// `w ↦ L·w ⊕ b` over F2.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFix {
    pub l: BitMatrix,
    pub b: BitRow,
}

impl AffineFix {
    pub fn identity(n: usize) -> Self {
        AffineFix {
            l: BitMatrix::identity(n),
            b: BitRow::zeros(n),
        }
    }
}

pub fn apply_fix(fix: &AffineFix, w: &BitRow) -> Result<BitRow> {
    if w.len() != fix.l.ncols() {
        return Err(Error::LengthMismatch {
            expected: fix.l.ncols(),
            got: w.len(),
        });
    }
    let mut out = fix.l.mul_vec(w);
    out.xor_assign(&fix.b);
    Ok(out)
}

/// Same as [`apply_fix`] on `0`/`1` strings, qubit 0 first.
pub fn apply_fix_str(fix: &AffineFix, w: &str) -> Result<String> {
    Ok(apply_fix(fix, &BitRow::from_bitstring(w)?)?.to_bitstring())
}

/// Classical fix for a permutation or linear final operator: `w' = A·w`.
pub fn linear_fix(t: &LinearTable) -> AffineFix {
    AffineFix {
        l: t.table().clone(),
        b: BitRow::zeros(t.n()),
    }
}

/// A Clifford `c_diag` and affine fix such that sampling `c_diag·c̃_out|0⟩`
/// and applying the fix reproduces the statistics of `⟦h⟧·c̃_out|0⟩`.
///
/// `c_diag` maps each `P_i = h†Z_ih` to a signed diagonal string `s_i·Q_i`;
/// row `i` of `L` is the support of `Q_i` and `b_i` is set when `s_i = −1`.
pub fn sampling_fix(h: &CliffordTableau) -> Result<(Circuit, AffineFix)> {
    let n = h.n();
    let ps: Vec<PauliString> = (0..n)
        .map(|i| h.conjugate(&PauliString::z_on(n, i), Direction::Inverse))
        .collect();
    let gates = codiagonalize(&ps)?;
    let mut l = BitMatrix::zeros(n, n);
    let mut b = BitRow::zeros(n);
    for (i, p) in ps.iter().enumerate() {
        let mut q = p.clone();
        for g in &gates {
            q.conjugate_gate(g)?;
        }
        if !q.is_diagonal() {
            return Err(Error::NonCommutingImages);
        }
        for j in q.support() {
            l.set(i, j, true);
        }
        b.set(i, q.is_negative());
    }
    Ok((Circuit::from_gates(n, gates)?, AffineFix { l, b }))
}

/// [`sampling_fix`] with `c_diag` made compliant by the linear router; the
/// router's final operator `A` is merged into the fix as `L·A`.
pub fn sampling_fix_routed(h: &CliffordTableau, g: &CouplingGraph) -> Result<(Circuit, AffineFix)> {
    let (c_diag, fix) = sampling_fix(h)?;
    let routed = route(&c_diag, g, Method::Linear, &RouteOptions::default())?;
    let a = routed.final_operator.to_linear().expect("linear router");
    if a.n() != fix.l.nrows() {
        return Err(Error::WidthMismatch(a.n(), fix.l.nrows()));
    }
    Ok((
        routed.circuit,
        AffineFix {
            l: fix.l.mul(a.table()),
            b: fix.b,
        },
    ))
}

/// Clifford gates mapping a full set of commuting independent Paulis to
/// diagonal strings.
fn codiagonalize(ps: &[PauliString]) -> Result<Vec<Gate>> {
    let n = ps.len();
    if ps.iter().all(PauliString::is_diagonal) {
        return Ok(Vec::new());
    }
    let mut gates = Vec::new();
    let mut rows = ps.to_vec();
    let apply = |rows: &mut Vec<PauliString>, gates: &mut Vec<Gate>, g: Gate| -> Result<()> {
        for r in rows.iter_mut() {
            r.conjugate_gate(&g)?;
        }
        gates.push(g);
        Ok(())
    };

    // Make the X block full rank: reduce it, then Hadamard the pivot columns
    // of the Z-only rows, taken outside the X pivots.
    let x_pivots = reduce(&mut rows, |p, j| p.x_bits().get(j))?;
    let mut zrows = rows[x_pivots.len()..].to_vec();
    let z_pivots = reduce(&mut zrows, |p, j| !x_pivots.contains(&j) && p.z_bits().get(j))?;
    for q in z_pivots {
        apply(&mut rows, &mut gates, Gate::H(q))?;
    }

    // X block to identity: row i now has x = e_i.
    if reduce(&mut rows, |p, j| p.x_bits().get(j))?.len() != n {
        return Err(Error::NonCommutingImages);
    }

    // Symmetric Z block: S clears the diagonal, CZ the off-diagonal pairs.
    for i in 0..n {
        if rows[i].z_bits().get(i) {
            apply(&mut rows, &mut gates, Gate::S(i))?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rows[i].z_bits().get(j) {
                for g in [Gate::H(j), Gate::Cnot(i, j), Gate::H(j)] {
                    apply(&mut rows, &mut gates, g)?;
                }
            }
        }
    }
    for q in 0..n {
        apply(&mut rows, &mut gates, Gate::H(q))?;
    }
    Ok(gates)
}

/// Row-reduces `rows` on the bits selected by `bit`, moving pivot rows first,
/// and returns the pivot columns. Rows are combined by Pauli multiplication,
/// so they must commute.
fn reduce(rows: &mut [PauliString], bit: impl Fn(&PauliString, usize) -> bool) -> Result<Vec<usize>> {
    let n = rows.first().map_or(0, PauliString::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| bit(&rows[r], col)) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && bit(&rows[r], col) {
                rows[r] = rows[r]
                    .mul_commuting(&rows[rank])
                    .ok_or(Error::NonCommutingImages)?;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    Ok(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::Permutation;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    /// The two-qubit example: `P_1 = −ZZ`, `P_2 = ZI`.
    fn example() -> CliffordTableau {
        CliffordTableau::from_images(vec![p("IX"), p("XX")], vec![p("-ZZ"), p("ZI")])
            .unwrap()
            .inverse()
    }

    #[test]
    fn identity_has_trivial_fix() {
        let (c, fix) = sampling_fix(&CliffordTableau::identity(3)).unwrap();
        assert!(c.is_empty());
        assert_eq!(fix, AffineFix::identity(3));
    }

    #[test]
    fn two_qubit_example() {
        let (c, fix) = sampling_fix(&example()).unwrap();
        assert!(c.is_empty());
        assert_eq!(fix.l.to_bitstrings(), vec!["11", "10"]);
        assert_eq!(fix.b.to_bitstring(), "10");
        for (w, want) in [("00", "10"), ("01", "00"), ("10", "01"), ("11", "11")] {
            assert_eq!(apply_fix_str(&fix, w).unwrap(), want);
        }
        assert!(apply_fix_str(&fix, "101").is_err());
    }

    #[test]
    fn non_diagonal_images_get_a_circuit() {
        let h = CliffordTableau::from_gates(2, &[Gate::H(0), Gate::Cnot(0, 1), Gate::S(1), Gate::H(1)]).unwrap();
        let (c, fix) = sampling_fix(&h).unwrap();
        assert!(!c.is_empty());
        assert_eq!(fix.l.rank(), 2);
    }

    #[test]
    fn observable_conjugation() {
        let obs = Observable::new([(0.5, p("ZZI")), (-1.0, p("-XII")), (0.25, p("ZZI"))]);
        assert_eq!(obs.terms(), &[(0.75, p("ZZI")), (1.0, p("XII"))]);
        let id = Tracker::identity(Method::Clifford, 3);
        assert_eq!(conjugate_observable(&id, &obs), obs);
        let sigma = Tracker::Permutation(Permutation::from_vec(vec![1, 2, 0]).unwrap());
        let moved = conjugate_observable(&sigma, &obs);
        assert_eq!(moved.terms()[0].1, p("ZIZ"));
        assert_eq!(moved.terms()[1].1, p("IIX"));
    }
}
