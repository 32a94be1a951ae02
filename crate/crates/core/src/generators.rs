//! Benchmark circuit generators.

use std::collections::HashSet;
use std::f64::consts::FRAC_PI_2;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{diagonalize_local, PauliRotation, PauliString};
use crate::route::Method;

const CLIFFORD_BAND: f64 = 1e-6;

/// Uniform in `(0, π/2)` minus a small band around both ends.
pub fn random_angle(rng: &mut impl Rng) -> Angle {
    Angle::Real(rng.random_range(CLIFFORD_BAND..FRAC_PI_2 - CLIFFORD_BAND))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `count` distinct random weight-`k` parities over `n` qubits, each sorted.
pub fn random_parities(n: usize, k: usize, count: usize, rng: &mut impl Rng) -> Result<Vec<Vec<usize>>> {
    if k < 1 || k > n {
        return Err(Error::WeightOutOfRange { n, k });
    }
    let available = binomial(n, k);
    if count as u128 > available {
        return Err(Error::NotEnoughDistinct {
            requested: count,
            available,
        });
    }
    if (count as u128) * 2 >= available {
        let mut all = all_subsets(n, k);
        all.shuffle(rng);
        all.truncate(count);
        return Ok(all);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut s = sample(rng, n, k).into_vec();
        s.sort_unstable();
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    Ok(out)
}

/// `exp(-iθ/2·Z…Z)` on `qubits` via a CNOT ladder onto the last one.
fn parity_block(qubits: &[usize], angle: Angle) -> Vec<Gate> {
    let ladder: Vec<Gate> = qubits.windows(2).map(|w| Gate::Cnot(w[0], w[1])).collect();
    let mut gates = ladder.clone();
    gates.push(Gate::Rz(*qubits.last().expect("non-empty parity"), angle));
    gates.extend(ladder.into_iter().rev());
    gates
}

/// QAOA layer for MAX-`k`-LIN-2 with `count` distinct parities: a Hadamard
/// layer, one ladder–`Rz`–ladder block per parity, then `H·Rz·H` per qubit.
pub fn qaoa_maxklin2_with(n: usize, k: usize, count: usize, seed: u64) -> Result<Circuit> {
    if k < 2 || k > n {
        return Err(Error::WeightOutOfRange { n, k });
    }
    if count == 0 {
        return Err(Error::EmptyCount);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parities = random_parities(n, k, count, &mut rng)?;
    let mut gates: Vec<Gate> = (0..n).map(Gate::H).collect();
    for p in &parities {
        let a = random_angle(&mut rng);
        gates.extend(parity_block(p, a));
    }
    for q in 0..n {
        gates.extend([Gate::H(q), Gate::Rz(q, random_angle(&mut rng)), Gate::H(q)]);
    }
    Circuit::from_gates(n, gates)
}

/// [`qaoa_maxklin2_with`] using `min(n², C(n, k))` parities.
pub fn qaoa_maxklin2(n: usize, k: usize, seed: u64) -> Result<Circuit> {
    if k < 2 || k > n {
        return Err(Error::WeightOutOfRange { n, k });
    }
    let count = binomial(n, k).min((n * n) as u128) as usize;
    qaoa_maxklin2_with(n, k, count, seed)
}

/// `count` distinct random non-identity Pauli axes over `n` qubits.
pub fn random_paulis(n: usize, count: usize, rng: &mut impl Rng) -> Result<Vec<PauliString>> {
    let available = 4u128.saturating_pow(n as u32) - 1;
    if count as u128 > available {
        return Err(Error::NotEnoughDistinct {
            requested: count,
            available,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut p = PauliString::identity(n);
        for q in 0..n {
            p.set_letter(q, ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])?;
        }
        if !p.is_identity() && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Unconstrained lowering of `R_P(θ)`: basis change, ladder, `Rz`, mirror.
pub fn lower_rotation(p: &PauliString, angle: Angle) -> Vec<Gate> {
    let (basis, _) = diagonalize_local(p);
    let mut gates = basis.clone();
    gates.extend(parity_block(&p.support(), angle));
    gates.extend(basis.iter().map(Gate::inverse));
    gates
}

/// Naive circuit for a sequence of `count` rotations about distinct random axes.
pub fn random_pauli_sequence(n: usize, count: usize, seed: u64) -> Result<Circuit> {
    if count == 0 {
        return Err(Error::EmptyCount);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axes = random_paulis(n, count, &mut rng)?;
    let mut gates = Vec::new();
    for p in &axes {
        let a = random_angle(&mut rng);
        gates.extend(lower_rotation(p, a));
    }
    Circuit::from_gates(n, gates)
}

/// Random circuit of `len` gates on `n ≥ 2` qubits drawn from what `method`
/// accepts: the standard one- and two-qubit gates, plus Pauli rotations
/// (weight ≤ 2 for swap, any weight for clifford).
pub fn random_circuit(method: Method, n: usize, len: usize, seed: u64) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::WidthMismatch(n, 2));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gates = Vec::with_capacity(len);
    while gates.len() < len {
        let q = rng.random_range(0..n);
        let r = (q + rng.random_range(1..n)) % n;
        let g = match rng.random_range(0..16) {
            0 => Gate::H(q),
            1 => Gate::X(q),
            2 => Gate::Y(q),
            3 => Gate::Z(q),
            4 => Gate::S(q),
            5 => Gate::Sdg(q),
            6 => Gate::T(q),
            7 => Gate::Tdg(q),
            8 => Gate::SqrtX(q),
            9 => Gate::SqrtXdg(q),
            10 => Gate::Rz(q, random_angle(&mut rng)),
            11 => Gate::Rz(q, Angle::Exact(rng.random_range(-7..8))),
            12 | 13 => Gate::Cnot(q, r),
            14 => Gate::Swap(q, r),
            _ => {
                let weight = match method {
                    Method::Linear => continue,
                    Method::Swap => 2,
                    Method::Clifford => n,
                };
                let mut axis = PauliString::identity(n);
                while axis.is_identity() || axis.weight() > weight {
                    axis = PauliString::identity(n);
                    for i in 0..n {
                        axis.set_letter(i, ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])?;
                    }
                }
                Gate::PauliRot(PauliRotation::new(axis, random_angle(&mut rng)))
            }
        };
        gates.push(g);
    }
    Circuit::from_gates(n, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CountMode;

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 2), 91);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(all_subsets(4, 2).len(), 6);
    }

    #[test]
    fn qaoa_small() {
        let c = qaoa_maxklin2(4, 2, 1).unwrap();
        // 4 H, 6 blocks of 3 gates, 4 final triples
        assert_eq!(c.len(), 4 + 6 * 3 + 12);
        assert_eq!(c.count_cnots(CountMode::Raw), 12);
        assert_eq!(c, qaoa_maxklin2(4, 2, 1).unwrap());
        assert_ne!(c, qaoa_maxklin2(4, 2, 2).unwrap());
    }

    #[test]
    fn qaoa_full_weight() {
        let c = qaoa_maxklin2_with(5, 5, 1, 0).unwrap();
        let cnots: Vec<_> = c.gates().iter().filter(|g| matches!(g, Gate::Cnot(..))).collect();
        assert_eq!(cnots.len(), 8);
        assert_eq!(*cnots[0], Gate::Cnot(0, 1));
        assert_eq!(*cnots[3], Gate::Cnot(3, 4));
    }

    #[test]
    fn qaoa_errors() {
        assert!(matches!(qaoa_maxklin2(4, 1, 0), Err(Error::WeightOutOfRange { .. })));
        assert!(matches!(qaoa_maxklin2(4, 5, 0), Err(Error::WeightOutOfRange { .. })));
        assert!(matches!(
            qaoa_maxklin2_with(4, 2, 16, 0),
            Err(Error::NotEnoughDistinct { requested: 16, available: 6 })
        ));
    }

    #[test]
    fn distinct_parities() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ps = random_parities(14, 3, 196, &mut rng).unwrap();
        let set: HashSet<_> = ps.iter().collect();
        assert_eq!(set.len(), 196);
        assert!(ps.iter().all(|p| p.len() == 3 && p.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn angles_avoid_clifford_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            assert!(!random_angle(&mut rng).is_clifford());
        }
    }

    #[test]
    fn random_circuits_are_admissible() {
        for method in Method::ALL {
            let c = random_circuit(method, 4, 200, 3).unwrap();
            assert_eq!(c.len(), 200);
            assert!(c.gates().iter().all(|g| method.admits(g)));
        }
    }

    #[test]
    fn lowering_matches_rotation() {
        use crate::verify::dense_unitary;
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=5 {
            for p in random_paulis(n, 10.min(4usize.pow(n as u32) - 1), &mut rng).unwrap() {
                let a = random_angle(&mut rng);
                let naive = Circuit::from_gates(n, lower_rotation(&p, a)).unwrap();
                let rot = Circuit::from_gates(n, vec![Gate::PauliRot(PauliRotation::new(p.clone(), a))]).unwrap();
                let (x, y) = (dense_unitary(&naive).unwrap(), dense_unitary(&rot).unwrap());
                assert!(x.approx_eq_up_to_phase(&y, 1e-9), "{p}");
            }
        }
    }

    #[test]
    fn pauli_sequences() {
        let c = random_pauli_sequence(3, 1, 4).unwrap();
        assert!(!c.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let axes = random_paulis(2, 15, &mut rng).unwrap();
        assert_eq!(axes.iter().collect::<HashSet<_>>().len(), 15);
        assert!(random_paulis(2, 16, &mut rng).is_err());
        assert!(matches!(random_pauli_sequence(2, 0, 0), Err(Error::EmptyCount)));
    }
}
