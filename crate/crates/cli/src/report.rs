use lazyroute::{Method, RoutedOutput, Tracker};
use serde::Serialize;

#[derive(Serialize)]
pub struct Report {
    pub method: String,
    pub arch: String,
    pub depth: usize,
    pub n_qubits: usize,
    pub in_cnot: usize,
    pub out_cnot: usize,
    pub in_2q: usize,
    pub out_2q: usize,
    pub overhead_pct: f64,
    pub wall_ms: f64,
    pub final_operator: FinalOperator,
    pub verified: Option<bool>,
}

#[derive(Serialize)]
pub struct FinalOperator {
    pub kind: &'static str,
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(method: Method, arch: &str, depth: usize, out: &RoutedOutput, verified: Option<bool>) -> Self {
        let m = &out.metrics;
        Report {
            method: method.to_string(),
            arch: arch.to_string(),
            depth,
            n_qubits: out.circuit.n_qubits(),
            in_cnot: m.in_cnot,
            out_cnot: m.out_cnot,
            in_2q: m.in_2q,
            out_2q: m.out_2q,
            overhead_pct: m.overhead_pct(),
            wall_ms: m.wall.as_secs_f64() * 1e3,
            final_operator: FinalOperator::new(&out.final_operator),
            verified,
        }
    }
}

impl FinalOperator {
    /// Permutations as `σ[p]`, linear maps as rows of `A`, tableaus as the
    /// signed images of each `X_i` and `Z_i`.
    fn new(h: &Tracker) -> Self {
        let data = match h {
            Tracker::Permutation(p) => serde_json::json!(p.as_slice()),
            Tracker::Linear(t) => serde_json::json!(t.table().to_bitstrings()),
            Tracker::Clifford(t) => {
                let x: Vec<String> = (0..t.n()).map(|i| t.image_x(i).to_string()).collect();
                let z: Vec<String> = (0..t.n()).map(|i| t.image_z(i).to_string()).collect();
                serde_json::json!({ "x": x, "z": z })
            }
        };
        FinalOperator { kind: h.kind(), data }
    }
}
