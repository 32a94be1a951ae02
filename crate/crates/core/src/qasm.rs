//! OpenQASM 2.0 subset reader and writer.
//!
//! Supported: one `qreg`, gates `h x y z s sdg t tdg sx sxdg rz cx swap`.
//! Headers, `include`, `creg`, `barrier` and `//` comments are ignored.

use std::fmt::Write as _;

use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};

/// Statements with the line on which each starts.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = None;
    for (i, line) in text.lines().enumerate() {
        let code = line.split("//").next().unwrap_or("");
        for ch in code.chars() {
            if ch == ';' {
                if let Some(l) = start.take() {
                    out.push((l, std::mem::take(&mut cur)));
                }
                cur.clear();
            } else {
                if start.is_none() && !ch.is_whitespace() {
                    start = Some(i + 1);
                }
                cur.push(ch);
            }
        }
        cur.push(' ');
    }
    if let Some(l) = start {
        out.push((l, cur));
    }
    out
}

pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut reg: Option<(String, usize)> = None;
    let mut gates = Vec::new();
    let mut ended_without_semicolon = None;
    let stmts = statements(text);
    if let Some((line, s)) = stmts.last() {
        if !text.trim_end().ends_with(';') && !s.trim().is_empty() {
            ended_without_semicolon = Some(*line);
        }
    }
    if let Some(line) = ended_without_semicolon {
        return Err(syntax(line, "missing `;`"));
    }
    for (line, stmt) in stmts {
        let stmt = stmt.trim();
        let (head, rest) = split_head(stmt);
        match head {
            "OPENQASM" | "include" | "creg" | "barrier" => continue,
            "qreg" => {
                if reg.is_some() {
                    return Err(syntax(line, "only one quantum register is supported"));
                }
                let (name, size) = parse_ref(rest, line)?;
                reg = Some((name, size));
                continue;
            }
            _ => {}
        }
        let Some((rname, n)) = &reg else {
            return Err(syntax(line, "gate before `qreg` declaration"));
        };
        let (name, param, args) = split_gate(stmt, line)?;
        if !is_known(name) {
            return Err(Error::UnsupportedGate {
                line,
                name: name.to_string(),
            });
        }
        let qubits = args
            .split(',')
            .map(|a| {
                let (r, q) = parse_ref(a, line)?;
                if &r != rname {
                    return Err(syntax(line, &format!("unknown register `{r}`")));
                }
                if q >= *n {
                    return Err(Error::OperandOutOfRange { qubit: q, n: *n });
                }
                Ok(q)
            })
            .collect::<Result<Vec<usize>>>()?;
        let angle = match param {
            Some(p) => Some(parse_angle(p, line)?),
            None => None,
        };
        let arity = match name {
            "cx" | "swap" => 2,
            _ => 1,
        };
        let gate = match (name, angle, qubits.as_slice()) {
            (_, _, qs) if qs.len() != arity => {
                return Err(syntax(line, &format!("`{name}` takes {arity} operand(s)")))
            }
            ("rz", Some(a), &[q]) => Gate::Rz(q, a),
            ("rz", None, _) => return Err(syntax(line, "`rz` needs an angle")),
            (_, Some(_), _) => {
                return Err(syntax(line, &format!("`{name}` takes no parameter")))
            }
            ("h", None, &[q]) => Gate::H(q),
            ("x", None, &[q]) => Gate::X(q),
            ("y", None, &[q]) => Gate::Y(q),
            ("z", None, &[q]) => Gate::Z(q),
            ("s", None, &[q]) => Gate::S(q),
            ("sdg", None, &[q]) => Gate::Sdg(q),
            ("t", None, &[q]) => Gate::T(q),
            ("tdg", None, &[q]) => Gate::Tdg(q),
            ("sx", None, &[q]) => Gate::SqrtX(q),
            ("sxdg", None, &[q]) => Gate::SqrtXdg(q),
            ("cx", None, &[a, b]) | ("swap", None, &[a, b]) if a == b => {
                return Err(syntax(line, "repeated operand"))
            }
            ("cx", None, &[a, b]) => Gate::Cnot(a, b),
            ("swap", None, &[a, b]) => Gate::Swap(a, b),
            _ => unreachable!("known gate names are matched above"),
        };
        gates.push(gate);
    }
    let Some((_, n)) = reg else {
        return Err(syntax(0, "no `qreg` declaration"));
    };
    Circuit::from_gates(n, gates)
}

fn is_known(name: &str) -> bool {
    matches!(
        name,
        "h" | "x" | "y" | "z" | "s" | "sdg" | "t" | "tdg" | "sx" | "sxdg" | "rz" | "cx" | "swap"
    )
}

fn syntax(line: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        message: message.to_string(),
    }
}

fn split_head(stmt: &str) -> (&str, &str) {
    let end = stmt
        .find(|c: char| c.is_whitespace() || c == '(')
        .unwrap_or(stmt.len());
    (&stmt[..end], stmt[end..].trim())
}

/// `name[(param)] args`
fn split_gate(stmt: &str, line: usize) -> Result<(&str, Option<&str>, &str)> {
    let (name, rest) = split_head(stmt);
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(syntax(line, &format!("cannot parse `{stmt}`")));
    }
    if let Some(inner) = rest.strip_prefix('(') {
        let mut depth = 1;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok((name, Some(&inner[..i]), inner[i + 1..].trim()));
                    }
                }
                _ => {}
            }
        }
        return Err(syntax(line, "unbalanced parentheses"));
    }
    Ok((name, None, rest))
}

/// `name[index]`
fn parse_ref(s: &str, line: usize) -> Result<(String, usize)> {
    let s = s.trim();
    let bad = || syntax(line, &format!("expected `name[index]`, found `{s}`"));
    let open = s.find('[').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let name = s[..open].trim();
    if name.is_empty() {
        return Err(bad());
    }
    let idx = inner.trim().parse().map_err(|_| bad())?;
    Ok((name.to_string(), idx))
}

/// Value of an angle expression: exact rational multiple of `π^power` when
/// possible, always with a float fallback.
#[derive(Clone, Copy, Debug)]
struct Val {
    real: f64,
    exact: Option<(i64, i64, u8)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rat(num: i64, den: i64, pow: u8) -> Option<(i64, i64, u8)> {
    if den == 0 {
        return None;
    }
    let g = gcd(num, den).max(1);
    let s = if den < 0 { -1 } else { 1 };
    Some((s * num / g, s * den / g, pow))
}

impl Val {
    fn add(self, o: Val) -> Val {
        let exact = match (self.exact, o.exact) {
            (Some((a, b, p)), Some((c, d, q))) if p == q || a == 0 || c == 0 => {
                let pow = if a == 0 { q } else { p };
                a.checked_mul(d)
                    .zip(c.checked_mul(b))
                    .and_then(|(x, y)| x.checked_add(y))
                    .zip(b.checked_mul(d))
                    .and_then(|(n, m)| rat(n, m, pow))
            }
            _ => None,
        };
        Val {
            real: self.real + o.real,
            exact,
        }
    }

    fn neg(self) -> Val {
        Val {
            real: -self.real,
            exact: self.exact.map(|(a, b, p)| (-a, b, p)),
        }
    }

    fn mul(self, o: Val) -> Val {
        let exact = match (self.exact, o.exact) {
            (Some((a, b, p)), Some((c, d, q))) if p + q <= 1 => a
                .checked_mul(c)
                .zip(b.checked_mul(d))
                .and_then(|(n, m)| rat(n, m, p + q)),
            _ => None,
        };
        Val {
            real: self.real * o.real,
            exact,
        }
    }

    fn div(self, o: Val) -> Val {
        let exact = match (self.exact, o.exact) {
            (Some((a, b, p)), Some((c, d, q))) if c != 0 && p >= q => a
                .checked_mul(d)
                .zip(b.checked_mul(c))
                .and_then(|(n, m)| rat(n, m, p - q)),
            _ => None,
        };
        Val {
            real: self.real / o.real,
            exact,
        }
    }
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        syntax(self.line, msg)
    }

    fn expr(&mut self) -> Result<Val> {
        let mut v = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if op == b'+' { v.add(rhs) } else { v.add(rhs.neg()) };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Val> {
        let mut v = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            v = if op == b'*' { v.mul(rhs) } else { v.div(rhs) };
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<Val> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.s[start..self.pos] {
                    b"pi" => Ok(Val {
                        real: std::f64::consts::PI,
                        exact: Some((1, 1, 1)),
                    }),
                    other => Err(self.err(&format!(
                        "unknown identifier `{}`",
                        String::from_utf8_lossy(other)
                    ))),
                }
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() {
                    let c = self.s[self.pos];
                    let exp_sign = (c == b'-' || c == b'+')
                        && matches!(self.s[self.pos - 1], b'e' | b'E');
                    if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                let real: f64 = text
                    .parse()
                    .map_err(|_| self.err(&format!("bad number `{text}`")))?;
                let exact = if text.bytes().all(|c| c.is_ascii_digit()) {
                    text.parse::<i64>().ok().map(|k| (k, 1, 0))
                } else {
                    None
                };
                Ok(Val { real, exact })
            }
            _ => Err(self.err("expected an expression")),
        }
    }
}

/// `k·π/m` with `4k/m` integral becomes `Exact(4k/m)`; anything else is `Real`.
fn parse_angle(expr: &str, line: usize) -> Result<Angle> {
    let mut p = ExprParser {
        s: expr.as_bytes(),
        pos: 0,
        line,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(line, &format!("trailing input in `{expr}`")));
    }
    Ok(match v.exact {
        Some((0, _, _)) => Angle::Exact(0),
        Some((num, den, 1)) if (4 * num as i128) % den as i128 == 0 => {
            Angle::Exact((4 * num as i128 / den as i128) as i64)
        }
        _ => Angle::Real(v.real),
    })
}

pub fn emit_qasm(c: &Circuit) -> Result<String> {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(s, "qreg q[{}];", c.n_qubits());
    for g in c.gates() {
        let _ = match g {
            Gate::PauliRot(_) => return Err(Error::PauliRotationInQasm),
            Gate::Rz(q, a) => writeln!(s, "rz({a}) q[{q}];"),
            Gate::Cnot(a, b) | Gate::Swap(a, b) => writeln!(s, "{} q[{a}],q[{b}];", g.name()),
            g => writeln!(s, "{} q[{}];", g.name(), g.qubits()[0]),
        };
    }
    Ok(s)
}
