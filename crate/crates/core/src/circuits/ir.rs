use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gate operands are global qubit indices: main qubits `0..qubits`, then
/// ancillas `qubits..qubits + ancillas`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    Cz(usize, usize),
    Toffoli { controls: [usize; 2], target: usize },
    U3 { qubit: usize, theta: f64, phi: f64, lambda: f64 },
    Measure { qubit: usize, cbit: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::U3 { qubit: q, .. } | Gate::Measure { qubit: q, .. } => vec![q],
            Gate::Cz(a, b) => vec![a, b],
            Gate::Toffoli { controls: [a, b], target } => vec![a, b, target],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::Cz(..) => "cz",
            Gate::Toffoli { .. } => "ccx",
            Gate::U3 { .. } => "u3",
            Gate::Measure { .. } => "measure",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    qubits: usize,
    ancillas: usize,
    clbits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize, ancillas: usize) -> Self {
        Self { qubits, ancillas, clbits: 0, gates: Vec::new() }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn ancillas(&self) -> usize {
        self.ancillas
    }

    pub fn total_qubits(&self) -> usize {
        self.qubits + self.ancillas
    }

    pub fn clbits(&self) -> usize {
        self.clbits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn has_measurements(&self) -> bool {
        self.clbits > 0
    }

    /// Appends `gate` after checking operands and that measurements come last.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let ops = gate.qubits();
        if let Some(&q) = ops.iter().find(|&&q| q >= self.total_qubits()) {
            return Err(Error::InvalidGate(format!("{} on qubit {q} of {}", gate.kind(), self.total_qubits())));
        }
        for (i, a) in ops.iter().enumerate() {
            if ops[i + 1..].contains(a) {
                return Err(Error::InvalidGate(format!("{} repeats qubit {a}", gate.kind())));
            }
        }
        match gate {
            Gate::Measure { cbit, .. } => self.clbits = self.clbits.max(cbit + 1),
            _ if self.has_measurements() => {
                return Err(Error::InvalidGate(format!("{} after a measurement", gate.kind())));
            }
            Gate::U3 { theta, phi, lambda, .. } if ![theta, phi, lambda].iter().all(|x| x.is_finite()) => {
                return Err(Error::InvalidGate("non-finite u3 angle".into()));
            }
            _ => {}
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn count(&self, kind: &str) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawCircuit::from(self)).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCircuit = serde_json::from_str(text)?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct RawGate {
    kind: String,
    qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cbit: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawCircuit {
    qubits: usize,
    ancillas: usize,
    gates: Vec<RawGate>,
}

impl From<&Circuit> for RawCircuit {
    fn from(c: &Circuit) -> Self {
        let gates = c
            .gates
            .iter()
            .map(|g| RawGate {
                kind: g.kind().into(),
                qubits: g.qubits(),
                params: match *g {
                    Gate::U3 { theta, phi, lambda, .. } => Some([theta, phi, lambda]),
                    _ => None,
                },
                cbit: match *g {
                    Gate::Measure { cbit, .. } => Some(cbit),
                    _ => None,
                },
            })
            .collect();
        RawCircuit { qubits: c.qubits, ancillas: c.ancillas, gates }
    }
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = Error;

    fn try_from(raw: RawCircuit) -> Result<Self> {
        let mut c = Circuit::new(raw.qubits, raw.ancillas);
        for g in raw.gates {
            let arity = |k: usize| {
                if g.qubits.len() == k {
                    Ok(())
                } else {
                    Err(Error::InvalidGate(format!("{} takes {k} qubits, got {}", g.kind, g.qubits.len())))
                }
            };
            let gate = match g.kind.as_str() {
                "h" => arity(1).map(|_| Gate::H(g.qubits[0]))?,
                "cz" => arity(2).map(|_| Gate::Cz(g.qubits[0], g.qubits[1]))?,
                "ccx" => arity(3).map(|_| Gate::Toffoli { controls: [g.qubits[0], g.qubits[1]], target: g.qubits[2] })?,
                "u3" => {
                    arity(1)?;
                    let [theta, phi, lambda] =
                        g.params.ok_or_else(|| Error::InvalidGate("u3 without params".into()))?;
                    Gate::U3 { qubit: g.qubits[0], theta, phi, lambda }
                }
                "measure" => {
                    arity(1)?;
                    let cbit = g.cbit.ok_or_else(|| Error::InvalidGate("measure without cbit".into()))?;
                    Gate::Measure { qubit: g.qubits[0], cbit }
                }
                other => return Err(Error::InvalidGate(format!("unknown gate kind {other:?}"))),
            };
            c.push(gate)?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates_operands() {
        let mut c = Circuit::new(2, 1);
        assert!(c.push(Gate::Cz(0, 2)).is_ok());
        assert!(c.push(Gate::Cz(1, 1)).is_err());
        assert!(c.push(Gate::H(3)).is_err());
        assert!(c.push(Gate::U3 { qubit: 0, theta: f64::NAN, phi: 0.0, lambda: 0.0 }).is_err());
        c.push(Gate::Measure { qubit: 0, cbit: 1 }).unwrap();
        assert_eq!(c.clbits(), 2);
        assert!(c.push(Gate::H(0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut c = Circuit::new(3, 1);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::Toffoli { controls: [0, 1], target: 3 }).unwrap();
        c.push(Gate::U3 { qubit: 2, theta: 0.1, phi: -3.0, lambda: 1e-9 }).unwrap();
        c.push(Gate::Measure { qubit: 2, cbit: 0 }).unwrap();
        let text = c.to_json();
        assert!(text.contains("\"kind\": \"ccx\""));
        assert_eq!(Circuit::from_json(&text).unwrap(), c);
        assert!(Circuit::from_json(r#"{"qubits":1,"ancillas":0,"gates":[{"kind":"cz","qubits":[0]}]}"#).is_err());
    }
}
