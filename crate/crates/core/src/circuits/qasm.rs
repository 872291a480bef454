//! OpenQASM 2.0 subset: `qreg`, `creg`, `h`, `cz`, `ccx`, `u3`, `measure`.
//!
//! Main qubits live in `qreg q[n]`, ancillas in a separate `qreg anc[k]`,
//! classical bits in `creg c[m]`. Angles are written in the shortest form
//! that parses back to the same `f64`, so emission round-trips exactly.

use std::fmt::Write;

use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.qubits());
    if c.ancillas() > 0 {
        let _ = writeln!(out, "qreg anc[{}];", c.ancillas());
    }
    if c.clbits() > 0 {
        let _ = writeln!(out, "creg c[{}];", c.clbits());
    }
    let name = |q: usize| {
        if q < c.qubits() {
            format!("q[{q}]")
        } else {
            format!("anc[{}]", q - c.qubits())
        }
    };
    for g in c.gates() {
        let _ = match *g {
            Gate::H(a) => writeln!(out, "h {};", name(a)),
            Gate::Cz(a, b) => writeln!(out, "cz {},{};", name(a), name(b)),
            Gate::Toffoli { controls: [a, b], target } => {
                writeln!(out, "ccx {},{},{};", name(a), name(b), name(target))
            }
            Gate::U3 { qubit, theta, phi, lambda } => writeln!(out, "u3({theta},{phi},{lambda}) {};", name(qubit)),
            Gate::Measure { qubit, cbit } => writeln!(out, "measure {} -> c[{cbit}];", name(qubit)),
        };
    }
    out
}

/// Parses the subset written by [`emit_qasm`]; angle arguments may be
/// arithmetic expressions in `pi`.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut regs: Vec<(String, usize)> = Vec::new();
    let mut creg: Option<(String, usize)> = None;
    let mut circuit: Option<Circuit> = None;
    let mut header = false;

    for (line, stmt) in statements(text) {
        let err = |msg: String| Error::Qasm { line, msg };
        let (head, rest) = split_head(&stmt);
        match head {
            "OPENQASM" => {
                if rest.trim() != "2.0" {
                    return Err(err(format!("unsupported version {:?}", rest.trim())));
                }
                header = true;
            }
            _ if !header => return Err(err("missing OPENQASM 2.0 header".into())),
            "include" => {}
            "qreg" | "creg" => {
                if circuit.is_some() {
                    return Err(err(format!("{head} after the first gate")));
                }
                let (name, size) = parse_ref(rest).map_err(err)?;
                if head == "creg" {
                    if creg.is_some() {
                        return Err(err(format!("second classical register {name}")));
                    }
                    creg = Some((name, size));
                } else if regs.len() == 2 || regs.iter().any(|r| r.0 == name) {
                    return Err(err(format!("unexpected quantum register {name}")));
                } else {
                    regs.push((name, size));
                }
            }
            _ => {
                if regs.is_empty() {
                    return Err(err("gate before any qreg".into()));
                }
                let c = circuit.get_or_insert_with(|| {
                    Circuit::new(regs[0].1, regs.get(1).map_or(0, |r| r.1))
                });
                let gate = parse_gate(head, rest, &regs, creg.as_ref()).map_err(err)?;
                c.push(gate).map_err(|e| Error::Qasm { line, msg: e.to_string() })?;
            }
        }
    }
    if !header {
        return Err(Error::Qasm { line: 1, msg: "missing OPENQASM 2.0 header".into() });
    }
    match (circuit, regs.first()) {
        (Some(c), _) => Ok(c),
        (None, Some(main)) => Ok(Circuit::new(main.1, regs.get(1).map_or(0, |r| r.1))),
        (None, None) => Err(Error::Qasm { line: 1, msg: "no qreg declared".into() }),
    }
}

/// Splits on `;`, dropping `//` comments, and tags each statement with the
/// line it starts on.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 1;
    for (i, raw) in text.lines().enumerate() {
        let code = raw.split("//").next().unwrap_or("");
        for ch in code.chars() {
            if ch == ';' {
                out.push((start, std::mem::take(&mut current).trim().to_string()));
            } else {
                if current.trim().is_empty() && !ch.is_whitespace() {
                    start = i + 1;
                }
                current.push(ch);
            }
        }
        current.push(' ');
    }
    if !current.trim().is_empty() {
        out.push((start, current.trim().to_string()));
    }
    out.retain(|(_, s)| !s.is_empty());
    out
}

fn split_head(stmt: &str) -> (&str, &str) {
    let end = stmt.find(|c: char| c.is_whitespace() || c == '(').unwrap_or(stmt.len());
    (&stmt[..end], &stmt[end..])
}

/// `name[index]`.
fn parse_ref(s: &str) -> std::result::Result<(String, usize), String> {
    let s = s.trim();
    let open = s.find('[').ok_or_else(|| format!("expected name[index], got {s:?}"))?;
    if !s.ends_with(']') {
        return Err(format!("expected name[index], got {s:?}"));
    }
    let name = s[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(format!("bad register name {name:?}"));
    }
    let index = s[open + 1..s.len() - 1]
        .trim()
        .parse()
        .map_err(|_| format!("bad index in {s:?}"))?;
    Ok((name.to_string(), index))
}

fn qubit(s: &str, regs: &[(String, usize)]) -> std::result::Result<usize, String> {
    let (name, index) = parse_ref(s)?;
    let mut offset = 0;
    for (reg, size) in regs {
        if *reg == name {
            if index >= *size {
                return Err(format!("{name}[{index}] out of range"));
            }
            return Ok(offset + index);
        }
        offset += size;
    }
    Err(format!("unknown register {name:?}"))
}

fn operands(s: &str, regs: &[(String, usize)], arity: usize) -> std::result::Result<Vec<usize>, String> {
    let qs: Vec<usize> = s.split(',').map(|p| qubit(p, regs)).collect::<std::result::Result<_, _>>()?;
    if qs.len() != arity {
        return Err(format!("expected {arity} operands, got {}", qs.len()));
    }
    Ok(qs)
}

fn parse_gate(
    head: &str,
    rest: &str,
    regs: &[(String, usize)],
    creg: Option<&(String, usize)>,
) -> std::result::Result<Gate, String> {
    Ok(match head {
        "h" => Gate::H(operands(rest, regs, 1)?[0]),
        "cz" => {
            let q = operands(rest, regs, 2)?;
            Gate::Cz(q[0], q[1])
        }
        "ccx" => {
            let q = operands(rest, regs, 3)?;
            Gate::Toffoli { controls: [q[0], q[1]], target: q[2] }
        }
        "u3" => {
            let rest = rest.trim_start();
            let close = rest.rfind(')').ok_or("u3 needs (theta,phi,lambda)")?;
            if !rest.starts_with('(') {
                return Err("u3 needs (theta,phi,lambda)".into());
            }
            let args: Vec<f64> = split_args(&rest[1..close])
                .iter()
                .map(|a| eval_expr(a))
                .collect::<std::result::Result<_, _>>()?;
            if args.len() != 3 {
                return Err(format!("u3 takes 3 angles, got {}", args.len()));
            }
            let q = operands(&rest[close + 1..], regs, 1)?;
            Gate::U3 { qubit: q[0], theta: args[0], phi: args[1], lambda: args[2] }
        }
        "measure" => {
            let (src, dst) = rest.split_once("->").ok_or("measure needs `q -> c`")?;
            let q = operands(src, regs, 1)?[0];
            let (name, cbit) = parse_ref(dst)?;
            match creg {
                Some((c, size)) if *c == name && cbit < *size => Gate::Measure { qubit: q, cbit },
                Some((c, _)) if *c == name => return Err(format!("{name}[{cbit}] out of range")),
                _ => return Err(format!("unknown classical register {name:?}")),
            }
        }
        other => return Err(format!("unsupported statement {other:?}")),
    })
}

/// Top-level commas only.
fn split_args(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().expect("nonempty").push(ch);
    }
    out
}

/// `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
/// `unary := '-' unary | atom`, `atom := number | 'pi' | '(' expr ')'`.
pub fn eval_expr(s: &str) -> std::result::Result<f64, String> {
    let tokens = tokenize(s)?;
    let mut p = ExprParser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in {s:?}"));
    }
    if !v.is_finite() {
        return Err(format!("non-finite angle {s:?}"));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() {
                let d = chars[i];
                let exp_sign = (d == '+' || d == '-') && matches!(chars[i - 1], 'e' | 'E');
                if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| format!("bad number {text:?}"))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word != "pi" {
                return Err(format!("unknown identifier {word:?}"));
            }
            out.push(Tok::Num(std::f64::consts::PI));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct ExprParser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl ExprParser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> std::result::Result<f64, String> {
        let mut v = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let r = self.term()?;
            v = if op == '+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn term(&mut self) -> std::result::Result<f64, String> {
        let mut v = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let r = self.unary()?;
            v = if op == '*' { v * r } else { v / r };
        }
        Ok(v)
    }

    fn unary(&mut self) -> std::result::Result<f64, String> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> std::result::Result<f64, String> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(x)) => {
                self.pos += 1;
                Ok(x)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(format!("unexpected {other:?}")),
        }
    }
}
