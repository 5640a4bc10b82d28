//! Plain-text strategy files.
//!
//! ```text
//! dims <dA> <dB>
//! state <re> <im>                        # dA*dB lines, index a*dB + b
//! ameas <i> <k> <re> <im> <re> <im> ...  # vector k of Alice's measurement i
//! bmeas <j> <l> <re> <im> ...
//! ```
//!
//! Measurement inputs are 1-based, basis indices 0-based. Floats are written
//! in shortest round-trip form.

use super::linalg::C64;
use super::strategy::{ProjectiveMeasurement, QuantumStrategy, StateVector};
use crate::error::{Error, Result};
use crate::textfmt::{expect_len, f64_field, output_index, records, usize_field};
use std::collections::BTreeMap;
use std::fmt::Write;

type Vectors = BTreeMap<usize, BTreeMap<usize, Vec<C64>>>;

pub fn parse_strategy(text: &str) -> Result<QuantumStrategy> {
    let mut recs = records(text);
    let (line, head) = recs.next().ok_or_else(|| Error::parse(1, "empty strategy file"))?;
    if head[0] != "dims" {
        return Err(Error::parse(line, format!("expected 'dims' header, found '{}'", head[0])));
    }
    expect_len(line, &head, 3)?;
    let d_a = usize_field(line, head[1], "dA")?;
    let d_b = usize_field(line, head[2], "dB")?;
    if d_a == 0 || d_b == 0 || d_a > 16 || d_b > 16 {
        return Err(Error::parse(line, "local dimensions must be in 1..=16"));
    }

    let mut amp = Vec::with_capacity(d_a * d_b);
    let mut alice = Vectors::new();
    let mut bob = Vectors::new();
    let mut last_line = line;
    for (line, t) in recs {
        last_line = line;
        match t[0] {
            "state" => {
                expect_len(line, &t, 3)?;
                if amp.len() == d_a * d_b {
                    return Err(Error::parse(line, "too many state amplitudes"));
                }
                amp.push(C64::new(f64_field(line, t[1])?, f64_field(line, t[2])?));
            }
            "ameas" | "bmeas" => {
                let d = if t[0] == "ameas" { d_a } else { d_b };
                expect_len(line, &t, 3 + 2 * d)?;
                let input = usize_field(line, t[1], "input")?;
                if input == 0 {
                    return Err(Error::parse(line, "measurement inputs are 1-based"));
                }
                let k = output_index(line, t[2], d, "basis index")?;
                let v = t[3..]
                    .chunks(2)
                    .map(|c| Ok(C64::new(f64_field(line, c[0])?, f64_field(line, c[1])?)))
                    .collect::<Result<Vec<_>>>()?;
                let table = if t[0] == "ameas" { &mut alice } else { &mut bob };
                if table.entry(input - 1).or_default().insert(k, v).is_some() {
                    return Err(Error::parse(line, format!("duplicate vector {k} for input {input}")));
                }
            }
            other => return Err(Error::parse(line, format!("unknown record '{other}'"))),
        }
    }
    if amp.len() != d_a * d_b {
        return Err(Error::parse(last_line, format!("expected {} state lines, found {}", d_a * d_b, amp.len())));
    }
    let state = StateVector::new(d_a, d_b, amp)?;
    let alice = collect(alice, d_a, "Alice")?;
    let bob = collect(bob, d_b, "Bob")?;
    QuantumStrategy::new(state, alice, bob)
}

fn collect(table: Vectors, d: usize, who: &str) -> Result<Vec<ProjectiveMeasurement>> {
    let mut out = Vec::with_capacity(table.len());
    for (expected, (input, vectors)) in table.into_iter().enumerate() {
        if input != expected {
            return Err(Error::Validation(format!("{who} measurement {} is missing", expected + 1)));
        }
        if vectors.len() != d {
            return Err(Error::Validation(format!(
                "{who} measurement {} has {} of {d} basis vectors",
                input + 1,
                vectors.len()
            )));
        }
        out.push(ProjectiveMeasurement::new(vectors.into_values().collect())?);
    }
    Ok(out)
}

pub fn emit_strategy(s: &QuantumStrategy) -> String {
    let mut out = String::new();
    writeln!(out, "dims {} {}", s.state.dim_a(), s.state.dim_b()).unwrap();
    for z in s.state.amplitudes() {
        writeln!(out, "state {} {}", z.re, z.im).unwrap();
    }
    for (tag, ms) in [("ameas", &s.alice), ("bmeas", &s.bob)] {
        for (i, m) in ms.iter().enumerate() {
            for (k, v) in m.basis().iter().enumerate() {
                write!(out, "{tag} {} {k}", i + 1).unwrap();
                for z in v {
                    write!(out, " {} {}", z.re, z.im).unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{builtin_strategy, BUILTIN_STRATEGIES};
    use super::*;

    #[test]
    fn builtins_round_trip_bytes() {
        for name in BUILTIN_STRATEGIES {
            let s = builtin_strategy(name).unwrap();
            let text = emit_strategy(&s);
            let back = parse_strategy(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(emit_strategy(&back), text);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_strategy("dims 2\n"), Err(Error::Parse { line: 1, .. })));
        let text = "dims 1 1\nstate 1 0\nstate 0 0\n";
        assert!(matches!(parse_strategy(text), Err(Error::Parse { line: 3, .. })));
        let text = "dims 1 1\nstate 1 0\nameas 1 0 1 0\nbmeas 1 0 1 zero\n";
        assert!(matches!(parse_strategy(text), Err(Error::Parse { line: 4, .. })));
        let text = "dims 1 1\nstate 1 0\nameas 2 0 1 0\nbmeas 1 0 1 0\n";
        assert!(matches!(parse_strategy(text), Err(Error::Validation(_))));
        let text = "dims 1 1\nstate 1 0\nameas 1 0 1 0\nbmeas 1 0 1 0\n";
        assert!(parse_strategy(text).is_ok());
    }

    #[test]
    fn non_orthonormal_basis_rejected() {
        let text = "dims 2 1\nstate 1 0\nstate 0 0\nameas 1 0 1 0 0 0\nameas 1 1 1 0 0 0\nbmeas 1 0 1 0\n";
        assert!(matches!(parse_strategy(text), Err(Error::Validation(_))));
    }
}
