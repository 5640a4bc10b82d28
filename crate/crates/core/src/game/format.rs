//! Plain-text game files.
//!
//! ```text
//! game <name> <nx> <ny> <na> <nb>
//! prior <x> <y> <num>/<den>
//! pay <x> <y> <a> <b> <uA_num>/<uA_den> <uB_num>/<uB_den>
//! ```
//!
//! Inputs are 1-based, outputs 0-based, `#` starts a comment. Every prior
//! cell and payoff tuple must appear exactly once.

use super::GameSpec;
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::textfmt::{expect_len, input_index, name_field, output_index, records, usize_field};
use std::fmt::Write;

pub fn parse_game(text: &str) -> Result<GameSpec> {
    let mut recs = records(text);
    let (line, head) = recs.next().ok_or_else(|| Error::parse(1, "empty game file"))?;
    if head[0] != "game" {
        return Err(Error::parse(line, format!("expected 'game' header, found '{}'", head[0])));
    }
    expect_len(line, &head, 6)?;
    let name = name_field(line, head[1])?;
    let n: Vec<usize> = head[2..]
        .iter()
        .map(|t| usize_field(line, t, "dimension"))
        .collect::<Result<_>>()?;
    let dims = Dims::new(n[0], n[1], n[2], n[3]).map_err(|e| Error::parse(line, e.to_string()))?;
    if dims.len() > 1 << 24 {
        return Err(Error::Capacity(format!("game tensor {dims} is too large")));
    }

    let mut prior: Vec<Option<Rational>> = vec![None; dims.setting_pairs()];
    let mut pay: Vec<Option<(Rational, Rational)>> = vec![None; dims.len()];
    for (line, t) in recs {
        match t[0] {
            "prior" => {
                expect_len(line, &t, 4)?;
                let x = input_index(line, t[1], dims.nx, "x")?;
                let y = input_index(line, t[2], dims.ny, "y")?;
                let slot = &mut prior[x * dims.ny + y];
                if slot.is_some() {
                    return Err(Error::parse(line, format!("duplicate prior for ({}, {})", x + 1, y + 1)));
                }
                *slot = Some(rational::field(line, t[3])?);
            }
            "pay" => {
                expect_len(line, &t, 7)?;
                let x = input_index(line, t[1], dims.nx, "x")?;
                let y = input_index(line, t[2], dims.ny, "y")?;
                let a = output_index(line, t[3], dims.na, "a")?;
                let b = output_index(line, t[4], dims.nb, "b")?;
                let slot = &mut pay[dims.index(x, y, a, b)];
                if slot.is_some() {
                    return Err(Error::parse(line, format!("duplicate payoff for ({}, {}, {a}, {b})", x + 1, y + 1)));
                }
                *slot = Some((rational::field(line, t[5])?, rational::field(line, t[6])?));
            }
            other => return Err(Error::parse(line, format!("unknown record '{other}'"))),
        }
    }

    let prior = prior
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| {
                Error::Validation(format!("missing prior for ({}, {})", i / dims.ny + 1, i % dims.ny + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pay_a = Vec::with_capacity(dims.len());
    let mut pay_b = Vec::with_capacity(dims.len());
    for ((x, y, a, b), entry) in dims.tuples().zip(pay) {
        let (ua, ub) = entry
            .ok_or_else(|| Error::Validation(format!("missing payoff for ({}, {}, {a}, {b})", x + 1, y + 1)))?;
        pay_a.push(ua);
        pay_b.push(ub);
    }
    GameSpec::new(name, dims, prior, pay_a, pay_b)
}

/// Canonical rendering; `parse_game(&emit_game(g))` reproduces `g` and
/// re-emits identical bytes.
pub fn emit_game(game: &GameSpec) -> String {
    let d = game.dims();
    let mut out = String::new();
    writeln!(out, "game {} {} {} {} {}", game.name(), d.nx, d.ny, d.na, d.nb).unwrap();
    for x in 0..d.nx {
        for y in 0..d.ny {
            writeln!(out, "prior {} {} {}", x + 1, y + 1, rational::to_file_string(&game.prior(x, y))).unwrap();
        }
    }
    for (x, y, a, b) in d.tuples() {
        writeln!(
            out,
            "pay {} {} {a} {b} {} {}",
            x + 1,
            y + 1,
            rational::to_file_string(&game.pay_a(x, y, a, b)),
            rational::to_file_string(&game.pay_b(x, y, a, b))
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip() {
        for name in super::super::BUILTIN_GAMES {
            let g = GameSpec::builtin(name).unwrap();
            let text = emit_game(&g);
            let back = parse_game(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(emit_game(&back), text);
        }
    }

    #[test]
    fn comments_and_integers_accepted() {
        let text = "# tiny\ngame t 1 1 1 1   # header\nprior 1 1 1\npay 1 1 0 0 3/6 -2\n";
        let g = parse_game(text).unwrap();
        assert_eq!(g.pay_a(0, 0, 0, 0), rational::frac(1, 2));
        assert_eq!(g.pay_b(0, 0, 0, 0), rational::int(-2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "game t 1 1 1 1\nprior 1 1 1/1\npay 1 1 0 2 0/1 0/1\n";
        assert!(matches!(parse_game(text), Err(Error::Parse { line: 3, .. })));
        let text = "game t 1 1 1 1\nprior 1 1 1/1\nprior 1 1 1/1\n";
        assert!(matches!(parse_game(text), Err(Error::Parse { line: 3, .. })));
        let text = "game t 1 1 1 1\nprior 1 1 1/x\n";
        assert!(matches!(parse_game(text), Err(Error::Parse { line: 2, .. })));
        let text = "bell t 1 1 1 1 0/1\n";
        assert!(matches!(parse_game(text), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn missing_entries_rejected() {
        let text = "game t 1 2 1 1\nprior 1 1 1/1\nprior 1 2 0/1\npay 1 1 0 0 0/1 0/1\n";
        assert!(matches!(parse_game(text), Err(Error::Validation(_))));
    }
}
