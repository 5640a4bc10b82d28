//! Plain-text functional files, mirroring the game format.
//!
//! ```text
//! bell <name> <nx> <ny> <na> <nb> <offset_num>/<offset_den>
//! bound <num>/<den>                      # optional claimed classical bound
//! coef <x> <y> <a> <b> <num>/<den>       # omitted tuples are 0
//! ```

use super::BellFunctional;
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::textfmt::{expect_len, input_index, name_field, output_index, records, usize_field};
use num_traits::Zero;
use std::fmt::Write;

pub fn parse_functional(text: &str) -> Result<BellFunctional> {
    let mut recs = records(text);
    let (line, head) = recs.next().ok_or_else(|| Error::parse(1, "empty functional file"))?;
    if head[0] != "bell" {
        return Err(Error::parse(line, format!("expected 'bell' header, found '{}'", head[0])));
    }
    expect_len(line, &head, 7)?;
    let name = name_field(line, head[1])?;
    let n: Vec<usize> = head[2..6]
        .iter()
        .map(|t| usize_field(line, t, "dimension"))
        .collect::<Result<_>>()?;
    let dims = Dims::new(n[0], n[1], n[2], n[3]).map_err(|e| Error::parse(line, e.to_string()))?;
    if dims.len() > 1 << 24 {
        return Err(Error::Capacity(format!("functional tensor {dims} is too large")));
    }
    let offset = rational::field(line, head[6])?;

    let mut coeff: Vec<Option<Rational>> = vec![None; dims.len()];
    let mut bound = None;
    for (line, t) in recs {
        match t[0] {
            "coef" => {
                expect_len(line, &t, 6)?;
                let x = input_index(line, t[1], dims.nx, "x")?;
                let y = input_index(line, t[2], dims.ny, "y")?;
                let a = output_index(line, t[3], dims.na, "a")?;
                let b = output_index(line, t[4], dims.nb, "b")?;
                let slot = &mut coeff[dims.index(x, y, a, b)];
                if slot.is_some() {
                    return Err(Error::parse(line, format!("duplicate coefficient for ({}, {}, {a}, {b})", x + 1, y + 1)));
                }
                *slot = Some(rational::field(line, t[5])?);
            }
            "bound" => {
                expect_len(line, &t, 2)?;
                if bound.is_some() {
                    return Err(Error::parse(line, "duplicate bound"));
                }
                bound = Some(rational::field(line, t[1])?);
            }
            other => return Err(Error::parse(line, format!("unknown record '{other}'"))),
        }
    }
    let coeff = coeff.into_iter().map(|c| c.unwrap_or_else(Rational::zero)).collect();
    let f = BellFunctional::new(name, dims, coeff, offset)?;
    Ok(match bound {
        Some(b) => f.with_claimed_bound(b),
        None => f,
    })
}

/// Canonical rendering with only nonzero coefficients.
pub fn emit_functional(f: &BellFunctional) -> String {
    let d = f.dims();
    let mut out = String::new();
    writeln!(
        out,
        "bell {} {} {} {} {} {}",
        f.name(),
        d.nx,
        d.ny,
        d.na,
        d.nb,
        rational::to_file_string(&f.offset())
    )
    .unwrap();
    if let Some(b) = f.claimed_bound() {
        writeln!(out, "bound {}", rational::to_file_string(&b)).unwrap();
    }
    for (x, y, a, b) in d.tuples() {
        let c = f.coeff(x, y, a, b);
        if !c.is_zero() {
            writeln!(out, "coef {} {} {a} {b} {}", x + 1, y + 1, rational::to_file_string(&c)).unwrap();
        }
    }
    out
}
