use crate::error::{Error, Result};
use std::fmt;

/// Default bound on the number of deterministic profiles an exhaustive
/// search may visit.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Shape of a two-player game or Bell scenario: input counts `nx`, `ny`
/// and output counts `na`, `nb`.
///
/// All tensors indexed by `(x, y, a, b)` are stored flat in row-major order
/// with `b` fastest; inputs and outputs are 0-based internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub nx: usize,
    pub ny: usize,
    pub na: usize,
    pub nb: usize,
}

impl Dims {
    pub fn new(nx: usize, ny: usize, na: usize, nb: usize) -> Result<Self> {
        if nx == 0 || ny == 0 || na == 0 || nb == 0 {
            return Err(Error::Validation(format!(
                "dimensions must be at least 1, got ({nx}, {ny}, {na}, {nb})"
            )));
        }
        Ok(Dims { nx, ny, na, nb })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny * self.na * self.nb
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn setting_pairs(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, a: usize, b: usize) -> usize {
        debug_assert!(x < self.nx && y < self.ny && a < self.na && b < self.nb);
        ((x * self.ny + y) * self.na + a) * self.nb + b
    }

    /// Iterates all `(x, y, a, b)` in storage order.
    pub fn tuples(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        let d = *self;
        (0..d.nx).flat_map(move |x| {
            (0..d.ny).flat_map(move |y| {
                (0..d.na).flat_map(move |a| (0..d.nb).map(move |b| (x, y, a, b)))
            })
        })
    }

    pub fn alice_strategies(&self) -> Option<u64> {
        checked_pow(self.na, self.nx)
    }

    pub fn bob_strategies(&self) -> Option<u64> {
        checked_pow(self.nb, self.ny)
    }

    /// Number of deterministic profiles, or a capacity error when it exceeds `cap`.
    pub fn profile_count(&self, cap: u64) -> Result<u64> {
        let total = self
            .alice_strategies()
            .zip(self.bob_strategies())
            .and_then(|(a, b)| a.checked_mul(b));
        match total {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::Capacity(format!(
                "{}^{} * {}^{} deterministic profiles exceed the cap of {cap}",
                self.na, self.nx, self.nb, self.ny
            ))),
        }
    }

    pub(crate) fn ensure_eq(&self, other: &Dims, what: &str) -> Result<()> {
        if self != other {
            return Err(Error::Dimension(format!("{what}: expected {self}, got {other}")));
        }
        Ok(())
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(u32::try_from(exp).ok()?)
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(nx={}, ny={}, na={}, nb={})", self.nx, self.ny, self.na, self.nb)
    }
}
