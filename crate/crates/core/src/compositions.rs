//! Compositions `n = x_0 + x_1 + ⋯ + x_k` with positional part sets
//! `x_0 ∈ {1, …, s}` and `x_i ∈ {s, 2^i + s - 1}` for `i >= 1`.
//!
//! Counting is a dynamic program over (position, running sum); it never
//! consults the meta-Fibonacci recurrence.

use std::fmt;

use crate::metafib::Shift;

/// Largest target accepted by [`enumerate_compositions`].
pub const ENUMERATION_LIMIT: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CompositionError {
    #[error("compositions are only specified for s >= 1")]
    ShiftZero,
    #[error("target must be positive")]
    ZeroTarget,
    #[error("enumeration target {0} exceeds the limit {ENUMERATION_LIMIT}")]
    TooLarge(u64),
}

/// Allowed parts at each position for one shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionSpec {
    shift: Shift,
}

impl CompositionSpec {
    pub fn new(shift: Shift) -> Result<Self, CompositionError> {
        if shift.0 == 0 {
            return Err(CompositionError::ShiftZero);
        }
        Ok(CompositionSpec { shift })
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    /// Allowed parts at `position`, ascending. Parts that would not fit in a
    /// `u64` are dropped.
    pub fn part_choices(&self, position: usize) -> Vec<u64> {
        let s = self.shift.0;
        if position == 0 {
            return (1..=s).collect();
        }
        let mut parts = vec![s];
        if let Some(big) = u32::try_from(position)
            .ok()
            .and_then(|i| 1u64.checked_shl(i))
            .filter(|_| position < 64)
            .and_then(|p| p.checked_add(s - 1))
        {
            parts.push(big);
        }
        parts
    }

    /// Whether `parts` is a composition of `n` under this spec.
    pub fn accepts(&self, parts: &[u64], n: u64) -> bool {
        !parts.is_empty()
            && parts.iter().sum::<u64>() == n
            && parts
                .iter()
                .enumerate()
                .all(|(i, x)| self.part_choices(i).contains(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    pub parts: Vec<u64>,
}

impl Composition {
    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Composition counts for every target `0..=n_max`; entry 0 is 0.
pub fn composition_counts(s: Shift, n_max: u64) -> Result<Vec<u64>, CompositionError> {
    let spec = CompositionSpec::new(s)?;
    let n_max = n_max as usize;
    let mut totals = vec![0u64; n_max + 1];
    // ways[m]: compositions through the current position summing to m
    let mut ways = vec![0u64; n_max + 1];
    for x in spec.part_choices(0) {
        if let Some(slot) = ways.get_mut(x as usize) {
            *slot += 1;
        }
    }
    let mut position = 0usize;
    // every sum below `lo` is zero from here on
    let mut lo = 0usize;
    loop {
        let mut any = false;
        for (m, &w) in ways.iter().enumerate().skip(lo) {
            totals[m] += w;
            any |= w != 0;
        }
        if !any {
            break;
        }
        position += 1;
        let parts = spec.part_choices(position);
        let mut next = vec![0u64; n_max + 1];
        for (m, &w) in ways.iter().enumerate().skip(lo) {
            if w == 0 {
                continue;
            }
            for &x in &parts {
                if let Some(slot) = (m as u64)
                    .checked_add(x)
                    .and_then(|t| next.get_mut(t as usize))
                {
                    *slot += w;
                }
            }
        }
        ways = next;
        lo += s.0 as usize;
    }
    Ok(totals)
}

pub fn count_compositions(s: Shift, n: u64) -> Result<u64, CompositionError> {
    if n == 0 {
        return Err(CompositionError::ZeroTarget);
    }
    Ok(composition_counts(s, n)?[n as usize])
}

/// All compositions of `n`, in lexicographic order of their part lists.
pub fn enumerate_compositions(s: Shift, n: u64) -> Result<Vec<Composition>, CompositionError> {
    let spec = CompositionSpec::new(s)?;
    if n == 0 {
        return Err(CompositionError::ZeroTarget);
    }
    if n > ENUMERATION_LIMIT {
        return Err(CompositionError::TooLarge(n));
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    extend(&spec, n, &mut parts, &mut out);
    Ok(out)
}

fn extend(
    spec: &CompositionSpec,
    remaining: u64,
    parts: &mut Vec<u64>,
    out: &mut Vec<Composition>,
) {
    for x in spec.part_choices(parts.len()) {
        if x > remaining {
            continue;
        }
        parts.push(x);
        if x == remaining {
            out.push(Composition {
                parts: parts.clone(),
            });
        } else {
            extend(spec, remaining - x, parts, out);
        }
        parts.pop();
    }
}
