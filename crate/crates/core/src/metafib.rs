//! The shifted meta-Fibonacci family `a_s`, its increment sequence `d_s`,
//! the position sequence `p_s`, and several independent evaluators.
//!
//! The reference route is the self-referential recurrence
//!
//! ```text
//! a_s(n) = 1                                              0 <= n <= s+1
//! a_s(n) = 2                                              n  = s+2
//! a_s(n) = a_s(n - s - a_s(n-1)) + a_s(n - s - 1 - a_s(n-2))   n > s+2
//! ```
//!
//! memoized in a [`SequenceTable`]. The fast routes ([`a0_fast`],
//! [`as_via_a0`], [`a1_fast`], [`as_descent`]) never touch the recurrence and
//! exist so the two can be checked against each other.

use std::collections::HashMap;

/// Delay parameter `s` of the family. Each super-node on the connecting path
/// of the underlying tree counts as `s` ordinary labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Shift(pub u64);

impl Shift {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for Shift {
    fn from(s: u64) -> Self {
        Shift(s)
    }
}

/// Append-only memo of `a_s`, `d_s` and `p_s` for one shift.
///
/// `a` is indexed from 0 (with `a_s(0) = 1`), `d` and `p` from 1. Slot 0 of
/// `d` and `p` is a placeholder so indices line up with the math.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    shift: Shift,
    a: Vec<u64>,
    d: Vec<u8>,
    p: Vec<u64>,
}

impl SequenceTable {
    pub fn new(shift: Shift) -> Self {
        let mut table = SequenceTable {
            shift,
            a: Vec::new(),
            d: vec![0],
            p: vec![0],
        };
        table.extend_to(shift.0 as usize + 2);
        table
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    /// Number of populated `a` entries (indices `0..len`).
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Populated prefix `a_s(0..len)`.
    pub fn a_values(&self) -> &[u64] {
        &self.a
    }

    /// Grows the table so that `a_s(n)` is available.
    pub fn extend_to(&mut self, n: usize) {
        let s = self.shift.0 as usize;
        self.a.reserve((n + 1).saturating_sub(self.a.len()));
        while self.a.len() <= n {
            let m = self.a.len();
            let value = if m <= s + 1 {
                1
            } else if m == s + 2 {
                2
            } else {
                let left = self.recurrence_arg(m, s + self.a[m - 1] as usize);
                let right = self.recurrence_arg(m, s + 1 + self.a[m - 2] as usize);
                self.a[left] + self.a[right]
            };
            self.push(value);
        }
    }

    fn recurrence_arg(&self, m: usize, back: usize) -> usize {
        match m.checked_sub(back) {
            Some(idx) if idx < m => idx,
            _ => panic!(
                "recurrence for a_{}({m}) reached back {back} positions, outside [0, {}]",
                self.shift.0,
                m - 1
            ),
        }
    }

    fn push(&mut self, value: u64) {
        let m = self.a.len();
        if m >= 1 {
            let bit = if m == 1 { 1 } else { value - self.a[m - 1] };
            assert!(
                bit <= 1,
                "a_{} increments by {bit} at n = {m}",
                self.shift.0
            );
            self.d.push(bit as u8);
            if bit == 1 {
                self.p.push(m as u64);
            }
        }
        self.a.push(value);
    }

    pub fn a(&mut self, n: u64) -> u64 {
        self.extend_to(n as usize);
        self.a[n as usize]
    }

    /// Leaf indicator of label `n`; `n >= 1`.
    pub fn d(&mut self, n: u64) -> u8 {
        assert!(n >= 1, "d_s is defined for n >= 1");
        self.extend_to(n as usize);
        self.d[n as usize]
    }

    /// Smallest `j >= 1` with `a_s(j) = n`; `n >= 1`.
    pub fn p(&mut self, n: u64) -> u64 {
        assert!(n >= 1, "p_s is defined for n >= 1");
        while (self.p.len() as u64) <= n {
            let target = (self.a.len() * 2).max(16);
            self.extend_to(target);
        }
        self.p[n as usize]
    }
}

/// `a_s(n)` by the memoized recurrence.
pub fn a(s: Shift, n: u64) -> u64 {
    SequenceTable::new(s).a(n)
}

/// `d_s(n)`, `n >= 1`.
pub fn d(s: Shift, n: u64) -> u8 {
    SequenceTable::new(s).d(n)
}

/// `p_s(n)`, `n >= 1`, read off the positions of ones in `d_s`.
pub fn p(s: Shift, n: u64) -> u64 {
    SequenceTable::new(s).p(n)
}

/// `p_s(1..=count)` from the gap formula
/// `p_s(n+1) - p_s(n) = ruler(n) + s·[n is a power of 2]`.
pub fn p_by_gaps(s: Shift, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut cur = 1u64;
    for n in 1..=count as u64 {
        out.push(cur);
        cur += ruler(n) + if n.is_power_of_two() { s.0 } else { 0 };
    }
    out
}

/// One plus the exponent of the largest power of two dividing `n`.
pub fn ruler(n: u64) -> u64 {
    assert!(n >= 1, "ruler is defined for n >= 1");
    u64::from(n.trailing_zeros()) + 1
}

/// `a_0(n)` in `O(log n)` by peeling `n = 2^h - 1 + k`.
///
/// The peel uses the prefix-sum convention where the empty prefix has no
/// leaves; only the public `n = 0` case returns the recurrence's base value 1.
pub fn a0_fast(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    a0_prefix(n)
}

fn a0_prefix(mut n: u64) -> u64 {
    let mut acc = 0;
    while n > 0 {
        let h = floor_log2(n + 1);
        acc += 1 << (h - 1);
        n -= (1 << h) - 1;
    }
    acc
}

/// `a_1(n) = a_0(n - floor(lg n))`.
pub fn a1_fast(n: u64) -> u64 {
    assert!(n >= 1, "a1_fast is defined for n >= 1");
    a0_fast(n - u64::from(floor_log2(n)))
}

pub(crate) fn floor_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    63 - n.leading_zeros()
}

/// Where a label `n >= 2` falls among the blocks of the shifted forest.
///
/// Subtree `h` (size `2^h - 1`) owns labels `2^h + (s-1)h + 1 ..= 2^{h+1} + (s-1)h - 1`
/// and the super-node just before it owns `2^h + (s-1)h - s + 1 ..= 2^h + (s-1)h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Block {
    /// First label of subtree `h` minus one, i.e. `2^h + (s-1)h`.
    Subtree {
        h: u32,
        base: u64,
    },
    SuperNode {
        h: u32,
    },
}

pub(crate) fn block_of(s: Shift, n: u64) -> Block {
    debug_assert!(n >= 2);
    let s = s.0 as i128;
    let n = n as i128;
    let mut h: u32 = 1;
    loop {
        let base = (1i128 << h) + (s - 1) * h as i128;
        if n <= base {
            debug_assert!(n > base - s);
            return Block::SuperNode { h };
        }
        if n < base + (1i128 << h) {
            return Block::Subtree {
                h,
                base: base as u64,
            };
        }
        h += 1;
    }
}

/// `a_s(n)` by reducing to `a_0`: inside subtree `h` the labels are those of
/// the unshifted forest moved by `s·h`; on the super-node before subtree `h`
/// the count is `2^{h-1}`.
pub fn as_via_a0(s: Shift, n: u64) -> u64 {
    assert!(n >= 1, "as_via_a0 is defined for n >= 1");
    if n == 1 {
        return 1;
    }
    match block_of(s, n) {
        Block::Subtree { h, .. } => a0_fast(n - s.0 * u64::from(h)),
        Block::SuperNode { h } => 1 << (h - 1),
    }
}

/// `a_s(n)` by descending into the left or right half of the enclosing
/// subtree, which maps onto an earlier copy of the same shape.
pub fn as_descent(s: Shift, n: u64) -> u64 {
    assert!(n >= 1, "as_descent is defined for n >= 1");
    let mut n = n;
    let mut acc = 0;
    loop {
        if n == 1 {
            return acc + 1;
        }
        match block_of(s, n) {
            Block::SuperNode { h } => return acc + (1 << (h - 1)),
            Block::Subtree { h, base } => {
                let root = base + 1;
                if h == 1 {
                    // the size-1 subtree is a leaf on the bottom level
                    return acc + 2;
                }
                if n == root {
                    return acc + (1 << (h - 1));
                }
                let half = 1u64 << (h - 1);
                if n < root + half {
                    // left subtree
                    acc += 1 << (h - 2);
                    n -= half + s.0;
                } else {
                    acc += half;
                    n = n + 1 - (1 << h) - s.0;
                }
            }
        }
    }
}

/// Offsets and seeds for the general recurrence
/// `a(n) = a(n - alpha - a(n-1)) + a(n - beta - a(n-2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericMetaFibSpec {
    pub alpha: i64,
    pub beta: i64,
    /// Values for indices `0..initial_values.len()`.
    pub initial_values: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GenericSpecError {
    #[error("initial values must be nonempty")]
    NoInitialValues,
    #[error("initial value at index {0} is zero")]
    ZeroInitialValue(usize),
}

/// Outcome of evaluating the general recurrence at one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Value(u64),
    /// Some recurrence argument left the already-defined range at or before
    /// this index.
    Dead,
}

/// Memoized evaluator for a [`GenericMetaFibSpec`].
#[derive(Debug, Clone)]
pub struct GenericMetaFib {
    spec: GenericMetaFibSpec,
    values: Vec<u64>,
    dead_at: Option<u64>,
}

impl GenericMetaFib {
    pub fn new(spec: GenericMetaFibSpec) -> Result<Self, GenericSpecError> {
        if spec.initial_values.is_empty() {
            return Err(GenericSpecError::NoInitialValues);
        }
        if let Some(i) = spec.initial_values.iter().position(|&v| v == 0) {
            return Err(GenericSpecError::ZeroInitialValue(i));
        }
        let values = spec.initial_values.clone();
        Ok(GenericMetaFib {
            spec,
            values,
            dead_at: None,
        })
    }

    /// First index at which the sequence died, if it has.
    pub fn dead_at(&self) -> Option<u64> {
        self.dead_at
    }

    pub fn term(&mut self, n: u64) -> Term {
        while self.dead_at.is_none() && (self.values.len() as u64) <= n {
            let m = self.values.len() as i64;
            let next = self.arg(m, self.spec.alpha, 1).and_then(|x| {
                self.arg(m, self.spec.beta, 2)
                    .map(|y| self.values[x] + self.values[y])
            });
            match next {
                Some(v) => self.values.push(v),
                None => self.dead_at = Some(m as u64),
            }
        }
        match self.dead_at {
            Some(k) if n >= k => Term::Dead,
            _ => Term::Value(self.values[n as usize]),
        }
    }

    fn arg(&self, m: i64, offset: i64, back: i64) -> Option<usize> {
        let prev = m - back;
        if prev < 0 {
            return None;
        }
        let idx = m - offset - self.values[prev as usize] as i64;
        (0..m).contains(&idx).then_some(idx as usize)
    }
}

/// One-shot evaluation of the general recurrence at `n`.
pub fn generic_metafib(spec: &GenericMetaFibSpec, n: u64) -> Result<Term, GenericSpecError> {
    Ok(GenericMetaFib::new(spec.clone())?.term(n))
}

/// Spec reproducing `a_s` through the general evaluator.
pub fn shifted_family_spec(s: Shift) -> GenericMetaFibSpec {
    let mut initial_values = vec![1; s.0 as usize + 2];
    initial_values.push(2);
    GenericMetaFibSpec {
        alpha: s.0 as i64,
        beta: s.0 as i64 + 1,
        initial_values,
    }
}

/// Thread-safe cache of tables keyed by shift; each call works on its own copy
/// of the grown table so callers never observe shared mutation.
#[derive(Debug, Default)]
pub struct TableCache {
    tables: std::sync::Mutex<HashMap<Shift, SequenceTable>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table for `s` with `a_s(0..=n)` populated.
    pub fn table(&self, s: Shift, n: usize) -> SequenceTable {
        let mut guard = self.tables.lock().expect("table cache poisoned");
        let table = guard.entry(s).or_insert_with(|| SequenceTable::new(s));
        table.extend_to(n);
        table.clone()
    }
}
