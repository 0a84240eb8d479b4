//! Binary compact codes: level sequences of extended binary trees, their
//! per-level internal-node counts, greedy optimal trees, and the extremal
//! quantity `M(n, h)`, the largest number of leaf pairs at level `h` over all
//! codes with `n` leaves and height `h`.
//!
//! All Kraft accounting is done in integers.

use std::fmt;

/// Largest `n` accepted by [`enumerate_codes`].
pub const ENUMERATION_LIMIT: usize = 16;
/// Largest `n` accepted by [`m_oracle`].
pub const ORACLE_LIMIT: usize = 14;
/// Largest `h` accepted by [`max_ones_partition_brute`] (`2^h <= 64`).
pub const PARTITION_HEIGHT_LIMIT: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("a code needs at least two leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("levels must be positive")]
    ZeroLevel,
    #[error("levels must be non-increasing")]
    NotSorted,
    #[error("level sequence violates Kraft equality")]
    Kraft,
    #[error("level counts must start with 1")]
    BadRoot,
    #[error("level counts must be nonempty")]
    NoLevels,
    #[error("tau[{0}] exceeds twice the previous count")]
    Overfull(usize),
    #[error("the deepest internal level must be nonempty")]
    EmptyBottom,
    #[error("n = {n} is outside [{lo}, {hi}] for height {h}")]
    OutOfRange {
        n: usize,
        h: u32,
        lo: usize,
        hi: u128,
    },
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("height must be positive")]
    ZeroHeight,
    #[error("the tree is complete; no greedy step applies")]
    Complete,
    #[error("no equal pair to shrink")]
    NothingToShrink,
}

/// `⌈lg n⌉` for `n >= 1`.
pub fn ceil_lg(n: usize) -> u32 {
    assert!(n >= 1);
    usize::BITS - (n - 1).leading_zeros()
}

/// `2^h` saturating, as u128.
fn pow2(h: u32) -> u128 {
    1u128.checked_shl(h).unwrap_or(u128::MAX)
}

/// Non-increasing leaf levels `ℓ_1 >= ℓ_2 >= ⋯ >= ℓ_n` with `Σ 2^{-ℓ_i} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelSequence {
    levels: Vec<u32>,
}

impl LevelSequence {
    pub fn new(levels: Vec<u32>) -> Result<Self, CodeError> {
        if levels.len() < 2 {
            return Err(CodeError::TooFewLeaves(levels.len()));
        }
        if levels.contains(&0) {
            return Err(CodeError::ZeroLevel);
        }
        if levels.windows(2).any(|w| w[0] < w[1]) {
            return Err(CodeError::NotSorted);
        }
        let code = LevelSequence { levels };
        code.internal_counts().ok_or(CodeError::Kraft)?;
        Ok(code)
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn leaves(&self) -> usize {
        self.levels.len()
    }

    pub fn height(&self) -> u32 {
        self.levels[0]
    }

    /// Top-down internal counts; `None` if the levels do not fill a tree
    /// exactly.
    fn internal_counts(&self) -> Option<Vec<u64>> {
        let h = self.height();
        // a code with n leaves has height at most n - 1
        if h as usize >= self.levels.len() {
            return None;
        }
        let mut leaves_at = vec![0u64; h as usize + 1];
        for &l in &self.levels {
            leaves_at[l as usize] += 1;
        }
        let n = self.levels.len() as u64;
        let mut tau = Vec::with_capacity(h as usize);
        let mut internal = 1u64;
        for &leaves in &leaves_at[1..] {
            tau.push(internal);
            let slots = 2 * internal;
            if leaves > slots || slots > 2 * n {
                return None;
            }
            internal = slots - leaves;
        }
        (internal == 0).then_some(tau)
    }

    /// Kraft sum check `Σ 2^{h-ℓ_i} = 2^h`, for heights that fit in u128.
    pub fn kraft_exact(&self) -> bool {
        let h = self.height();
        if h >= 127 {
            return self.internal_counts().is_some();
        }
        self.levels.iter().map(|&l| 1u128 << (h - l)).sum::<u128>() == 1u128 << h
    }
}

impl fmt::Display for LevelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Internal-node counts `τ_0..τ_{h-1}` per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelCounts {
    tau: Vec<u64>,
}

impl LevelCounts {
    pub fn new(tau: Vec<u64>) -> Result<Self, CodeError> {
        match tau.first() {
            None => return Err(CodeError::NoLevels),
            Some(&t) if t != 1 => return Err(CodeError::BadRoot),
            _ => {}
        }
        if let Some(i) = (1..tau.len()).find(|&i| tau[i] > 2 * tau[i - 1]) {
            return Err(CodeError::Overfull(i));
        }
        if tau[tau.len() - 1] == 0 {
            return Err(CodeError::EmptyBottom);
        }
        Ok(LevelCounts { tau })
    }

    pub fn tau(&self) -> &[u64] {
        &self.tau
    }

    pub fn height(&self) -> u32 {
        self.tau.len() as u32
    }

    /// `n = τ_0 + ⋯ + τ_{h-1} + 1`.
    pub fn leaves(&self) -> u64 {
        self.tau.iter().sum::<u64>() + 1
    }

    /// `τ_{h-1}`, the number of leaf pairs on the deepest level.
    pub fn bottom_pairs(&self) -> u64 {
        self.tau[self.tau.len() - 1]
    }

    /// Suffix sums `τ_j + ⋯ + τ_{h-1}` for `j = 0..h`.
    pub fn suffix_sums(&self) -> Vec<u64> {
        let mut acc = 0;
        let mut out: Vec<u64> = self
            .tau
            .iter()
            .rev()
            .map(|&t| {
                acc += t;
                acc
            })
            .collect();
        out.reverse();
        out
    }

    /// Counts of the only height-`h` code with `h + 1` leaves.
    fn path(h: u32) -> Self {
        LevelCounts {
            tau: vec![1; h as usize],
        }
    }
}

impl fmt::Display for LevelCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.tau.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

pub fn level_counts(code: &LevelSequence) -> LevelCounts {
    let tau = code
        .internal_counts()
        .expect("LevelSequence is validated on construction");
    LevelCounts { tau }
}

/// Inverse of [`level_counts`]: level `i` holds `2τ_{i-1} - τ_i` leaves.
pub fn counts_to_code(counts: &LevelCounts) -> LevelSequence {
    let tau = &counts.tau;
    let h = tau.len();
    let mut levels = Vec::new();
    for i in (1..=h).rev() {
        let below = if i < h { tau[i] } else { 0 };
        let leaves = 2 * tau[i - 1] - below;
        levels.extend(std::iter::repeat_n(i as u32, leaves as usize));
    }
    LevelSequence { levels }
}

/// Every code with `n` leaves (and height exactly `h` if given), ordered by
/// height, then by level sequence descending.
pub fn enumerate_codes(n: usize, h: Option<u32>) -> Result<Vec<LevelSequence>, CodeError> {
    if n < 2 {
        return Err(CodeError::TooFewLeaves(n));
    }
    if n > ENUMERATION_LIMIT {
        return Err(CodeError::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let heights: Vec<u32> = match h {
        Some(0) => return Err(CodeError::ZeroHeight),
        Some(h) => vec![h],
        None => (1..n as u32).collect(),
    };
    let mut out = Vec::new();
    for top in heights {
        if top as usize >= n {
            continue;
        }
        let full = 1u64 << top;
        let mut levels = vec![top];
        search(n, top, full, full >> top, &mut levels, &mut out);
    }
    Ok(out)
}

/// Depth-first search over non-increasing continuations, tracking the Kraft
/// sum in units of `2^{-top}`.
fn search(
    n: usize,
    top: u32,
    full: u64,
    used: u64,
    levels: &mut Vec<u32>,
    out: &mut Vec<LevelSequence>,
) {
    if levels.len() == n {
        if used == full {
            out.push(LevelSequence {
                levels: levels.clone(),
            });
        }
        return;
    }
    let remaining = (n - levels.len()) as u64;
    let last = *levels.last().unwrap();
    for l in (1..=last).rev() {
        let weight = 1u64 << (top - l);
        // every later leaf weighs at least `weight`, at most the current one
        if used + remaining * weight > full {
            break;
        }
        if used + weight + (remaining - 1) * (full >> 1) < full {
            continue;
        }
        levels.push(l);
        search(n, top, full, used + weight, levels, out);
        levels.pop();
    }
}

fn check_greedy_range(n: usize, h: u32) -> Result<(), CodeError> {
    if h == 0 {
        return Err(CodeError::ZeroHeight);
    }
    let hi = pow2(h);
    if n < h as usize + 1 || n as u128 > hi {
        return Err(CodeError::OutOfRange {
            n,
            h,
            lo: h as usize + 1,
            hi,
        });
    }
    Ok(())
}

/// Replaces the leftmost level below `h` by two copies of that level plus one.
pub fn greedy_step(code: &LevelSequence, h: u32) -> Result<LevelSequence, CodeError> {
    let i = code
        .levels
        .iter()
        .position(|&l| l < h)
        .ok_or(CodeError::Complete)?;
    let mut levels = code.levels.clone();
    let l = levels[i];
    levels[i] = l + 1;
    levels.insert(i + 1, l + 1);
    levels.sort_unstable_by(|a, b| b.cmp(a));
    Ok(LevelSequence { levels })
}

/// Greedy tree with `n` leaves and height `h`, for `h + 1 <= n <= 2^h`.
pub fn greedy_tree(n: usize, h: u32) -> Result<LevelSequence, CodeError> {
    check_greedy_range(n, h)?;
    let mut levels = vec![h];
    levels.extend((1..=h).rev());
    let mut code = LevelSequence { levels };
    while code.leaves() < n {
        code = greedy_step(&code, h)?;
    }
    Ok(code)
}

/// Increments `τ_k` at the deepest level `k >= 1` with `τ_k < 2τ_{k-1}`.
pub fn greedy_step_counts(counts: &LevelCounts) -> Result<LevelCounts, CodeError> {
    let tau = &counts.tau;
    let k = (1..tau.len())
        .rev()
        .find(|&k| tau[k] < 2 * tau[k - 1])
        .ok_or(CodeError::Complete)?;
    let mut next = tau.clone();
    next[k] += 1;
    Ok(LevelCounts { tau: next })
}

/// Level counts of the greedy tree, built without materializing levels.
pub fn greedy_counts(n: usize, h: u32) -> Result<LevelCounts, CodeError> {
    check_greedy_range(n, h)?;
    let mut counts = LevelCounts::path(h);
    for _ in h as usize + 1..n {
        let tau = &mut counts.tau;
        let k = (1..tau.len())
            .rev()
            .find(|&k| tau[k] < 2 * tau[k - 1])
            .ok_or(CodeError::Complete)?;
        tau[k] += 1;
    }
    Ok(counts)
}

/// Greedy tree of minimal height `⌈lg n⌉`, grown one leaf at a time: a
/// complete tree of `2^h` leaves is pushed down under a new root next to a
/// single leaf; otherwise the leftmost leaf above the bottom is expanded.
pub fn greedy_tree_unbounded(n: usize) -> Result<LevelSequence, CodeError> {
    if n < 2 {
        return Err(CodeError::TooFewLeaves(n));
    }
    let mut code = LevelSequence { levels: vec![1, 1] };
    for m in 2..n {
        code = if m.is_power_of_two() {
            let mut levels: Vec<u32> = code.levels.iter().map(|l| l + 1).collect();
            levels.push(1);
            LevelSequence { levels }
        } else {
            let h = code.height();
            greedy_step(&code, h)?
        };
    }
    Ok(code)
}

/// Replaces the rightmost equal pair `ℓ_j = ℓ_{j+1}` by the single level
/// `ℓ_j - 1`.
pub fn shrink(code: &LevelSequence) -> Result<LevelSequence, CodeError> {
    if code.leaves() < 3 {
        return Err(CodeError::NothingToShrink);
    }
    let j = (0..code.levels.len() - 1)
        .rev()
        .find(|&j| code.levels[j] == code.levels[j + 1])
        .ok_or(CodeError::NothingToShrink)?;
    let mut levels = code.levels.clone();
    levels[j] -= 1;
    levels.remove(j + 1);
    levels.sort_unstable_by(|a, b| b.cmp(a));
    LevelSequence::new(levels)
}

/// `M(n, h)`: the maximum of `τ_{h-1}` over codes with `n` leaves and height
/// `h`, or 0 when no such code exists.
pub fn m_value(n: usize, h: u32) -> u64 {
    assert!(n >= 2 && h >= 1, "M(n, h) needs n >= 2 and h >= 1");
    if h < ceil_lg(n) || n < h as usize + 1 {
        return 0;
    }
    greedy_counts(n, h)
        .expect("range checked above")
        .bottom_pairs()
}

/// `M(n, h)` by exhaustive enumeration, for `n <= 14`.
pub fn m_oracle(n: usize, h: u32) -> Result<u64, CodeError> {
    if n > ORACLE_LIMIT {
        return Err(CodeError::TooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(enumerate_codes(n, Some(h))?
        .iter()
        .map(|c| level_counts(c).bottom_pairs())
        .max()
        .unwrap_or(0))
}

/// Most leaf pairs on the deepest level over all codes with `n` leaves.
pub fn a_max(n: usize) -> u64 {
    assert!(n >= 2);
    m_value(n, ceil_lg(n))
}

/// Smallest height `h` with `n + h <= 2^h`.
pub fn b_height(n: usize) -> u32 {
    assert!(n >= 1);
    (1..)
        .find(|&h| (n + h as usize) as u128 <= pow2(h))
        .unwrap()
}

/// `M(n + h, h)` at the smallest admissible height.
pub fn b_seq(n: usize) -> u64 {
    let h = b_height(n);
    m_value(n + h as usize, h)
}

/// Largest number of parts equal to 1 in a partition of `2^h` into `n`
/// powers of two, which is the leaf count on level `h`, i.e. `2·M(n, h)`.
pub fn max_ones_partition(n: usize, h: u32) -> u64 {
    2 * m_value(n, h)
}

/// Same quantity by listing every partition of `2^h` into `n` powers of two.
pub fn max_ones_partition_brute(n: usize, h: u32) -> Result<u64, CodeError> {
    if h == 0 {
        return Err(CodeError::ZeroHeight);
    }
    if h > PARTITION_HEIGHT_LIMIT {
        return Err(CodeError::TooLarge {
            n: 1 << h,
            limit: 1 << PARTITION_HEIGHT_LIMIT,
        });
    }
    let mut best = None;
    let mut parts = Vec::new();
    binary_partitions(1 << h, n, 1 << h, &mut parts, &mut |p: &[u64]| {
        let ones = p.iter().filter(|&&x| x == 1).count() as u64;
        best = Some(best.map_or(ones, |b: u64| b.max(ones)));
    });
    Ok(best.unwrap_or(0))
}

fn binary_partitions(
    remaining: u64,
    count: usize,
    largest: u64,
    parts: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]),
) {
    if count == 0 {
        if remaining == 0 {
            visit(parts);
        }
        return;
    }
    if remaining < count as u64 {
        return;
    }
    let mut part = largest.min(remaining);
    while !part.is_power_of_two() {
        part -= 1;
    }
    loop {
        if part * (count as u64) >= remaining {
            parts.push(part);
            binary_partitions(remaining - part, count - 1, part, parts, visit);
            parts.pop();
        }
        if part == 1 {
            break;
        }
        part /= 2;
    }
}
