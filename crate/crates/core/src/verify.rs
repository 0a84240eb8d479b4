//! Runs every cross-module identity at a chosen depth and reports PASS/FAIL
//! per identity in a fixed order.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::codes::{
    self, ceil_lg, counts_to_code, enumerate_codes, greedy_counts, greedy_step, greedy_tree,
    greedy_tree_unbounded, level_counts, m_oracle, m_value, shrink, LevelCounts, LevelSequence,
};
use crate::compositions::{composition_counts, enumerate_compositions};
use crate::metafib::{a0_fast, a1_fast, as_descent, as_via_a0, ruler, SequenceTable, Shift};
use crate::series::{gf_a_from_d, gf_as, gf_ds_nested, gf_ds_sum, gf_ps, gf_ruler};
use crate::treemodel::leaf_counts;
use crate::words::{dword_prefix, morphism_fixed_point, ruler_factorization, word_d, word_e};

/// First twenty terms of `a_s`, `d_s`, `p_s` for `s = 0, 1, 2`.
pub const FIRST_A: [[u64; 20]; 3] = [
    [
        1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12,
    ],
    [1, 1, 2, 2, 2, 3, 4, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8, 9],
    [1, 1, 1, 2, 2, 2, 2, 3, 4, 4, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8],
];
pub const FIRST_D: [[u8; 20]; 3] = [
    [1, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1],
    [1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0],
];
pub const FIRST_P: [[u64; 20]; 3] = [
    [
        1, 2, 4, 5, 8, 9, 11, 12, 16, 17, 19, 20, 23, 24, 26, 27, 32, 33, 35, 36,
    ],
    [
        1, 3, 6, 7, 11, 12, 14, 15, 20, 21, 23, 24, 27, 28, 30, 31, 37, 38, 40, 41,
    ],
    [
        1, 4, 8, 9, 14, 15, 17, 18, 24, 25, 27, 28, 31, 32, 34, 35, 42, 43, 45, 46,
    ],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Quick,
    Full,
}

/// Ranges used by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranges {
    pub max_shift: u64,
    pub oracle_n: u64,
    pub evaluator_n: u64,
    pub halving_h: u32,
    pub gap_count: usize,
    pub series_shift: u64,
    pub series_order: usize,
    pub nested_order: usize,
    pub nested_depth: u32,
    pub word_bits: usize,
    pub morphism_bits: usize,
    pub word_index: u32,
    pub composition_n: u64,
    pub enumeration_n: u64,
    pub oracle_codes_n: usize,
    pub dominance_n: usize,
    pub amax_n: usize,
    pub stability_n: usize,
    pub round_trip_n: usize,
}

impl Ranges {
    pub fn for_depth(depth: Depth) -> Self {
        match depth {
            Depth::Full => Ranges {
                max_shift: 6,
                oracle_n: 20_000,
                evaluator_n: 100_000,
                halving_h: 14,
                gap_count: 20_000,
                series_shift: 4,
                series_order: 4096,
                nested_order: 2048,
                nested_depth: 12,
                word_bits: 1 << 14,
                morphism_bits: 1 << 16,
                word_index: 16,
                composition_n: 2000,
                enumeration_n: 30,
                oracle_codes_n: 14,
                dominance_n: 12,
                amax_n: 4096,
                stability_n: 200,
                round_trip_n: 1 << 10,
            },
            Depth::Quick => Ranges {
                max_shift: 4,
                oracle_n: 2000,
                evaluator_n: 5000,
                halving_h: 10,
                gap_count: 2000,
                series_shift: 3,
                series_order: 512,
                nested_order: 256,
                nested_depth: 9,
                word_bits: 1 << 11,
                morphism_bits: 1 << 12,
                word_index: 12,
                composition_n: 300,
                enumeration_n: 18,
                oracle_codes_n: 10,
                dominance_n: 9,
                amax_n: 512,
                stability_n: 50,
                round_trip_n: 1 << 8,
            },
        }
    }
}

/// Replaceable primitives, so a fault can be injected into a run.
#[derive(Debug, Clone, Copy)]
pub struct Hooks {
    pub ruler: fn(u64) -> u64,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { ruler }
    }
}

type CheckFn = fn(&Ranges, &Hooks) -> Result<(), String>;

pub struct Check {
    pub name: &'static str,
    run: CheckFn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub result: Result<(), String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.result {
            Ok(()) => format!("PASS  {} ({:.2?})", self.name, self.elapsed),
            Err(why) => format!("FAIL  {}: {}", self.name, why),
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "first twenty terms for s = 0, 1, 2",
            run: first_terms,
        },
        Check {
            name: "recurrence matches forest leaf count",
            run: recurrence_vs_forest,
        },
        Check {
            name: "fast evaluators match recurrence",
            run: fast_evaluators,
        },
        Check {
            name: "unshifted halving identity",
            run: halving_identity,
        },
        Check {
            name: "position gaps follow the ruler",
            run: position_gaps,
        },
        Check {
            name: "ruler generating function",
            run: ruler_series,
        },
        Check {
            name: "leaf-indicator, bottom-count and position series",
            run: sequence_series,
        },
        Check {
            name: "closed-form bottom-count series",
            run: closed_form_series,
        },
        Check {
            name: "nested leaf-indicator series",
            run: nested_series,
        },
        Check {
            name: "finite words D_n and E_n",
            run: finite_words,
        },
        Check {
            name: "block word matches leaf indicators",
            run: block_word,
        },
        Check {
            name: "morphism fixed point",
            run: morphism,
        },
        Check {
            name: "ruler factorization of the leaf word",
            run: factorization,
        },
        Check {
            name: "composition counts",
            run: composition_count,
        },
        Check {
            name: "composition enumeration",
            run: composition_listing,
        },
        Check {
            name: "greedy optimum vs exhaustive search",
            run: optimum_vs_search,
        },
        Check {
            name: "greedy suffix-sum dominance",
            run: dominance,
        },
        Check {
            name: "max bottom pairs a(n) = a_1(n-1)",
            run: max_pairs,
        },
        Check {
            name: "b(n) = a_0(n)",
            run: b_sequence,
        },
        Check {
            name: "height stability of M(n+k, k)",
            run: height_stability,
        },
        Check {
            name: "Kraft equality of constructed codes",
            run: kraft_everywhere,
        },
        Check {
            name: "shrink inverts the greedy step",
            run: shrink_round_trip,
        },
        Check {
            name: "level counts round trip",
            run: counts_round_trip,
        },
        Check {
            name: "partition ones equal 2 M(n, h)",
            run: partition_ones,
        },
    ]
}

pub fn run(depth: Depth) -> Vec<Outcome> {
    run_with(&Ranges::for_depth(depth), &Hooks::default())
}

pub fn run_with(ranges: &Ranges, hooks: &Hooks) -> Vec<Outcome> {
    checks()
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let result = std::panic::catch_unwind(|| (c.run)(ranges, hooks))
                .unwrap_or_else(|_| Err("panicked".to_string()));
            Outcome {
                name: c.name,
                result,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

fn first_terms(_: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 0..3 {
        let mut t = SequenceTable::new(Shift(s as u64));
        for i in 0..20 {
            let n = i as u64 + 1;
            ensure!(t.a(n) == FIRST_A[s][i], "a_{s}({n}) = {}", t.a(n));
            ensure!(t.d(n) == FIRST_D[s][i], "d_{s}({n}) = {}", t.d(n));
            ensure!(t.p(n) == FIRST_P[s][i], "p_{s}({n}) = {}", t.p(n));
        }
    }
    Ok(())
}

fn recurrence_vs_forest(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 0..=r.max_shift {
        let mut t = SequenceTable::new(Shift(s));
        t.extend_to(r.oracle_n as usize);
        for (i, &leaves) in leaf_counts(Shift(s), r.oracle_n).iter().enumerate() {
            let n = i + 1;
            ensure!(t.a_values()[n] == leaves, "s={s} n={n}");
        }
    }
    Ok(())
}

fn fast_evaluators(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 0..=r.max_shift {
        let mut t = SequenceTable::new(Shift(s));
        t.extend_to(r.evaluator_n as usize);
        let a = t.a_values();
        for n in 1..=r.evaluator_n {
            let expect = a[n as usize];
            ensure!(as_via_a0(Shift(s), n) == expect, "as_via_a0 s={s} n={n}");
            ensure!(as_descent(Shift(s), n) == expect, "as_descent s={s} n={n}");
            if s == 0 {
                ensure!(a0_fast(n) == expect, "a0_fast n={n}");
            }
            if s == 1 {
                ensure!(a1_fast(n) == expect, "a1_fast n={n}");
            }
        }
    }
    Ok(())
}

fn halving_identity(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let mut t = SequenceTable::new(Shift(0));
    for h in 1..=r.halving_h {
        let base = (1u64 << h) - 1;
        let half = 1u64 << (h - 1);
        ensure!(t.a(base) == half, "h={h} k=0");
        for k in 1..(1u64 << h) {
            ensure!(t.a(base + k) == half + t.a(k), "h={h} k={k}");
        }
    }
    Ok(())
}

fn position_gaps(r: &Ranges, hooks: &Hooks) -> Result<(), String> {
    for s in 0..=r.max_shift {
        let mut t = SequenceTable::new(Shift(s));
        for n in 1..r.gap_count as u64 {
            let gap = (hooks.ruler)(n) + if n.is_power_of_two() { s } else { 0 };
            ensure!(t.p(n + 1) - t.p(n) == gap, "s={s} n={n}");
            let pn = t.p(n);
            ensure!(t.a(pn) == n, "a(p({n})) s={s}");
            ensure!(n < 2 || t.a(pn - 1) == n - 1, "a(p({n})-1) s={s}");
        }
    }
    Ok(())
}

fn ruler_series(r: &Ranges, hooks: &Hooks) -> Result<(), String> {
    let g = gf_ruler(r.series_order);
    for n in 1..=r.series_order {
        ensure!(
            g.coeff(n) == (hooks.ruler)(n as u64) as i64,
            "coefficient {n} is {}",
            g.coeff(n)
        );
    }
    Ok(())
}

fn sequence_series(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let order = r.series_order;
    for s in 0..=r.series_shift {
        let mut t = SequenceTable::new(Shift(s));
        let d = gf_ds_sum(Shift(s), order);
        let a = gf_a_from_d(Shift(s), order);
        let p = gf_ps(Shift(s), order);
        ensure!(p.coeff(0) == 1, "constant term of position series");
        for n in 1..=order as u64 {
            let i = n as usize;
            ensure!(d.coeff(i) == i64::from(t.d(n)), "d s={s} n={n}");
            ensure!(a.coeff(i) == t.a(n) as i64, "a s={s} n={n}");
            ensure!(p.coeff(i) == t.p(n) as i64, "p s={s} n={n}");
        }
    }
    Ok(())
}

fn closed_form_series(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 1..=r.series_shift {
        let closed = gf_as(Shift(s), r.series_order).map_err(|e| e.to_string())?;
        ensure!(closed == gf_a_from_d(Shift(s), r.series_order), "s={s}");
    }
    Ok(())
}

fn nested_series(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 0..=r.series_shift {
        let nested =
            gf_ds_nested(Shift(s), r.nested_order, r.nested_depth).map_err(|e| e.to_string())?;
        ensure!(nested == gf_ds_sum(Shift(s), r.nested_order), "s={s}");
    }
    Ok(())
}

fn finite_words(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for n in 0..=r.word_index {
        let e = word_e(n).map_err(|e| e.to_string())?;
        let d = word_d(n).map_err(|e| e.to_string())?;
        ensure!(e.reversed() == d, "reverse(E_{n}) != D_{n}");
        // the word of length 2^h - 1 holds 2^{h-1} ones
        ensure!(e.count_ones() == 1 << n, "ones in E_{n}");
        if n < r.word_index {
            ensure!(e.is_prefix_of(&word_e(n + 1).unwrap()), "E_{n} prefix");
        }
    }
    Ok(())
}

fn block_word(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 0..=r.series_shift {
        let word = dword_prefix(Shift(s), r.word_bits).map_err(|e| e.to_string())?;
        let mut t = SequenceTable::new(Shift(s));
        for n in 1..=r.word_bits {
            let bit = word.get(n).unwrap();
            ensure!(bit == t.d(n as u64), "s={s} bit {n}");
            ensure!(
                (bit == 1) == crate::treemodel::is_leaf_oracle(Shift(s), n as u64),
                "forest s={s} bit {n}"
            );
        }
    }
    Ok(())
}

fn morphism(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let fixed = morphism_fixed_point(r.morphism_bits).map_err(|e| e.to_string())?;
    let blocks = dword_prefix(Shift(0), r.morphism_bits).map_err(|e| e.to_string())?;
    ensure!(fixed == blocks, "prefixes differ");
    Ok(())
}

fn factorization(r: &Ranges, hooks: &Hooks) -> Result<(), String> {
    for s in 0..=r.series_shift {
        let mut terms = 0usize;
        let mut len = 0usize;
        while len < r.word_bits {
            terms += 1;
            len += ((hooks.ruler)(terms as u64) + if terms.is_power_of_two() { s } else { 0 })
                as usize;
        }
        let word = ruler_factorization(Shift(s), terms);
        let blocks = dword_prefix(Shift(s), word.len()).map_err(|e| e.to_string())?;
        ensure!(word == blocks, "s={s}");
    }
    Ok(())
}

fn composition_count(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for s in 1..=4u64 {
        let counts = composition_counts(Shift(s), r.composition_n).map_err(|e| e.to_string())?;
        let mut t = SequenceTable::new(Shift(s));
        for n in 1..=r.composition_n {
            ensure!(counts[n as usize] == t.a(n), "s={s} n={n}");
        }
        let order = (r.composition_n as usize).min(512);
        let closed = gf_as(Shift(s), order).map_err(|e| e.to_string())?;
        for (n, &c) in counts.iter().enumerate().take(order + 1).skip(1) {
            ensure!(c as i64 == closed.coeff(n), "series s={s} n={n}");
        }
    }
    Ok(())
}

fn composition_listing(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let eight = enumerate_compositions(Shift(2), 8).map_err(|e| e.to_string())?;
    let parts: Vec<Vec<u64>> = eight.into_iter().map(|c| c.parts).collect();
    ensure!(
        parts == [vec![1, 2, 5], vec![1, 3, 2, 2], vec![2, 2, 2, 2]],
        "s=2 n=8 gave {parts:?}"
    );
    for s in 1..=3u64 {
        let counts = composition_counts(Shift(s), r.enumeration_n).map_err(|e| e.to_string())?;
        for n in 1..=r.enumeration_n {
            let listed = enumerate_compositions(Shift(s), n).map_err(|e| e.to_string())?;
            ensure!(listed.len() as u64 == counts[n as usize], "s={s} n={n}");
        }
    }
    Ok(())
}

fn heights(n: usize) -> std::ops::RangeInclusive<u32> {
    ceil_lg(n).max(1)..=(n as u32 - 1)
}

fn optimum_vs_search(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for n in 2..=r.oracle_codes_n {
        for h in 1..n as u32 {
            let oracle = m_oracle(n, h).map_err(|e| e.to_string())?;
            ensure!(m_value(n, h) == oracle, "M({n},{h})");
        }
        for h in heights(n) {
            let greedy = greedy_tree(n, h).map_err(|e| e.to_string())?;
            let all = enumerate_codes(n, Some(h)).map_err(|e| e.to_string())?;
            ensure!(all.contains(&greedy), "greedy ({n},{h}) not enumerated");
        }
    }
    Ok(())
}

fn dominance(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for n in 2..=r.dominance_n {
        for h in heights(n) {
            let greedy = greedy_counts(n, h)
                .map_err(|e| e.to_string())?
                .suffix_sums();
            for code in enumerate_codes(n, Some(h)).map_err(|e| e.to_string())? {
                let other = level_counts(&code).suffix_sums();
                ensure!(
                    greedy.iter().zip(&other).all(|(g, t)| g >= t),
                    "n={n} h={h} code {code}"
                );
            }
        }
    }
    Ok(())
}

fn max_pairs(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let mut t = SequenceTable::new(Shift(1));
    for n in 2..=r.amax_n {
        ensure!(codes::a_max(n) == t.a(n as u64 - 1), "n={n}");
    }
    Ok(())
}

fn b_sequence(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let mut t = SequenceTable::new(Shift(0));
    for n in 1..=r.amax_n {
        ensure!(codes::b_seq(n) == t.a(n as u64), "n={n}");
    }
    Ok(())
}

fn height_stability(r: &Ranges, _: &Hooks) -> Result<(), String> {
    for n in 1..=r.stability_n {
        let h = codes::b_height(n);
        let base = m_value(n + h as usize, h);
        for k in h..=h + 4 {
            ensure!(m_value(n + k as usize, k) == base, "n={n} k={k}");
        }
    }
    Ok(())
}

fn kraft_everywhere(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let check = |c: &LevelSequence| -> Result<(), String> {
        ensure!(c.kraft_exact(), "code {c}");
        Ok(())
    };
    for h in 1..=7u32 {
        for n in h as usize + 1..=1usize << h {
            check(&greedy_tree(n, h).map_err(|e| e.to_string())?)?;
        }
    }
    for n in 2..=r.round_trip_n {
        let c = greedy_tree_unbounded(n).map_err(|e| e.to_string())?;
        check(&c)?;
        if n >= 3 {
            check(&shrink(&c).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn shrink_round_trip(r: &Ranges, _: &Hooks) -> Result<(), String> {
    let mut prev = greedy_tree_unbounded(2).map_err(|e| e.to_string())?;
    for n in 3..=r.round_trip_n {
        let cur = if (n - 1).is_power_of_two() {
            let mut levels: Vec<u32> = prev.levels().iter().map(|l| l + 1).collect();
            levels.push(1);
            LevelSequence::new(levels).map_err(|e| e.to_string())?
        } else {
            greedy_step(&prev, prev.height()).map_err(|e| e.to_string())?
        };
        ensure!(
            cur == greedy_tree(n, ceil_lg(n)).unwrap(),
            "T({n}) is not the greedy tree"
        );
        let shrunk = shrink(&cur).map_err(|e| e.to_string())?;
        ensure!(
            greedy_step(&shrunk, cur.height()).as_ref() == Ok(&cur),
            "n={n}"
        );
        if !(n - 1).is_power_of_two() {
            ensure!(shrunk == prev, "shrink(T({n})) != T({})", n - 1);
        }
        prev = cur;
    }
    Ok(())
}

fn counts_round_trip(_: &Ranges, _: &Hooks) -> Result<(), String> {
    fn rec(tau: &mut Vec<u64>, sum: u64, out: &mut Vec<Vec<u64>>) {
        out.push(tau.clone());
        if tau.len() == 8 {
            return;
        }
        let last = *tau.last().unwrap();
        for next in 1..=2 * last {
            // n = sum + 1 <= 14
            if sum + next > 13 {
                break;
            }
            tau.push(next);
            rec(tau, sum + next, out);
            tau.pop();
        }
    }
    let mut all = Vec::new();
    rec(&mut vec![1], 1, &mut all);
    for tau in all {
        let counts = LevelCounts::new(tau.clone()).map_err(|e| e.to_string())?;
        let code = counts_to_code(&counts);
        let validated = LevelSequence::new(code.levels().to_vec()).map_err(|e| e.to_string())?;
        ensure!(level_counts(&validated) == counts, "{tau:?}");
    }
    Ok(())
}

fn partition_ones(_: &Ranges, _: &Hooks) -> Result<(), String> {
    for h in 1..=codes::PARTITION_HEIGHT_LIMIT {
        for n in 2..=(1usize << h) {
            let brute = codes::max_ones_partition_brute(n, h).map_err(|e| e.to_string())?;
            ensure!(brute == codes::max_ones_partition(n, h), "n={n} h={h}");
            ensure!(brute == 2 * m_value(n, h), "n={n} h={h} vs M");
        }
    }
    Ok(())
}
