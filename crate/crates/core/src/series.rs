//! Truncated power series with exact integer coefficients, and the
//! generating functions of the ruler, `D_n`, `d_s`, `a_s` and `p_s`
//! sequences.
//!
//! A series of order `N` stores `c_0..=c_N` and represents its value modulo
//! `z^{N+1}`. Binary operations truncate to the smaller order.

use std::ops::{Add, Mul, Neg, Sub};

use crate::metafib::Shift;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("nesting depth {depth} is not exact at order {order}; need 2^depth > order")]
    DepthTooSmall { depth: u32, order: usize },
    #[error("the closed form for A_s requires s >= 1")]
    ShiftZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<i64>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![0; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 1, order)
    }

    /// `c·z^k`, which is zero when `k > order`.
    pub fn monomial(k: usize, c: i64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Takes `coeffs` as `c_0..=c_N`; an empty list is the zero series of order 0.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Multiplies by `z^k`; the top `k` coefficients fall off.
    pub fn shift_by_power(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![0; n];
        if k < n {
            coeffs[k..].copy_from_slice(&self.coeffs[..n - k]);
        }
        TruncatedSeries { coeffs }
    }

    /// Division by `1 - z`: running prefix sums.
    pub fn prefix_sums(&self) -> Self {
        let mut acc = 0;
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| {
                    acc += c;
                    acc
                })
                .collect(),
        }
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Cauchy product truncated to the smaller order. Iterates the sparser
    /// operand, so products with binomials are linear.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (sparse, dense) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0i64; order + 1];
        for (i, c) in sparse.nonzero_terms() {
            if i > order {
                break;
            }
            for (j, &d) in dense.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += c * d;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplies by `1 + z^k` in place-free linear time.
    fn mul_one_plus_power(&self, k: usize) -> Self {
        let mut out = self.clone();
        for i in (k..out.coeffs.len()).rev() {
            out.coeffs[i] += self.coeffs[i - k];
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i] + rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i] - rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(-1)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.mul_series(rhs)
    }
}

/// `1/(1 - z^m)` up to `z^order`.
pub fn geom_inverse(m: usize, order: usize) -> TruncatedSeries {
    assert!(m >= 1, "geom_inverse needs m >= 1");
    let mut s = TruncatedSeries::zero(order);
    for k in (0..=order).step_by(m) {
        s.coeffs[k] = 1;
    }
    s
}

/// Powers `2^k` not exceeding `order`, starting at 1.
fn powers_of_two_upto(order: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS)
        .map(|k| 1usize << k)
        .take_while(move |&p| p <= order)
}

/// `Σ_{k≥0} z^{2^k} / (1 - z^{2^k})`.
pub fn gf_ruler(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    for p in powers_of_two_upto(order) {
        acc = &acc + &geom_inverse(p, order).shift_by_power(p);
    }
    acc
}

/// Generating function of the word `D_n` read from position 1:
/// `z^{n+1} ∏_{j=1}^{n} (1 + z^{2^j - 1})`.
pub fn gf_dn(n: u32, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::monomial(n as usize + 1, 1, order);
    for j in 1..=n {
        match 1usize.checked_shl(j).filter(|_| j < usize::BITS) {
            Some(p) if p - 1 <= order => acc = acc.mul_one_plus_power(p - 1),
            _ => break,
        }
    }
    acc
}

/// `z ∏_{n≥1} (1 + z^{2^n - 1})`.
pub fn gf_d0(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::monomial(1, 1, order);
    for p in powers_of_two_upto(order + 1).skip(1) {
        acc = acc.mul_one_plus_power(p - 1);
    }
    acc
}

/// Exponent `2^{n+1} + (n+1)(s-1)` of the `n`-th block, or `None` once it
/// would overflow.
fn block_exponent(s: Shift, n: u32) -> Option<i128> {
    let pow = 1i128.checked_shl(n + 1)?;
    Some(pow + (i128::from(n) + 1) * (i128::from(s.0) - 1))
}

/// Leaf-indicator generating function as a sum over the blocks of
/// `D_0 0^s D_0 0^s D_1 0^s D_2 ⋯`:
/// `z + Σ_{n≥0} z^{2^{n+1} + (n+1)(s-1)} D_n(z)`, where the exponent is the
/// length of everything before block `D_n`.
pub fn gf_ds_sum(s: Shift, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::monomial(1, 1, order);
    let mut n = 0u32;
    while let Some(e) = block_exponent(s, n) {
        // D_n(z) starts at z^{n+1}
        if e + i128::from(n) + 1 > order as i128 || n >= 120 {
            break;
        }
        acc = &acc + &gf_dn(n, order).shift_by_power(e as usize);
        n += 1;
    }
    acc
}

/// The same generating function from the nested product
/// `z(1 + z^{s+1}(1 + z^{s+2}(1+z)(1 + z^{s+4}(1+z^3)(1 + ⋯))))`,
/// evaluated from the inside out with `depth` layers below the first.
///
/// Requires `2^depth > order`, which makes the truncated nest exact.
pub fn gf_ds_nested(s: Shift, order: usize, depth: u32) -> Result<TruncatedSeries, SeriesError> {
    let exact = depth >= usize::BITS || (1usize << depth) > order;
    if !exact {
        return Err(SeriesError::DepthTooSmall { depth, order });
    }
    let mut layer = TruncatedSeries::one(order);
    for k in (1..depth.min(usize::BITS - 1)).rev() {
        let p = 1usize << k;
        let lead = (s.0 as usize).saturating_add(p);
        let mut term = layer.shift_by_power(lead.min(order + 1));
        if p - 1 <= order {
            term = term.mul_one_plus_power(p - 1);
        }
        layer = &TruncatedSeries::one(order) + &term;
    }
    let lead = (s.0 as usize).saturating_add(1).min(order + 1);
    let top = &TruncatedSeries::one(order) + &layer.shift_by_power(lead);
    Ok(top.shift_by_power(1))
}

/// Closed form for the bottom-level counts when `s >= 1`:
/// `(1 - z^s)/(1 - z) · (z + z Σ_{n≥1} ∏_{k=1}^{n} z^{s-1}(z + z^{2^k}))`.
pub fn gf_as(s: Shift, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if s.0 == 0 {
        return Err(SeriesError::ShiftZero);
    }
    let step = s.0 as usize - 1;
    let mut inner = TruncatedSeries::one(order);
    let mut product = TruncatedSeries::one(order);
    let mut lowest = 0usize;
    let mut k = 0u32;
    loop {
        k += 1;
        // each factor z^{s-1}(z + z^{2^k}) raises the lowest degree by s
        lowest += s.0 as usize;
        if lowest + 1 > order {
            break;
        }
        let factor = match 1usize.checked_shl(k) {
            Some(p) if k < usize::BITS && p <= order => {
                &TruncatedSeries::monomial(1, 1, order) + &TruncatedSeries::monomial(p, 1, order)
            }
            _ => TruncatedSeries::monomial(1, 1, order),
        };
        product = product.mul_series(&factor).shift_by_power(step);
        inner = &inner + &product;
    }
    let mut window = TruncatedSeries::zero(order);
    for i in 0..(s.0 as usize).min(order + 1) {
        window.coeffs[i] = 1;
    }
    Ok(window.mul_series(&inner).shift_by_power(1))
}

/// Bottom-level counts as prefix sums of the leaf indicator series; valid for
/// every `s`. The constant term is 0.
pub fn gf_a_from_d(s: Shift, order: usize) -> TruncatedSeries {
    gf_ds_sum(s, order).prefix_sums()
}

/// `1/(1-z) · (1 + z Σ_{k≥0} z^{2^k} (s + 1/(1 - z^{2^k})))`, whose
/// coefficient at `n >= 1` is the position of the `n`-th leaf. The constant
/// term is 1.
pub fn gf_ps(s: Shift, order: usize) -> TruncatedSeries {
    let mut gaps = TruncatedSeries::zero(order);
    for p in powers_of_two_upto(order) {
        let shift_part = TruncatedSeries::monomial(p, s.0 as i64, order);
        let geometric = geom_inverse(p, order).shift_by_power(p);
        gaps = &(&gaps + &shift_part) + &geometric;
    }
    let body = &TruncatedSeries::one(order) + &gaps.shift_by_power(1);
    body.prefix_sums()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metafib::{ruler, SequenceTable};
    use proptest::prelude::*;

    fn coeffs(s: &TruncatedSeries, range: std::ops::RangeInclusive<usize>) -> Vec<i64> {
        range.map(|i| s.coeff(i)).collect()
    }

    #[test]
    fn arithmetic_basics() {
        let a = TruncatedSeries::from_coeffs(vec![1, 1, 0, 0, 0]);
        let b = TruncatedSeries::from_coeffs(vec![1, 0, 0, 1, 0]);
        assert_eq!((&a * &b).coeffs(), &[1, 1, 0, 1, 1]);
        assert_eq!(
            TruncatedSeries::one(6).shift_by_power(3),
            TruncatedSeries::monomial(3, 1, 6)
        );
        let z = TruncatedSeries::monomial(1, 1, 4);
        assert!((&z + &-&z).is_zero());
        assert_eq!(z.scale(3).coeff(1), 3);
        let short = TruncatedSeries::one(2);
        assert_eq!((&z + &short).order(), 2);
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(geom_inverse(1, 3).coeffs(), &[1, 1, 1, 1]);
        assert_eq!(geom_inverse(4, 9).coeffs(), &[1, 0, 0, 0, 1, 0, 0, 0, 1, 0]);
        let one_minus = &TruncatedSeries::one(20) - &TruncatedSeries::monomial(2, 1, 20);
        assert_eq!(&geom_inverse(2, 20) * &one_minus, TruncatedSeries::one(20));
    }

    #[test]
    fn ruler_series() {
        let r = gf_ruler(128);
        assert_eq!(r.coeff(0), 0);
        assert_eq!(r.coeff(4), 3);
        assert_eq!(r.coeff(1), 1);
        assert_eq!(r.coeff(96), 6);
        for n in 1..=128 {
            assert_eq!(r.coeff(n) as u64, ruler(n as u64));
        }
    }

    #[test]
    fn finite_word_series() {
        assert_eq!(gf_dn(0, 4), TruncatedSeries::monomial(1, 1, 4));
        assert_eq!(coeffs(&gf_dn(1, 4), 0..=4), vec![0, 0, 1, 1, 0]);
        for n in 0..=12 {
            let word = crate::words::word_d(n).unwrap();
            let series = gf_dn(n, word.len() + 5);
            let support: Vec<usize> = (0..=series.order())
                .filter(|&i| series.coeff(i) != 0)
                .collect();
            assert_eq!(support, word.ones_positions().collect::<Vec<_>>());
            assert!(series.coeffs().iter().all(|&c| c == 0 || c == 1));
        }
        assert_eq!(coeffs(&gf_dn(2, 8), 0..=8), vec![0, 0, 0, 1, 1, 0, 1, 1, 0]);
        let d0 = gf_d0(40);
        assert_eq!(coeffs(&d0, 1..=8), vec![1, 1, 0, 1, 1, 0, 0, 1]);
        assert_eq!(d0.coeff(3), 0);
        assert_eq!(d0.coeff(32), 1);
    }

    #[test]
    fn leaf_indicator_series() {
        let d2 = gf_ds_sum(Shift(2), 12);
        assert_eq!(
            coeffs(&d2, 1..=12),
            vec![1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0]
        );
        assert_eq!(gf_ds_sum(Shift(0), 300), gf_d0(300));
        assert_eq!(gf_ds_sum(Shift(1), 10).coeff(6), 1);
        assert_eq!(gf_ds_sum(Shift(3), 0).coeff(0), 0);
    }

    #[test]
    fn nested_form() {
        let nested = gf_ds_nested(Shift(2), 12, 5).unwrap();
        assert_eq!(nested, gf_ds_sum(Shift(2), 12));
        assert_eq!(gf_ds_nested(Shift(0), 20, 6).unwrap(), gf_d0(20));
        assert_eq!(
            gf_ds_nested(Shift(1), 1, 2).unwrap(),
            TruncatedSeries::monomial(1, 1, 1)
        );
        assert_eq!(
            gf_ds_nested(Shift(1), 16, 4),
            Err(SeriesError::DepthTooSmall {
                depth: 4,
                order: 16
            })
        );
        for s in 0..=4 {
            assert_eq!(
                gf_ds_nested(Shift(s), 500, 9).unwrap(),
                gf_ds_sum(Shift(s), 500)
            );
        }
    }

    #[test]
    fn bottom_count_series() {
        assert_eq!(gf_as(Shift(2), 10).unwrap().coeff(8), 3);
        assert_eq!(
            coeffs(&gf_as(Shift(1), 10).unwrap(), 1..=10),
            vec![1, 1, 2, 2, 2, 3, 4, 4, 4, 4]
        );
        assert_eq!(gf_as(Shift(4), 3).unwrap().coeff(1), 1);
        assert_eq!(gf_as(Shift(0), 3), Err(SeriesError::ShiftZero));

        let a0 = gf_a_from_d(Shift(0), 20);
        assert_eq!(
            coeffs(&a0, 1..=20),
            vec![1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12]
        );
        assert_eq!(a0.coeff(0), 0);
        assert_eq!(gf_a_from_d(Shift(2), 300), gf_as(Shift(2), 300).unwrap());
    }

    #[test]
    fn position_series() {
        assert_eq!(gf_ps(Shift(2), 10).coeff(4), 9);
        assert_eq!(
            coeffs(&gf_ps(Shift(0), 12), 1..=12),
            vec![1, 2, 4, 5, 8, 9, 11, 12, 16, 17, 19, 20]
        );
        for s in 0..4 {
            assert_eq!(gf_ps(Shift(s), 0).coeff(0), 1);
            assert_eq!(gf_ps(Shift(s), 9).coeff(0), 1);
        }
    }

    #[test]
    fn series_match_sequences() {
        let order = 1024;
        for s in 0..=4 {
            let mut t = SequenceTable::new(Shift(s));
            let d = gf_ds_sum(Shift(s), order);
            let a = gf_a_from_d(Shift(s), order);
            let p = gf_ps(Shift(s), order);
            for n in 1..=order {
                assert_eq!(d.coeff(n) as u8, t.d(n as u64));
                assert_eq!(a.coeff(n) as u64, t.a(n as u64));
                assert_eq!(p.coeff(n) as u64, t.p(n as u64));
            }
            let one_minus_z =
                &TruncatedSeries::one(order) - &TruncatedSeries::monomial(1, 1, order);
            assert_eq!(&a * &one_minus_z, d);
        }
    }

    fn small_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-9i64..=9, 1..12).prop_map(TruncatedSeries::from_coeffs)
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_series(), b in small_series()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_associates(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn prefix_sums_invert_one_minus_z(a in small_series()) {
            let n = a.order();
            let one_minus_z = &TruncatedSeries::one(n) - &TruncatedSeries::monomial(1, 1, n);
            prop_assert_eq!(&a.prefix_sums() * &one_minus_z, a);
        }
    }
}
