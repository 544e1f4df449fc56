//! Walsh coefficients W_d(a) = sum_x (-1)^Tr(x^d + a x) of f_d(x) = Tr(x^d).
//!
//! The full spectrum is computed with a fast Walsh-Hadamard transform of the
//! ±1 truth table of f_d. The transform pairs index `j` with `x` through
//! `parity(j & x)`, so its output at `j` is W_d(a) for the unique `a` with
//! `Tr(a x) = parity(j & x)` for all `x`; that `a` is found through the
//! trace-form matrix kept by [`FieldCtx`] (see [`FieldCtx::dual_index`]).

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldCtx};

fn check_exponent(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::domain("exponent d must be at least 1"));
    }
    Ok(())
}

/// Naive W_d(a): one pass over the field.
pub fn walsh_coefficient(ctx: &FieldCtx, d: u64, a: Elem) -> i64 {
    ctx.elements()
        .map(|x| {
            let y = ctx.pow(x, d) + ctx.mul(a, x);
            1 - 2 * ctx.trace(y) as i64
        })
        .sum()
}

/// Signs (-1)^Tr(x^d), indexed by the bit pattern of x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    d: u64,
    signs: Vec<i8>,
}

impl TruthTable {
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    #[inline]
    pub fn sign(&self, x: Elem) -> i8 {
        self.signs[x.0 as usize]
    }
}

/// Walks x = alpha^i once. With log tables x^d is alpha^(i d mod 2^m - 1);
/// without them x^d is advanced by one multiplication with alpha^d per step.
pub fn truth_table(ctx: &FieldCtx, d: u64) -> Result<TruthTable> {
    check_exponent(d)?;
    let n = ctx.group_order();
    let mut signs = vec![1i8; ctx.size()];
    if ctx.has_tables() {
        let step = d % n;
        let mut k = 0u64;
        for i in 0..n {
            let x = ctx.exp(i);
            signs[x.0 as usize] = 1 - 2 * ctx.trace(ctx.exp(k)) as i8;
            k += step;
            if k >= n {
                k -= n;
            }
        }
    } else {
        let alpha = ctx.alpha();
        let alpha_d = ctx.pow(alpha, d);
        let (mut x, mut y) = (Elem::ONE, Elem::ONE);
        for _ in 0..n {
            signs[x.0 as usize] = 1 - 2 * ctx.trace(y) as i8;
            x = ctx.mul(x, alpha);
            y = ctx.mul(y, alpha_d);
        }
    }
    Ok(TruthTable { d, signs })
}

/// In-place Walsh-Hadamard butterfly: out[j] = sum_x in[x] (-1)^popcount(j & x).
pub fn fwht_in_place<T>(data: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let n = data.len();
    assert!(
        n.is_power_of_two(),
        "transform length must be a power of two"
    );
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*u, *v);
                *u = a + b;
                *v = a - b;
            }
        }
        half *= 2;
    }
}

/// Transform of a truth table with 64-bit accumulators.
pub fn fwht(table: &TruthTable) -> Vec<i64> {
    let mut data: Vec<i64> = table.signs.iter().map(|&s| s as i64).collect();
    fwht_in_place(&mut data);
    data
}

/// All Walsh coefficients of f_d, stored in transform order.
#[derive(Debug, Clone)]
pub struct WalshTable {
    d: u64,
    values: Vec<i64>,
}

impl WalshTable {
    pub fn compute(ctx: &FieldCtx, d: u64) -> Result<Self> {
        let table = truth_table(ctx, d)?;
        Ok(WalshTable {
            d,
            values: fwht(&table),
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// W_d(a).
    #[inline]
    pub fn get(&self, ctx: &FieldCtx, a: Elem) -> i64 {
        self.values[ctx.dual_index(a)]
    }

    /// Raw transform output; index j holds W_d(ctx.element_at_dual_index(j)).
    pub fn raw(&self) -> &[i64] {
        &self.values
    }

    /// Largest W_d(a) over a != 0, with one maximizing a.
    pub fn max_nonzero(&self, ctx: &FieldCtx) -> (i64, Elem) {
        // dual index 0 is a = 0
        let (idx, &value) = self
            .values
            .iter()
            .enumerate()
            .skip(1)
            .max_by_key(|&(idx, &v)| (v, std::cmp::Reverse(idx)))
            .expect("field has nonzero elements");
        (value, ctx.element_at_dual_index(idx))
    }

    pub fn spectrum(&self, ctx: &FieldCtx) -> Spectrum {
        Spectrum::from_values(ctx, self.d, self.values.iter().copied())
    }
}

/// Multiset of Walsh values as (value, multiplicity), sorted by value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub m: u32,
    pub d: u64,
    pub modulus: u64,
    /// false when gcd(d, 2^m - 1) > 1
    pub coprime: bool,
    pub entries: Vec<(i64, u64)>,
}

impl Spectrum {
    pub fn from_values(ctx: &FieldCtx, d: u64, values: impl IntoIterator<Item = i64>) -> Self {
        let mut hist = BTreeMap::new();
        for v in values {
            *hist.entry(v).or_insert(0u64) += 1;
        }
        Spectrum {
            m: ctx.m(),
            d,
            modulus: ctx.modulus(),
            coprime: gcd(d, ctx.group_order()) == 1,
            entries: hist.into_iter().collect(),
        }
    }

    pub fn multiplicity(&self, value: i64) -> u64 {
        self.entries
            .binary_search_by_key(&value, |&(v, _)| v)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|&(_, n)| n).sum()
    }

    /// sum_a W(a)
    pub fn sum(&self) -> i128 {
        self.entries
            .iter()
            .map(|&(v, n)| v as i128 * n as i128)
            .sum()
    }

    /// sum_a W(a)^2
    pub fn sum_squares(&self) -> i128 {
        self.entries
            .iter()
            .map(|&(v, n)| (v as i128).pow(2) * n as i128)
            .sum()
    }

    /// Residuals of sum W = 2^m and sum W^2 = 2^(2m).
    pub fn parseval_residuals(&self) -> (i128, i128) {
        let q = 1i128 << self.m;
        (self.sum() - q, self.sum_squares() - q * q)
    }

    pub fn max_value(&self) -> Option<i64> {
        self.entries.last().map(|&(v, _)| v)
    }
}

/// Histogram of the FWHT output.
pub fn walsh_spectrum(ctx: &FieldCtx, d: u64) -> Result<Spectrum> {
    Ok(WalshTable::compute(ctx, d)?.spectrum(ctx))
}

/// sum_{a in L} W_d(a u): 2^m for u in L*, 0 for u outside L.
pub fn subfield_sum_check(ctx: &FieldCtx, table: &WalshTable, u: Elem) -> Result<i64> {
    if u.is_zero() {
        return Err(Error::domain(
            "u = 0 gives 2^t W_d(0); not covered by the subfield sum identity",
        ));
    }
    let sub = ctx.subfield_elements()?;
    Ok(sub.iter().map(|&a| table.get(ctx, ctx.mul(a, u))).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn naive_spectrum(ctx: &FieldCtx, d: u64) -> Vec<i64> {
        ctx.elements()
            .map(|a| walsh_coefficient(ctx, d, a))
            .collect()
    }

    #[test]
    fn linear_function() {
        for m in 2..=8 {
            let ctx = FieldCtx::new(m).unwrap();
            for a in ctx.elements() {
                let expect = if a == Elem::ONE { 1i64 << m } else { 0 };
                assert_eq!(walsh_coefficient(&ctx, 1, a), expect);
            }
            let s = walsh_spectrum(&ctx, 1).unwrap();
            assert_eq!(s.entries, vec![(0, (1u64 << m) - 1), (1 << m, 1)]);
        }
    }

    #[test]
    fn w_at_zero_vanishes_for_coprime_d() {
        let ctx = FieldCtx::new(6).unwrap();
        for d in (1..63).filter(|&d| gcd(d, 63) == 1) {
            assert_eq!(walsh_coefficient(&ctx, d, Elem::ZERO), 0);
        }
    }

    #[test]
    fn truth_table_basics() {
        let ctx = make_field(3, Some(0b1011)).unwrap();
        let tt = truth_table(&ctx, 1).unwrap();
        assert_eq!(tt.sign(Elem::ZERO), 1);
        assert_eq!(tt.signs().iter().filter(|&&s| s == 1).count(), 4);
        assert!(truth_table(&ctx, 0).is_err());

        let ctx = FieldCtx::new(8).unwrap();
        assert_eq!(
            truth_table(&ctx, 7).unwrap().signs(),
            truth_table(&ctx, 14).unwrap().signs()
        );
    }

    #[test]
    fn truth_table_without_log_tables() {
        let tabled = FieldCtx::new(9).unwrap();
        let plain = FieldCtx::with_options(9, None, 0).unwrap();
        for d in [1, 5, 13, 77] {
            assert_eq!(
                truth_table(&tabled, d).unwrap(),
                truth_table(&plain, d).unwrap()
            );
        }
    }

    #[test]
    fn constant_input_transforms_to_delta() {
        let mut data = vec![1i64; 64];
        fwht_in_place(&mut data);
        assert_eq!(data[0], 64);
        assert!(data[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn fwht_matches_naive_per_element_m6_d19() {
        let ctx = FieldCtx::new(6).unwrap();
        let table = WalshTable::compute(&ctx, 19).unwrap();
        let naive = naive_spectrum(&ctx, 19);
        for a in ctx.elements() {
            assert_eq!(table.get(&ctx, a), naive[a.0 as usize], "a = {a}");
        }
        let mut lhs = table.raw().to_vec();
        let mut rhs = naive.clone();
        lhs.sort_unstable();
        rhs.sort_unstable();
        assert_eq!(lhs, rhs);
        let parseval: i64 = table.raw().iter().map(|v| v * v).sum();
        assert_eq!(parseval, 1 << 12);
    }

    #[test]
    fn spectrum_m6_d19() {
        let ctx = FieldCtx::new(6).unwrap();
        let s = walsh_spectrum(&ctx, 19).unwrap();
        assert_eq!(s.entries, vec![(-16, 6), (0, 48), (16, 10)]);
        assert_eq!(s.parseval_residuals(), (0, 0));
        assert!(s.coprime);
    }

    #[test]
    fn spectrum_m12_d131() {
        let ctx = FieldCtx::new(12).unwrap();
        let s = walsh_spectrum(&ctx, 131).unwrap();
        assert_eq!(
            s.entries,
            vec![
                (-256, 12),
                (-128, 240),
                (-64, 832),
                (0, 1896),
                (64, 832),
                (128, 272),
                (256, 12)
            ]
        );
    }

    #[test]
    fn non_coprime_exponent_is_flagged() {
        let ctx = FieldCtx::new(6).unwrap();
        let s = walsh_spectrum(&ctx, 3).unwrap();
        assert!(!s.coprime);
        assert_eq!(s.parseval_residuals().1, 0);
    }

    #[test]
    fn subfield_sums() {
        let ctx = FieldCtx::new(6).unwrap();
        let table = WalshTable::compute(&ctx, 19).unwrap();
        assert_eq!(subfield_sum_check(&ctx, &table, Elem::ONE).unwrap(), 64);
        let c = ctx.unit_subgroup(9).unwrap().generator;
        assert_eq!(subfield_sum_check(&ctx, &table, c).unwrap(), 0);
        assert!(subfield_sum_check(&ctx, &table, Elem::ZERO).is_err());

        let linear = WalshTable::compute(&ctx, 1).unwrap();
        assert_eq!(subfield_sum_check(&ctx, &linear, Elem::ONE).unwrap(), 64);
    }

    #[test]
    fn max_nonzero_skips_zero() {
        let ctx = FieldCtx::new(6).unwrap();
        let table = WalshTable::compute(&ctx, 19).unwrap();
        let (w, a) = table.max_nonzero(&ctx);
        assert_eq!(w, 16);
        assert_eq!(walsh_coefficient(&ctx, 19, a), 16);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn spectrum_invariant_under_frobenius(m in 3u32..=10, seed in any::<u64>()) {
            let ctx = FieldCtx::new(m).unwrap();
            let n = ctx.group_order();
            let d = 1 + seed % (n - 1);
            let s1 = walsh_spectrum(&ctx, d).unwrap();
            let s2 = walsh_spectrum(&ctx, (2 * d) % n).unwrap();
            prop_assert_eq!(&s1.entries, &s2.entries);
            prop_assert_eq!(s1.parseval_residuals().1, 0);
        }
    }
}
