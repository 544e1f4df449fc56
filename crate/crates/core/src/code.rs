//! The binary cyclic code C_d of length 2^m - 1 with nonzeros alpha^-1 and
//! alpha^-d. Codeword c(a, b) has bit i equal to Tr(a alpha^(d i) + b alpha^i).
//!
//! For a, b both nonzero, wt c(a, b) = (2^m - W_d(b a^(-1/d))) / 2; a codeword
//! with exactly one of a, b zero has weight 2^(m-1).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{mod_inverse, Elem, FieldCtx};
use crate::walsh::{walsh_coefficient, Spectrum, WalshTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub a: Elem,
    pub b: Elem,
    pub bits: Vec<u8>,
}

impl Codeword {
    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|&b| b as u64).sum()
    }
}

/// Direct materialization of c(a, b).
pub fn codeword(ctx: &FieldCtx, d: u64, a: Elem, b: Elem) -> Codeword {
    let n = ctx.group_order();
    let alpha = ctx.alpha();
    let alpha_d = ctx.pow(alpha, d);
    let mut bits = Vec::with_capacity(n as usize);
    let (mut x, mut y) = (Elem::ONE, Elem::ONE); // alpha^i, alpha^(d i)
    for _ in 0..n {
        bits.push(ctx.trace(ctx.mul(a, y) + ctx.mul(b, x)));
        x = ctx.mul(x, alpha);
        y = ctx.mul(y, alpha_d);
    }
    Codeword { a, b, bits }
}

/// d is a cyclotomic shift of 1 (d = 2^j mod 2^m - 1): the two nonzeros
/// coincide up to conjugacy.
pub fn is_degenerate(ctx: &FieldCtx, d: u64) -> bool {
    let n = ctx.group_order();
    (0..ctx.m()).any(|j| (1u64 << j) % n == d % n)
}

fn inverse_exponent(ctx: &FieldCtx, d: u64) -> Result<u64> {
    mod_inverse(d, ctx.group_order())
}

/// Weight of c(a, b) through the Walsh coefficient relation.
pub fn weight_of_pair(ctx: &FieldCtx, d: u64, a: Elem, b: Elem) -> Result<u64> {
    let inv_d = inverse_exponent(ctx, d)?;
    let q = ctx.size() as i64;
    Ok(match (a.is_zero(), b.is_zero()) {
        (true, true) => 0,
        (true, false) | (false, true) => (q / 2) as u64,
        (false, false) => {
            // a^(-1/d)
            let root = ctx.pow(a, ctx.group_order() - inv_d);
            let v = ctx.mul(b, root);
            ((q - walsh_coefficient(ctx, d, v)) / 2) as u64
        }
    })
}

/// Weight enumerator of C_d as (weight, count), sorted by weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub m: u32,
    pub d: u64,
    pub modulus: u64,
    pub degenerate_two_nonzeros: bool,
    pub entries: Vec<(u64, u64)>,
}

impl WeightDistribution {
    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|&(_, n)| n).sum()
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.entries
            .iter()
            .find(|&&(w, _)| w == weight)
            .map_or(0, |&(_, n)| n)
    }

    /// Smallest nonzero weight.
    pub fn min_distance(&self) -> Option<u64> {
        self.entries.iter().map(|&(w, _)| w).find(|&w| w > 0)
    }
}

/// Distribution derived from the spectrum: as (a, b) ranges over F* x F*,
/// v = b a^(-1/d) hits each element of F* exactly 2^m - 1 times.
pub fn weight_distribution(ctx: &FieldCtx, d: u64) -> Result<WeightDistribution> {
    inverse_exponent(ctx, d)?;
    let table = WalshTable::compute(ctx, d)?;
    let spectrum = table.spectrum(ctx);
    Ok(distribution_from_spectrum(
        ctx,
        &spectrum,
        table.get(ctx, Elem::ZERO),
    ))
}

fn distribution_from_spectrum(
    ctx: &FieldCtx,
    spectrum: &Spectrum,
    w_at_zero: i64,
) -> WeightDistribution {
    let q = ctx.size() as u64;
    let n = ctx.group_order();
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for &(value, mut count) in &spectrum.entries {
        if value == w_at_zero {
            count -= 1;
        }
        if count > 0 {
            let weight = ((q as i64 - value) / 2) as u64;
            *hist.entry(weight).or_default() += count * n;
        }
    }
    *hist.entry(q / 2).or_default() += 2 * n;
    *hist.entry(0).or_default() += 1;
    WeightDistribution {
        m: ctx.m(),
        d: spectrum.d,
        modulus: ctx.modulus(),
        degenerate_two_nonzeros: is_degenerate(ctx, spectrum.d),
        entries: hist.into_iter().collect(),
    }
}

/// Smallest weight of a nonzero codeword. For a degenerate d some pairs
/// (a, b) != (0, 0) give the zero word; those are not codewords of weight 0.
pub fn min_distance(ctx: &FieldCtx, d: u64) -> Result<u64> {
    let wd = weight_distribution(ctx, d)?;
    Ok(wd.min_distance().unwrap_or(0))
}

/// Strict upper bound 2^(m-1) - 2^(t-1) - 2^(floor(t/2) - 1) on the minimum
/// distance for even m, scaled by 2 to stay integral when floor(t/2) = 0.
pub fn min_distance_bound_doubled(ctx: &FieldCtx) -> Result<i64> {
    let t = ctx.half_degree()? as i64;
    let m = ctx.m() as i64;
    Ok((1 << m) - (1 << t) - (1 << (t / 2)))
}
