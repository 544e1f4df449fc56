//! Character sums over the subfield L = GF(2^t) of F = GF(2^(2t)).
//!
//! M_b = sum_{x in L} (-1)^Tr((x + b)^d) depends only on the coset b + L.
//! For b outside L, with epsilon_b = -sign(M_b) and
//! p_b(a) = 1 - (-1)^Tr(b a) epsilon_b on L,
//! sum_{a in L} W_d(a) p_b(a) = 2^m + 2^t |M_b|.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::walsh::{truth_table, WalshTable};

/// Largest m accepted by [`mb_square_identities`] without `force`.
pub const MB_SQUARE_MAX_DEGREE: u32 = 16;

/// Designated element of the given order: alpha^((2^m - 1) / order).
pub fn designated_c(ctx: &FieldCtx, order: u64) -> Result<Elem> {
    Ok(ctx.unit_subgroup(order)?.generator)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MbValue {
    pub value: i64,
    /// -sign(M_b); +1 when M_b = 0.
    pub epsilon: i8,
}

pub fn m_b(ctx: &FieldCtx, d: u64, b: Elem) -> Result<MbValue> {
    let sub = ctx.subfield_elements()?;
    let value = sub
        .iter()
        .map(|&x| 1 - 2 * ctx.trace(ctx.pow(x + b, d)) as i64)
        .sum();
    Ok(MbValue {
        value,
        epsilon: epsilon_of(value),
    })
}

fn epsilon_of(value: i64) -> i8 {
    if value > 0 {
        -1
    } else {
        1
    }
}

/// p_b(a) in {0, 2}.
pub fn p_b(ctx: &FieldCtx, b: Elem, epsilon: i8, a: Elem) -> i64 {
    let chi = 1 - 2 * ctx.trace(ctx.mul(b, a)) as i64;
    1 - chi * epsilon as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSumCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub m_b: MbValue,
    /// sum_{a in L} p_b(a); equals 2^t.
    pub p_sum: i64,
}

impl WeightedSumCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of sum_{a in L} W_d(a) p_b(a) = 2^m + 2^t |M_b|, for b not in L.
pub fn weighted_sum_check(ctx: &FieldCtx, table: &WalshTable, b: Elem) -> Result<WeightedSumCheck> {
    let t = ctx.half_degree()?;
    if ctx.in_subfield(b)? {
        return Err(Error::domain(format!("b = {b} lies in the subfield")));
    }
    let mb = m_b(ctx, table.d(), b)?;
    let sub = ctx.subfield_elements()?;
    let (mut lhs, mut p_sum) = (0i64, 0i64);
    for &a in &sub {
        let p = p_b(ctx, b, mb.epsilon, a);
        lhs += table.get(ctx, a) * p;
        p_sum += p;
    }
    let rhs = (1i64 << ctx.m()) + (1i64 << t) * mb.value.abs();
    Ok(WeightedSumCheck {
        lhs,
        rhs,
        m_b: mb,
        p_sum,
    })
}

/// Multiset of subfield elements, as coefficients a_g.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Multiset {
    pub coeffs: BTreeMap<Elem, u64>,
}

impl Multiset {
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn all_even(&self) -> bool {
        self.coeffs.values().all(|&a| a % 2 == 0)
    }

    /// Number of distinct elements.
    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    /// sum_g a_g^2
    pub fn square_norm(&self) -> u64 {
        self.coeffs.values().map(|&a| a * a).sum()
    }

    /// sum_g a_g (-1)^Tr_t(u^d g), which reproduces M_{u c} for u in L*.
    pub fn character_value(&self, ctx: &FieldCtx, d: u64, u: Elem) -> Result<i64> {
        let ud = ctx.pow(u, d);
        let mut acc = 0i64;
        for (&g, &a) in &self.coeffs {
            let sign = 1 - 2 * ctx.subfield_trace(ctx.mul(ud, g))? as i64;
            acc += sign * a as i64;
        }
        Ok(acc)
    }

    /// sum_{u in L} character_value(u)^2.
    pub fn character_energy(&self, ctx: &FieldCtx, d: u64) -> Result<i64> {
        let mut acc = 0i64;
        for u in ctx.subfield_elements()? {
            acc += self.character_value(ctx, d, u)?.pow(2);
        }
        Ok(acc)
    }
}

/// R_d = {(x + c)^d + (x + c^(2^t))^d : x in L} for c of order 2^t + 1.
pub fn r_d_multiset(ctx: &FieldCtx, d: u64, c: Elem) -> Result<Multiset> {
    let t = ctx.half_degree()?;
    let want = (1u64 << t) + 1;
    if c.is_zero() || ctx.order_of(c) != want {
        return Err(Error::domain(format!(
            "c = {c} does not have order 2^t + 1 = {want}"
        )));
    }
    let c_bar = ctx.frobenius(c, t);
    let mut out = Multiset::default();
    for x in ctx.subfield_elements()? {
        let g = ctx.pow(x + c, d) + ctx.pow(x + c_bar, d);
        if !ctx.in_subfield(g)? {
            return Err(Error::domain(format!(
                "R_d element {g} escaped the subfield"
            )));
        }
        *out.coeffs.entry(g).or_default() += 1;
    }
    Ok(out)
}

/// Quantities in the second-moment computation of M_b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MbSquareIdentities {
    /// sum_{b in F} M_b^2
    pub total: i64,
    /// sum_{u in L*} M_{u c}^2 with c of order 2^t + 1
    pub coset_total: i64,
    /// |{b in F : (1 + b)^d + b^d in L}|
    pub boundary_count: u64,
    /// |{b in F \ L : (1 + b)^d + b^d in L}|
    pub outside_count: u64,
    pub t: u32,
}

impl MbSquareIdentities {
    /// total - 2^(2t) boundary_count
    pub fn total_residual(&self) -> i64 {
        self.total - (1i64 << (2 * self.t)) * self.boundary_count as i64
    }

    /// coset_total - 2^t outside_count
    pub fn coset_residual(&self) -> i64 {
        self.coset_total - (1i64 << self.t) * self.outside_count as i64
    }
}

/// O(2^m 2^t) work; refuses m > 16 unless `force`.
pub fn mb_square_identities(ctx: &FieldCtx, d: u64, force: bool) -> Result<MbSquareIdentities> {
    let t = ctx.half_degree()?;
    if ctx.m() > MB_SQUARE_MAX_DEGREE && !force {
        return Err(Error::Resource(format!(
            "M_b second moment at m = {} exceeds the m <= {MB_SQUARE_MAX_DEGREE} guard",
            ctx.m()
        )));
    }
    let signs = truth_table(ctx, d)?;
    let sub = ctx.subfield_elements()?;
    let mb = |b: Elem| -> i64 { sub.iter().map(|&x| signs.sign(x + b) as i64).sum() };

    let mut total = 0i64;
    let mut boundary_count = 0u64;
    let mut outside_count = 0u64;
    for b in ctx.elements() {
        total += mb(b).pow(2);
        let g = ctx.pow(b + Elem::ONE, d) + ctx.pow(b, d);
        if ctx.in_subfield(g)? {
            boundary_count += 1;
            if !ctx.in_subfield(b)? {
                outside_count += 1;
            }
        }
    }

    let c = designated_c(ctx, (1u64 << t) + 1)?;
    let coset_total = sub.iter().skip(1).map(|&u| mb(ctx.mul(u, c)).pow(2)).sum();

    Ok(MbSquareIdentities {
        total,
        coset_total,
        boundary_count,
        outside_count,
        t,
    })
}
