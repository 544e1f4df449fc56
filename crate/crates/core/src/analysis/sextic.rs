//! The exponent family d = 1 + 2^i + 2^(i+t) over F = GF(2^(2t)).
//!
//! Every element of F is a + b c_bar with a, b in L = GF(2^t), where c != 1
//! satisfies c^(2^t + 1) = 1 and c_bar = c^(2^t). With theta = c + c_bar and
//! e = 2^(i+1),
//!
//!   W_d(a + b c_bar) = 2^t sum_{z in S_b} (-1)^Tr_t(z^(1+e) theta^(-e) + a z),
//!   S_b = {z in L : z + z^(2+e) = (b theta)^e}.
//!
//! For i = 1 the equation defining S_b is z^6 + z = w.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::exponent::family_exponent;
use crate::analysis::subfield_sums::designated_c;
use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldCtx};
use crate::walsh::walsh_spectrum;

/// Order of the designated c for the S_b parameterization: 5 when 5 divides
/// 2^t + 1 (t = 2 mod 4), otherwise 2^t + 1.
pub fn sb_c_order(t: u32) -> u64 {
    let full = (1u64 << t) + 1;
    if full.is_multiple_of(5) {
        5
    } else {
        full
    }
}

/// Precomputed constants for one (F, i).
#[derive(Debug, Clone)]
pub struct SbSystem<'a> {
    ctx: &'a FieldCtx,
    t: u32,
    i: u32,
    d: u64,
    c: Elem,
    c_bar: Elem,
    theta: Elem,
    /// theta^(-2^(i+1))
    theta_neg_e: Elem,
    subfield: Vec<Elem>,
}

impl<'a> SbSystem<'a> {
    /// Uses the default c order from [`sb_c_order`].
    pub fn new(ctx: &'a FieldCtx, i: u32) -> Result<Self> {
        let t = ctx.half_degree()?;
        Self::with_c_order(ctx, i, sb_c_order(t))
    }

    pub fn with_c_order(ctx: &'a FieldCtx, i: u32, c_order: u64) -> Result<Self> {
        let t = ctx.half_degree()?;
        if i == 0 || i + 1 >= t {
            return Err(Error::domain(format!(
                "need 0 < i < t - 1, got i = {i}, t = {t}"
            )));
        }
        let d = family_exponent(t, i);
        let g = gcd(d, ctx.group_order());
        if g != 1 {
            return Err(Error::NotCoprime {
                value: d,
                modulus: ctx.group_order(),
                gcd: g,
            });
        }
        if c_order < 2 || !((1u64 << t) + 1).is_multiple_of(c_order) {
            return Err(Error::domain(format!(
                "c order {c_order} must divide 2^t + 1 and exceed 1"
            )));
        }
        let c = designated_c(ctx, c_order)?;
        let c_bar = ctx.frobenius(c, t);
        let theta = c + c_bar;
        let e = 1u64 << (i + 1);
        let theta_neg_e = ctx.pow(ctx.inv(theta)?, e);
        Ok(SbSystem {
            ctx,
            t,
            i,
            d,
            c,
            c_bar,
            theta,
            theta_neg_e,
            subfield: ctx.subfield_elements()?,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn c(&self) -> Elem {
        self.c
    }

    pub fn c_bar(&self) -> Elem {
        self.c_bar
    }

    pub fn theta(&self) -> Elem {
        self.theta
    }

    pub fn theta_inv(&self) -> Elem {
        self.ctx.inv(self.theta).expect("theta is nonzero")
    }

    pub fn subfield(&self) -> &[Elem] {
        &self.subfield
    }

    /// a + b c_bar
    pub fn point(&self, a: Elem, b: Elem) -> Elem {
        a + self.ctx.mul(b, self.c_bar)
    }

    fn exponent_e(&self) -> u64 {
        1u64 << (self.i + 1)
    }

    fn check_in_subfield(&self, x: Elem, name: &str) -> Result<()> {
        if self.subfield.binary_search(&x).is_ok() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{name} = {x} is not in GF(2^{})",
                self.t
            )))
        }
    }

    /// z + z^(2+e)
    fn lhs(&self, z: Elem) -> Elem {
        z + self.ctx.pow(z, 2 + self.exponent_e())
    }

    /// (b theta)^e
    pub fn target(&self, b: Elem) -> Elem {
        self.ctx.pow(self.ctx.mul(b, self.theta), self.exponent_e())
    }

    /// S_b by exhaustive scan over L.
    pub fn s_b_set(&self, b: Elem) -> Result<Vec<Elem>> {
        self.check_in_subfield(b, "b")?;
        let w = self.target(b);
        Ok(self
            .subfield
            .iter()
            .copied()
            .filter(|&z| self.lhs(z) == w)
            .collect())
    }

    /// Every S_b, b in L, from a single pass over z.
    pub fn all_s_b(&self) -> BTreeMap<Elem, Vec<Elem>> {
        let mut by_target: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for &z in &self.subfield {
            by_target.entry(self.lhs(z)).or_default().push(z);
        }
        self.subfield
            .iter()
            .map(|&b| {
                (
                    b,
                    by_target.get(&self.target(b)).cloned().unwrap_or_default(),
                )
            })
            .collect()
    }

    fn sum_over(&self, a: Elem, s_b: &[Elem]) -> Result<i64> {
        let e = self.exponent_e();
        let mut acc = 0i64;
        for &z in s_b {
            let arg = self.ctx.mul(self.ctx.pow(z, 1 + e), self.theta_neg_e) + self.ctx.mul(a, z);
            acc += 1 - 2 * self.ctx.subfield_trace(arg)? as i64;
        }
        Ok(acc << self.t)
    }

    /// W_d(a + b c_bar) through S_b.
    pub fn walsh_via_sb(&self, a: Elem, b: Elem) -> Result<i64> {
        self.check_in_subfield(a, "a")?;
        let s_b = self.s_b_set(b)?;
        self.sum_over(a, &s_b)
    }

    /// As [`SbSystem::walsh_via_sb`] with S_b supplied by the caller.
    pub fn walsh_with_set(&self, a: Elem, s_b: &[Elem]) -> Result<i64> {
        self.check_in_subfield(a, "a")?;
        self.sum_over(a, s_b)
    }
}

/// Closed-form class sizes of the z^6 + z census for t = 2 mod 4, t >= 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCensus {
    pub six: u64,
    pub two: u64,
    pub one: u64,
    pub zero: u64,
}

impl ClosedFormCensus {
    pub fn for_t(t: u32) -> Option<Self> {
        if t % 4 != 2 || t < 6 {
            return None;
        }
        Some(ClosedFormCensus {
            six: ((1u64 << (t - 2)) - 1) / 15,
            two: 1u64 << (t - 2),
            one: ((1u64 << (t + 1)) + 2) / 5,
            zero: ((1u64 << t) - 1) / 3,
        })
    }
}

/// Classification of w in GF(2^t) by the number of solutions of z^6 + z = w.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub t: u32,
    pub counts: BTreeMap<u32, u64>,
    pub t2_size: u64,
    pub t6_size: u64,
    /// One w per class with its solutions.
    pub witnesses: BTreeMap<u32, (Elem, Vec<Elem>)>,
}

impl CensusReport {
    pub fn count(&self, k: u32) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// sum_k k counts[k]; every z is a solution for exactly one w.
    pub fn total_solutions(&self) -> u64 {
        self.counts.iter().map(|(&k, &n)| k as u64 * n).sum()
    }

    pub fn closed_form(&self) -> Option<ClosedFormCensus> {
        ClosedFormCensus::for_t(self.t)
    }

    /// None when no closed form applies.
    pub fn matches_closed_form(&self) -> Option<bool> {
        self.closed_form().map(|cf| {
            self.count(6) == cf.six
                && self.count(2) == cf.two
                && self.count(1) == cf.one
                && self.count(0) == cf.zero
                && self.counts.keys().all(|k| matches!(k, 0 | 1 | 2 | 6))
        })
    }
}

/// Census over the whole field of `ctx_t`, read as GF(2^t).
pub fn sextic_census(ctx_t: &FieldCtx) -> CensusReport {
    let t = ctx_t.m();
    let mut preimages: Vec<Vec<Elem>> = vec![Vec::new(); ctx_t.size()];
    for z in ctx_t.elements() {
        let w = ctx_t.pow(z, 6) + z;
        preimages[w.0 as usize].push(z);
    }
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (w, sols) in preimages.into_iter().enumerate() {
        let k = sols.len() as u32;
        *counts.entry(k).or_default() += 1;
        witnesses.entry(k).or_insert((Elem(w as u32), sols));
    }
    CensusReport {
        t,
        t2_size: counts.get(&2).copied().unwrap_or(0),
        t6_size: counts.get(&6).copied().unwrap_or(0),
        counts,
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoSixReport {
    pub t: u32,
    pub d: u64,
    /// No W_d(a) equals +-6 2^t.
    pub no_six: bool,
    /// Tr_t(theta^-1) for the order-5 c.
    pub theta_inv_trace: u8,
    pub theta_order: u64,
}

impl NoSixReport {
    pub fn holds(&self) -> bool {
        self.no_six && self.theta_inv_trace == 1 && self.theta_order == 3
    }
}

/// For d = 3 + 2^(t+1), t = 2 mod 4, t >= 6.
pub fn no_six_check(ctx: &FieldCtx) -> Result<NoSixReport> {
    let t = ctx.half_degree()?;
    if t % 4 != 2 || t < 6 {
        return Err(Error::domain(format!(
            "need t = 2 mod 4 and t >= 6, got t = {t}"
        )));
    }
    let system = SbSystem::with_c_order(ctx, 1, 5)?;
    let spectrum = walsh_spectrum(ctx, system.d())?;
    let six = 6i64 << t;
    let theta_inv = system.theta_inv();
    Ok(NoSixReport {
        t,
        d: system.d(),
        no_six: spectrum.multiplicity(six) == 0 && spectrum.multiplicity(-six) == 0,
        theta_inv_trace: ctx.subfield_trace(theta_inv)?,
        theta_order: ctx.order_of(system.theta()),
    })
}
