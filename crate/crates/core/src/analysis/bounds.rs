use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldCtx};
use crate::walsh::WalshTable;

fn check_preconditions(ctx: &FieldCtx, d: u64) -> Result<u32> {
    let t = ctx.half_degree()?;
    let g = gcd(d, ctx.group_order());
    if g != 1 {
        return Err(Error::NotCoprime {
            value: d,
            modulus: ctx.group_order(),
            gcd: g,
        });
    }
    Ok(t)
}

/// Is there a nonzero a with W_d(a) > 2^t + 2^floor(t/2)?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub max_walsh: i64,
    pub witness: Elem,
    pub bound: i64,
    pub holds: bool,
}

impl BoundCheck {
    pub fn from_table(ctx: &FieldCtx, table: &WalshTable) -> Result<Self> {
        let t = check_preconditions(ctx, table.d())?;
        let (max_walsh, witness) = table.max_nonzero(ctx);
        let bound = (1i64 << t) + (1i64 << (t / 2));
        Ok(BoundCheck {
            max_walsh,
            witness,
            bound,
            holds: max_walsh > bound,
        })
    }
}

pub fn check_bound(ctx: &FieldCtx, d: u64) -> Result<BoundCheck> {
    check_preconditions(ctx, d)?;
    BoundCheck::from_table(ctx, &WalshTable::compute(ctx, d)?)
}

/// Is there a nonzero a with W_d(a) >= 2^(t+1)? Equivalent to a nonzero
/// codeword of weight at most 2^(m-1) - 2^t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SarwateCheck {
    pub holds: bool,
    pub witness: Option<Elem>,
    pub max_walsh: i64,
    pub threshold: i64,
}

impl SarwateCheck {
    pub fn from_table(ctx: &FieldCtx, table: &WalshTable) -> Result<Self> {
        let t = check_preconditions(ctx, table.d())?;
        let (max_walsh, arg) = table.max_nonzero(ctx);
        let threshold = 1i64 << (t + 1);
        let holds = max_walsh >= threshold;
        Ok(SarwateCheck {
            holds,
            witness: holds.then_some(arg),
            max_walsh,
            threshold,
        })
    }
}

pub fn check_sarwate(ctx: &FieldCtx, d: u64) -> Result<SarwateCheck> {
    check_preconditions(ctx, d)?;
    SarwateCheck::from_table(ctx, &WalshTable::compute(ctx, d)?)
}

/// 2^t divides every W_d(a).
pub fn niho_divisible(ctx: &FieldCtx, table: &WalshTable) -> Result<bool> {
    let t = ctx.half_degree()?;
    let mask = (1i64 << t) - 1;
    Ok(table.raw().iter().all(|&w| w & mask == 0))
}

/// All d in [1, 2^m - 2] coprime to 2^m - 1.
pub fn coprime_exponents(ctx: &FieldCtx) -> Vec<u64> {
    let n = ctx.group_order();
    (1..n).filter(|&d| gcd(d, n) == 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanCheck {
    Bound,
    Sarwate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanVerdict {
    pub d: u64,
    pub max_walsh: i64,
    pub witness: Elem,
    pub threshold: i64,
    pub holds: bool,
}

/// Runs one check per exponent on the current rayon pool; output in input order.
pub fn scan_exponents(
    ctx: &FieldCtx,
    exponents: &[u64],
    check: ScanCheck,
) -> Result<Vec<ScanVerdict>> {
    exponents
        .par_iter()
        .map(|&d| {
            let table = WalshTable::compute(ctx, d)?;
            Ok(match check {
                ScanCheck::Bound => {
                    let r = BoundCheck::from_table(ctx, &table)?;
                    ScanVerdict {
                        d,
                        max_walsh: r.max_walsh,
                        witness: r.witness,
                        threshold: r.bound + 1,
                        holds: r.holds,
                    }
                }
                ScanCheck::Sarwate => {
                    let r = SarwateCheck::from_table(ctx, &table)?;
                    let (_, witness) = table.max_nonzero(ctx);
                    ScanVerdict {
                        d,
                        max_walsh: r.max_walsh,
                        witness,
                        threshold: r.threshold,
                        holds: r.holds,
                    }
                }
            })
        })
        .collect()
}
