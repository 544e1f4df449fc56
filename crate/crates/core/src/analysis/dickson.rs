//! Dickson polynomials D_n(X, 1) in characteristic 2.
//!
//! D_n(X, a) = sum_{j <= n/2} n/(n-j) C(n-j, j) (-a)^j X^(n-2j); with a = 1
//! over GF(2) this gives D_5 = X^5 + X^3 + X. D_n(u + 1/u) = u^n + 1/u^n.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldCtx};

/// Largest n for which the coefficient formula is evaluated exactly in u128.
pub const MAX_COEFFICIENT_DEGREE: u32 = 100;

/// D_5(x, 1) = x^5 + x^3 + x.
pub fn dickson(ctx: &FieldCtx, x: Elem) -> Elem {
    ctx.pow(x, 5) + ctx.pow(x, 3) + x
}

/// D_n(x, 1) from D_0 = 2 = 0, D_1 = x, D_k = x D_(k-1) + D_(k-2).
pub fn dickson_eval(ctx: &FieldCtx, n: u32, x: Elem) -> Elem {
    let (mut prev, mut cur) = (Elem::ZERO, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        (prev, cur) = (cur, ctx.mul(x, cur) + prev);
    }
    cur
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients mod 2 of D_n(X, 1), index = power of X.
pub fn dickson_coefficients(n: u32) -> Result<Vec<u8>> {
    if n == 0 || n > MAX_COEFFICIENT_DEGREE {
        return Err(Error::domain(format!(
            "n = {n} outside 1..={MAX_COEFFICIENT_DEGREE}"
        )));
    }
    let mut coeffs = vec![0u8; n as usize + 1];
    for j in 0..=(n / 2) {
        let (nn, jj) = (n as u128, j as u128);
        let numerator = nn * binomial(nn - jj, jj);
        debug_assert_eq!(numerator % (nn - jj), 0);
        coeffs[(n - 2 * j) as usize] = ((numerator / (nn - jj)) % 2) as u8;
    }
    Ok(coeffs)
}

pub fn dickson_eval_by_coefficients(ctx: &FieldCtx, n: u32, x: Elem) -> Result<Elem> {
    let coeffs = dickson_coefficients(n)?;
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == 1)
        .fold(Elem::ZERO, |acc, (k, _)| acc + ctx.pow(x, k as u64)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DicksonPermutation {
    pub by_image: bool,
    /// gcd(n, q^2 - 1) = 1
    pub by_gcd: bool,
}

impl DicksonPermutation {
    pub fn agree(&self) -> bool {
        self.by_image == self.by_gcd
    }
}

/// Whether D_n(X, 1) permutes the field of `ctx`, by two independent routes.
pub fn dickson_is_permutation(ctx: &FieldCtx, n: u32) -> DicksonPermutation {
    let mut seen = vec![false; ctx.size()];
    let mut by_image = true;
    for x in ctx.elements() {
        let y = dickson_eval(ctx, n, x).0 as usize;
        if std::mem::replace(&mut seen[y], true) {
            by_image = false;
            break;
        }
    }
    let q_sq_minus_1 = (1u64 << (2 * ctx.m())) - 1;
    DicksonPermutation {
        by_image,
        by_gcd: gcd(n as u64, q_sq_minus_1) == 1,
    }
}
