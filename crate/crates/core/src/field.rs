//! Arithmetic in GF(2^m), 2 <= m <= 28, in a polynomial basis.
//!
//! Elements are `m`-bit vectors; bit `i` is the coefficient of `X^i` and the
//! class of `X` is the primitive element `alpha`. Multiplication goes through
//! log/antilog tables while `2^m` fits under the table cap, and through a
//! shift-and-reduce loop otherwise.
//!
//! Default moduli are the lexicographically smallest primitive polynomials of
//! each degree (smallest bitmask), see [`DEFAULT_MODULI`].

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 28;

/// Log tables are built when `2^m <= table_cap`.
pub const DEFAULT_TABLE_CAP: usize = 1 << 22;

/// Lexicographically smallest primitive polynomial for each degree `2..=28`,
/// as bitmasks including the leading term. Index `m - 2`.
pub const DEFAULT_MODULI: [u64; 27] = [
    0x7,        // 2: x^2+x+1
    0xb,        // 3: x^3+x+1
    0x13,       // 4: x^4+x+1
    0x25,       // 5: x^5+x^2+1
    0x43,       // 6: x^6+x+1
    0x83,       // 7: x^7+x+1
    0x11d,      // 8: x^8+x^4+x^3+x^2+1
    0x211,      // 9: x^9+x^4+1
    0x409,      // 10: x^10+x^3+1
    0x805,      // 11: x^11+x^2+1
    0x1053,     // 12: x^12+x^6+x^4+x+1
    0x201b,     // 13: x^13+x^4+x^3+x+1
    0x402b,     // 14: x^14+x^5+x^3+x+1
    0x8003,     // 15: x^15+x+1
    0x1002d,    // 16: x^16+x^5+x^3+x^2+1
    0x20009,    // 17: x^17+x^3+1
    0x40027,    // 18: x^18+x^5+x^2+x+1
    0x80027,    // 19: x^19+x^5+x^2+x+1
    0x100009,   // 20: x^20+x^3+1
    0x200005,   // 21: x^21+x^2+1
    0x400003,   // 22: x^22+x+1
    0x800021,   // 23: x^23+x^5+1
    0x100001b,  // 24: x^24+x^4+x^3+x+1
    0x2000009,  // 25: x^25+x^3+1
    0x4000047,  // 26: x^26+x^6+x^2+x+1
    0x8000027,  // 27: x^27+x^5+x^2+x+1
    0x10000009, // 28: x^28+x^3+1
];

pub fn default_modulus(m: u32) -> Result<u64> {
    check_degree(m)?;
    Ok(DEFAULT_MODULI[(m - MIN_DEGREE) as usize])
}

fn check_degree(m: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange {
            m,
            min: MIN_DEGREE,
            max: MAX_DEGREE,
        })
    }
}

/// A field element: coefficient vector in the polynomial basis.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// Addition in characteristic 2 is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Elem {
    type Output = Elem;

    #[inline]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Elem {
    #[inline]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Absolute trace, relative trace and relative norm of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Traces {
    pub tr_abs: u8,
    pub tr_rel: Elem,
    pub norm_rel: Elem,
}

/// The multiplicative subgroup of order `order`, with a designated generator.
#[derive(Debug, Clone)]
pub struct UnitSubgroup {
    pub order: u64,
    pub generator: Elem,
    pub elements: Vec<Elem>,
}

/// Immutable GF(2^m) context.
#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    modulus: u64,
    /// 2^m - 1
    group_order: u64,
    /// Distinct primes dividing 2^m - 1.
    order_primes: Vec<u64>,
    /// Bit i is Tr(alpha^i); Tr(x) = parity(x & trace_mask).
    trace_mask: u32,
    /// antilog has length 2(2^m - 1) so index sums need no reduction.
    log: Option<Vec<u32>>,
    antilog: Option<Vec<u32>>,
    /// Row k has bit i set iff Tr(alpha^(i+k)) = 1.
    dual_rows: Vec<u32>,
    /// Inverse of the trace-form matrix.
    dual_inv_rows: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("tables", &self.log.is_some())
            .finish()
    }
}

/// Builds a context for GF(2^m); `modulus = None` picks the built-in
/// primitive polynomial.
pub fn make_field(m: u32, modulus: Option<u64>) -> Result<FieldCtx> {
    FieldCtx::with_options(m, modulus, DEFAULT_TABLE_CAP)
}

impl FieldCtx {
    pub fn new(m: u32) -> Result<Self> {
        Self::with_options(m, None, DEFAULT_TABLE_CAP)
    }

    pub fn with_modulus(m: u32, modulus: u64) -> Result<Self> {
        Self::with_options(m, Some(modulus), DEFAULT_TABLE_CAP)
    }

    pub fn with_options(m: u32, modulus: Option<u64>, table_cap: usize) -> Result<Self> {
        check_degree(m)?;
        let modulus = match modulus {
            Some(p) => p,
            None => default_modulus(m)?,
        };
        if poly_degree(modulus) != Some(m) {
            return Err(Error::ModulusDegree { m, modulus });
        }
        if !is_irreducible(modulus) {
            return Err(Error::Reducible { modulus });
        }

        let group_order = (1u64 << m) - 1;
        let order_primes = prime_factors(group_order);
        let mut ctx = FieldCtx {
            m,
            modulus,
            group_order,
            order_primes,
            trace_mask: 0,
            log: None,
            antilog: None,
            dual_rows: Vec::new(),
            dual_inv_rows: Vec::new(),
        };

        let order = ctx.order_of(ctx.alpha());
        if order != group_order {
            return Err(Error::NotPrimitive { modulus, order });
        }

        ctx.trace_mask = (0..m)
            .filter(|&i| ctx.trace_frobenius(Elem(1 << i)) == 1)
            .fold(0, |mask, i| mask | (1 << i));

        if (1usize << m) <= table_cap {
            ctx.build_tables();
        }
        ctx.build_dual_basis();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let n = self.group_order as usize;
        let mut log = vec![0u32; 1 << self.m];
        let mut antilog = vec![0u32; 2 * n];
        let mut x = 1u32;
        for i in 0..n {
            antilog[i] = x;
            antilog[i + n] = x;
            log[x as usize] = i as u32;
            x = self.mul_shift(x, 2);
        }
        debug_assert_eq!(x, 1);
        self.log = Some(log);
        self.antilog = Some(antilog);
    }

    fn build_dual_basis(&mut self) {
        let m = self.m as usize;
        // alpha^j for j < 2m - 1
        let mut powers = Vec::with_capacity(2 * m);
        let mut x = Elem::ONE;
        for _ in 0..(2 * m) {
            powers.push(x);
            x = self.mul(x, self.alpha());
        }
        self.dual_rows = (0..m)
            .map(|k| {
                (0..m)
                    .filter(|&i| self.trace(powers[i + k]) == 1)
                    .fold(0u32, |row, i| row | (1 << i))
            })
            .collect();
        self.dual_inv_rows =
            invert_bit_matrix(&self.dual_rows).expect("trace form is nondegenerate");
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// m / 2 for even m.
    pub fn t(&self) -> Option<u32> {
        self.m.is_multiple_of(2).then_some(self.m / 2)
    }

    pub(crate) fn half_degree(&self) -> Result<u32> {
        self.t().ok_or_else(|| {
            Error::unsupported(format!("operation needs even m, got m = {}", self.m))
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// 2^m
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.m
    }

    /// 2^m - 1
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    #[inline]
    pub fn has_tables(&self) -> bool {
        self.log.is_some()
    }

    #[inline]
    pub fn alpha(&self) -> Elem {
        Elem(2)
    }

    pub fn elem(&self, bits: u32) -> Result<Elem> {
        if (bits as u64) < (1u64 << self.m) {
            Ok(Elem(bits))
        } else {
            Err(Error::domain(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.m
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..(1u32 << self.m)).map(Elem)
    }

    /// `0x..` plus the discrete log when tables exist.
    pub fn describe(&self, x: Elem) -> String {
        match (&self.log, x.is_zero()) {
            (Some(log), false) => format!("{x} (alpha^{})", log[x.0 as usize]),
            _ => x.to_string(),
        }
    }

    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        self.log.as_ref().map(|log| log[x.0 as usize])
    }

    /// alpha^i, i reduced mod 2^m - 1.
    pub fn exp(&self, i: u64) -> Elem {
        let i = i % self.group_order;
        match &self.antilog {
            Some(antilog) => Elem(antilog[i as usize]),
            None => self.pow_square_multiply(self.alpha(), i),
        }
    }

    #[inline]
    fn mul_shift(&self, a: u32, b: u32) -> u32 {
        let top = 1u64 << self.m;
        let mut a = a as u64;
        let mut b = b;
        let mut r = 0u64;
        while b != 0 {
            if b & 1 != 0 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        r as u32
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.is_zero() || y.is_zero() {
            return Elem::ZERO;
        }
        match (&self.log, &self.antilog) {
            (Some(log), Some(antilog)) => {
                Elem(antilog[(log[x.0 as usize] + log[y.0 as usize]) as usize])
            }
            _ => Elem(self.mul_shift(x.0, y.0)),
        }
    }

    #[inline]
    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// x^(2^k)
    pub fn frobenius(&self, mut x: Elem, k: u32) -> Elem {
        for _ in 0..k {
            x = self.square(x);
        }
        x
    }

    /// x^e with e >= 0; pow(x, 0) = 1 including x = 0.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.is_zero() {
            return Elem::ZERO;
        }
        let e = e % self.group_order;
        match (&self.log, &self.antilog) {
            (Some(log), Some(antilog)) => {
                let k = (log[x.0 as usize] as u64 * e) % self.group_order;
                Elem(antilog[k as usize])
            }
            _ => self.pow_square_multiply(x, e),
        }
    }

    fn pow_square_multiply(&self, mut x: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        while e != 0 {
            if e & 1 != 0 {
                acc = Elem(self.mul_shift(acc.0, x.0));
            }
            x = Elem(self.mul_shift(x.0, x.0));
            e >>= 1;
        }
        acc
    }

    /// x^e for any integer e; negative exponents need x != 0.
    pub fn pow_signed(&self, x: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            return Ok(self.pow(x, e as u64));
        }
        if x.is_zero() {
            return Err(Error::domain("negative power of zero"));
        }
        let e = e.rem_euclid(self.group_order as i64) as u64;
        Ok(self.pow(x, e))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(self.pow(x, self.group_order - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: Elem) -> u64 {
        assert!(!x.is_zero(), "order of zero is undefined");
        let mut order = self.group_order;
        for &p in &self.order_primes {
            while order.is_multiple_of(p) && self.pow_square_multiply(x, order / p) == Elem::ONE {
                order /= p;
            }
        }
        order
    }

    /// Absolute trace Tr_m(x) in {0, 1}.
    #[inline]
    pub fn trace(&self, x: Elem) -> u8 {
        ((x.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Tr_m(x) as the sum of conjugates; used to build the trace mask.
    pub(crate) fn trace_frobenius(&self, x: Elem) -> u32 {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc += y;
            y = Elem(self.mul_shift(y.0, y.0));
        }
        acc.0
    }

    /// Tr_{m/t}(x) = x + x^(2^t).
    pub fn rel_trace(&self, x: Elem) -> Result<Elem> {
        let t = self.half_degree()?;
        Ok(x + self.frobenius(x, t))
    }

    /// N_{m/t}(x) = x^(1 + 2^t).
    pub fn rel_norm(&self, x: Elem) -> Result<Elem> {
        let t = self.half_degree()?;
        Ok(self.pow(x, 1 + (1u64 << t)))
    }

    /// Tr_t on the subfield L = GF(2^t); only meaningful for x in L.
    pub fn subfield_trace(&self, x: Elem) -> Result<u8> {
        let t = self.half_degree()?;
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..t {
            acc += y;
            y = self.square(y);
        }
        match acc.0 {
            0 | 1 => Ok(acc.0 as u8),
            _ => Err(Error::domain(format!(
                "{x} is not in the subfield GF(2^{t})"
            ))),
        }
    }

    pub fn traces(&self, x: Elem) -> Result<Traces> {
        Ok(Traces {
            tr_abs: self.trace(x),
            tr_rel: self.rel_trace(x)?,
            norm_rel: self.rel_norm(x)?,
        })
    }

    pub fn in_subfield(&self, x: Elem) -> Result<bool> {
        let t = self.half_degree()?;
        Ok(self.frobenius(x, t) == x)
    }

    /// The subfield L = GF(2^t), sorted by bit pattern.
    pub fn subfield_elements(&self) -> Result<Vec<Elem>> {
        let t = self.half_degree()?;
        let generator = self.exp((1u64 << t) + 1);
        let mut out = Vec::with_capacity(1 << t);
        out.push(Elem::ZERO);
        let mut x = Elem::ONE;
        for _ in 0..((1u64 << t) - 1) {
            out.push(x);
            x = self.mul(x, generator);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All x with x^order = 1. The designated generator is
    /// alpha^((2^m - 1) / order) and comes first.
    pub fn unit_subgroup(&self, order: u64) -> Result<UnitSubgroup> {
        if order == 0 || !self.group_order.is_multiple_of(order) {
            return Err(Error::domain(format!(
                "{order} does not divide 2^{} - 1 = {}",
                self.m, self.group_order
            )));
        }
        let generator = self.exp(self.group_order / order);
        let mut elements = Vec::with_capacity(order as usize);
        let mut x = Elem::ONE;
        for _ in 0..order {
            elements.push(x);
            x = self.mul(x, generator);
        }
        let shift = 1.min(elements.len() - 1);
        elements.rotate_left(shift);
        Ok(UnitSubgroup {
            order,
            generator,
            elements,
        })
    }

    /// Index of the FWHT output holding W(a): bit k is Tr(a * alpha^k), so
    /// that parity(dual_index(a) & x) = Tr(a x) for every x.
    #[inline]
    pub fn dual_index(&self, a: Elem) -> usize {
        apply_bit_matrix(&self.dual_rows, a.0) as usize
    }

    /// Inverse of [`FieldCtx::dual_index`].
    #[inline]
    pub fn element_at_dual_index(&self, index: usize) -> Elem {
        Elem(apply_bit_matrix(&self.dual_inv_rows, index as u32))
    }
}

fn apply_bit_matrix(rows: &[u32], v: u32) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (k, &row)| {
        acc | (((row & v).count_ones() & 1) << k)
    })
}

/// Gauss-Jordan over GF(2). Row k of the input gives output bit k.
fn invert_bit_matrix(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|k| 1 << k).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r] >> col & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn poly_mulmod(a: u64, b: u64, p: u64, deg: u32) -> u64 {
    let top = 1u64 << deg;
    let (mut a, mut b, mut r) = (a, b, 0u64);
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= p;
        }
    }
    r
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: p of degree n is irreducible iff gcd(X^(2^k) - X, p) = 1 for
/// every k <= n / 2.
fn is_irreducible(p: u64) -> bool {
    let Some(n) = poly_degree(p) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let mut x_pow = 2u64; // X^(2^k) mod p
    for _ in 1..=n / 2 {
        x_pow = poly_mulmod(x_pow, x_pow, p, n);
        if poly_gcd(p, x_pow ^ 2) != 1 {
            return false;
        }
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The j in [1, n) with j * d = 1 (mod n).
pub fn mod_inverse(d: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain(format!("modulus {n} must be at least 2")));
    }
    let (mut r0, mut r1) = (n as i128, (d % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime {
            value: d,
            modulus: n,
            gcd: r0 as u64,
        });
    }
    Ok(s0.rem_euclid(n as i128) as u64)
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// 2-adic valuation; v2(0) is reported as u32::MAX.
pub fn v2(n: u64) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        n.trailing_zeros()
    }
}
