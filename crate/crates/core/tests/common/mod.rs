//! Brute-force reference arithmetic shared by the integration tests. It only
//! borrows the modulus from the library and recomputes everything else.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub struct RefField {
    pub m: u32,
    pub poly: u64,
}

impl RefField {
    pub fn new(m: u32, poly: u64) -> Self {
        RefField { m, poly }
    }

    pub fn size(&self) -> u64 {
        1 << self.m
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        for i in 0..self.m {
            if b >> i & 1 == 1 {
                acc ^= a << i;
            }
        }
        for i in (self.m..2 * self.m).rev() {
            if acc >> i & 1 == 1 {
                acc ^= self.poly << (i - self.m);
            }
        }
        acc
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (x, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x + x^2 + ... + x^(2^(m-1)), which is 0 or 1.
    pub fn trace(&self, x: u64) -> u8 {
        let (mut y, mut acc) = (x, 0u64);
        for _ in 0..self.m {
            acc ^= y;
            y = self.mul(y, y);
        }
        assert!(acc <= 1, "trace left GF(2): {acc:#x}");
        acc as u8
    }

    pub fn trace_table(&self) -> Vec<u8> {
        (0..self.size()).map(|x| self.trace(x)).collect()
    }

    /// (-1)^Tr(x^d) for every x.
    pub fn signs(&self, d: u64) -> Vec<i64> {
        (0..self.size())
            .map(|x| 1 - 2 * self.trace(self.pow(x, d)) as i64)
            .collect()
    }

    /// W_d(a) by direct summation, given `signs(d)` and `trace_table()`.
    pub fn walsh_at(&self, signs: &[i64], tr: &[u8], a: u64) -> i64 {
        (0..self.size())
            .map(|x| signs[x as usize] * (1 - 2 * tr[self.mul(a, x) as usize] as i64))
            .sum()
    }

    /// W_d(a) for every a, indexed by a.
    pub fn walsh_all(&self, d: u64) -> Vec<i64> {
        let signs = self.signs(d);
        let tr = self.trace_table();
        (0..self.size())
            .map(|a| self.walsh_at(&signs, &tr, a))
            .collect()
    }

    /// Histogram of Hamming weights over all 2^(2m) codewords, bit i of c(a, b)
    /// being Tr(a x^(d i) + b x^i) with x the class of X.
    pub fn codeword_weight_histogram(&self, d: u64) -> BTreeMap<u64, u64> {
        let n = self.size() - 1;
        let tr = self.trace_table();
        let alpha_i: Vec<u64> = (0..n).map(|i| self.pow(2, i)).collect();
        let alpha_di: Vec<u64> = (0..n).map(|i| self.pow(2, (d * i) % n)).collect();
        let mut hist = BTreeMap::new();
        for a in 0..self.size() {
            let ua: Vec<u64> = alpha_di.iter().map(|&y| self.mul(a, y)).collect();
            for b in 0..self.size() {
                let w = (0..n as usize)
                    .filter(|&i| tr[(ua[i] ^ self.mul(b, alpha_i[i])) as usize] == 1)
                    .count() as u64;
                *hist.entry(w).or_insert(0) += 1;
            }
        }
        hist
    }

    /// Number of z with z^6 + z = w, for each w.
    pub fn sextic_solution_counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.size() as usize];
        for z in 0..self.size() {
            counts[(self.pow(z, 6) ^ z) as usize] += 1;
        }
        counts
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn histogram(values: &[i64]) -> Vec<(i64, u64)> {
    let mut h: BTreeMap<i64, u64> = BTreeMap::new();
    for &v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h.into_iter().collect()
}
