use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, mod_inverse, v2};

/// Arithmetic facts about an exponent d for GF(2^m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentProfile {
    pub m: u32,
    pub t: Option<u32>,
    pub d: u64,
    pub gcd_q1: u64,
    pub inv_d: Option<u64>,
    /// d = 2^j (mod 2^t - 1) for some j; even m only.
    pub is_niho: Option<bool>,
    /// Smallest i with d = 2^j (1 + 2^i + 2^(i+t)) (mod 2^m - 1), 0 < i < t - 1.
    pub family_i: Option<u32>,
    /// The j of the match above.
    pub family_shift: Option<u32>,
    /// v2(i + 1) >= v2(t), when family_i is present.
    pub v2_ok: Option<bool>,
}

/// 1 + 2^i + 2^(i+t).
pub fn family_exponent(t: u32, i: u32) -> u64 {
    1 + (1u64 << i) + (1u64 << (i + t))
}

pub fn exponent_profile(m: u32, d: u64) -> Result<ExponentProfile> {
    if !(2..=62).contains(&m) {
        return Err(Error::domain(format!("m = {m} out of range")));
    }
    let n = (1u64 << m) - 1;
    if d == 0 || d >= n {
        return Err(Error::domain(format!("d = {d} not in [1, 2^{m} - 2]")));
    }
    let gcd_q1 = gcd(d, n);
    let inv_d = mod_inverse(d, n).ok();
    let t = m.is_multiple_of(2).then_some(m / 2);

    let is_niho = t.map(|t| {
        let sub = (1u64 << t) - 1;
        (0..t).any(|j| (1u64 << j) % sub == d % sub)
    });

    let mut family = None;
    if let Some(t) = t {
        'scan: for i in 1..t.saturating_sub(1) {
            let base = family_exponent(t, i) % n;
            let mut shifted = base;
            for j in 0..m {
                if shifted == d {
                    family = Some((i, j));
                    break 'scan;
                }
                shifted = (shifted * 2) % n;
            }
        }
    }
    let v2_ok = match (family, t) {
        (Some((i, _)), Some(t)) => Some(v2(i as u64 + 1) >= v2(t as u64)),
        _ => None,
    };

    Ok(ExponentProfile {
        m,
        t,
        d,
        gcd_q1,
        inv_d,
        is_niho,
        family_i: family.map(|f| f.0),
        family_shift: family.map(|f| f.1),
        v2_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m6_d19() {
        let p = exponent_profile(6, 19).unwrap();
        assert_eq!(p.gcd_q1, 1);
        assert_eq!(p.inv_d, Some(10));
        assert_eq!(p.is_niho, Some(false));
        assert_eq!(p.family_i, Some(1));
        assert_eq!(p.family_shift, Some(0));
        assert_eq!(p.v2_ok, Some(true));
    }

    #[test]
    fn m12_d261_violates_valuation_and_coprimality() {
        let p = exponent_profile(12, 261).unwrap();
        assert_eq!(p.family_i, Some(2));
        assert_eq!(p.v2_ok, Some(false));
        assert_eq!(p.gcd_q1, 9);
        assert_eq!(p.inv_d, None);
    }

    #[test]
    fn linear_is_niho() {
        for t in 1..=8 {
            assert_eq!(exponent_profile(2 * t, 1).unwrap().is_niho, Some(true));
        }
        assert_eq!(exponent_profile(7, 1).unwrap().is_niho, None);
    }

    #[test]
    fn cyclotomic_shift_is_detected() {
        // 2 * 131 mod 4095
        let p = exponent_profile(12, 262).unwrap();
        assert_eq!(p.family_i, Some(1));
        assert_eq!(p.family_shift, Some(1));
    }

    #[test]
    fn out_of_range() {
        assert!(exponent_profile(6, 0).is_err());
        assert!(exponent_profile(6, 63).is_err());
    }

    #[test]
    fn coprime_family_members_have_expected_valuation() {
        for t in 3..=12u32 {
            let m = 2 * t;
            let n = (1u64 << m) - 1;
            for i in 1..t - 1 {
                let d = family_exponent(t, i);
                let p = exponent_profile(m, d % n).unwrap();
                if p.gcd_q1 == 1 {
                    assert_eq!(p.v2_ok, Some(true), "t = {t}, i = {i}");
                }
            }
        }
    }
}
