//! Closed-form Walsh spectra of Tr(x^(3 + 2^(t+1))) over GF(2^(2t)).
//!
//! t odd:
//!
//! | W        | multiplicity          |
//! |----------|-----------------------|
//! | 0        | 3 2^(2t-2)            |
//! | 2^(t+1)  | 2^(2t-3) + 2^(t-2)    |
//! | -2^(t+1) | 2^(2t-3) - 2^(t-2)    |
//!
//! t = 2 mod 4, t >= 6:
//!
//! | W        | multiplicity                              |
//! |----------|-------------------------------------------|
//! | 0        | 2^(2t-1) - 2^(2t-5) - 2^(t-1) + 2^(t-3)   |
//! | ±2^t     | (2^(2t) + 2^t) / 5 each                   |
//! | 2^(t+1)  | 2^(2t-4) + 2^(t-2)                        |
//! | -2^(t+1) | 2^(2t-4) - 2^(t-2)                        |
//! | ±2^(t+2) | (2^(2t-6) - 2^(t-4)) / 5 each             |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::walsh::Spectrum;

/// Largest t whose tables fit the i128 sanity sums.
pub const MAX_T: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    TOdd,
    TEven,
}

impl Theorem {
    pub fn label(self) -> &'static str {
        match self {
            Theorem::TOdd => "t_odd",
            Theorem::TEven => "t_even",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedSpectrum {
    pub theorem: Theorem,
    pub t: u32,
    pub m: u32,
    pub d: u64,
    /// (value, multiplicity) sorted by value; zero multiplicities omitted.
    pub entries: Vec<(i64, u64)>,
}

impl PredictedSpectrum {
    pub fn multiplicity(&self, value: i64) -> u64 {
        self.entries
            .iter()
            .find(|e| e.0 == value)
            .map_or(0, |e| e.1)
    }

    pub fn total_count(&self) -> u128 {
        self.entries.iter().map(|&(_, n)| n as u128).sum()
    }

    /// Residuals of sum W = 2^m and sum W^2 = 2^(2m).
    pub fn parseval_residuals(&self) -> (i128, i128) {
        let q = 1i128 << self.m;
        let sum: i128 = self
            .entries
            .iter()
            .map(|&(v, n)| v as i128 * n as i128)
            .sum();
        let sq: i128 = self
            .entries
            .iter()
            .map(|&(v, n)| (v as i128).pow(2) * n as i128)
            .sum();
        (sum - q, sq - q * q)
    }
}

fn exact_div(num: u64, den: u64, what: &str) -> Result<u64> {
    if !num.is_multiple_of(den) {
        return Err(Error::domain(format!(
            "{what}: {num} not divisible by {den}"
        )));
    }
    Ok(num / den)
}

fn family_d(t: u32) -> Result<u64> {
    if t > MAX_T {
        return Err(Error::domain(format!("t = {t} exceeds {MAX_T}")));
    }
    let d = 3 + (1u64 << (t + 1));
    let n = (1u64 << (2 * t)) - 1;
    let g = crate::field::gcd(d, n);
    if g != 1 {
        return Err(Error::NotCoprime {
            value: d,
            modulus: n,
            gcd: g,
        });
    }
    Ok(d)
}

fn finish(theorem: Theorem, t: u32, d: u64, mut entries: Vec<(i64, u64)>) -> PredictedSpectrum {
    entries.retain(|&(_, n)| n > 0);
    entries.sort_unstable();
    PredictedSpectrum {
        theorem,
        t,
        m: 2 * t,
        d,
        entries,
    }
}

pub fn predicted_spectrum_t_odd(t: u32) -> Result<PredictedSpectrum> {
    if t.is_multiple_of(2) || t < 3 {
        return Err(Error::domain(format!(
            "t must be odd and at least 3, got {t}"
        )));
    }
    let d = family_d(t)?;
    let p = |k: u32| 1u64 << k;
    let w = 1i64 << (t + 1);
    Ok(finish(
        Theorem::TOdd,
        t,
        d,
        vec![
            (0, 3 * p(2 * t - 2)),
            (w, p(2 * t - 3) + p(t - 2)),
            (-w, p(2 * t - 3) - p(t - 2)),
        ],
    ))
}

pub fn predicted_spectrum_t_even(t: u32) -> Result<PredictedSpectrum> {
    if t % 4 != 2 || t < 6 {
        return Err(Error::domain(format!(
            "t must satisfy t = 2 mod 4 and t >= 6, got {t}"
        )));
    }
    let d = family_d(t)?;
    let p = |k: u32| 1u64 << k;
    let w = 1i64 << t;
    let n0 = p(2 * t - 1) - p(2 * t - 5) - p(t - 1) + p(t - 3);
    let n1 = exact_div(p(2 * t) + p(t), 5, "N_1")?;
    let n4 = exact_div(p(2 * t - 6) - p(t - 4), 5, "N_4")?;
    Ok(finish(
        Theorem::TEven,
        t,
        d,
        vec![
            (0, n0),
            (w, n1),
            (-w, n1),
            (2 * w, p(2 * t - 4) + p(t - 2)),
            (-2 * w, p(2 * t - 4) - p(t - 2)),
            (4 * w, n4),
            (-4 * w, n4),
        ],
    ))
}

pub fn predicted_spectrum(theorem: Theorem, t: u32) -> Result<PredictedSpectrum> {
    match theorem {
        Theorem::TOdd => predicted_spectrum_t_odd(t),
        Theorem::TEven => predicted_spectrum_t_even(t),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDiff {
    pub value: i64,
    pub actual: u64,
    pub predicted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub equal: bool,
    pub diffs: Vec<SpectrumDiff>,
}

/// Exact multiset comparison; every differing value is listed.
pub fn compare(actual: &Spectrum, predicted: &PredictedSpectrum) -> Result<CompareReport> {
    if actual.m != predicted.m || actual.d != predicted.d {
        return Err(Error::domain(format!(
            "parameter mismatch: actual (m = {}, d = {}) vs predicted (m = {}, d = {})",
            actual.m, actual.d, predicted.m, predicted.d
        )));
    }
    let mut values: Vec<i64> = actual
        .entries
        .iter()
        .map(|e| e.0)
        .chain(predicted.entries.iter().map(|e| e.0))
        .collect();
    values.sort_unstable();
    values.dedup();
    let diffs: Vec<SpectrumDiff> = values
        .into_iter()
        .map(|value| SpectrumDiff {
            value,
            actual: actual.multiplicity(value),
            predicted: predicted.multiplicity(value),
        })
        .filter(|d| d.actual != d.predicted)
        .collect();
    Ok(CompareReport {
        equal: diffs.is_empty(),
        diffs,
    })
}

impl From<&PredictedSpectrum> for Spectrum {
    fn from(p: &PredictedSpectrum) -> Self {
        Spectrum {
            m: p.m,
            d: p.d,
            modulus: 0,
            coprime: true,
            entries: p.entries.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_odd_tables() {
        assert_eq!(
            predicted_spectrum_t_odd(3).unwrap().entries,
            vec![(-16, 6), (0, 48), (16, 10)]
        );
        assert_eq!(
            predicted_spectrum_t_odd(5).unwrap().entries,
            vec![(-64, 120), (0, 768), (64, 136)]
        );
        assert!(predicted_spectrum_t_odd(4).is_err());
        assert!(predicted_spectrum_t_odd(1).is_err());
    }

    #[test]
    fn t_even_tables() {
        let p = predicted_spectrum_t_even(6).unwrap();
        assert_eq!(p.d, 131);
        assert_eq!(
            p.entries,
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
        assert_eq!(p.multiplicity(256), p.multiplicity(-256));
        assert_eq!(p.multiplicity(64), p.multiplicity(-64));
        assert!(predicted_spectrum_t_even(2).is_err());
        assert!(predicted_spectrum_t_even(8).is_err());
        assert!(predicted_spectrum_t_even(7).is_err());
    }

    #[test]
    fn tables_satisfy_sum_identities() {
        for t in (3..=MAX_T).step_by(2) {
            if let Ok(p) = predicted_spectrum_t_odd(t) {
                assert_eq!(p.total_count(), 1u128 << (2 * t));
                assert_eq!(p.parseval_residuals(), (0, 0), "t = {t}");
            }
        }
        for t in (6..=MAX_T).filter(|t| t % 4 == 2) {
            if let Ok(p) = predicted_spectrum_t_even(t) {
                assert_eq!(p.total_count(), 1u128 << (2 * t));
                assert_eq!(p.parseval_residuals(), (0, 0), "t = {t}");
                let six = 6i64 << t;
                assert_eq!(p.multiplicity(six) + p.multiplicity(-six), 0);
            }
        }
    }

    #[test]
    fn compare_reports_every_difference() {
        let p = predicted_spectrum_t_odd(3).unwrap();
        let same = Spectrum::from(&p);
        assert!(compare(&same, &p).unwrap().equal);

        let mut off = same.clone();
        off.entries = vec![(-16, 5), (0, 49), (16, 10)];
        let r = compare(&off, &p).unwrap();
        assert!(!r.equal);
        assert_eq!(r.diffs.len(), 2);
        assert_eq!(
            r.diffs[0],
            SpectrumDiff {
                value: -16,
                actual: 5,
                predicted: 6
            }
        );

        let mut wrong_m = same;
        wrong_m.m = 8;
        assert!(compare(&wrong_m, &p).is_err());
    }
}
