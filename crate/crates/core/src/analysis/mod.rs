//! Computable forms of the objects behind the minimum-distance bound and the
//! two spectrum theorems: exponent classification, subfield character sums
//! M_b and the multiset R_d, the S_b parameterization of W_d(a + b c^(2^t)),
//! the census of z^6 + z = w, Dickson polynomials, and the bound checkers.

mod bounds;
mod dickson;
mod exponent;
mod sextic;
mod subfield_sums;

pub use bounds::{
    check_bound, check_sarwate, coprime_exponents, niho_divisible, scan_exponents, BoundCheck,
    SarwateCheck, ScanCheck, ScanVerdict,
};
pub use dickson::{
    dickson, dickson_coefficients, dickson_eval, dickson_eval_by_coefficients,
    dickson_is_permutation, DicksonPermutation,
};
pub use exponent::{exponent_profile, family_exponent, ExponentProfile};
pub use sextic::{
    no_six_check, sb_c_order, sextic_census, CensusReport, ClosedFormCensus, NoSixReport, SbSystem,
};
pub use subfield_sums::{
    designated_c, m_b, mb_square_identities, p_b, r_d_multiset, weighted_sum_check,
    MbSquareIdentities, MbValue, Multiset, WeightedSumCheck, MB_SQUARE_MAX_DEGREE,
};
