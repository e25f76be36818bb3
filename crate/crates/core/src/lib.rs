//! Exact closed-form determinants and inverses of the Hankel moment matrices
//! of the little q-Jacobi, q-Laguerre and discrete q-Hermite II families.
//!
//! All exact work is done in [`Rat`] (arbitrary precision rationals). Every
//! closed form has an independent route in [`oracle`] that does not share
//! code with it; [`verify`] runs both over parameter grids. [`validate`]
//! checks the underlying measures in floating point.
//!
//! ```
//! use qhankel::{build, closed_inverse, rat, Family, InverseVariant, Mat};
//!
//! let f = Family::hermite2(rat(1, 2)).unwrap();
//! let m = build(&f, 2).unwrap();
//! let inv = closed_inverse(&f, 2, InverseVariant::CORRECTED).unwrap();
//! assert_eq!(&m * &inv, Mat::identity(3));
//! ```

pub mod bench;
pub mod closedform;
pub mod error;
pub mod exact;
pub mod format;
pub mod hankel;
pub mod oracle;
pub mod qpoly;
pub mod validate;
pub mod verify;

pub use closedform::{
    closed_det, closed_inverse, inverse_via_kernel, kernel_eval, matrix_poly, measure_poly,
    norm_ratio, norm_rational_part, InverseVariant,
};
pub use error::{Error, Result};
pub use exact::{cos_quarter, int, parse_rat, qbinom, qpoch, qpoch_inf_float, qpow, rat, Rat};
pub use hankel::{build, entry, invertible_params, Family, Mat};
pub use oracle::{
    bareiss_det, bordered_kernel, det_orthogonal_poly, gauss_inverse, identity_residual,
    reproducing_residual,
};
pub use qpoly::{
    difference_relation_residual, dq, dq_functional, family_poly, hermite_at_zero, PolyRat,
};
pub use validate::{hilbert_limit, moment_check, orthogonality_residual, TruncationSpec};
pub use verify::{run_sweep, verify_point, VerifyOptions, VerifyReport};
