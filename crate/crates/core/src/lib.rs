//! Spectral classification of hyponormal weighted shift operators.
//!
//! * [`weights`]: weight families, validation, and the exact action of a
//!   shift and its adjoint on finitely supported vectors.
//! * [`spectra`]: the closed-form classification of every `λ ∈ ℂ` into the
//!   resolvent set and the point, residual and continuous spectra of a
//!   shift and its adjoint, together with the explicit adjoint eigenvectors
//!   and lower-bound machinery behind it.
//! * [`oracle`]: an independent numerical check built on finite bidiagonal
//!   sections and their smallest singular values.

pub mod oracle;
pub mod spectra;
pub mod weights;

pub use num_complex::Complex64;
