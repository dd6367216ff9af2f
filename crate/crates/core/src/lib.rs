//! Exact q-series computation engine.
//!
//! Everything here is exact: polynomials carry arbitrary-precision integer
//! coefficients, division must leave zero remainder, and exponents formed
//! from rational parameters are certified integral before use. The crate
//! provides:
//!
//! - [`poly`]: dense Laurent polynomial arithmetic (the universal value type)
//! - [`rational`]: exact fractions for transform parameters and exponents
//! - [`qfun`]: q-Pochhammer products, q-binomial coefficients (two
//!   independent routes), Rogers-Szego polynomials
//! - [`bressoud`]: the alternating q-binomial families G(N,M;alpha,beta,K)
//!   and D_{K,i}(N,M;alpha,beta) with conjecture admissibility predicates
//! - [`transforms`]: the cubic positivity-preserving transformation kernels
//!   T, Ttilde, f, base-identity verification, and iterated application
//! - [`identities`]: a registry of named identities and positivity claims,
//!   each verifiable over a parameter range, plus the conjecture-window
//!   scanner
//!
//! All values are immutable and all evaluation functions are pure, so
//! anything here may be called concurrently; the scanner and the registry
//! expose an optional thread count for fan-out.

pub mod bressoud;
pub mod error;
pub mod identities;
pub mod poly;
pub mod qfun;
pub mod rational;
pub mod transforms;

pub use bressoud::{
    check_admissible, enumerate_admissible, eval_d, eval_g, g_j_range, Conjecture,
    ConjectureWindow, DParams, GParams, ScanPoint,
};
pub use num::bigint::BigInt;
pub use error::{QError, QResult};
pub use identities::{
    check_positivity, scan_conjecture, verify_all, verify_identity, Counterexample, IdentityId,
    IdentityReport, ReportId, ScanSummary, Verdict, VerifyOptions,
};
pub use poly::{LaurentPoly, Sign};
pub use qfun::{
    pochhammer, q_binomial, q_binomial_pascal, q_binomial_row, q_pochhammer, rogers_szego,
    PochhammerSpec,
};
pub use rational::ExactRational;
pub use transforms::{
    apply_transform, f_coeff, iterate_transform, t_coeff, t_tilde_coeff, verify_base,
    BaseIdentityCheck, IteratedTransform, TransformKind,
};
