//! The two central alternating q-binomial families and their conjecture
//! admissibility predicates.
//!
//! [`eval_g`] computes
//! `G(N,M;alpha,beta,K) = sum_j (-1)^j q^{(K/2) j ((alpha+beta) j + alpha - beta)} [M+N, N-Kj]_q`
//! and [`eval_d`] the two-family sum
//! `D_{K,i}(N,M;alpha,beta) = sum_j { q^{j((a+b)Kj + Kb - (a+b)i)} [M+N, M-Kj]_q
//!                                  - q^{((a+b)j + b)(Kj + i)} [M+N, M-Kj-i]_q }`,
//! both over the finite support of their binomials. Every exponent is formed
//! in exact rational arithmetic and certified integral per term; a failed
//! certification is an error, never a rounding.
//!
//! N and M are accepted as signed integers: iterated-transform parameter
//! families push N below zero for small n, where the empty binomial support
//! makes the sum vanish. Admissibility of a parameter point under the two
//! non-negativity conjectures is a separate predicate ([`check_admissible`]),
//! not a constructor restriction, because the identity suite evaluates far
//! outside the conjectured windows.

use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{QError, QResult};
use crate::poly::{LaurentPoly, Sign};
use crate::qfun::q_binomial;
use crate::rational::ExactRational;

/// Parameters of G(N,M;alpha,beta,K).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GParams {
    pub n: i64,
    pub m: i64,
    pub alpha: ExactRational,
    pub beta: ExactRational,
    pub k: i64,
}

impl GParams {
    pub fn new(n: i64, m: i64, alpha: ExactRational, beta: ExactRational, k: i64) -> QResult<Self> {
        if k < 1 {
            return Err(QError::Range(format!("K must be a positive integer, got {k}")));
        }
        if alpha.is_negative() || beta.is_negative() {
            return Err(QError::Range(format!(
                "alpha and beta must be non-negative, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(GParams { n, m, alpha, beta, k })
    }
}

impl fmt::Display for GParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{};{},{},{})", self.n, self.m, self.alpha, self.beta, self.k)
    }
}

/// Parameters of D_{K,i}(N,M;alpha,beta), with 0 < i < K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DParams {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub i: i64,
    pub alpha: ExactRational,
    pub beta: ExactRational,
}

impl DParams {
    pub fn new(
        n: i64,
        m: i64,
        k: i64,
        i: i64,
        alpha: ExactRational,
        beta: ExactRational,
    ) -> QResult<Self> {
        if k < 1 || i < 1 || i >= k {
            return Err(QError::Range(format!(
                "D indices require 0 < i < K, got K = {k}, i = {i}"
            )));
        }
        if alpha.is_negative() || beta.is_negative() {
            return Err(QError::Range(format!(
                "alpha and beta must be non-negative, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(DParams { n, m, k, i, alpha, beta })
    }
}

impl fmt::Display for DParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D[{},{}]({},{};{},{})",
            self.k, self.i, self.n, self.m, self.alpha, self.beta
        )
    }
}

/// Inclusive j-interval on which `[total, b0 - k*j]_q` is nonzero, i.e.
/// 0 <= b0 - k*j <= total. `None` when the support is empty.
fn binomial_support(total: i64, b0: i64, k: i64) -> Option<RangeInclusive<i64>> {
    if total < 0 {
        return None;
    }
    // floor and ceiling of exact divisions, valid for negative numerators
    let lo = -(total - b0).div_euclid(k);
    let hi = b0.div_euclid(k);
    (lo <= hi).then_some(lo..=hi)
}

/// The j-interval carrying all nonzero terms of [`eval_g`]:
/// ceil(-M/K) <= j <= floor(N/K). `None` when no term survives.
pub fn g_j_range(params: &GParams) -> Option<RangeInclusive<i64>> {
    binomial_support(params.m + params.n, params.n, params.k)
}

fn certify_integer(value: &ExactRational, j: i64) -> QResult<i64> {
    let int = value
        .to_bigint()
        .ok_or_else(|| QError::NonIntegralExponent { j, value: value.to_string() })?;
    num::ToPrimitive::to_i64(&int).ok_or_else(|| QError::Range(format!(
        "exponent {int} exceeds the machine range at j = {j}"
    )))
}

/// Exact evaluation of G(N,M;alpha,beta,K).
pub fn eval_g(params: &GParams) -> QResult<LaurentPoly> {
    let Some(range) = g_j_range(params) else {
        return Ok(LaurentPoly::zero());
    };
    let sum = &params.alpha + &params.beta;
    let diff = &params.alpha - &params.beta;
    let mut acc = LaurentPoly::zero();
    for j in range {
        // (1/2) K j ((alpha+beta) j + alpha - beta)
        let e = ExactRational::new(params.k * j, 2).unwrap() * (sum.mul_int(j) + diff.clone());
        let e = certify_integer(&e, j)?;
        let term = q_binomial(params.m + params.n, params.n - params.k * j)
            .monomial_mul(Sign::from_parity(j), e);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Exact evaluation of D_{K,i}(N,M;alpha,beta).
///
/// The summation range is the union of the two binomial supports, handled
/// independently for each family.
pub fn eval_d(params: &DParams) -> QResult<LaurentPoly> {
    let total = params.m + params.n;
    let sum = &params.alpha + &params.beta;
    let mut acc = LaurentPoly::zero();

    if let Some(range) = binomial_support(total, params.m, params.k) {
        for j in range {
            // j ((alpha+beta) K j + K beta - (alpha+beta) i)
            let e = (sum.mul_int(params.k * j) + params.beta.mul_int(params.k)
                - sum.mul_int(params.i))
            .mul_int(j);
            let e = certify_integer(&e, j)?;
            let term =
                q_binomial(total, params.m - params.k * j).monomial_mul(Sign::Plus, e);
            acc = acc.add(&term);
        }
    }
    if let Some(range) = binomial_support(total, params.m - params.i, params.k) {
        for j in range {
            // ((alpha+beta) j + beta) (K j + i)
            let e = (sum.mul_int(j) + params.beta.clone()).mul_int(params.k * j + params.i);
            let e = certify_integer(&e, j)?;
            let term = q_binomial(total, params.m - params.k * j - params.i)
                .monomial_mul(Sign::Minus, e);
            acc = acc.add(&term);
        }
    }
    Ok(acc)
}

/// Which non-negativity conjecture a window or point refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conjecture {
    /// Bressoud's conjecture on G(N,M;alpha,beta,K).
    #[serde(rename = "conjecture-1.1")]
    Conj11,
    /// The generalized Berkovich-Dhar conjecture on D_{K,i}(N,M;alpha,beta).
    #[serde(rename = "conjecture-1.2")]
    Conj12,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Conj11 => "conjecture-1.1",
            Conjecture::Conj12 => "conjecture-1.2",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Conjecture {
    type Err = QError;
    fn from_str(s: &str) -> QResult<Self> {
        match s {
            "conjecture-1.1" | "1.1" => Ok(Conjecture::Conj11),
            "conjecture-1.2" | "1.2" => Ok(Conjecture::Conj12),
            other => Err(QError::Parse(format!(
                "unknown conjecture {other:?}, expected conjecture-1.1 or conjecture-1.2"
            ))),
        }
    }
}

/// A parameter point submitted to [`check_admissible`] or produced by a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanPoint {
    G(GParams),
    D(DParams),
}

impl fmt::Display for ScanPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanPoint::G(p) => write!(f, "{p}"),
            ScanPoint::D(p) => write!(f, "{p}"),
        }
    }
}

/// A finite parameter rectangle over which a conjecture is scanned. The
/// (alpha, beta) grid is derived from the admissibility conditions, not
/// stored: alpha*K and beta*K (and alpha*i, beta*i for the D family) must be
/// non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureWindow {
    pub which: Conjecture,
    pub n_max: i64,
    pub m_max: i64,
    pub k_max: i64,
}

impl fmt::Display for ConjectureWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} N<={} M<={} K<={}",
            self.which, self.n_max, self.m_max, self.k_max
        )
    }
}

fn is_nonneg_integer(r: &ExactRational) -> bool {
    r.is_integer() && !r.is_negative()
}

fn admissible_g(p: &GParams) -> bool {
    if p.n < 0 || p.m < 0 || p.k < 1 {
        return false;
    }
    if !is_nonneg_integer(&p.alpha.mul_int(p.k)) || !is_nonneg_integer(&p.beta.mul_int(p.k)) {
        return false;
    }
    let s = &p.alpha + &p.beta;
    let lo = ExactRational::from_int(1);
    let hi = ExactRational::from_int(2 * p.k - 1);
    let sum_ok = if p.k == 2 { s > lo && s < hi } else { s >= lo && s <= hi };
    if !sum_ok {
        return false;
    }
    // beta - K <= N - M <= K - alpha
    let nm = ExactRational::from_int(p.n - p.m);
    p.beta.add_int(-p.k) <= nm && nm <= -(&p.alpha) + ExactRational::from_int(p.k)
}

fn admissible_d(p: &DParams) -> bool {
    if p.n < 0 || p.m < 0 || p.k < 1 || p.i < 1 || p.i >= p.k {
        return false;
    }
    for scale in [p.k, p.i] {
        if !is_nonneg_integer(&p.alpha.mul_int(scale)) || !is_nonneg_integer(&p.beta.mul_int(scale))
        {
            return false;
        }
    }
    let s = &p.alpha + &p.beta;
    let lo = ExactRational::from_int(1);
    let hi = ExactRational::from_int(p.k - 1);
    let strict = p.k == 4 && p.i == 2;
    let sum_ok = if strict { s > lo && s < hi } else { s >= lo && s <= hi };
    if !sum_ok {
        return false;
    }
    // beta - i <= N - M <= K - alpha - i
    let nm = ExactRational::from_int(p.n - p.m);
    p.beta.add_int(-p.i) <= nm && nm <= -(&p.alpha) + ExactRational::from_int(p.k - p.i)
}

/// True iff `point` satisfies every admissibility condition of `which`.
/// A point of the wrong family is never admissible.
pub fn check_admissible(which: Conjecture, point: &ScanPoint) -> bool {
    match (which, point) {
        (Conjecture::Conj11, ScanPoint::G(p)) => admissible_g(p),
        (Conjecture::Conj12, ScanPoint::D(p)) => admissible_d(p),
        _ => false,
    }
}

/// Every admissible point of the window, in deterministic lexicographic
/// order (K, i, alpha*K, beta*K, N, M).
pub fn enumerate_admissible(window: &ConjectureWindow) -> Vec<ScanPoint> {
    let mut points = Vec::new();
    match window.which {
        Conjecture::Conj11 => {
            for k in 1..=window.k_max {
                let scaled_max = k * (2 * k - 1);
                for a in 0..=scaled_max {
                    for b in 0..=scaled_max {
                        if a + b < k || a + b > scaled_max {
                            continue;
                        }
                        let alpha = ExactRational::new(a, k).unwrap();
                        let beta = ExactRational::new(b, k).unwrap();
                        for n in 0..=window.n_max {
                            for m in 0..=window.m_max {
                                let p = GParams {
                                    n,
                                    m,
                                    alpha: alpha.clone(),
                                    beta: beta.clone(),
                                    k,
                                };
                                if admissible_g(&p) {
                                    points.push(ScanPoint::G(p));
                                }
                            }
                        }
                    }
                }
            }
        }
        Conjecture::Conj12 => {
            for k in 2..=window.k_max {
                for i in 1..k {
                    let scaled_max = k * (k - 1);
                    for a in 0..=scaled_max {
                        for b in 0..=scaled_max {
                            if a + b < k || a + b > scaled_max {
                                continue;
                            }
                            let alpha = ExactRational::new(a, k).unwrap();
                            let beta = ExactRational::new(b, k).unwrap();
                            for n in 0..=window.n_max {
                                for m in 0..=window.m_max {
                                    let p = DParams {
                                        n,
                                        m,
                                        k,
                                        i,
                                        alpha: alpha.clone(),
                                        beta: beta.clone(),
                                    };
                                    if admissible_d(&p) {
                                        points.push(ScanPoint::D(p));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    points
}
