//! Registry of named identities and positivity claims, verifiable over
//! finite parameter ranges, plus the conjecture-window scanner.
//!
//! Every entry of [`IdentityId`] constructs both sides of its identity from
//! their defining sums -- left sides as sums of exact Pochhammer ratios,
//! right sides as alternating q-binomial sums or G-evaluations -- and
//! compares them coefficient by coefficient. Nothing is sampled or
//! approximated; a mismatch is reported with the first failing parameter
//! point and both sides in full.
//!
//! The scanner ([`scan_conjecture`]) enumerates every admissible point of a
//! finite conjecture window, evaluates the polynomial there, and reports any
//! negative coefficient. It never asserts a conjecture, only the window
//! outcome.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bressoud::{
    enumerate_admissible, eval_d, eval_g, Conjecture, ConjectureWindow, GParams, ScanPoint,
};
use crate::error::{QError, QResult};
use crate::poly::{LaurentPoly, Sign};
use crate::qfun::{one_minus_q, pochhammer, q_binomial_row, rogers_szego, PochhammerSpec};
use crate::transforms::{iterate_transform, verify_base, TransformKind};

/// The fixed catalog of verifiable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// A_n as a sum of Pochhammer ratios.
    AndrewsA,
    /// B_n as a sum of Pochhammer ratios.
    AndrewsB,
    /// C_n as a sum of Pochhammer ratios.
    AndrewsC,
    /// Alternating ratio sum = sum of (-1)^j q^{3j^2} [2n+a, n-3j-a], a = 0.
    Thm16A0,
    /// Same with a = 1.
    Thm16A1,
    /// Alternating ratio sum with q^{3j^2-3j} = sum with q^{3j^2+3j} weights.
    Thm17,
    /// Positive ratio sum = sum of (-1)^j q^{6j^2} [2n, n-3j].
    Thm18,
    /// Positive ratio sum = sum of (-1)^j q^{6j^2+3j} [2n+a, n-3j-a], a = 0.
    Thm19A0,
    /// Same with a = 1.
    Thm19A1,
    /// H_{2n}(-1) = (q;q^2)_n and its alternating-binomial rewriting.
    RsEven,
    /// H_n(-q) = (q;q^2)_{floor((n+1)/2)} and the q^j-weighted rewritings.
    RsOddQ,
    /// The q -> 1/q images: q^{j^2}- and q^{j^2+j}-weighted binomial sums.
    RsInverted,
    /// G(n,n+1;8/3,4/3,3) = sum_k q^{k(k+1)/2} [n,k] (-q)_k.
    BerkovichG1,
    /// G(n,n+1;4/3,2/3,3) = sum_k q^{(n+1)k} [n,k] (-q)_{n-k}.
    BerkovichG2,
    /// The even base transformation identity.
    BaseEven,
    /// The odd base transformation identity.
    BaseOdd,
    /// Single even transform application = next-level G, with prefactor.
    IterEven,
    /// Single odd transform application = next-level G, with prefactor.
    IterOdd,
    /// Non-negativity of the three iterated Borwein-type G families.
    PosCor112,
    /// Non-negativity of the two iterated G families at shifted centers.
    PosCor113,
}

impl IdentityId {
    pub const ALL: [IdentityId; 20] = [
        IdentityId::AndrewsA,
        IdentityId::AndrewsB,
        IdentityId::AndrewsC,
        IdentityId::Thm16A0,
        IdentityId::Thm16A1,
        IdentityId::Thm17,
        IdentityId::Thm18,
        IdentityId::Thm19A0,
        IdentityId::Thm19A1,
        IdentityId::RsEven,
        IdentityId::RsOddQ,
        IdentityId::RsInverted,
        IdentityId::BerkovichG1,
        IdentityId::BerkovichG2,
        IdentityId::BaseEven,
        IdentityId::BaseOdd,
        IdentityId::IterEven,
        IdentityId::IterOdd,
        IdentityId::PosCor112,
        IdentityId::PosCor113,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::AndrewsA => "andrews-A",
            IdentityId::AndrewsB => "andrews-B",
            IdentityId::AndrewsC => "andrews-C",
            IdentityId::Thm16A0 => "thm16-a0",
            IdentityId::Thm16A1 => "thm16-a1",
            IdentityId::Thm17 => "thm17",
            IdentityId::Thm18 => "thm18",
            IdentityId::Thm19A0 => "thm19-a0",
            IdentityId::Thm19A1 => "thm19-a1",
            IdentityId::RsEven => "rs-even",
            IdentityId::RsOddQ => "rs-odd-q",
            IdentityId::RsInverted => "rs-inverted",
            IdentityId::BerkovichG1 => "berkovich-g1",
            IdentityId::BerkovichG2 => "berkovich-g2",
            IdentityId::BaseEven => "base-even",
            IdentityId::BaseOdd => "base-odd",
            IdentityId::IterEven => "iter-even",
            IdentityId::IterOdd => "iter-odd",
            IdentityId::PosCor112 => "pos-cor112",
            IdentityId::PosCor113 => "pos-cor113",
        }
    }

    /// Default sweep bound (n for the sum identities, L for the base
    /// identities); chosen so the full suite runs in well under two minutes.
    pub fn default_n_max(self) -> i64 {
        match self {
            IdentityId::AndrewsA
            | IdentityId::AndrewsB
            | IdentityId::AndrewsC
            | IdentityId::Thm16A0
            | IdentityId::Thm16A1
            | IdentityId::Thm17
            | IdentityId::Thm18
            | IdentityId::Thm19A0
            | IdentityId::Thm19A1 => 30,
            IdentityId::RsEven | IdentityId::RsOddQ | IdentityId::RsInverted => 40,
            IdentityId::BerkovichG1 | IdentityId::BerkovichG2 => 25,
            IdentityId::BaseEven | IdentityId::BaseOdd => 15,
            IdentityId::IterEven | IdentityId::IterOdd => 10,
            IdentityId::PosCor112 | IdentityId::PosCor113 => 20,
        }
    }

    pub fn default_t_max(self) -> u32 {
        2
    }

    pub fn is_positivity(self) -> bool {
        matches!(self, IdentityId::PosCor112 | IdentityId::PosCor113)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = QError;
    fn from_str(s: &str) -> QResult<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| QError::Parse(format!("unknown identity {s:?}")))
    }
}

/// What a report is about: a catalog identity or a conjecture window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportId {
    Identity(IdentityId),
    Conjecture(Conjecture),
}

impl ReportId {
    pub fn name(self) -> &'static str {
        match self {
            ReportId::Identity(id) => id.name(),
            ReportId::Conjecture(c) => c.name(),
        }
    }
}

impl fmt::Display for ReportId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// First failing parameter point, with both sides in full (no truncation).
/// `rhs` is absent for pure positivity checks, which have only one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub point: String,
    pub lhs: LaurentPoly,
    pub rhs: Option<LaurentPoly>,
}

/// Outcome of verifying one named statement over a range.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub id: ReportId,
    /// Tested range description; for a failing report the counterexample
    /// carries the exact failing point.
    pub params: String,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = 4 + self.counterexample.as_ref().map_or(0, |c| 1 + usize::from(c.rhs.is_some()));
        let mut st = serializer.serialize_struct("IdentityReport", n)?;
        st.serialize_field("id", self.id.name())?;
        match &self.counterexample {
            None => st.serialize_field("params", &self.params)?,
            Some(c) => {
                st.serialize_field("params", &c.point)?;
                st.serialize_field("lhs", &c.lhs)?;
                if let Some(rhs) = &c.rhs {
                    st.serialize_field("rhs", rhs)?;
                }
            }
        }
        st.serialize_field("verdict", self.verdict.name())?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        st.end()
    }
}

/// Range overrides for [`verify_identity`]; `None` keeps the defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub n_max: Option<i64>,
    pub t_max: Option<u32>,
}

// ---------------------------------------------------------------------------
// Ratio sums
// ---------------------------------------------------------------------------

/// One summand `num / prod_e (1 - q^e)`; the denominator is carried as its
/// factor exponents so division can proceed factor by factor.
struct Ratio {
    num: LaurentPoly,
    den_factors: Vec<i64>,
}

fn divide_by_factors(num: &LaurentPoly, factors: &[i64]) -> QResult<LaurentPoly> {
    factors
        .iter()
        .try_fold(num.clone(), |p, &e| p.exact_div(&one_minus_q(e)))
}

/// Sum of ratios, each divided out on its own; if some summand is not itself
/// a polynomial the whole sum is redone over a common denominator (the
/// factor-multiset lcm), where only the total needs to divide.
fn sum_ratios(ratios: &[Ratio]) -> QResult<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for r in ratios {
        match divide_by_factors(&r.num, &r.den_factors) {
            Ok(q) => acc = acc.add(&q),
            Err(QError::NotDivisible(_)) => return sum_ratios_common_den(ratios),
            Err(e) => return Err(e),
        }
    }
    Ok(acc)
}

fn factor_multiset(factors: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &e in factors {
        *m.entry(e).or_insert(0) += 1;
    }
    m
}

fn sum_ratios_common_den(ratios: &[Ratio]) -> QResult<LaurentPoly> {
    let mut lcm: BTreeMap<i64, usize> = BTreeMap::new();
    for r in ratios {
        for (e, mult) in factor_multiset(&r.den_factors) {
            let entry = lcm.entry(e).or_insert(0);
            *entry = (*entry).max(mult);
        }
    }
    let mut acc = LaurentPoly::zero();
    for r in ratios {
        let own = factor_multiset(&r.den_factors);
        let mut term = r.num.clone();
        for (&e, &mult) in &lcm {
            let extra = mult - own.get(&e).copied().unwrap_or(0);
            for _ in 0..extra {
                term = term.mul(&one_minus_q(e));
            }
        }
        acc = acc.add(&term);
    }
    let all: Vec<i64> = lcm
        .iter()
        .flat_map(|(&e, &mult)| std::iter::repeat(e).take(mult))
        .collect();
    divide_by_factors(&acc, &all)
}

/// Exponent list of (q^base; q^base)_length, i.e. base, 2*base, ..., L*base.
fn poch_factors(base: i64, length: i64) -> QResult<Vec<i64>> {
    if length < 0 {
        return Err(QError::NegativeLength(length));
    }
    Ok((1..=length).map(|i| i * base).collect())
}

fn product_of_factors(exponents: &[i64]) -> LaurentPoly {
    exponents
        .iter()
        .fold(LaurentPoly::one(), |acc, &e| acc.mul(&one_minus_q(e)))
}

// ---------------------------------------------------------------------------
// Right-hand side binomial sums
// ---------------------------------------------------------------------------

/// sum over j of sign(j) * q^{exp(j)} * [total, b0 - 3j]_q, j on the full
/// binomial support.
fn alternating_trinomial_sum(total: i64, b0: i64, exp: impl Fn(i64) -> i64) -> LaurentPoly {
    let row = q_binomial_row(total);
    let mut acc = LaurentPoly::zero();
    if total < 0 {
        return acc;
    }
    let lo = (b0 - total).div_euclid(3) + i64::from((b0 - total).rem_euclid(3) != 0);
    let hi = b0.div_euclid(3);
    for j in lo..=hi {
        let idx = b0 - 3 * j;
        acc = acc.add(&row[idx as usize].monomial_mul(Sign::from_parity(j), exp(j)));
    }
    acc
}

/// sum_{j=j_lo}^{j_hi} (-1)^j q^{exp(j)} [total, center - j]_q.
fn weighted_row_sum(
    total: i64,
    center: i64,
    j_lo: i64,
    j_hi: i64,
    exp: impl Fn(i64) -> i64,
) -> LaurentPoly {
    let row = q_binomial_row(total);
    let mut acc = LaurentPoly::zero();
    for j in j_lo..=j_hi {
        let idx = center - j;
        if idx < 0 || idx > total {
            continue;
        }
        acc = acc.add(&row[idx as usize].monomial_mul(Sign::from_parity(j), exp(j)));
    }
    acc
}

fn odd_square_poch(n: i64) -> QResult<LaurentPoly> {
    // (q; q^2)_n
    pochhammer(&PochhammerSpec::new(Sign::Plus, 1, 2, n))
}

fn neg_q_poch(n: i64) -> QResult<LaurentPoly> {
    // (-q; q)_n
    pochhammer(&PochhammerSpec::new(Sign::Minus, 1, 1, n))
}

fn rat(s: &str) -> crate::rational::ExactRational {
    s.parse().expect("literal rational")
}

// ---------------------------------------------------------------------------
// Individual checkers
// ---------------------------------------------------------------------------

type CheckOutcome = QResult<Option<Counterexample>>;

fn mismatch(point: String, lhs: LaurentPoly, rhs: LaurentPoly) -> Option<Counterexample> {
    Some(Counterexample { point, lhs, rhs: Some(rhs) })
}

/// The three representations of the Borwein polynomials as ratio sums.
fn check_andrews(id: IdentityId, n_max: i64) -> CheckOutcome {
    for n in 1..=n_max {
        let (g_params, j_bound): (GParams, i64) = match id {
            IdentityId::AndrewsA => {
                (GParams::new(n, n, rat("4/3"), rat("5/3"), 3)?, n)
            }
            IdentityId::AndrewsB => {
                (GParams::new(n + 1, n - 1, rat("2/3"), rat("7/3"), 3)?, n - 1)
            }
            IdentityId::AndrewsC => {
                (GParams::new(n + 1, n - 1, rat("1/3"), rat("8/3"), 3)?, n - 1)
            }
            _ => unreachable!(),
        };
        let mut ratios = Vec::new();
        for j in 0..=(j_bound / 3) {
            let ratio = match id {
                IdentityId::AndrewsA => {
                    let num = product_of_factors(&poch_factors(3, n - j - 1)?)
                        .mul(&one_minus_q(2 * n))
                        .mul(&product_of_factors(&poch_factors(1, 3 * j)?))
                        .monomial_mul(Sign::Plus, 3 * j * j);
                    let mut den = poch_factors(1, n - 3 * j)?;
                    den.extend(poch_factors(3, 2 * j)?);
                    den.extend(poch_factors(3, j)?);
                    Ratio { num, den_factors: den }
                }
                IdentityId::AndrewsB | IdentityId::AndrewsC => {
                    let inner = if id == IdentityId::AndrewsB {
                        // 1 - q^{3j+2} - q^{n+3j+2} + q^{n+1}
                        LaurentPoly::from_terms(&[
                            (0, 1),
                            (3 * j + 2, -1),
                            (n + 3 * j + 2, -1),
                            (n + 1, 1),
                        ])
                    } else {
                        // 1 - q^{3j+1} - q^{n+3j+2} + q^n
                        LaurentPoly::from_terms(&[
                            (0, 1),
                            (3 * j + 1, -1),
                            (n + 3 * j + 2, -1),
                            (n, 1),
                        ])
                    };
                    let num = product_of_factors(&poch_factors(3, n - j - 1)?)
                        .mul(&inner)
                        .mul(&product_of_factors(&poch_factors(1, 3 * j)?))
                        .monomial_mul(Sign::Plus, 3 * j * j + 3 * j);
                    let mut den = poch_factors(1, n - 3 * j - 1)?;
                    den.extend(poch_factors(3, 2 * j + 1)?);
                    den.extend(poch_factors(3, j)?);
                    Ratio { num, den_factors: den }
                }
                _ => unreachable!(),
            };
            ratios.push(ratio);
        }
        let lhs = sum_ratios(&ratios)?;
        let rhs = eval_g(&g_params)?;
        if lhs != rhs {
            return Ok(mismatch(format!("n={n}"), lhs, rhs));
        }
    }
    Ok(None)
}

/// The four ratio-sum = alternating-binomial-sum families, with the right
/// side additionally asserted non-negative.
///
/// Equality is checked over the whole range before any non-negativity
/// violation is reported, so a negative coefficient never masks an equality
/// mismatch at a later n.
fn check_ratio_binomial(id: IdentityId, n_max: i64) -> CheckOutcome {
    let mut nonneg_violation = None;
    for n in 1..=n_max {
        let (lhs, rhs): (LaurentPoly, LaurentPoly) = match id {
            IdentityId::Thm16A0 | IdentityId::Thm16A1 => {
                let a = i64::from(id == IdentityId::Thm16A1);
                let mut ratios = Vec::new();
                for j in 0..=((n - a) / 3) {
                    let num = product_of_factors(&poch_factors(3, n - j - 1)?)
                        .mul(&one_minus_q(2 * n + a))
                        .monomial_mul(Sign::from_parity(j), 3 * j * j);
                    let mut den = poch_factors(1, n - 3 * j - a)?;
                    den.extend(poch_factors(6, j)?);
                    ratios.push(Ratio { num, den_factors: den });
                }
                let lhs = sum_ratios(&ratios)?;
                let rhs = alternating_trinomial_sum(2 * n + a, n - a, |j| 3 * j * j);
                (lhs, rhs)
            }
            IdentityId::Thm17 => {
                let mut ratios = Vec::new();
                for j in 0..=(n / 3) {
                    let num = product_of_factors(&poch_factors(3, n - j - 1)?)
                        .mul(&one_minus_q(2 * n))
                        .monomial_mul(Sign::from_parity(j), 3 * j * j - 3 * j);
                    let mut den = poch_factors(1, n - 3 * j)?;
                    den.extend(poch_factors(6, j)?);
                    ratios.push(Ratio { num, den_factors: den });
                }
                let lhs = sum_ratios(&ratios)?;
                let rhs = alternating_trinomial_sum(2 * n, n, |j| 3 * j * j + 3 * j);
                (lhs, rhs)
            }
            IdentityId::Thm18 => {
                let mut ratios = Vec::new();
                for j in 0..=(n / 3) {
                    let num = product_of_factors(&poch_factors(3, n - j - 1)?)
                        .mul(&one_minus_q(2 * n))
                        .monomial_mul(Sign::Plus, 3 * j * j);
                    let mut den = poch_factors(1, n - 3 * j)?;
                    den.extend(poch_factors(6, j)?);
                    ratios.push(Ratio { num, den_factors: den });
                }
                let lhs = sum_ratios(&ratios)?;
                let rhs = alternating_trinomial_sum(2 * n, n, |j| 6 * j * j);
                (lhs, rhs)
            }
            IdentityId::Thm19A0 | IdentityId::Thm19A1 => {
                let a = i64::from(id == IdentityId::Thm19A1);
                let mut ratios = Vec::new();
                for j in 0..=((n - a) / 3) {
                    let num = product_of_factors(&poch_factors(3, n - j - 1)?)
                        .mul(&one_minus_q(2 * n + a))
                        .monomial_mul(Sign::Plus, 3 * j * j + 3 * j);
                    let mut den = poch_factors(1, n - 3 * j - a)?;
                    den.extend(poch_factors(6, j)?);
                    ratios.push(Ratio { num, den_factors: den });
                }
                let lhs = sum_ratios(&ratios)?;
                let rhs = alternating_trinomial_sum(2 * n + a, n - a, |j| 6 * j * j + 3 * j);
                (lhs, rhs)
            }
            _ => unreachable!(),
        };
        if lhs != rhs {
            return Ok(mismatch(format!("n={n}"), lhs, rhs));
        }
        if nonneg_violation.is_none() && !rhs.is_nonneg() {
            nonneg_violation = Some(Counterexample {
                point: format!("n={n} (right side has a negative coefficient)"),
                lhs,
                rhs: Some(rhs),
            });
        }
    }
    Ok(nonneg_violation)
}

fn check_rs(id: IdentityId, n_max: i64) -> CheckOutcome {
    for n in 0..=n_max {
        let checks: Vec<(String, LaurentPoly, LaurentPoly)> = match id {
            IdentityId::RsEven => vec![
                (
                    format!("n={n} (H form)"),
                    rogers_szego(2 * n, Sign::Minus, 0),
                    odd_square_poch(n)?,
                ),
                (
                    format!("n={n} (binomial form)"),
                    weighted_row_sum(2 * n, n, -n, n, |_| 0),
                    odd_square_poch(n)?.monomial_mul(Sign::from_parity(n), 0),
                ),
            ],
            IdentityId::RsOddQ => vec![
                (
                    format!("n={n} (H form)"),
                    rogers_szego(n, Sign::Minus, 1),
                    odd_square_poch((n + 1) / 2)?,
                ),
                (
                    format!("n={n} (odd-row form)"),
                    weighted_row_sum(2 * n + 1, n, -n - 1, n, |j| j),
                    odd_square_poch(n + 1)?
                        .monomial_mul(Sign::from_parity(n + 1), -n - 1),
                ),
                (
                    format!("n={n} (even-row form)"),
                    weighted_row_sum(2 * n, n, -n, n, |j| j),
                    odd_square_poch(n)?.monomial_mul(Sign::from_parity(n), -n),
                ),
            ],
            IdentityId::RsInverted => vec![
                (
                    format!("n={n} (even-row form)"),
                    weighted_row_sum(2 * n, n, -n, n, |j| j * j),
                    odd_square_poch(n)?,
                ),
                (
                    format!("n={n} (odd-row form)"),
                    weighted_row_sum(2 * n + 1, n, -n - 1, n, |j| j * j),
                    odd_square_poch(n + 1)?,
                ),
                (
                    format!("n={n} (shifted form)"),
                    weighted_row_sum(2 * n, n, -n, n, |j| j * j + j),
                    odd_square_poch(n)?.monomial_mul(Sign::Plus, n),
                ),
            ],
            _ => unreachable!(),
        };
        for (point, lhs, rhs) in checks {
            if lhs != rhs {
                return Ok(mismatch(point, lhs, rhs));
            }
        }
    }
    Ok(None)
}

fn check_berkovich(id: IdentityId, n_max: i64) -> CheckOutcome {
    for n in 0..=n_max {
        let row = q_binomial_row(n);
        let (lhs, rhs) = match id {
            IdentityId::BerkovichG1 => {
                let g = eval_g(&GParams::new(n, n + 1, rat("8/3"), rat("4/3"), 3)?)?;
                let mut sum = LaurentPoly::zero();
                for k in 0..=n {
                    let term = row[k as usize]
                        .mul(&neg_q_poch(k)?)
                        .monomial_mul(Sign::Plus, k * (k + 1) / 2);
                    sum = sum.add(&term);
                }
                (g, sum)
            }
            IdentityId::BerkovichG2 => {
                let g = eval_g(&GParams::new(n, n + 1, rat("4/3"), rat("2/3"), 3)?)?;
                let mut sum = LaurentPoly::zero();
                for k in 0..=n {
                    let term = row[k as usize]
                        .mul(&neg_q_poch(n - k)?)
                        .monomial_mul(Sign::Plus, (n + 1) * k);
                    sum = sum.add(&term);
                }
                (g, sum)
            }
            _ => unreachable!(),
        };
        if lhs != rhs {
            return Ok(mismatch(format!("n={n}"), lhs, rhs));
        }
    }
    Ok(None)
}

fn check_base(id: IdentityId, l_max: i64) -> CheckOutcome {
    let kind = if id == IdentityId::BaseEven { TransformKind::Even } else { TransformKind::Odd };
    for l in 1..=l_max {
        for j in -(l + 1)..=(l + 1) {
            let c = verify_base(kind, l, j)?;
            if !c.holds {
                return Ok(mismatch(format!("L={l} j={j}"), c.lhs, c.rhs));
            }
        }
    }
    Ok(None)
}

fn iter_grid(id: IdentityId) -> (TransformKind, Vec<(i64, i64, i64)>) {
    match id {
        IdentityId::IterEven => (
            TransformKind::Even,
            [-1i64, 0, 1]
                .into_iter()
                .flat_map(|a| [(a, 4, 5), (a, 2, 7), (a, 1, 8)])
                .collect(),
        ),
        IdentityId::IterOdd => (
            TransformKind::Odd,
            [0i64, 1].into_iter().flat_map(|a| [(a, 8, 4), (a, 4, 2)]).collect(),
        ),
        _ => unreachable!(),
    }
}

fn check_iter(id: IdentityId, n_max: i64) -> CheckOutcome {
    let (kind, grid) = iter_grid(id);
    for &(a, x, y) in &grid {
        for n in 1..=n_max {
            let it = iterate_transform(kind, 1, n, a, x, y)?;
            let rhs = eval_g(&it.params)?.monomial_mul(Sign::Plus, it.prefactor_exp);
            if it.value != rhs {
                return Ok(mismatch(format!("a={a} x={x} y={y} n={n}"), it.value, rhs));
            }
        }
    }
    Ok(None)
}

fn positivity_entries(id: IdentityId) -> (TransformKind, Vec<(i64, i64, i64)>) {
    match id {
        IdentityId::PosCor112 => (TransformKind::Even, vec![(0, 4, 5), (1, 2, 7), (1, 1, 8)]),
        IdentityId::PosCor113 => (TransformKind::Odd, vec![(0, 8, 4), (0, 4, 2)]),
        _ => unreachable!(),
    }
}

fn check_positivity_inner(id: IdentityId, t_max: u32, n_max: i64) -> CheckOutcome {
    let (kind, entries) = positivity_entries(id);
    for &(a, x, y) in &entries {
        for t in 0..=t_max {
            for n in 0..=n_max {
                let params = crate::transforms::level_g_params(kind, t, n, a, x, y)?;
                let value = eval_g(&params)?;
                if !value.is_nonneg() {
                    return Ok(Some(Counterexample {
                        point: format!("entry (a,x,y)=({a},{x},{y}) t={t} n={n}: {params}"),
                        lhs: value,
                        rhs: None,
                    }));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

fn range_description(id: IdentityId, n_max: i64, t_max: u32) -> String {
    match id {
        IdentityId::RsEven
        | IdentityId::RsOddQ
        | IdentityId::RsInverted
        | IdentityId::BerkovichG1
        | IdentityId::BerkovichG2 => format!("n=0..{n_max}"),
        IdentityId::BaseEven | IdentityId::BaseOdd => {
            format!("L=1..{n_max}, j=-(L+1)..L+1")
        }
        IdentityId::IterEven => {
            format!("n=1..{n_max}, a in {{-1,0,1}}, (x,y) in {{(4,5),(2,7),(1,8)}}")
        }
        IdentityId::IterOdd => {
            format!("n=1..{n_max}, a in {{0,1}}, (x,y) in {{(8,4),(4,2)}}")
        }
        IdentityId::PosCor112 | IdentityId::PosCor113 => {
            format!("t=0..{t_max}, n=0..{n_max}")
        }
        _ => format!("n=1..{n_max}"),
    }
}

fn minimum_bound(id: IdentityId) -> i64 {
    match id {
        IdentityId::RsEven
        | IdentityId::RsOddQ
        | IdentityId::RsInverted
        | IdentityId::BerkovichG1
        | IdentityId::BerkovichG2
        | IdentityId::PosCor112
        | IdentityId::PosCor113 => 0,
        _ => 1,
    }
}

/// Verify one catalog entry over its default range, with optional overrides.
pub fn verify_identity(id: IdentityId, opts: &VerifyOptions) -> QResult<IdentityReport> {
    let n_max = opts.n_max.unwrap_or_else(|| id.default_n_max());
    let t_max = opts.t_max.unwrap_or_else(|| id.default_t_max());
    if n_max < minimum_bound(id) {
        return Err(QError::Range(format!(
            "identity {id} requires a sweep bound >= {}, got {n_max}",
            minimum_bound(id)
        )));
    }
    let start = Instant::now();
    let counterexample = match id {
        IdentityId::AndrewsA | IdentityId::AndrewsB | IdentityId::AndrewsC => {
            check_andrews(id, n_max)?
        }
        IdentityId::Thm16A0
        | IdentityId::Thm16A1
        | IdentityId::Thm17
        | IdentityId::Thm18
        | IdentityId::Thm19A0
        | IdentityId::Thm19A1 => check_ratio_binomial(id, n_max)?,
        IdentityId::RsEven | IdentityId::RsOddQ | IdentityId::RsInverted => check_rs(id, n_max)?,
        IdentityId::BerkovichG1 | IdentityId::BerkovichG2 => check_berkovich(id, n_max)?,
        IdentityId::BaseEven | IdentityId::BaseOdd => check_base(id, n_max)?,
        IdentityId::IterEven | IdentityId::IterOdd => check_iter(id, n_max)?,
        IdentityId::PosCor112 | IdentityId::PosCor113 => {
            check_positivity_inner(id, t_max, n_max)?
        }
    };
    Ok(IdentityReport {
        id: ReportId::Identity(id),
        params: range_description(id, n_max, t_max),
        verdict: if counterexample.is_none() { Verdict::Pass } else { Verdict::Fail },
        counterexample,
        elapsed: start.elapsed(),
    })
}

/// Positivity sweep of one corollary family over 0..=t_max, 0..=n_max.
pub fn check_positivity(id: IdentityId, t_max: u32, n_max: i64) -> QResult<IdentityReport> {
    if !id.is_positivity() {
        return Err(QError::Range(format!("{id} is not a positivity entry")));
    }
    verify_identity(id, &VerifyOptions { n_max: Some(n_max), t_max: Some(t_max) })
}

fn run_maybe_parallel<T, R, F>(threads: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if threads <= 1 {
        items.into_iter().map(f).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool construction");
        pool.install(|| items.into_par_iter().map(f).collect())
    }
}

/// Verify the whole catalog; reports come back in catalog order regardless
/// of the thread count.
pub fn verify_all(opts: &VerifyOptions, threads: usize) -> QResult<Vec<IdentityReport>> {
    run_maybe_parallel(threads, IdentityId::ALL.to_vec(), |id| verify_identity(id, opts))
        .into_iter()
        .collect()
}

/// Outcome of scanning one conjecture window: the number of admissible
/// points evaluated and one report per violation.
#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub window: ConjectureWindow,
    pub tested: usize,
    pub violations: Vec<IdentityReport>,
    pub elapsed: Duration,
}

impl ScanSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One summary report in the same shape as identity reports.
    pub fn summary_report(&self) -> IdentityReport {
        IdentityReport {
            id: ReportId::Conjecture(self.window.which),
            params: format!("{} tested={}", self.window, self.tested),
            verdict: if self.passed() { Verdict::Pass } else { Verdict::Fail },
            counterexample: None,
            elapsed: self.elapsed,
        }
    }
}

/// Evaluate every admissible point of the window and test non-negativity.
///
/// Points are enumerated deterministically; with `threads > 1` the
/// evaluations fan out but the report order is unchanged.
pub fn scan_conjecture(window: &ConjectureWindow, threads: usize) -> QResult<ScanSummary> {
    let start = Instant::now();
    let points = enumerate_admissible(window);
    let tested = points.len();
    let which = window.which;
    let outcomes: Vec<QResult<Option<Counterexample>>> =
        run_maybe_parallel(threads, points, move |point| {
            let value = match &point {
                ScanPoint::G(p) => eval_g(p)?,
                ScanPoint::D(p) => eval_d(p)?,
            };
            if value.is_nonneg() {
                Ok(None)
            } else {
                Ok(Some(Counterexample {
                    point: point.to_string(),
                    lhs: value,
                    rhs: None,
                }))
            }
        });
    let mut violations = Vec::new();
    for outcome in outcomes {
        if let Some(ce) = outcome? {
            violations.push(IdentityReport {
                id: ReportId::Conjecture(which),
                params: ce.point.clone(),
                verdict: Verdict::Fail,
                counterexample: Some(ce),
                elapsed: Duration::ZERO,
            });
        }
    }
    Ok(ScanSummary { window: window.clone(), tested, violations, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    fn quick(id: IdentityId, n_max: i64) -> IdentityReport {
        verify_identity(id, &VerifyOptions { n_max: Some(n_max), t_max: Some(1) }).unwrap()
    }

    #[test]
    fn sum_ratios_per_summand_path() {
        // (1-q^2)/(1-q) + (1-q^3)/(1-q) = (1+q) + (1+q+q^2)
        let ratios = vec![
            Ratio { num: p(&[(0, 1), (2, -1)]), den_factors: vec![1] },
            Ratio { num: p(&[(0, 1), (3, -1)]), den_factors: vec![1] },
        ];
        assert_eq!(sum_ratios(&ratios).unwrap(), p(&[(0, 2), (1, 2), (2, 1)]));
    }

    #[test]
    fn sum_ratios_fallback_path() {
        // 1/(1-q) - q/(1-q) = 1: neither summand is a polynomial on its own
        let ratios = vec![
            Ratio { num: LaurentPoly::one(), den_factors: vec![1] },
            Ratio { num: p(&[(1, -1)]), den_factors: vec![1] },
        ];
        assert!(sum_ratios(&ratios).unwrap().is_one());

        // and a genuinely non-polynomial total still errors
        let bad = vec![Ratio { num: LaurentPoly::one(), den_factors: vec![1] }];
        assert!(matches!(sum_ratios(&bad), Err(QError::NotDivisible(_))));
    }

    #[test]
    fn andrews_hand_cases() {
        // andrews-A at n = 1: both sides are 1 + q
        let report = quick(IdentityId::AndrewsA, 1);
        assert!(report.passed());
        // spot value: the n = 1 left side is (1-q^2)/(1-q)
        let lhs = sum_ratios(&[Ratio {
            num: p(&[(0, 1), (2, -1)]),
            den_factors: vec![1],
        }])
        .unwrap();
        assert_eq!(lhs, p(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn andrews_small_ranges() {
        for id in [IdentityId::AndrewsA, IdentityId::AndrewsB, IdentityId::AndrewsC] {
            assert!(quick(id, 12).passed(), "{id}");
        }
    }

    #[test]
    fn thm_families_small_ranges() {
        for id in [
            IdentityId::Thm16A0,
            IdentityId::Thm17,
            IdentityId::Thm18,
            IdentityId::Thm19A0,
        ] {
            assert!(quick(id, 12).passed(), "{id}");
        }
    }

    #[test]
    fn thm16_a1_equality_holds_but_rhs_goes_negative() {
        // the equality itself is fine at every n; the non-negativity claim on
        // the right side already fails at n = 1, where both sides are 1 - q^3
        let report = quick(IdentityId::Thm16A1, 12);
        assert_eq!(report.verdict, Verdict::Fail);
        let ce = report.counterexample.unwrap();
        assert!(ce.point.contains("n=1"));
        assert!(ce.point.contains("negative"));
        assert_eq!(ce.rhs.unwrap(), p(&[(0, 1), (3, -1)]));
        assert_eq!(ce.lhs, p(&[(0, 1), (3, -1)]));
    }

    #[test]
    fn thm19_a1_equality_holds_but_rhs_goes_negative() {
        let report = quick(IdentityId::Thm19A1, 12);
        assert_eq!(report.verdict, Verdict::Fail);
        let ce = report.counterexample.unwrap();
        assert!(ce.point.contains("n=1"));
        assert_eq!(ce.lhs, ce.rhs.clone().unwrap());
        assert_eq!(ce.rhs.unwrap(), p(&[(0, 1), (3, -1)]));
    }

    #[test]
    fn rs_small_ranges() {
        for id in [IdentityId::RsEven, IdentityId::RsOddQ, IdentityId::RsInverted] {
            assert!(quick(id, 15).passed(), "{id}");
        }
    }

    #[test]
    fn rs_inverted_connects_by_variable_inversion() {
        // inverting q in the unweighted alternating sum and shifting by n^2
        // reproduces the q^{j^2}-weighted sum
        for n in 0..=10i64 {
            let plain = weighted_row_sum(2 * n, n, -n, n, |_| 0);
            let weighted = weighted_row_sum(2 * n, n, -n, n, |j| j * j);
            assert_eq!(
                plain.invert_variable().monomial_mul(Sign::Plus, n * n),
                weighted,
                "n={n}"
            );
        }
    }

    #[test]
    fn berkovich_small_ranges() {
        assert!(quick(IdentityId::BerkovichG1, 10).passed());
        assert!(quick(IdentityId::BerkovichG2, 10).passed());
    }

    #[test]
    fn base_and_iter_small_ranges() {
        assert!(quick(IdentityId::BaseEven, 6).passed());
        assert!(quick(IdentityId::BaseOdd, 6).passed());
        // the iterated-application entries at their full default grid
        assert!(quick(IdentityId::IterEven, 10).passed());
        assert!(quick(IdentityId::IterOdd, 10).passed());
    }

    #[test]
    fn positivity_small_ranges() {
        assert!(check_positivity(IdentityId::PosCor112, 1, 8).unwrap().passed());
        assert!(check_positivity(IdentityId::PosCor113, 1, 8).unwrap().passed());
        assert!(check_positivity(IdentityId::Thm17, 1, 8).is_err());
    }

    #[test]
    fn range_errors() {
        let opts = VerifyOptions { n_max: Some(0), t_max: None };
        assert!(matches!(
            verify_identity(IdentityId::Thm18, &opts),
            Err(QError::Range(_))
        ));
        // n = 0 is fine for the Rogers-Szego suite
        assert!(verify_identity(IdentityId::RsEven, &opts).unwrap().passed());
    }

    #[test]
    fn scan_tiny_windows() {
        let summary = scan_conjecture(
            &ConjectureWindow { which: Conjecture::Conj11, n_max: 4, m_max: 4, k_max: 2 },
            1,
        )
        .unwrap();
        assert!(summary.tested > 0);
        assert!(summary.passed());
        assert_eq!(summary.summary_report().verdict, Verdict::Pass);

        let summary = scan_conjecture(
            &ConjectureWindow { which: Conjecture::Conj12, n_max: 3, m_max: 3, k_max: 3 },
            1,
        )
        .unwrap();
        assert!(summary.tested > 0);
        assert!(summary.passed());

        // an empty window yields an empty report
        let summary = scan_conjecture(
            &ConjectureWindow { which: Conjecture::Conj11, n_max: -1, m_max: -1, k_max: 0 },
            1,
        )
        .unwrap();
        assert_eq!(summary.tested, 0);
        assert!(summary.passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = quick(IdentityId::Thm18, 6);
        let b = quick(IdentityId::Thm18, 6);
        assert_eq!(a.params, b.params);
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.counterexample, b.counterexample);

        let s1 = scan_conjecture(
            &ConjectureWindow { which: Conjecture::Conj11, n_max: 3, m_max: 3, k_max: 2 },
            1,
        )
        .unwrap();
        let s2 = scan_conjecture(
            &ConjectureWindow { which: Conjecture::Conj11, n_max: 3, m_max: 3, k_max: 2 },
            4,
        )
        .unwrap();
        assert_eq!(s1.tested, s2.tested);
        assert_eq!(s1.violations.len(), s2.violations.len());
    }

    #[test]
    fn report_json_shape() {
        let report = quick(IdentityId::Thm18, 4);
        let value: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(value["id"], "thm18");
        assert_eq!(value["verdict"], "pass");
        assert_eq!(value["params"], "n=1..4");
        assert!(value["elapsed_ms"].is_u64());
        assert!(value.get("lhs").is_none());

        let report = quick(IdentityId::Thm16A1, 4);
        let value: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(value["verdict"], "fail");
        assert!(value["lhs"]["coeffs"].is_array());
        assert_eq!(value["lhs"]["min_exp"], 0);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("no-such-id".parse::<IdentityId>().is_err());
    }
}
