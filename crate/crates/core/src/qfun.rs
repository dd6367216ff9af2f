//! Standard q-objects: Pochhammer products, q-binomial coefficients, and
//! Rogers-Szego polynomials.
//!
//! - [`pochhammer`]: finite products of factors `1 - sign*q^(start + i*step)`
//! - [`q_pochhammer`]: the common special case (q^b; q^b)_L
//! - [`q_binomial`]: Gaussian binomial via the product/exact-division route
//! - [`q_binomial_pascal`]: the same coefficient from the q-Pascal recurrence,
//!   kept as an independent cross-check of the product route
//! - [`q_binomial_row`]: a full row [n, 0..=n], amortizing the product route
//!   across a row for sums that consume every entry
//! - [`rogers_szego`]: H_n(t) for monomial t = sign*q^e

use crate::error::{QError, QResult};
use crate::poly::{LaurentPoly, Sign};

/// Parameters of a finite Pochhammer-style product
/// `prod_{i=0}^{length-1} (1 - sign * q^(start + i*step))`.
///
/// `(q; q)_L` is `sign = Plus, start = 1, step = 1`; `(-q; q)_k` flips the
/// sign; `(q; q^2)_n` uses `step = 2`. The length is carried as a signed
/// integer because callers routinely compute it (n - j - 1 and the like) and
/// [`pochhammer`] must reject the negative case loudly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub sign: Sign,
    pub start: i64,
    pub step: i64,
    pub length: i64,
}

impl PochhammerSpec {
    pub fn new(sign: Sign, start: i64, step: i64, length: i64) -> Self {
        PochhammerSpec { sign, start, step, length }
    }
}

/// The product described by `spec`; length 0 gives 1.
pub fn pochhammer(spec: &PochhammerSpec) -> QResult<LaurentPoly> {
    if spec.length < 0 {
        return Err(QError::NegativeLength(spec.length));
    }
    if spec.start < 0 || spec.step < 1 {
        return Err(QError::Range(format!(
            "Pochhammer spec requires start >= 0 and step >= 1, got start {} step {}",
            spec.start, spec.step
        )));
    }
    let mut acc = LaurentPoly::one();
    for i in 0..spec.length {
        let factor = LaurentPoly::one().sub(&LaurentPoly::monomial(
            spec.sign.as_i64(),
            spec.start + i * spec.step,
        ));
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// (q^base; q^base)_length.
pub fn q_pochhammer(base: i64, length: i64) -> QResult<LaurentPoly> {
    pochhammer(&PochhammerSpec::new(Sign::Plus, base, base, length))
}

/// 1 - q^e.
pub(crate) fn one_minus_q(e: i64) -> LaurentPoly {
    LaurentPoly::from_terms(&[(0, 1), (e, -1)])
}

/// The Gaussian binomial coefficient [top, bottom]_q.
///
/// Out-of-range indices (bottom < 0, bottom > top, top < 0) give the zero
/// polynomial; otherwise the value is (q)_top / ((q)_bottom (q)_(top-bottom)),
/// computed as an interleaved product/exact-division chain so every
/// intermediate is itself a q-binomial and hence a polynomial.
pub fn q_binomial(top: i64, bottom: i64) -> LaurentPoly {
    if top < 0 || bottom < 0 || bottom > top {
        return LaurentPoly::zero();
    }
    let b = bottom.min(top - bottom);
    let m = top - b;
    let mut acc = LaurentPoly::one();
    for i in 1..=b {
        acc = acc.mul(&one_minus_q(m + i));
        acc = acc
            .exact_div(&one_minus_q(i))
            .expect("q-binomial intermediate must divide exactly");
    }
    acc
}

/// The full row [total, k]_q for k = 0..=total (empty for total < 0).
///
/// Built left to right by [n,k+1] = [n,k] (1-q^(n-k)) / (1-q^(k+1)), which is
/// much cheaper than computing each entry from scratch when a sum consumes
/// the whole row.
pub fn q_binomial_row(total: i64) -> Vec<LaurentPoly> {
    if total < 0 {
        return Vec::new();
    }
    let mut row = Vec::with_capacity(total as usize + 1);
    row.push(LaurentPoly::one());
    for k in 0..total {
        let next = row[k as usize]
            .mul(&one_minus_q(total - k))
            .exact_div(&one_minus_q(k + 1))
            .expect("q-binomial row step must divide exactly");
        row.push(next);
    }
    row
}

/// [top, bottom]_q from the q-Pascal recurrence
/// [a, b] = [a-1, b] + q^(a-b) [a-1, b-1], with [0, 0] = 1.
///
/// Independent of the product/division route in [`q_binomial`]; the two are
/// cross-checked against each other in tests.
pub fn q_binomial_pascal(top: i64, bottom: i64) -> LaurentPoly {
    if top < 0 || bottom < 0 || bottom > top {
        return LaurentPoly::zero();
    }
    let mut prev: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for a in 1..=top {
        let mut row = Vec::with_capacity(a as usize + 1);
        for b in 0..=a {
            let mut entry = if b < a { prev[b as usize].clone() } else { LaurentPoly::zero() };
            if b > 0 {
                entry = entry.add(&prev[b as usize - 1].monomial_mul(Sign::Plus, a - b));
            }
            row.push(entry);
        }
        prev = row;
    }
    prev[bottom as usize].clone()
}

/// Rogers-Szego polynomial H_n(t) = sum_{j=0}^{n} t^j [n, j]_q, restricted to
/// monomial t = t_sign * q^t_exp (the only arguments the identity suite uses).
pub fn rogers_szego(n: i64, t_sign: Sign, t_exp: i64) -> LaurentPoly {
    assert!(n >= 0, "Rogers-Szego index must be non-negative, got {n}");
    let row = q_binomial_row(n);
    let mut acc = LaurentPoly::zero();
    for (j, bin) in row.iter().enumerate() {
        let j = j as i64;
        acc = acc.add(&bin.monomial_mul(t_sign.pow(j), j * t_exp));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    /// Brute-force generating function of partitions with at most `parts`
    /// parts, each of size at most `max_part`, by explicit enumeration.
    fn box_partition_gf(max_part: i64, parts: i64) -> LaurentPoly {
        fn rec(largest: i64, left: i64, size: i64, counts: &mut Vec<BigInt>) {
            counts[size as usize] += 1;
            if left == 0 {
                return;
            }
            for piece in 1..=largest {
                rec(piece, left - 1, size + piece, counts);
            }
        }
        let mut counts = vec![BigInt::from(0); (max_part * parts) as usize + 1];
        rec(max_part, parts, 0, &mut counts);
        LaurentPoly::from_coeffs(0, counts)
    }

    #[test]
    fn pochhammer_examples() {
        // (q;q)_0 = 1
        assert!(q_pochhammer(1, 0).unwrap().is_one());
        // (q;q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
        assert_eq!(
            q_pochhammer(1, 3).unwrap(),
            p(&[(0, 1), (1, -1), (2, -1), (4, 1), (5, 1), (6, -1)])
        );
        // (-q;q)_2 = (1+q)(1+q^2) = 1 + q + q^2 + q^3
        assert_eq!(
            pochhammer(&PochhammerSpec::new(Sign::Minus, 1, 1, 2)).unwrap(),
            p(&[(0, 1), (1, 1), (2, 1), (3, 1)])
        );
        // (q;q^2)_2 = (1-q)(1-q^3) = 1 - q - q^3 + q^4
        assert_eq!(
            pochhammer(&PochhammerSpec::new(Sign::Plus, 1, 2, 2)).unwrap(),
            p(&[(0, 1), (1, -1), (3, -1), (4, 1)])
        );
    }

    #[test]
    fn pochhammer_negative_length() {
        assert_eq!(
            pochhammer(&PochhammerSpec::new(Sign::Plus, 3, 3, -1)),
            Err(QError::NegativeLength(-1))
        );
    }

    #[test]
    fn q_binomial_examples() {
        // frozen from the brute-force box enumeration below
        assert_eq!(q_binomial(4, 2), p(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)]));
        assert_eq!(q_binomial(4, 2), box_partition_gf(2, 2));
        assert!(q_binomial(7, 0).is_one());
        assert!(q_binomial(3, 5).is_zero());
        assert!(q_binomial(-1, 0).is_zero());
        assert!(q_binomial(3, -2).is_zero());
    }

    #[test]
    fn q_binomial_matches_box_enumeration() {
        for m in 0..=5 {
            for n in 0..=5 {
                assert_eq!(q_binomial(m + n, n), box_partition_gf(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn pascal_examples() {
        assert_eq!(q_binomial_pascal(2, 1), p(&[(0, 1), (1, 1)]));
        assert_eq!(q_binomial_pascal(4, 2), q_binomial(4, 2));
        assert!(q_binomial_pascal(4, -1).is_zero());
    }

    #[test]
    fn product_and_pascal_agree() {
        for m in 0..=12 {
            for n in 0..=12 {
                assert_eq!(q_binomial(m + n, n), q_binomial_pascal(m + n, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn row_matches_singles() {
        for total in [-1, 0, 1, 5, 11] {
            let row = q_binomial_row(total);
            assert_eq!(row.len(), (total.max(-1) + 1) as usize);
            for (k, entry) in row.iter().enumerate() {
                assert_eq!(entry, &q_binomial(total, k as i64));
            }
        }
    }

    #[test]
    fn q_binomial_is_definitional_ratio() {
        // (q)_top / ((q)_bottom (q)_(top-bottom)) computed the blunt way
        for (top, bottom) in [(4, 2), (7, 3), (9, 4)] {
            let num = q_pochhammer(1, top).unwrap();
            let den = q_pochhammer(1, bottom)
                .unwrap()
                .mul(&q_pochhammer(1, top - bottom).unwrap());
            assert_eq!(num.exact_div(&den).unwrap(), q_binomial(top, bottom));
        }
    }

    #[test]
    fn rogers_szego_examples() {
        // H_0 = 1 for any monomial argument
        assert!(rogers_szego(0, Sign::Minus, 5).is_one());
        // H_2(-1) = 1 - (1+q) + 1 = 1 - q
        assert_eq!(rogers_szego(2, Sign::Minus, 0), p(&[(0, 1), (1, -1)]));
        // H_3(-q) = (q;q^2)_2
        assert_eq!(
            rogers_szego(3, Sign::Minus, 1),
            pochhammer(&PochhammerSpec::new(Sign::Plus, 1, 2, 2)).unwrap()
        );
    }
}
