use num_bigint::BigInt;

use super::laurent::LaurentHalf;
use crate::error::{Error, Result};

/// The balanced q-integer [r] = (v^r - v^{-r}) / (v - v^{-1}).
///
/// Extended to all integers by [-r] = -[r].
pub fn qint(r: i64) -> LaurentHalf {
    if r == 0 {
        return LaurentHalf::zero();
    }
    let n = r.unsigned_abs() as i64;
    let mut out = LaurentHalf::zero();
    let sign = if r > 0 { BigInt::from(1) } else { BigInt::from(-1) };
    for j in 0..n {
        // v^{n-1-2j} in half units
        out.insert_add(2 * (n - 1 - 2 * j), sign.clone());
    }
    out
}

/// [r]! = [1][2]...[r].
pub fn qfact(r: u32) -> LaurentHalf {
    let mut out = LaurentHalf::one();
    for j in 1..=r as i64 {
        out = &out * &qint(j);
    }
    out
}

/// The q-binomial coefficient [m r] = [m][m-1]...[m-r+1] / [r]!, computed by
/// interleaved exact multiplication and division so intermediate values stay
/// in Z[v, v^{-1}]. The divisions always succeed; a failure is an internal
/// inconsistency.
pub fn qbinom(m: i64, r: u32) -> Result<LaurentHalf> {
    let mut acc = LaurentHalf::one();
    for j in 0..r as i64 {
        acc = &acc * &qint(m - j);
        acc = acc
            .exact_div(&qint(j + 1))
            .map_err(|e| Error::Internal(format!("q-binomial division failed: {e}")))?;
    }
    Ok(acc)
}

/// Outcome of the exhaustive scan of the two standard q-binomial identities:
///   [x n] = (-1)^n [n-x-1 n]
///   sum_k v^{xk - y(n-k)} [x n-k] [y k] = [x+y n]
#[derive(Debug, Clone)]
pub struct BinomialReport {
    pub cases_checked: usize,
    pub counterexamples: Vec<String>,
}

impl BinomialReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn verify_binomial_identities(x_bound: i64, y_bound: i64, n_bound: u32) -> Result<BinomialReport> {
    let mut report = BinomialReport { cases_checked: 0, counterexamples: Vec::new() };
    for x in -x_bound..=x_bound {
        for n in 0..=n_bound {
            let lhs = qbinom(x, n)?;
            let mut rhs = qbinom(n as i64 - x - 1, n)?;
            if n % 2 == 1 {
                rhs = -&rhs;
            }
            report.cases_checked += 1;
            if lhs != rhs {
                report
                    .counterexamples
                    .push(format!("reflection identity fails at x={x}, n={n}: {lhs} != {rhs}"));
            }
        }
    }
    for x in -x_bound..=x_bound {
        for y in -y_bound..=y_bound {
            for n in 0..=n_bound {
                let mut lhs = LaurentHalf::zero();
                for k in 0..=n {
                    let e = x * k as i64 - y * (n - k) as i64;
                    let term = &qbinom(x, n - k)? * &qbinom(y, k)?;
                    lhs += &term.shifted(2 * e);
                }
                let rhs = qbinom(x + y, n)?;
                report.cases_checked += 1;
                if lhs != rhs {
                    report.counterexamples.push(format!(
                        "convolution identity fails at x={x}, y={y}, n={n}: {lhs} != {rhs}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_examples() {
        assert!(qint(0).is_zero());
        // [2] = v + v^-1
        let mut two = LaurentHalf::zero();
        two.insert_add(2, BigInt::from(1));
        two.insert_add(-2, BigInt::from(1));
        assert_eq!(qint(2), two);
        // [3] = v^2 + 1 + v^-2
        let mut three = LaurentHalf::zero();
        three.insert_add(4, BigInt::from(1));
        three.insert_add(0, BigInt::from(1));
        three.insert_add(-4, BigInt::from(1));
        assert_eq!(qint(3), three);
        assert_eq!(qint(-3), -&three);
        assert!(qint(5).is_bar_invariant());
    }

    #[test]
    fn qbinom_examples() {
        assert!(qbinom(17, 0).unwrap().is_one());
        // [4 2] = v^4 + v^2 + 2 + v^-2 + v^-4
        let mut expect = LaurentHalf::zero();
        for (h, c) in [(8, 1), (4, 1), (0, 2), (-4, 1), (-8, 1)] {
            expect.insert_add(h, BigInt::from(c));
        }
        assert_eq!(qbinom(4, 2).unwrap(), expect);
        // [-1 2] = [2 2] = 1 by the reflection identity
        assert!(qbinom(-1, 2).unwrap().is_one());
        // vanishing in the range 0 <= m < r
        assert!(qbinom(1, 2).unwrap().is_zero());
        assert!(qbinom(0, 3).unwrap().is_zero());
    }

    #[test]
    fn qbinom_is_bar_invariant() {
        for m in -5..=6 {
            for r in 0..=5 {
                assert!(qbinom(m, r).unwrap().is_bar_invariant(), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn pascal_recurrence() {
        // [m r] = v^{-r} [m-1 r] + v^{m-r} [m-1 r-1] for m >= 1
        for m in 1..=7i64 {
            for r in 1..=6u32 {
                let lhs = qbinom(m, r).unwrap();
                let a = qbinom(m - 1, r).unwrap().shifted(-2 * r as i64);
                let b = qbinom(m - 1, r - 1).unwrap().shifted(2 * (m - r as i64));
                assert_eq!(lhs, &a + &b, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn identities_small_bounds() {
        assert!(verify_binomial_identities(0, 0, 0).unwrap().passed());
        assert!(verify_binomial_identities(3, 3, 3).unwrap().passed());
    }
}
