//! Dense exact linear algebra over Q(v^{1/2}), used for expanding elements in
//! PBW and canonical bases.

use crate::coeff::RatFunc;

/// Solve A x = b by Gaussian elimination. A is row-major and square or tall
/// (rows >= cols, consistent overdetermined systems are accepted).
/// Returns None when the system is singular or inconsistent.
pub fn solve(mut a: Vec<Vec<RatFunc>>, mut b: Vec<RatFunc>) -> Option<Vec<RatFunc>> {
    let rows = a.len();
    if rows == 0 {
        return if b.is_empty() { Some(Vec::new()) } else { None };
    }
    let cols = a[0].len();
    if rows < cols {
        return None;
    }
    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|r| !a[*r][col].is_zero())?;
        a.swap(row, pivot);
        b.swap(row, pivot);
        let inv = a[row][col].inverse().ok()?;
        for c in col..cols {
            a[row][c] = &a[row][c] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let t = &factor * &a[row][c];
                    a[r][c] = &a[r][c] - &t;
                }
                let t = &factor * &b[row];
                b[r] = &b[r] - &t;
            }
        }
        pivot_row_of_col[col] = row;
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivot_row_of_col.iter().any(|p| *p == usize::MAX) {
        return None;
    }
    // Consistency of the remaining rows.
    for r in row..rows {
        if !b[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![RatFunc::zero(); cols];
    for (col, pr) in pivot_row_of_col.iter().enumerate() {
        x[col] = b[*pr].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_2x2() {
        let v = RatFunc::v_pow(1);
        let a = vec![
            vec![RatFunc::one(), v.clone()],
            vec![v.clone(), RatFunc::one()],
        ];
        let b = vec![&RatFunc::one() + &(&v * &v), &v + &v];
        let x = solve(a, b).unwrap();
        assert!(x[0].is_one());
        assert_eq!(x[1], v);
    }

    #[test]
    fn singular_detected() {
        let a = vec![
            vec![RatFunc::one(), RatFunc::one()],
            vec![RatFunc::one(), RatFunc::one()],
        ];
        let b = vec![RatFunc::one(), RatFunc::zero()];
        assert!(solve(a, b).is_none());
    }
}
