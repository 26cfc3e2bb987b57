//! Small exact dense linear algebra: Gaussian elimination over the scalar
//! field. Sizes here are tiny (dimension plus a handful), so no pivoting
//! strategy beyond "first nonzero" is needed — exact arithmetic has no
//! conditioning concerns.


use crate::scalar::Scalar;

/// Solve the square system `A t = b` exactly.
///
/// Returns `None` when `A` is singular. `a` is row-major, `n x n`.
pub fn solve_square<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    // Augmented matrix [A | b].
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot_index = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_index);
        let pivot = m[col][col].clone();
        let pivot_row = m[col].clone();
        for (other, row) in m.iter_mut().enumerate() {
            if other == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot.clone();
            for (dst, src) in row.iter_mut().zip(pivot_row.iter()).skip(col) {
                let delta = factor.clone() * src.clone();
                *dst = dst.clone() - delta;
            }
        }
    }

    Some(
        (0..n)
            .map(|i| m[i][n].clone() / m[i][i].clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn solves_two_by_two_exactly() {
        // x + 2y = 5, 3x + 4y = 6  =>  x = -4, y = 9/2
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]];
        let b = vec![rat(5, 1), rat(6, 1)];
        let t = solve_square(&a, &b).unwrap();
        assert_eq!(t, vec![rat(-4, 1), rat(9, 2)]);
    }

    #[test]
    fn reports_singular_matrix() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        let b = vec![rat(1, 1), rat(1, 1)];
        assert!(solve_square(&a, &b).is_none());
    }

    #[test]
    fn handles_zero_leading_pivot() {
        // Requires the row swap: first pivot entry is 0.
        let a = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
        let b = vec![rat(2, 1), rat(3, 1)];
        let t = solve_square(&a, &b).unwrap();
        assert_eq!(t, vec![rat(3, 1), rat(2, 1)]);
    }
}
