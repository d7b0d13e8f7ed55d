use super::AlgebraError;
use crate::ring::Ring;

/// Solves `matrix * x = rhs` by Gauss–Jordan elimination over a commutative
/// ring, pivoting only on units.
///
/// Over a local ring, or a product of local rings where the matrix has a unit
/// in every reduced column, this finds the unique solution; otherwise the
/// first column without a unit pivot is reported.
pub fn solve_linear<R: Ring>(
    ring: &R,
    mut matrix: Vec<Vec<R::Elem>>,
    mut rhs: Vec<R::Elem>,
) -> Result<Vec<R::Elem>, AlgebraError> {
    let n = rhs.len();
    assert!(matrix.len() == n && matrix.iter().all(|row| row.len() == n));
    for col in 0..n {
        let (pivot_row, inv) = (col..n)
            .find_map(|i| ring.inv(&matrix[i][col]).map(|u| (i, u)))
            .ok_or(AlgebraError::SingularMatrix(col))?;
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for j in col..n {
            matrix[col][j] = ring.mul(&matrix[col][j], &inv);
        }
        rhs[col] = ring.mul(&rhs[col], &inv);
        for i in 0..n {
            if i == col || ring.is_zero(&matrix[i][col]) {
                continue;
            }
            let factor = matrix[i][col].clone();
            for j in col..n {
                let t = ring.mul(&factor, &matrix[col][j]);
                matrix[i][j] = ring.sub(&matrix[i][j], &t);
            }
            let t = ring.mul(&factor, &rhs[col]);
            rhs[i] = ring.sub(&rhs[i], &t);
        }
    }
    Ok(rhs)
}

/// Division-free determinant by dynamic programming over column subsets,
/// `O(2^n n)` ring operations.
pub fn determinant<R: Ring>(ring: &R, matrix: &[Vec<R::Elem>]) -> R::Elem {
    let n = matrix.len();
    assert!(n < 24 && matrix.iter().all(|row| row.len() == n));
    // partial[mask]: signed sum over assignments of the first popcount(mask)
    // rows to the columns in mask
    let mut partial = vec![ring.zero(); 1 << n];
    partial[0] = ring.one();
    for mask in 0usize..(1 << n) {
        let row = mask.count_ones() as usize;
        if row == n || ring.is_zero(&partial[mask]) {
            continue;
        }
        let current = partial[mask].clone();
        for col in 0..n {
            if mask & (1 << col) != 0 || ring.is_zero(&matrix[row][col]) {
                continue;
            }
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = ring.mul(&current, &matrix[row][col]);
            if inversions % 2 == 1 {
                term = ring.neg(&term);
            }
            let next = mask | (1 << col);
            partial[next] = ring.add(&partial[next], &term);
        }
    }
    partial[(1 << n) - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PrimeField;

    #[test]
    fn determinant_of_small_matrices() {
        let f = PrimeField::new(101);
        let m = |rows: &[&[i64]]| -> Vec<Vec<u64>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| f.elem(x)).collect())
                .collect()
        };
        assert_eq!(determinant(&f, &m(&[&[1, 2], &[3, 4]])), f.elem(-2));
        assert_eq!(determinant(&f, &m(&[&[0, 1], &[1, 0]])), f.elem(-1));
        assert_eq!(
            determinant(&f, &m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])),
            f.elem(2 + (1 - 3))
        );
        assert_eq!(determinant(&f, &[]), 1);
    }

    #[test]
    fn solve_two_by_two() {
        let f = PrimeField::new(101);
        let a = vec![vec![0, 1], vec![2, 3]];
        let x = solve_linear(&f, a, vec![5, 13]).unwrap();
        assert_eq!(x, vec![f.elem(-1), 5]);
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(
            solve_linear(&f, singular, vec![0, 0]),
            Err(AlgebraError::SingularMatrix(1))
        );
    }
}
