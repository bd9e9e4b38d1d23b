//! Exact scalar abstraction and the small amount of dense linear algebra the
//! engine needs (Gaussian elimination over a field).
//!
//! Everything here is generic over [`Scalar`], which any exact ordered field
//! built from `num-traits` satisfies: `BigRational` (the default, see
//! [`crate::Rational`]), `Ratio<i64>` and `Ratio<i128>`. Floating point types
//! are deliberately not admitted: `Signed + Ord` rules them out.

use std::fmt;

use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field element.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + Ord + fmt::Debug + fmt::Display + Send + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable")
    }
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + Clone + Ord + fmt::Debug + fmt::Display + Send + Sync
{
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref<Q: Scalar>(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<Q: Scalar>(matrix: &[Vec<Q>]) -> usize {
    let mut m = matrix.to_vec();
    rref(&mut m).len()
}

/// Solves the square system `matrix · x = rhs`. Returns `None` when the
/// matrix is singular.
pub fn solve<Q: Scalar>(matrix: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    let mut aug: Vec<Vec<Q>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}
