//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::Q;

/// Row-echelon basis that records how every stored row was produced from
/// the inserted vectors, so that linear dependencies can be read off.
#[derive(Clone, Debug, Default)]
pub struct IncrementalBasis {
    // (pivot column, reduced vector, combination of inputs)
    rows: Vec<(usize, Vec<Q>, Vec<Q>)>,
    inserted: usize,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`. Returns `Some(c)` with `sum c_i * input_i = 0` and
    /// `c_last = 1` when `v` is dependent on the earlier inputs, `None`
    /// otherwise. Dependent inputs are not stored but keep their index.
    pub fn insert(&mut self, v: Vec<Q>) -> Option<Vec<Q>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut vec = v;
        let mut combo = vec![Q::zero(); idx + 1];
        combo[idx] = Q::one();
        for (pivot, row, row_combo) in &self.rows {
            if vec[*pivot].is_zero() {
                continue;
            }
            let factor = &vec[*pivot] / &row[*pivot];
            for (a, b) in vec.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
            for (a, b) in combo.iter_mut().zip(row_combo) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        match vec.iter().position(|c| !c.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, vec, combo));
                None
            }
            None => Some(combo),
        }
    }
}

/// Solves `sum x_j * columns[j] = target`; `None` when inconsistent.
/// The columns must be linearly independent.
pub fn solve_in_span(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let mut basis = IncrementalBasis::new();
    for c in columns {
        if basis.insert(c.clone()).is_some() {
            return None;
        }
    }
    let dep = basis.insert(target.to_vec())?;
    // dep: sum_{j<k} d_j col_j + 1 * target = 0.
    Some(dep[..columns.len()].iter().map(|d| -d).collect())
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut rows: Vec<Vec<Q>>) -> Q {
    let n = rows.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &p;
            for c in col..n {
                let sub = &f * &rows[col][c];
                rows[r][c] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q_int;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q_int(x)).collect()
    }

    #[test]
    fn dependency_found() {
        let mut b = IncrementalBasis::new();
        assert!(b.insert(v(&[1, 0, 1])).is_none());
        assert!(b.insert(v(&[0, 1, 1])).is_none());
        let dep = b.insert(v(&[2, 3, 5])).unwrap();
        assert_eq!(dep, v(&[-2, -3, 1]));
        assert_eq!(b.rank(), 2);
        assert!(b.insert(v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn solve_and_det() {
        let cols = vec![v(&[1, 1]), v(&[1, -1])];
        assert_eq!(solve_in_span(&cols, &v(&[3, 1])).unwrap(), v(&[2, 1]));
        assert_eq!(determinant(vec![v(&[1, 2]), v(&[3, 4])]), q_int(-2));
        assert_eq!(determinant(vec![v(&[0, 1]), v(&[1, 0])]), q_int(-1));
        assert!(solve_in_span(&[v(&[1, 0, 0])], &v(&[0, 1, 0])).is_none());
    }
}
