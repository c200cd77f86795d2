//! Exact nullspace computation.
//!
//! `kernel_basis` runs fraction-free (Bareiss) elimination on an integer
//! scaling of the input. `RowReducer` accepts constraint rows one at a time
//! and keeps a primitive integer echelon form. Both return the same canonical
//! basis: one vector per free column, with a 1 in that column, zeros in the
//! other free columns, and the reduced-echelon values in pivot columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Q;

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Q>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![vec![Q::zero(); cols]; rows] }
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<Q>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix { rows: data.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|r| r.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    pub fn rank(&self) -> usize {
        self.cols - kernel_basis(self).len()
    }
}

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Turns an echelon system (pivot column per row) into the canonical kernel basis.
fn kernel_from_echelon(cols: usize, mut rows: Vec<(usize, Vec<Q>)>) -> Vec<Vec<Q>> {
    rows.sort_by_key(|(c, _)| *c);
    // Normalise pivots and clear above, bottom-up.
    for i in (0..rows.len()).rev() {
        let (pc, _) = rows[i];
        let inv = rows[i].1[pc].recip();
        for x in rows[i].1.iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[i].1.clone();
        for row in rows.iter_mut().take(i) {
            let f = row.1[pc].clone();
            if !f.is_zero() {
                for (x, p) in row.1.iter_mut().zip(&pivot_row).skip(pc) {
                    *x -= &f * p;
                }
            }
        }
    }
    let mut is_pivot = vec![false; cols];
    for (c, _) in &rows {
        is_pivot[*c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (pc, row) in &rows {
                v[*pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the right nullspace of `m`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<BigInt>> = m.data.iter().map(|r| integer_row(r)).collect();
    let (nr, nc) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..nr {
            if a[i][c].is_zero() {
                for j in c + 1..nc {
                    let v = &a[r][c] * &a[i][j];
                    a[i][j] = v / &prev;
                }
                continue;
            }
            for j in c + 1..nc {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let rows = pivots.iter().enumerate().map(|(i, &c)| (c, a[i].iter().map(|x| Q::from_integer(x.clone())).collect())).collect();
    kernel_from_echelon(nc, rows)
}

/// Streaming eliminator: feed constraint rows, then read the kernel.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row given as (column, value) pairs. Returns true if the rank grew.
    pub fn push_sparse(&mut self, entries: &[(usize, Q)]) -> bool {
        let mut dense = vec![Q::zero(); self.cols];
        for (c, v) in entries {
            dense[*c] += v;
        }
        self.push(&dense)
    }

    pub fn push(&mut self, row: &[Q]) -> bool {
        assert_eq!(row.len(), self.cols);
        if self.rows.len() == self.cols {
            return false;
        }
        let mut v = integer_row(row);
        for (pc, p) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let a = p[*pc].clone();
            let b = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(p) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(&mut v);
        }
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else { return false };
        if v[lead].is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        let at = self.rows.partition_point(|(c, _)| *c < lead);
        self.rows.insert(at, (lead, v));
        true
    }

    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let rows = self.rows.iter().map(|(c, r)| (*c, r.iter().map(|x| Q::from_integer(x.clone())).collect())).collect();
        kernel_from_echelon(self.cols, rows)
    }
}

/// Kernel of a linear map given column by column as sparse (row key, value) lists.
pub fn kernel_of_columns<K: Ord>(columns: Vec<Vec<(K, Q)>>) -> Vec<Vec<Q>> {
    let n = columns.len();
    let mut rows: std::collections::BTreeMap<K, Vec<(usize, Q)>> = std::collections::BTreeMap::new();
    for (j, col) in columns.into_iter().enumerate() {
        for (k, v) in col {
            if !v.is_zero() {
                rows.entry(k).or_default().push((j, v));
            }
        }
    }
    let mut rr = RowReducer::new(n);
    for row in rows.values() {
        if rr.rank() == n {
            break;
        }
        rr.push_sparse(row);
    }
    rr.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn kernel_examples() {
        let m = RatMatrix::from_i64(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(kernel_basis(&m), vec![vec![q(-1), q(1)]]);
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        let z = RatMatrix::zeros(2, 3);
        assert_eq!(kernel_basis(&z).len(), 3);
    }

    #[test]
    fn streaming_matches_bareiss() {
        let m = RatMatrix::from_i64(&[vec![0, 2, 4, 1], vec![1, 1, 1, 1], vec![1, 3, 5, 2], vec![3, 0, -3, 2]]);
        let mut rr = RowReducer::new(4);
        for r in &m.data {
            rr.push(r);
        }
        assert_eq!(rr.kernel(), kernel_basis(&m));
        for v in kernel_basis(&m) {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}
