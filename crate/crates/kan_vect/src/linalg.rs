use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_from_str(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (BigInt, BigInt) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.trim().parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// A dense matrix over the rationals; also the type of linear maps `Q^cols → Q^rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| q_to_string(self.get(i, j))).collect();
            write!(f, " [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

/// Kernel basis whose restriction to `free` rows is the identity, so selecting
/// those rows is a left inverse.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: Mat,
    pub free: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    /// Coordinates of a vector known to lie in the kernel.
    pub fn coordinates(&self, v: &Mat) -> Mat {
        v.select_rows(&self.free)
    }
}

/// Quotient by a column space: `quotient · section = I`, and `quotient` kills the relations.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub quotient: Mat,
    pub section: Mat,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.quotient.rows
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match the shape");
        Mat { rows, cols, data: entries.iter().map(|&x| q(x)).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<Q> = rows
            .into_iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cols, "ragged rows");
                row
            })
            .collect();
        Mat { rows: r, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    /// `self · other`.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |i, j| self.get(r + i, c + j).clone())
    }

    pub fn hstack(parts: &[&Mat], rows: usize) -> Mat {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "row mismatch in hstack");
            out.put(0, c, p);
            c += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat], cols: usize) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "column mismatch in vstack");
            out.put(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.put(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] *= &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let pivot_entry = &m.data[r * m.cols + j];
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let delta = &factor * pivot_entry;
                    m.data[i * m.cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().pivots.len()
        } else {
            self.transpose().rref().pivots.len()
        }
    }

    /// Null space of `self`.
    pub fn kernel(&self) -> Kernel {
        let Rref { mat, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Q::one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = mat.get(i, f);
                if !v.is_zero() {
                    basis.set(p, k, -v);
                }
            }
        }
        Kernel { basis, free }
    }

    /// Quotient of `Q^rows` by the column space of `self`.
    pub fn cokernel(&self) -> Cokernel {
        let Rref { mat, pivots } = self.transpose().rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut quotient = Mat::zeros(free.len(), n);
        let mut section = Mat::zeros(n, free.len());
        for (k, &f) in free.iter().enumerate() {
            quotient.set(k, f, Q::one());
            section.set(f, k, Q::one());
        }
        for (i, &p) in pivots.iter().enumerate() {
            for (k, &f) in free.iter().enumerate() {
                let v = mat.get(i, f);
                if !v.is_zero() {
                    quotient.set(k, p, -v);
                }
            }
        }
        Cokernel { quotient, section }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let aug = Mat::hstack(&[self, &Mat::identity(n)], n);
        let Rref { mat, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(mat.block(0, n, n, n))
    }

    /// Whether the columns are linearly independent.
    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Entries as `p/q` strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| q_to_string(self.get(i, j))).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>], cols: usize) -> Option<Mat> {
        let parsed: Option<Vec<Vec<Q>>> = rows
            .iter()
            .map(|r| if r.len() == cols { r.iter().map(|s| q_from_str(s)).collect() } else { None })
            .collect();
        Some(Mat::from_rows(parsed?, cols))
    }

    /// Largest absolute numerator or denominator, as a size diagnostic.
    pub fn height(&self) -> BigInt {
        self.data.iter().map(|x| x.numer().abs().max(x.denom().abs())).max().unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_left_inverse() {
        let a = Mat::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        assert!(a.mul(&k.basis).is_zero());
        assert!(k.coordinates(&k.basis).is_identity());
    }

    #[test]
    fn cokernel_kills_relations() {
        let r = Mat::from_i64(3, 2, &[1, 0, -1, 1, 0, -1]);
        let c = r.cokernel();
        assert_eq!(c.dim(), 1);
        assert!(c.quotient.mul(&r).is_zero());
        assert!(c.quotient.mul(&c.section).is_identity());
    }

    #[test]
    fn empty_relations_give_identity_quotient() {
        let c = Mat::zeros(3, 0).cokernel();
        assert!(c.quotient.is_identity());
        let k = Mat::zeros(0, 2).kernel();
        assert!(k.basis.is_identity());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Mat::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Mat::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(q_to_string(&q_frac(6, -4)), "-3/2");
        assert_eq!(q_from_str("-3/2"), Some(q_frac(-3, 2)));
        assert_eq!(q_from_str("1/0"), None);
    }

    #[test]
    fn kron_dimensions() {
        let a = Mat::identity(2);
        let b = Mat::from_i64(1, 2, &[1, 1]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
    }
}
