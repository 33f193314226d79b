//! Dense exact matrices over a ring of coefficients.
//!
//! Storage is a dense row-major grid; products skip zero entries, which is
//! where nearly all of the work goes for the operators in this crate.

use std::fmt;

use rayon::prelude::*;

use super::{ExactError, Poly2, Scalar};

/// Minimal ring interface shared by [`Scalar`] and [`Poly2`].
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Ring for Poly2 {
    fn zero() -> Self {
        Poly2::zero()
    }
    fn one() -> Self {
        Poly2::one()
    }
    fn is_zero(&self) -> bool {
        Poly2::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Scalar) -> Self {
        Poly2::scale(self, c)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        Poly2::add_assign_ref(self, rhs);
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ScalarMatrix = Matrix<Scalar>;
pub type PolyMatrix = Matrix<Poly2>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|x| !x.is_zero()).map(|p| (p / self.cols, p % self.cols))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_by(&self, c: &T) -> Self {
        self.map(|x| c.mul_ref(x))
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg_ref)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_same(rhs)?;
        Ok(self.zip(rhs, T::add_ref))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_same(rhs)?;
        Ok(self.zip(rhs, T::sub_ref))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, rhs: &Self) -> Result<(), ExactError> {
        self.check_same(rhs)?;
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
        Ok(())
    }

    fn check_same(&self, rhs: &Self) -> Result<(), ExactError> {
        if self.shape() != rhs.shape() {
            return Err(ExactError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    /// Exact product. Rows of the result are computed in parallel; each
    /// row is accumulated in a fixed order so the output does not depend on
    /// scheduling.
    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        let support: Vec<Vec<usize>> = (0..rhs.rows)
            .map(|k| (0..rhs.cols).filter(|&j| !rhs.get(k, j).is_zero()).collect())
            .collect();
        let cols = rhs.cols;
        let rows: Vec<Vec<T>> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![T::zero(); cols];
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for &j in &support[k] {
                        acc[j].add_assign_ref(&a.mul_ref(rhs.get(k, j)));
                    }
                }
                acc
            })
            .collect();
        Ok(Matrix { rows: self.rows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// `self * rhs - sign * rhs * self`: commutator for `sign = 1`,
    /// anticommutator for `sign = -1`.
    pub fn commutator(&self, rhs: &Self, sign: i8) -> Result<Self, ExactError> {
        if !self.is_square() || self.shape() != rhs.shape() {
            return Err(ExactError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        let ab = self.mul(rhs)?;
        let ba = rhs.mul(self)?;
        match sign {
            1 => ab.sub(&ba),
            -1 => ab.add(&ba),
            _ => Err(ExactError::BadSign(sign)),
        }
    }

    /// Kronecker product with row-major index `i1 * dim2 + i2`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r2, c2) = rhs.shape();
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = rhs.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * r2 + i2, j1 * c2 + j2, a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t.add_assign_ref(self.get(i, i));
        }
        t
    }

    pub fn pow(&self, e: u32) -> Result<Self, ExactError> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Submatrix picking the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block `(bi, bj)` of size `bs × bs`.
    pub fn block(&self, bi: usize, bj: usize, bs: usize) -> Self {
        Self::from_fn(bs, bs, |i, j| self.get(bi * bs + i, bj * bs + j).clone())
    }

    /// Assembles an `nb·bs` square matrix from an `nb × nb` grid of blocks.
    pub fn from_blocks(nb: usize, bs: usize, f: impl Fn(usize, usize) -> Option<Self>) -> Self {
        let mut out = Self::zeros(nb * bs, nb * bs);
        for bi in 0..nb {
            for bj in 0..nb {
                if let Some(b) = f(bi, bj) {
                    debug_assert_eq!(b.shape(), (bs, bs));
                    for i in 0..bs {
                        for j in 0..bs {
                            let x = b.get(i, j);
                            if !x.is_zero() {
                                out.set(bi * bs + i, bj * bs + j, x.clone());
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl ScalarMatrix {
    /// Lifts a scalar matrix to constant polynomial entries.
    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|c| Poly2::constant(c.clone()))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| Scalar::from_int(rows[i][j]))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| m.get(i, c).height())
            else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel as the columns of the returned matrix.
    /// Row `f` of the basis restricted to the free columns is the identity,
    /// so a vector in the span is determined by its free coordinates.
    pub fn nullspace(&self) -> (ScalarMatrix, Vec<usize>) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = ScalarMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Scalar::one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !x.is_zero() {
                    basis.set(p, k, -x);
                }
            }
        }
        (basis, free)
    }

    /// Inverse via Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<ScalarMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = ScalarMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(ScalarMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

impl PolyMatrix {
    /// Applies a variable substitution to every entry.
    pub fn substitute(&self, pu: &Poly2, pv: &Poly2) -> PolyMatrix {
        self.map(|p| p.substitute(pu, pv))
    }

    pub fn eval(&self, u: &Scalar, v: &Scalar) -> ScalarMatrix {
        self.map(|p| p.eval(u, v))
    }

    /// Maximum total degree over all entries.
    pub fn degree(&self) -> Option<u32> {
        self.data.iter().filter_map(Poly2::degree).max()
    }

    /// Total count of nonzero polynomial terms across all entries.
    pub fn total_terms(&self) -> usize {
        self.data.iter().map(Poly2::num_terms).sum()
    }

    /// Coefficient matrix of the monomial `u^du v^dv`.
    pub fn coeff(&self, du: u32, dv: u32) -> ScalarMatrix {
        self.map(|p| p.coeff(du, dv))
    }

    /// Finds `f` with `self = f · other` entrywise, where `f` is a ratio of
    /// two polynomials `(num, den)`. Uses the cross-multiplication test on
    /// every entry pair against a fixed nonzero reference entry of `other`.
    pub fn proportional_to(&self, other: &PolyMatrix) -> Result<Option<(Poly2, Poly2)>, ExactError> {
        if self.shape() != other.shape() {
            return Err(ExactError::ShapeMismatch { left: self.shape(), right: other.shape() });
        }
        let Some(pos) = other.data.iter().position(|p| !p.is_zero()) else {
            return Err(ExactError::ZeroReference);
        };
        let num = self.data[pos].clone();
        let den = other.data[pos].clone();
        for (a, b) in self.data.iter().zip(&other.data) {
            if &(a * &den) != &(&num * b) {
                return Ok(None);
            }
        }
        Ok(Some(reduce_ratio(num, den)))
    }
}

/// Normalizes `num/den` when the ratio is a constant or the denominator
/// is a single term dividing the numerator.
fn reduce_ratio(num: Poly2, den: Poly2) -> (Poly2, Poly2) {
    if num.is_zero() {
        return (Poly2::zero(), Poly2::one());
    }
    // constant ratio: compare leading terms
    let (lm, lc) = num.terms().last().expect("nonzero").clone();
    let (dm, dc) = den.terms().last().expect("nonzero").clone();
    if lm == dm {
        let c = &lc / &dc;
        if den.scale(&c) == num {
            return (Poly2::constant(c), Poly2::one());
        }
    }
    if den.num_terms() == 1 {
        let ((du, dv), c) = den.terms()[0].clone();
        if num.terms().iter().all(|((a, b), _)| *a >= du && *b >= dv) {
            let inv = c.inv().expect("nonzero");
            let q = Poly2::from_terms(num.terms().iter().map(|((a, b), x)| ((a - du, b - dv), x * &inv)));
            return (q, Poly2::one());
        }
    }
    (num, den)
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ScalarMatrix {
        ScalarMatrix::from_ints(rows)
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(ScalarMatrix::identity(2).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&ScalarMatrix::identity(2)).unwrap(), a);
    }

    #[test]
    fn scalar_poly_matrices() {
        let ui = PolyMatrix::identity(2).scale_by(&Poly2::u());
        let vi = PolyMatrix::identity(2).scale_by(&Poly2::v());
        let p = ui.mul(&vi).unwrap();
        assert_eq!(p, PolyMatrix::identity(2).scale_by(&(&Poly2::u() * &Poly2::v())));
    }

    #[test]
    fn shape_mismatch_is_error() {
        let a = ScalarMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(ExactError::ShapeMismatch { .. })));
        assert!(a.commutator(&a, 1).is_err());
    }

    #[test]
    fn kron_identity() {
        let i6 = ScalarMatrix::identity(2).kron(&ScalarMatrix::identity(3));
        assert_eq!(i6, ScalarMatrix::identity(6));
    }

    #[test]
    fn commutator_hand_case() {
        // [diag(1,2), E12] = (1-2) E12
        let d = m(&[&[1, 0], &[0, 2]]);
        let e = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(d.commutator(&e, 1).unwrap(), m(&[&[0, -1], &[0, 0]]));
        assert!(ScalarMatrix::identity(2).commutator(&e, 1).unwrap().is_zero());
        let a = m(&[&[1, 2], &[3, 4]]);
        let a2 = a.mul(&a).unwrap().scale(&Scalar::from_int(2));
        assert_eq!(a.commutator(&a, -1).unwrap(), a2);
    }

    #[test]
    fn nullspace_and_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let (k, free) = a.nullspace();
        assert_eq!(k.cols(), 2);
        assert_eq!(free, vec![1, 2]);
        assert!(a.mul(&k).unwrap().is_zero());
        let b = m(&[&[2, 1], &[1, 1]]);
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi).unwrap(), ScalarMatrix::identity(2));
        assert!(a.inverse().is_none());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn proportional_constant_factor() {
        let u = Poly2::u();
        let a = PolyMatrix::identity(2).scale_by(&u.scale(&Scalar::from_int(2)));
        let b = PolyMatrix::identity(2).scale_by(&u);
        let (num, den) = a.proportional_to(&b).unwrap().unwrap();
        assert_eq!(num, Poly2::constant(Scalar::from_int(2)));
        assert_eq!(den, Poly2::one());
        let c = PolyMatrix::from_fn(2, 2, |i, j| if i == j { Poly2::from(Scalar::from_int(i as i64 + 1)) } else { Poly2::zero() });
        assert!(c.proportional_to(&b).unwrap().is_none());
        assert!(b.proportional_to(&PolyMatrix::zeros(2, 2)).is_err());
    }
}
