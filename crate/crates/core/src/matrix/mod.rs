//! Dense complex matrices.
//!
//! Storage is row-major with explicit dimensions, so every entry read is in
//! range by construction. Equality is numeric, up to a [`Tolerance`].

mod eig;
mod text;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

use crate::wire::ClassicalValue;

pub use eig::{eig_hermitian, eig_hermitian_with};
pub use num_complex::Complex64 as Complex;
pub use text::{format_matrix, parse_matrix};

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("{op}: dimension mismatch {}x{} vs {}x{}", .left.0, .left.1, .right.0, .right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Absolute entrywise tolerance used by every numeric comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    /// `None` unless `eps` is a positive finite number.
    pub fn new(eps: f64) -> Option<Self> {
        (eps > 0.0 && eps.is_finite()).then_some(Tolerance { eps })
    }

    pub fn eps(self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps: Self::DEFAULT_EPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// `None` if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Option<Self> {
        (data.len() == rows * cols).then_some(CMatrix { rows, cols, data })
    }

    /// Rows of equal length. Panics on ragged input.
    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        CMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diag(entries: &[Complex]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn real_diag(entries: &[f64]) -> Self {
        let z: Vec<_> = entries.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::diag(&z)
    }

    /// Column vector.
    pub fn column(entries: &[Complex]) -> Self {
        CMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// `|0⟩` or `|1⟩`.
    pub fn basis_ket(bit: bool) -> Self {
        if bit {
            Self::column(&[ZERO, ONE])
        } else {
            Self::column(&[ONE, ZERO])
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Complex> {
        (r < self.rows && c < self.cols).then(|| self.data[r * self.cols + c])
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "matmul",
                left: self.dims(),
                right: other.dims(),
            });
        }
        let mut out = CMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix, MatrixError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix, MatrixError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &CMatrix,
        op: &'static str,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<CMatrix, MatrixError> {
        if self.dims() != other.dims() {
            return Err(MatrixError::DimensionMismatch {
                op,
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: Complex) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| c * z).collect(),
        }
    }

    /// Entry `(x, y)` is `self(x / o, y / p) * other(x % o, y % p)` for an `o×p` right factor.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (o, p) = other.dims();
        let rows = self.rows * o;
        let cols = self.cols * p;
        let mut data = vec![ZERO; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..o {
                    let row = (i * o + k) * cols + j * p;
                    for l in 0..p {
                        data[row + l] = a * other.data[k * p + l];
                    }
                }
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`; `None` if dimensions differ.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Option<f64> {
        (self.dims() == other.dims()).then(|| {
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
    }

    pub fn approx_eq(&self, other: &CMatrix, t: Tolerance) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= t.eps())
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn require_square(&self, op: &'static str) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn is_unitary(&self, t: Tolerance) -> Result<bool, MatrixError> {
        self.require_square("is_unitary")?;
        let prod = &self.adjoint() * self;
        Ok(prod.approx_eq(&CMatrix::identity(self.rows), t))
    }

    pub fn is_hermitian(&self, t: Tolerance) -> Result<bool, MatrixError> {
        self.require_square("is_hermitian")?;
        Ok(self.approx_eq(&self.adjoint(), t))
    }

    /// Hermitian, unit trace and positive semidefinite, all within `t`.
    pub fn is_density(&self, t: Tolerance) -> Result<bool, MatrixError> {
        self.require_square("is_density")?;
        if !self.is_hermitian(t)? {
            return Ok(false);
        }
        if (self.trace() - ONE).norm() > t.eps() {
            return Ok(false);
        }
        let eigs = eig_hermitian_with(self, t)?;
        Ok(eigs.iter().all(|&l| l >= -t.eps()))
    }

    /// Whether this is a 0/1 matrix with exactly one 1 in every row and column.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut col_hits = vec![0usize; n];
        for i in 0..n {
            let mut row_hits = 0;
            for j in 0..n {
                let z = self[(i, j)];
                if z == ONE {
                    row_hits += 1;
                    col_hits[j] += 1;
                } else if z != ZERO {
                    return false;
                }
            }
            if row_hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&c| c == 1)
    }
}

/// Computational basis column for a classical value; pairs are Kronecker products.
pub fn ket(v: &ClassicalValue) -> CMatrix {
    match v {
        ClassicalValue::Unit => CMatrix::identity(1),
        ClassicalValue::Bool(b) => CMatrix::basis_ket(*b),
        ClassicalValue::Pair(l, r) => ket(l).kron(&ket(r)),
    }
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n)
}

pub fn zero(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zero(rows, cols)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

pub fn approx_eq(a: &CMatrix, b: &CMatrix, t: Tolerance) -> bool {
    a.approx_eq(b, t)
}

pub fn is_unitary(a: &CMatrix, t: Tolerance) -> Result<bool, MatrixError> {
    a.is_unitary(t)
}

pub fn is_density(rho: &CMatrix, t: Tolerance) -> Result<bool, MatrixError> {
    rho.is_density(t)
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;

    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range for {}x{}", self.rows, self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range for {}x{}", self.rows, self.cols);
        &mut self.data[r * self.cols + c]
    }
}

// Operator forms panic on dimension mismatch; the named methods return errors.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        CMatrix::add(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        CMatrix::sub(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn hadamard() -> CMatrix {
        CMatrix::from_real_rows(&[[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
    }

    fn arb_complex() -> impl Strategy<Value = Complex> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
        proptest::collection::vec(arb_complex(), rows * cols)
            .prop_map(move |d| CMatrix::from_vec(rows, cols, d).unwrap())
    }

    #[test]
    fn arithmetic_examples() {
        let a = CMatrix::from_rows(&[[c(1.0, 2.0), c(0.5, 0.0)], [c(-1.0, 0.0), c(0.0, -3.0)]]);
        assert_eq!(&identity(2) * &a, a);
        assert_eq!(&zero(2, 2) + &a, a);
        let err = zero(2, 3).matmul(&zero(2, 2)).unwrap_err();
        assert!(matches!(err, MatrixError::DimensionMismatch { op: "matmul", .. }));
        assert!(zero(2, 2).add(&zero(2, 3)).is_err());
        assert_eq!(a.scale(c(0.0, 1.0))[(0, 0)], c(-2.0, 1.0));
    }

    #[test]
    fn kron_examples() {
        let k = kron(&CMatrix::basis_ket(false), &CMatrix::basis_ket(true));
        assert_eq!(k, CMatrix::column(&[ZERO, ONE, ZERO, ZERO]));
        assert_eq!(kron(&identity(2), &identity(2)), identity(4));
        let rect = kron(&zero(2, 3), &zero(4, 5));
        assert_eq!(rect.dims(), (8, 15));
    }

    #[test]
    fn kron_entry_formula() {
        let a = CMatrix::from_rows(&[[c(1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0)], [c(-1.0, 0.0), c(0.5, 0.5), c(4.0, 0.0)]]);
        let b = CMatrix::from_rows(&[[c(0.0, 1.0), c(2.0, 0.0)], [c(3.0, 0.0), c(1.0, -1.0)], [c(5.0, 0.0), c(0.0, 0.0)]]);
        let k = kron(&a, &b);
        let (o, p) = b.dims();
        for x in 0..k.rows() {
            for y in 0..k.cols() {
                assert_eq!(k[(x, y)], a[(x / o, y / p)] * b[(x % o, y % p)]);
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&CMatrix::basis_ket(false)), CMatrix::from_rows(&[[ONE, ZERO]]));
        assert_eq!(adjoint(&identity(1).scale(I)), identity(1).scale(-I));
    }

    #[test]
    fn unitary_examples() {
        let t = Tolerance::default();
        // H†H = I by direct evaluation of the four entries: (1/2)(1+1), (1/2)(1-1).
        assert!(hadamard().is_unitary(t).unwrap());
        let p0 = &CMatrix::basis_ket(false) * &adjoint(&CMatrix::basis_ket(false));
        assert!(!p0.is_unitary(t).unwrap());
        assert!(identity(4).is_unitary(t).unwrap());
        assert!(zero(2, 3).is_unitary(t).is_err());
    }

    #[test]
    fn density_examples() {
        let t = Tolerance::default();
        assert!(CMatrix::real_diag(&[0.5, 0.5]).is_density(t).unwrap());
        let p0 = &CMatrix::basis_ket(false) * &adjoint(&CMatrix::basis_ket(false));
        assert!(p0.is_density(t).unwrap());
        assert!(!identity(2).is_density(t).unwrap());
        assert!(!CMatrix::real_diag(&[1.5, -0.5]).is_density(t).unwrap());
        let non_herm = CMatrix::from_real_rows(&[[0.5, 0.2], [0.0, 0.5]]);
        assert!(!non_herm.is_density(t).unwrap());
        assert!(zero(1, 2).is_density(t).is_err());
    }

    #[test]
    fn convex_combinations_of_pure_states_are_densities() {
        let t = Tolerance::default();
        let plus = &hadamard() * &CMatrix::basis_ket(false);
        let pp = &plus * &plus.adjoint();
        let p1 = &CMatrix::basis_ket(true) * &CMatrix::basis_ket(true).adjoint();
        let mix = &pp.scale(c(0.3, 0.0)) + &p1.scale(c(0.7, 0.0));
        assert!(mix.is_density(t).unwrap());
        assert!(pp.is_density(t).unwrap());
        // Pure states are idempotent.
        assert!((&pp * &pp).approx_eq(&pp, t));
    }

    #[test]
    fn approx_eq_examples() {
        let t = Tolerance::default();
        let a = hadamard();
        assert!(approx_eq(&a, &a, t));
        assert!(!approx_eq(&identity(2), &CMatrix::real_diag(&[0.5, 0.5]), t));
        assert!(approx_eq(&(&a * &a), &identity(2), t));
        assert!(!approx_eq(&identity(2), &identity(3), t));
    }

    #[test]
    fn ket_examples() {
        assert_eq!(ket(&ClassicalValue::Bool(false)), CMatrix::column(&[ONE, ZERO]));
        let v = ClassicalValue::pair(ClassicalValue::Bool(true), ClassicalValue::Bool(false));
        assert_eq!(ket(&v), CMatrix::column(&[ZERO, ZERO, ONE, ZERO]));
        assert_eq!(ket(&ClassicalValue::Unit), CMatrix::column(&[ONE]));
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(Tolerance::new(0.0).is_none());
        assert!(Tolerance::new(-1.0).is_none());
        assert!(Tolerance::new(f64::NAN).is_none());
        assert_eq!(Tolerance::default().eps(), 1e-9);
    }

    #[test]
    fn permutation_predicate() {
        assert!(identity(4).is_permutation());
        assert!(!CMatrix::real_diag(&[1.0, 0.0]).is_permutation());
        assert!(!hadamard().is_permutation());
    }

    proptest! {
        #[test]
        fn adjoint_is_involutive(a in arb_matrix(3, 2)) {
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn conj_is_involutive(z in arb_complex()) {
            prop_assert_eq!(z.conj().conj(), z);
        }

        #[test]
        fn mixed_product(a in arb_matrix(2, 2), b in arb_matrix(2, 2), c2 in arb_matrix(2, 2), d in arb_matrix(2, 2)) {
            let lhs = &a.kron(&b) * &c2.kron(&d);
            let rhs = (&a * &c2).kron(&(&b * &d));
            prop_assert!(lhs.approx_eq(&rhs, Tolerance::new(1e-12).unwrap()));
        }

        #[test]
        fn kron_is_associative(a in arb_matrix(2, 1), b in arb_matrix(1, 2), c2 in arb_matrix(2, 2)) {
            let lhs = a.kron(&b).kron(&c2);
            let rhs = a.kron(&b.kron(&c2));
            prop_assert!(lhs.approx_eq(&rhs, Tolerance::new(1e-12).unwrap()));
        }

        #[test]
        fn trace_of_kron(a in arb_matrix(2, 2), b in arb_matrix(3, 3)) {
            let lhs = a.kron(&b).trace();
            let rhs = a.trace() * b.trace();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
