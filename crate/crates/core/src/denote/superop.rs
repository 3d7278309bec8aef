use std::fmt;
use std::sync::Arc;

use super::DenoteError;
use crate::matrix::{CMatrix, Tolerance};

type Map = Arc<dyn Fn(&CMatrix) -> CMatrix + Send + Sync>;

/// A linear map from `in_dim × in_dim` to `out_dim × out_dim` matrices.
#[derive(Clone)]
pub struct Superoperator {
    in_dim: usize,
    out_dim: usize,
    map: Map,
}

impl fmt::Debug for Superoperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Superoperator({} -> {})", self.in_dim, self.out_dim)
    }
}

impl Superoperator {
    /// `map` must be linear and honor the stated dimensions.
    pub fn new(
        in_dim: usize,
        out_dim: usize,
        map: impl Fn(&CMatrix) -> CMatrix + Send + Sync + 'static,
    ) -> Self {
        Superoperator {
            in_dim,
            out_dim,
            map: Arc::new(map),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, CMatrix::clone)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix, DenoteError> {
        if rho.dims() != (self.in_dim, self.in_dim) {
            return Err(DenoteError::DimensionMismatch {
                expected: self.in_dim,
                found: rho.dims(),
            });
        }
        Ok((self.map)(rho))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Superoperator) -> Result<Superoperator, DenoteError> {
        if self.out_dim != next.in_dim {
            return Err(DenoteError::DimensionMismatch {
                expected: next.in_dim,
                found: (self.out_dim, self.out_dim),
            });
        }
        let (f, g) = (self.map.clone(), next.map.clone());
        Ok(Superoperator {
            in_dim: self.in_dim,
            out_dim: next.out_dim,
            map: Arc::new(move |rho| g(&f(rho))),
        })
    }

    pub fn choi(&self) -> ChoiMatrix {
        choi(self)
    }
}

/// `ρ ↦ A ρ A†` for an `m×n` matrix `A`.
pub fn super_op(a: &CMatrix) -> Superoperator {
    let a = a.clone();
    let adj = a.adjoint();
    Superoperator::new(a.cols(), a.rows(), move |rho| &(&a * rho) * &adj)
}

/// `ρ ↦ Σ K ρ K†` over the given operators, which share dimensions.
pub fn kraus(ops: Vec<CMatrix>) -> Superoperator {
    let (rows, cols) = ops.first().map(CMatrix::dims).expect("at least one operator");
    let pairs: Vec<(CMatrix, CMatrix)> = ops
        .into_iter()
        .map(|k| {
            let adj = k.adjoint();
            (k, adj)
        })
        .collect();
    Superoperator::new(cols, rows, move |rho| {
        let mut acc = CMatrix::zero(rows, rows);
        for (k, adj) in &pairs {
            acc = &acc + &(&(k * rho) * adj);
        }
        acc
    })
}

pub fn super_plus(s1: &Superoperator, s2: &Superoperator) -> Result<Superoperator, DenoteError> {
    if (s1.in_dim, s1.out_dim) != (s2.in_dim, s2.out_dim) {
        return Err(DenoteError::SuperDimensionMismatch {
            left: (s1.in_dim, s1.out_dim),
            right: (s2.in_dim, s2.out_dim),
        });
    }
    let (f, g) = (s1.map.clone(), s2.map.clone());
    Ok(Superoperator {
        in_dim: s1.in_dim,
        out_dim: s1.out_dim,
        map: Arc::new(move |rho| &f(rho) + &g(rho)),
    })
}

pub fn super_zero(in_dim: usize, out_dim: usize) -> Superoperator {
    Superoperator::new(in_dim, out_dim, move |_| CMatrix::zero(out_dim, out_dim))
}

/// Block matrix `Σ_ij E_ij ⊗ S(E_ij)`. By linearity it determines `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub in_dim: usize,
    pub out_dim: usize,
    pub mat: CMatrix,
}

pub fn choi(s: &Superoperator) -> ChoiMatrix {
    let (n, m) = (s.in_dim, s.out_dim);
    let mut mat = CMatrix::zero(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let mut unit = CMatrix::zero(n, n);
            unit[(i, j)] = crate::matrix::ONE;
            let image = (s.map)(&unit);
            for a in 0..m {
                for b in 0..m {
                    mat[(i * m + a, j * m + b)] = image[(a, b)];
                }
            }
        }
    }
    ChoiMatrix {
        in_dim: n,
        out_dim: m,
        mat,
    }
}

/// Largest entrywise difference between the Choi matrices.
pub fn max_deviation(s1: &Superoperator, s2: &Superoperator) -> Result<f64, DenoteError> {
    if (s1.in_dim, s1.out_dim) != (s2.in_dim, s2.out_dim) {
        return Err(DenoteError::SuperDimensionMismatch {
            left: (s1.in_dim, s1.out_dim),
            right: (s2.in_dim, s2.out_dim),
        });
    }
    Ok(choi(s1)
        .mat
        .max_abs_diff(&choi(s2).mat)
        .expect("equal dimensions"))
}

pub fn superop_eq(s1: &Superoperator, s2: &Superoperator, t: Tolerance) -> Result<bool, DenoteError> {
    Ok(max_deviation(s1, s2)? <= t.eps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{Complex, ONE, ZERO};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn proj(bit: bool) -> CMatrix {
        let k = CMatrix::basis_ket(bit);
        &k * &k.adjoint()
    }

    fn hadamard() -> CMatrix {
        CMatrix::from_real_rows(&[[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
    }

    #[test]
    fn super_examples() {
        let t = Tolerance::default();
        assert!(superop_eq(&super_op(&CMatrix::identity(2)), &Superoperator::identity(2), t).unwrap());
        let init = super_op(&CMatrix::basis_ket(false));
        assert_eq!((init.in_dim(), init.out_dim()), (1, 2));
        assert_eq!(init.apply(&CMatrix::identity(1)).unwrap(), proj(false));
        let plus = &hadamard() * &CMatrix::basis_ket(false);
        let oracle = &plus * &plus.adjoint();
        assert!(super_op(&hadamard()).apply(&proj(false)).unwrap().approx_eq(&oracle, t));
        assert!(init.apply(&CMatrix::identity(2)).is_err());
    }

    #[test]
    fn super_plus_examples() {
        let t = Tolerance::default();
        let s = super_op(&hadamard());
        let z = super_zero(2, 2);
        assert!(superop_eq(&super_plus(&s, &z).unwrap(), &s, t).unwrap());
        let meas = super_plus(&super_op(&proj(false)), &super_op(&proj(true))).unwrap();
        let rho = CMatrix::from_rows(&[[Complex::new(0.6, 0.0), Complex::new(0.1, 0.2)], [Complex::new(0.1, -0.2), Complex::new(0.4, 0.0)]]);
        let out = meas.apply(&rho).unwrap();
        assert_eq!(out[(0, 1)], ZERO);
        assert_eq!(out[(0, 0)], Complex::new(0.6, 0.0));
        let a = super_plus(&s, &meas).unwrap().apply(&rho).unwrap();
        let b = super_plus(&meas, &s).unwrap().apply(&rho).unwrap();
        assert!(a.approx_eq(&b, t));
        assert!(super_plus(&s, &super_zero(2, 1)).is_err());
    }

    #[test]
    fn choi_of_identity_is_unnormalized_bell_projector() {
        let c = choi(&Superoperator::identity(2)).mat;
        assert_eq!(c[(0, 0)], ONE);
        assert_eq!(c[(0, 3)], ONE);
        assert_eq!(c[(3, 0)], ONE);
        assert_eq!(c[(3, 3)], ONE);
        assert_eq!(c.trace(), Complex::new(2.0, 0.0));
    }

    #[test]
    fn superop_eq_rejects_different_maps() {
        let t = Tolerance::default();
        let meas = super_plus(&super_op(&proj(false)), &super_op(&proj(true))).unwrap();
        assert!(superop_eq(&meas, &meas, t).unwrap());
        assert!(!superop_eq(&Superoperator::identity(2), &meas, t).unwrap());
        assert!(superop_eq(&Superoperator::identity(2), &Superoperator::identity(4), t).is_err());
    }

    #[test]
    fn then_composes_in_order() {
        let init = super_op(&CMatrix::basis_ket(false));
        let h = super_op(&hadamard());
        let s = init.then(&h).unwrap();
        let out = s.apply(&CMatrix::identity(1)).unwrap();
        assert!(out.approx_eq(&CMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]), Tolerance::default()));
        assert!(h.then(&init).is_err());
    }
}
