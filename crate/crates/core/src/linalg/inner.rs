use num_traits::{Signed, Zero};

use super::{LinalgError, Rational, RationalMatrix, Subspace};

/// A positive definite inner product on `Q^n`, given by its Gram matrix.
///
/// Positive definiteness is certified at construction by an exact LDLᵀ factorization
/// whose pivots must all be positive. The inverse Gram matrix is cached because every
/// adjoint needs it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InnerProduct {
    gram: RationalMatrix,
    gram_inv: RationalMatrix,
    standard: bool,
}

/// Result of [`orth`]: the Gram-orthogonal complement and the projector onto the subspace.
#[derive(Clone, Debug)]
pub struct Orth {
    pub complement: Subspace,
    pub projector: RationalMatrix,
}

impl InnerProduct {
    pub fn new(gram: RationalMatrix) -> Result<Self, LinalgError> {
        if !gram.is_square() {
            return Err(LinalgError::DimensionMismatch {
                context: "gram matrix",
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        ldlt_pivots(&gram)?;
        let gram_inv = gram.inverse().ok_or(LinalgError::Singular)?;
        let standard = gram == RationalMatrix::identity(gram.rows());
        Ok(Self { gram, gram_inv, standard })
    }

    pub fn standard(n: usize) -> Self {
        Self { gram: RationalMatrix::identity(n), gram_inv: RationalMatrix::identity(n), standard: true }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &RationalMatrix {
        &self.gram_inv
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    /// `Bᵀ G B` for a basis `B`: the Gram matrix of the inner product restricted to a subspace.
    pub fn restricted_gram(&self, basis: &RationalMatrix) -> RationalMatrix {
        &(&basis.transpose() * &self.gram) * basis
    }

    /// Orthogonal complement of `a` in the whole space: `Ker(Aᵀ G)`.
    pub fn complement(&self, a: &Subspace) -> Subspace {
        assert_eq!(a.ambient(), self.dim(), "complement: ambient mismatch");
        if a.is_zero() {
            return Subspace::full(self.dim());
        }
        (&a.basis().transpose() * &self.gram).kernel_basis()
    }

    /// Orthogonal complement of `a` inside `within` (`a` need not lie in `within`).
    pub fn complement_within(&self, a: &Subspace, within: &Subspace) -> Subspace {
        within.meet(&self.complement(a))
    }

    /// Orthogonal projector onto `a`: `A (Aᵀ G A)^{-1} Aᵀ G`.
    pub fn projector(&self, a: &Subspace) -> RationalMatrix {
        assert_eq!(a.ambient(), self.dim(), "projector: ambient mismatch");
        let n = self.dim();
        if a.is_zero() {
            return RationalMatrix::zeros(n, n);
        }
        if a.is_full() {
            return RationalMatrix::identity(n);
        }
        let b = a.basis();
        let atg = &b.transpose() * &self.gram;
        let small = (&atg * b).inverse().expect("restricted gram of a basis is invertible");
        &(b * &small) * &atg
    }

    /// Whether every vector of `a` is orthogonal to every vector of `b`.
    pub fn orthogonal(&self, a: &Subspace, b: &Subspace) -> bool {
        (&(&a.basis().transpose() * &self.gram) * b.basis()).is_zero()
    }

    /// Classical adjoint of `m: (Q^cols, src) → (Q^rows, dst)`: `G_src^{-1} mᵀ G_dst`.
    pub fn adjoint(m: &RationalMatrix, src: &InnerProduct, dst: &InnerProduct) -> RationalMatrix {
        assert_eq!(m.cols(), src.dim(), "adjoint: source mismatch");
        assert_eq!(m.rows(), dst.dim(), "adjoint: target mismatch");
        let mt = m.transpose();
        let left = if src.standard { mt } else { &src.gram_inv * &mt };
        if dst.standard {
            left
        } else {
            &left * &dst.gram
        }
    }
}

/// Checked complement-and-projector pair for `a` under `ip`.
pub fn orth(a: &Subspace, ip: &InnerProduct) -> Result<Orth, LinalgError> {
    if a.ambient() != ip.dim() {
        return Err(LinalgError::DimensionMismatch { context: "orth ambient", expected: ip.dim(), found: a.ambient() });
    }
    Ok(Orth { complement: ip.complement(a), projector: ip.projector(a) })
}

/// Pivots of the exact LDLᵀ factorization without pivoting; errors at the first
/// nonpositive pivot, which certifies failure of positive definiteness.
fn ldlt_pivots(g: &RationalMatrix) -> Result<Vec<Rational>, LinalgError> {
    let n = g.rows();
    let mut a = g.clone();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let d = a.get(k, k).clone();
        if !d.is_positive() {
            return Err(LinalgError::NotPositiveDefinite { pivot: k, value: d.to_string() });
        }
        for i in k + 1..n {
            let f = a.get(i, k) / &d;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let delta = &f * a.get(k, j);
                let v = a.get(i, j) - delta;
                a.set(i, j, v);
            }
        }
        pivots.push(d);
    }
    Ok(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn positive_definiteness_certificate() {
        assert!(InnerProduct::new(RationalMatrix::from_ints(2, 2, &[2, 1, 1, 2])).is_ok());
        assert!(matches!(
            InnerProduct::new(RationalMatrix::from_ints(2, 2, &[1, 2, 2, 1])),
            Err(LinalgError::NotPositiveDefinite { pivot: 1, .. })
        ));
        assert_eq!(InnerProduct::new(RationalMatrix::from_ints(2, 2, &[1, 1, 0, 1])), Err(LinalgError::NotSymmetric));
        assert!(InnerProduct::new(RationalMatrix::zeros(0, 0)).is_ok());
    }

    #[test]
    fn orth_examples() {
        let ip = InnerProduct::standard(2);
        let a = Subspace::from_vectors(2, &[vec![q(1), q(1)]]);
        let o = orth(&a, &ip).unwrap();
        assert_eq!(o.complement, Subspace::from_vectors(2, &[vec![q(1), q(-1)]]));
        let ip2 = InnerProduct::new(RationalMatrix::diagonal(&[q(1), q(2)])).unwrap();
        let e1 = Subspace::coordinate(2, &[0]);
        assert_eq!(orth(&e1, &ip2).unwrap().complement, Subspace::coordinate(2, &[1]));
    }

    #[test]
    fn projector_properties() {
        let ip = InnerProduct::new(RationalMatrix::from_ints(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4])).unwrap();
        let a = Subspace::from_vectors(3, &[vec![q(1), q(2), q(0)]]);
        let p = ip.projector(&a);
        assert_eq!(&p * &p, p);
        assert_eq!(ip.gram() * &p, &p.transpose() * ip.gram());
        assert_eq!(p.image_basis(), a);
        assert_eq!(p.kernel_basis(), ip.complement(&a));
    }

    #[test]
    fn adjoint_defining_identity() {
        let src = InnerProduct::new(RationalMatrix::diagonal(&[q(1), q(2)])).unwrap();
        let dst = InnerProduct::standard(1);
        let d = RationalMatrix::from_ints(1, 2, &[1, 0]);
        assert_eq!(InnerProduct::adjoint(&d, &src, &dst), RationalMatrix::from_ints(2, 1, &[1, 0]));
    }
}
