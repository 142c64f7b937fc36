//! Finite-dimensional Hilbert complexes: graded inner-product spaces with differentials
//! defined on declared subspace domains.
//!
//! Differentials are stored as total matrices `D_i: H_i → H_{i+1}` plus a domain
//! `𝒟(D_i) ⊆ H_i`; values of `D_i` off the domain are never used. This lets a pair of
//! complexes share one set of matrices (see [`crate::pairs`]).

use std::fmt;

use thiserror::Error;

use crate::linalg::{InnerProduct, LinalgError, RationalMatrix, Subspace};

/// A validated-shape finite complex `0 → H_0 → … → H_n → 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteComplex {
    spaces: Vec<InnerProduct>,
    differentials: Vec<RationalMatrix>,
    domains: Vec<Subspace>,
}

/// First failure of the complex axioms found by [`FiniteComplex::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("D_{} ∘ D_{degree} is nonzero on the domain of D_{degree}", degree + 1)]
    CompositionNonzero { degree: usize },
    #[error("D_{degree} does not map its domain into the domain of D_{}", degree + 1)]
    DomainNotPreserved { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("a complex needs at least one space")]
    Empty,
    #[error("expected {expected} {what}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error("{what} in degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape { what: &'static str, degree: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("degree {degree} out of range 0..{limit}")]
    DegreeOutOfRange { degree: usize, limit: usize },
    #[error("invalid complex: {0}")]
    Invalid(#[from] Violation),
    #[error("operation requires full domains, but the domain in degree {degree} is proper")]
    ProperDomain { degree: usize },
}

/// Cohomology data in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: usize,
    /// `dim Ker(D_i|𝒟) − dim ran D_{i−1}`.
    pub dim: usize,
    /// `ℋ^i = Ker(D_i|𝒟) ∩ Ker(D*_{i−1})`.
    pub harmonic: Subspace,
    /// `ran D_{i−1}`.
    pub range: Subspace,
    /// `ran D_i*`.
    pub corange: Subspace,
    /// The three components are pairwise orthogonal and sum to all of `H_i`.
    pub kodaira_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn harmonic_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.harmonic.dim()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims())
    }
}

/// `Σ (−1)^i x_i`.
pub fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// The Laplacian in one degree together with its kernel.
#[derive(Clone, Debug)]
pub struct Laplacian {
    pub matrix: RationalMatrix,
    pub kernel: Subspace,
}

impl FiniteComplex {
    /// Builds a complex after shape checks. `domains = None` means full domains.
    /// The complex axioms are checked separately by [`validate`](Self::validate).
    pub fn new(
        spaces: Vec<InnerProduct>,
        differentials: Vec<RationalMatrix>,
        domains: Option<Vec<Subspace>>,
    ) -> Result<Self, ComplexError> {
        if spaces.is_empty() {
            return Err(ComplexError::Empty);
        }
        let n = spaces.len() - 1;
        if differentials.len() != n {
            return Err(ComplexError::Count { what: "differentials", expected: n, found: differentials.len() });
        }
        for (i, d) in differentials.iter().enumerate() {
            let expected = (spaces[i + 1].dim(), spaces[i].dim());
            if d.shape() != expected {
                return Err(ComplexError::Shape { what: "differential", degree: i, expected, found: d.shape() });
            }
        }
        let domains = match domains {
            None => spaces.iter().map(|s| Subspace::full(s.dim())).collect(),
            Some(ds) => {
                if ds.len() != n + 1 {
                    return Err(ComplexError::Count { what: "domains", expected: n + 1, found: ds.len() });
                }
                for (i, d) in ds.iter().enumerate() {
                    if d.ambient() != spaces[i].dim() {
                        return Err(ComplexError::Shape {
                            what: "domain",
                            degree: i,
                            expected: (spaces[i].dim(), d.dim()),
                            found: (d.ambient(), d.dim()),
                        });
                    }
                }
                ds
            }
        };
        Ok(Self { spaces, differentials, domains })
    }

    /// Full-domain complex with standard inner products.
    pub fn standard(differentials: Vec<RationalMatrix>, dims: &[usize]) -> Result<Self, ComplexError> {
        Self::new(dims.iter().map(|&d| InnerProduct::standard(d)).collect(), differentials, None)
    }

    /// Same spaces and matrices with new domains.
    pub fn with_domains(&self, domains: Vec<Subspace>) -> Result<Self, ComplexError> {
        Self::new(self.spaces.clone(), self.differentials.clone(), Some(domains))
    }

    /// Length `n`: the complex has spaces `H_0 … H_n`.
    pub fn len(&self) -> usize {
        self.spaces.len() - 1
    }

    /// A complex always has at least one space; provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(InnerProduct::dim).collect()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.spaces[i].dim()
    }

    pub fn space(&self, i: usize) -> &InnerProduct {
        &self.spaces[i]
    }

    pub fn spaces(&self) -> &[InnerProduct] {
        &self.spaces
    }

    pub fn differential(&self, i: usize) -> &RationalMatrix {
        &self.differentials[i]
    }

    pub fn differentials(&self) -> &[RationalMatrix] {
        &self.differentials
    }

    pub fn domain(&self, i: usize) -> &Subspace {
        &self.domains[i]
    }

    pub fn domains(&self) -> &[Subspace] {
        &self.domains
    }

    pub fn has_full_domains(&self) -> bool {
        self.domains.iter().all(Subspace::is_full)
    }

    fn require_full(&self) -> Result<(), ComplexError> {
        match self.domains.iter().position(|d| !d.is_full()) {
            Some(degree) => Err(ComplexError::ProperDomain { degree }),
            None => Ok(()),
        }
    }

    /// Checks `D_i(𝒟_i) ⊆ 𝒟_{i+1}` and `D_{i+1} D_i = 0` on `𝒟_i`, lowest degree first.
    pub fn validate(&self) -> Result<(), Violation> {
        for i in 0..self.len() {
            let image = self.domains[i].image_under(&self.differentials[i]);
            if !self.domains[i + 1].contains(&image) {
                return Err(Violation::DomainNotPreserved { degree: i });
            }
            if i + 1 < self.len() {
                let dd = &(&self.differentials[i + 1] * &self.differentials[i]) * self.domains[i].basis();
                if !dd.is_zero() {
                    return Err(Violation::CompositionNonzero { degree: i });
                }
            }
        }
        Ok(())
    }

    /// `Ker(D_i) ∩ 𝒟(D_i)`; for `i = n` the whole domain.
    pub fn kernel(&self, i: usize) -> Subspace {
        if i == self.len() {
            self.domains[i].clone()
        } else {
            self.domains[i].kernel_within(&self.differentials[i])
        }
    }

    /// `D_{i−1}(𝒟(D_{i−1})) ⊆ H_i`; zero for `i = 0`.
    pub fn range(&self, i: usize) -> Subspace {
        if i == 0 {
            Subspace::zero(self.dim(0))
        } else {
            self.domains[i - 1].image_under(&self.differentials[i - 1])
        }
    }

    /// `D_i*: H_{i+1} → H_i`, the unique map with `⟨D_i v, w⟩ = ⟨v, D_i* w⟩` for all
    /// `v ∈ 𝒟(D_i)` and range inside `𝒟(D_i)`: `P_𝒟 G_i^{-1} D_iᵀ G_{i+1}`.
    pub fn adjoint(&self, i: usize) -> Result<RationalMatrix, ComplexError> {
        if i >= self.len() {
            return Err(ComplexError::DegreeOutOfRange { degree: i, limit: self.len() });
        }
        let classical = InnerProduct::adjoint(&self.differentials[i], &self.spaces[i], &self.spaces[i + 1]);
        if self.domains[i].is_full() {
            Ok(classical)
        } else {
            Ok(&self.spaces[i].projector(&self.domains[i]) * &classical)
        }
    }

    /// `ℋ^i = Ker(D_i|𝒟) ∩ Ker(D*_{i−1})`.
    pub fn harmonic(&self, i: usize) -> Subspace {
        let ker = self.kernel(i);
        if i == 0 {
            return ker;
        }
        let adj = self.adjoint(i - 1).expect("degree in range");
        ker.kernel_within(&adj)
    }

    pub fn cohomology(&self) -> Result<CohomologyReport, ComplexError> {
        self.validate()?;
        let degrees = (0..=self.len())
            .map(|i| {
                let ip = &self.spaces[i];
                let kernel = self.kernel(i);
                let range = self.range(i);
                let harmonic = self.harmonic(i);
                let corange = if i < self.len() {
                    Subspace::span(&self.adjoint(i).expect("degree in range"))
                } else {
                    Subspace::zero(self.dim(i))
                };
                let orthogonal = ip.orthogonal(&harmonic, &range)
                    && ip.orthogonal(&harmonic, &corange)
                    && ip.orthogonal(&range, &corange);
                let total = harmonic.dim() + range.dim() + corange.dim();
                let kodaira_exact = orthogonal && total == self.dim(i);
                DegreeCohomology { degree: i, dim: kernel.dim() - range.dim(), harmonic, range, corange, kodaira_exact }
            })
            .collect();
        Ok(CohomologyReport { degrees })
    }

    /// `Δ_i = D_i* D_i + D_{i−1} D_{i−1}*`; requires full domains.
    pub fn laplacian(&self, i: usize) -> Result<Laplacian, ComplexError> {
        if i > self.len() {
            return Err(ComplexError::DegreeOutOfRange { degree: i, limit: self.len() + 1 });
        }
        self.require_full()?;
        let n = self.dim(i);
        let mut matrix = RationalMatrix::zeros(n, n);
        if i < self.len() {
            matrix = &matrix + &(&self.adjoint(i)? * &self.differentials[i]);
        }
        if i > 0 {
            matrix = &matrix + &(&self.differentials[i - 1] * &self.adjoint(i - 1)?);
        }
        let kernel = matrix.kernel_basis();
        Ok(Laplacian { matrix, kernel })
    }

    /// The dual complex: spaces `H_{n−i}` and differentials `D*_{n−i−1}`; requires full domains.
    pub fn dual_complex(&self) -> Result<FiniteComplex, ComplexError> {
        self.require_full()?;
        let n = self.len();
        let spaces = (0..=n).map(|i| self.spaces[n - i].clone()).collect();
        let diffs = (0..n).map(|i| self.adjoint(n - i - 1)).collect::<Result<Vec<_>, _>>()?;
        FiniteComplex::new(spaces, diffs, None)
    }
}

impl fmt::Display for FiniteComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims().iter().map(ToString::to_string).collect();
        write!(f, "complex of length {} with dims ({})", self.len(), dims.join(","))
    }
}

/// Simplicial cochain complex of the boundary of a triangle (a 3-vertex circle).
pub fn circle_complex() -> FiniteComplex {
    // vertices 0,1,2; edges 01, 02, 12; (δf)(ab) = f(b) − f(a)
    let d0 = RationalMatrix::from_ints(3, 3, &[-1, 1, 0, -1, 0, 1, 0, -1, 1]);
    FiniteComplex::standard(vec![d0], &[3, 3]).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn ints(r: usize, c: usize, xs: &[i64]) -> RationalMatrix {
        RationalMatrix::from_ints(r, c, xs)
    }

    #[test]
    fn validate_examples() {
        let ok = FiniteComplex::standard(vec![ints(2, 1, &[1, 0]), ints(1, 2, &[0, 1])], &[1, 2, 1]).unwrap();
        assert_eq!(ok.validate(), Ok(()));
        let bad = FiniteComplex::standard(vec![ints(2, 1, &[1, 0]), ints(1, 2, &[1, 0])], &[1, 2, 1]).unwrap();
        assert_eq!(bad.validate(), Err(Violation::CompositionNonzero { degree: 0 }));
        let dom = FiniteComplex::new(
            vec![InnerProduct::standard(2), InnerProduct::standard(2)],
            vec![ints(2, 2, &[0, 0, 1, 0])],
            Some(vec![Subspace::coordinate(2, &[0]), Subspace::coordinate(2, &[0])]),
        )
        .unwrap();
        assert_eq!(dom.validate(), Err(Violation::DomainNotPreserved { degree: 0 }));
    }

    #[test]
    fn adjoint_examples() {
        let d = ints(1, 2, &[1, 0]);
        let c = FiniteComplex::standard(vec![d.clone()], &[2, 1]).unwrap();
        assert_eq!(c.adjoint(0).unwrap(), ints(2, 1, &[1, 0]));
        let weighted = FiniteComplex::new(
            vec![InnerProduct::new(RationalMatrix::diagonal(&[q(1), q(2)])).unwrap(), InnerProduct::standard(1)],
            vec![d.clone()],
            None,
        )
        .unwrap();
        assert_eq!(weighted.adjoint(0).unwrap(), ints(2, 1, &[1, 0]));
        let restricted = c.with_domains(vec![Subspace::coordinate(2, &[0]), Subspace::full(1)]).unwrap();
        assert_eq!(restricted.adjoint(0).unwrap(), ints(2, 1, &[1, 0]));
        assert!(matches!(c.adjoint(1), Err(ComplexError::DegreeOutOfRange { .. })));
    }

    #[test]
    fn restricted_adjoint_is_minimal_norm() {
        // D = (1, 1) on domain span{(1,1)}: ⟨D v, w⟩ = 2 a w for v = a(1,1), so D* w = w (1,1)
        let c = FiniteComplex::standard(vec![ints(1, 2, &[1, 1])], &[2, 1]).unwrap();
        let v = Subspace::from_vectors(2, &[vec![q(1), q(1)]]);
        let c = c.with_domains(vec![v, Subspace::full(1)]).unwrap();
        assert_eq!(c.adjoint(0).unwrap(), ints(2, 1, &[1, 1]));
    }

    #[test]
    fn circle_cohomology_and_laplacian() {
        let c = circle_complex();
        let rep = c.cohomology().unwrap();
        assert_eq!(rep.dims(), vec![1, 1]);
        assert!(rep.degrees.iter().all(|d| d.kodaira_exact));
        let lap = c.laplacian(0).unwrap();
        assert_eq!(lap.kernel, Subspace::from_vectors(3, &[vec![q(1), q(1), q(1)]]));
        let dual = c.dual_complex().unwrap();
        assert_eq!(dual.cohomology().unwrap().dims(), vec![1, 1]);
        assert_eq!(dual.dual_complex().unwrap(), c);
    }

    #[test]
    fn point_complex() {
        let c = FiniteComplex::standard(vec![], &[1]).unwrap();
        assert_eq!(c.cohomology().unwrap().dims(), vec![1]);
        assert_eq!(c.dual_complex().unwrap(), c);
        assert!(c.laplacian(0).unwrap().matrix.is_zero());
    }

    #[test]
    fn zero_differentials_have_full_kernel() {
        let c = FiniteComplex::standard(vec![RationalMatrix::zeros(2, 3)], &[3, 2]).unwrap();
        let lap = c.laplacian(1).unwrap();
        assert!(lap.matrix.is_zero() && lap.kernel.is_full());
    }

    #[test]
    fn proper_domains_block_laplacian() {
        let c = circle_complex().with_domains(vec![Subspace::zero(3), Subspace::full(3)]).unwrap();
        assert_eq!(c.laplacian(0).unwrap_err(), ComplexError::ProperDomain { degree: 0 });
        assert!(c.dual_complex().is_err());
        let rep = c.cohomology().unwrap();
        assert_eq!(rep.dims(), vec![0, 3]);
        assert!(!rep.degrees[0].kodaira_exact);
    }
}
