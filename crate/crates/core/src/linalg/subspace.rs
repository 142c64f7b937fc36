use std::fmt;

use num_traits::One;

use super::{LinalgError, Rational, RationalMatrix};

/// A linear subspace of `Q^ambient`, held by a canonical basis.
///
/// The basis matrix (`ambient × dim`) is in reduced column-echelon form: its transpose
/// is the reduced row-echelon form of any spanning set. Equal subspaces therefore have
/// identical bases and `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: RationalMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: RationalMatrix::identity(ambient) }
    }

    /// Column span of `m`, canonicalized.
    pub fn span(m: &RationalMatrix) -> Self {
        let e = m.transpose().rref();
        let k = e.pivots.len();
        let basis = e.reduced.block(0, 0, k, m.rows()).transpose();
        Self { ambient: m.rows(), basis }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::span(&RationalMatrix::from_columns(ambient, vectors))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let mut m = RationalMatrix::zeros(ambient, idx.len());
        for (j, &i) in idx.iter().enumerate() {
            m.set(i, j, Rational::one());
        }
        Self::span(&m)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                context: "subspace ambient dimension",
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let x = self.basis.solve(&RationalMatrix::column_vector(v.to_vec()))?;
        Some(x.column(0))
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `other ⊆ self`. Panics on ambient mismatch.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.check(other).expect("contains: ambient mismatch");
        if other.dim() > self.dim() {
            return false;
        }
        self.join(other).dim() == self.dim()
    }

    /// `self + other`. Panics on ambient mismatch; use [`meet_join`] for a checked version.
    pub fn join(&self, other: &Subspace) -> Subspace {
        self.check(other).expect("join: ambient mismatch");
        let m = RationalMatrix::hstack(&[&self.basis, &other.basis]).expect("same rows");
        Subspace::span(&m)
    }

    /// `self ∩ other`. Panics on ambient mismatch; use [`meet_join`] for a checked version.
    pub fn meet(&self, other: &Subspace) -> Subspace {
        self.check(other).expect("meet: ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        // x = A a = B b  <=>  [A | -B] (a, b) = 0
        let m = RationalMatrix::hstack(&[&self.basis, &-&other.basis]).expect("same rows");
        let k = m.kernel_basis();
        let a_part = k.basis.block(0, 0, self.dim(), k.dim());
        Subspace::span(&(&self.basis * &a_part))
    }

    /// Image `M(self)` for a matrix with `cols == ambient`.
    pub fn image_under(&self, m: &RationalMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "image_under: shape mismatch");
        Subspace::span(&(m * &self.basis))
    }

    /// `{x ∈ self : M x ∈ target}`.
    pub fn preimage_within(&self, m: &RationalMatrix, target: &Subspace) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "preimage: shape mismatch");
        assert_eq!(m.rows(), target.ambient, "preimage: target mismatch");
        // M A a = T t  <=>  [M A | -T] (a, t) = 0
        let ma = m * &self.basis;
        let s = RationalMatrix::hstack(&[&ma, &-&target.basis]).expect("same rows");
        let k = s.kernel_basis();
        let a_part = k.basis.block(0, 0, self.dim(), k.dim());
        Subspace::span(&(&self.basis * &a_part))
    }

    /// `Ker(M) ∩ self`.
    pub fn kernel_within(&self, m: &RationalMatrix) -> Subspace {
        self.preimage_within(m, &Subspace::zero(m.rows()))
    }

    /// Whether `self` and `other` intersect trivially.
    pub fn is_independent_of(&self, other: &Subspace) -> bool {
        self.join(other).dim() == self.dim() + other.dim()
    }

    /// Embeds a subspace of `Q^a` into `Q^(offset + a + trailing)` at block `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Subspace {
        assert!(offset + self.ambient <= total, "embed out of range");
        let mut m = RationalMatrix::zeros(total, self.dim());
        m.set_block(offset, 0, &self.basis);
        Subspace::span(&m)
    }

    /// Direct sum of subspaces living in consecutive blocks of a product space.
    pub fn direct_sum(parts: &[&Subspace]) -> Subspace {
        let blocks: Vec<&RationalMatrix> = parts.iter().map(|p| &p.basis).collect();
        Subspace::span(&RationalMatrix::block_diagonal(&blocks))
    }
}

/// Checked meet and join: `(a ∩ b, a + b)`.
pub fn meet_join(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace), LinalgError> {
    a.check(b)?;
    Ok((a.meet(b), a.join(b)))
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}; ", self.dim(), self.ambient)?;
        let cols: Vec<String> = self
            .vectors()
            .iter()
            .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{})", cols.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qq};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn kernel_and_image_examples() {
        let m = RationalMatrix::from_ints(2, 2, &[1, 0, 0, 0]);
        assert_eq!(m.kernel_basis(), Subspace::from_vectors(2, &[v(&[0, 1])]));
        assert_eq!(m.image_basis(), Subspace::from_vectors(2, &[v(&[1, 0])]));
        assert!(RationalMatrix::identity(3).kernel_basis().is_zero());
        assert!(RationalMatrix::zeros(3, 3).image_basis().is_zero());
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::from_vectors(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, &[v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[3, 8, 11])]);
        assert_eq!(a, b);
        let scaled = Subspace::from_vectors(3, &[vec![qq(1, 2), q(1), qq(3, 2)], v(&[0, 2, 2])]);
        assert_eq!(a, scaled);
    }

    #[test]
    fn meet_join_examples() {
        let a = Subspace::from_vectors(2, &[v(&[1, 0])]);
        let b = Subspace::from_vectors(2, &[v(&[1, 1])]);
        let (m, j) = meet_join(&a, &b).unwrap();
        assert!(m.is_zero());
        assert!(j.is_full());
        let (m, j) = meet_join(&a, &a).unwrap();
        assert_eq!(m, a);
        assert_eq!(j, a);
        assert!(meet_join(&a, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn preimage_and_containment() {
        let m = RationalMatrix::from_ints(2, 3, &[1, 0, 0, 0, 1, 0]);
        let target = Subspace::from_vectors(2, &[v(&[1, 0])]);
        let pre = Subspace::full(3).preimage_within(&m, &target);
        assert_eq!(pre, Subspace::coordinate(3, &[0, 2]));
        assert!(pre.contains(&Subspace::coordinate(3, &[2])));
        assert!(!pre.contains(&Subspace::coordinate(3, &[1])));
        assert_eq!(Subspace::full(3).kernel_within(&m), Subspace::coordinate(3, &[2]));
    }

    #[test]
    fn coordinates_reconstruct() {
        let a = Subspace::from_vectors(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let x = v(&[2, 7, 9]);
        let c = a.coordinates(&x).unwrap();
        assert_eq!(a.basis().mul_vec(&c), x);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
