//! Pairs of complexes `D ⊆ L` on shared spaces, their image cohomology, link maps between
//! complementary complexes, the Friedrichs composition and the five-way equivalence check.
//!
//! Operator names follow the min/max convention: `d_min = D`, `d_max = L`,
//! `δ_min = L†` (classical adjoint of `L`) and `δ_max = D*` (adjoint of `D` with its
//! minimal-norm representative in the domain), mirroring `(P_max)* = P^t_min`.

use thiserror::Error;

use crate::complex::{alternating_sum, ComplexError, FiniteComplex, Violation};
use crate::linalg::{InnerProduct, Rational, RationalMatrix, Subspace};

/// A pair `D ⊆ L`: `L` has full domains, `D` shares its matrices with domains `V_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    l: FiniteComplex,
    d: FiniteComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PairError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the larger complex must have full domains (degree {degree} is proper)")]
    ProperOuterDomain { degree: usize },
    #[error("larger complex is invalid: {0}")]
    InvalidOuter(Violation),
    #[error("domain subcomplex is invalid: {0}")]
    InvalidInner(Violation),
    #[error("link map {what} in degree {degree} has shape {found:?}, expected {expected:?}")]
    LinkShape { what: &'static str, degree: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("expected {expected} {what}, found {found}")]
    LinkCount { what: &'static str, expected: usize, found: usize },
    #[error("link map φ_{degree} is singular")]
    SingularLink { degree: usize },
    #[error("link constant c_{degree} is zero")]
    ZeroConstant { degree: usize },
    #[error("internal consistency failure in degree {degree}: {what}")]
    Inconsistent { degree: usize, what: &'static str },
}

/// Image cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeImage {
    pub degree: usize,
    /// `dim Ker(D_j) − dim(ran L_{j−1} ∩ V_j)`.
    pub dim: usize,
    /// `ran π_{1,j}`: the projection of `ℋ^j(D)` onto `ℋ^j(L)`.
    pub representatives: Subspace,
    pub dim_d: usize,
    pub dim_l: usize,
    /// The map `H^j(D) → H^j(L)` is injective.
    pub inject: bool,
    /// The map `H^j(D) → H^j(L)` is surjective.
    pub surject: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub degrees: Vec<DegreeImage>,
    /// `Σ (−1)^j dim im(H^j(D) → H^j(L))`.
    pub chi: i64,
}

impl ImageReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }
}

/// Checks on the duality-proof projections in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionChecks {
    /// `π_1` and `π_4` are adjoint between `ℋ(D)` and `ℋ(L)` with restricted grams.
    pub adjoint: bool,
    /// `π_3` (projection onto `ran L_j*`) vanishes on `ℋ^j(D)`.
    pub pi3_vanishes: bool,
}

/// Graded maps `φ_i: H_i → H_{n−i}` and constants `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkMaps {
    pub maps: Vec<RationalMatrix>,
    pub constants: Vec<Rational>,
}

impl LinkMaps {
    /// Identity links with unit constants; requires `dims` to be palindromic.
    pub fn identity(dims: &[usize]) -> Self {
        let n = dims.len().saturating_sub(1);
        Self {
            maps: dims.iter().map(|&d| RationalMatrix::identity(d)).collect(),
            constants: vec![Rational::from_integer(1.into()); n],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relatedness {
    pub related: bool,
    pub complementary: bool,
    /// Whether every domain `V_i` is full, so the domain condition is checkable; it then
    /// holds automatically since `𝒟(L*)` is the whole space.
    pub domain_condition_checkable: bool,
}

/// Result of the Friedrichs-composition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriedrichsReport {
    /// `Ker(A_max ∘ A_min)` on `⊕V_i`, as a subspace of `⊕H_i`.
    pub kernel: Subspace,
    /// `⊕_i (Ker D_i ∩ Ker δ_min,i−1)`.
    pub harmonic_min: Subspace,
    pub kernel_identity: bool,
    pub kernel_dims: Vec<usize>,
    /// `ran(A_max ∘ A_min) == ran(A_max)`.
    pub range_identity: bool,
    pub range_dim: usize,
    pub max_range_dim: usize,
}

/// The five conditions of the equivalence check in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiveWay {
    pub conditions: [bool; 5],
}

impl FiveWay {
    pub fn all_equal(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }
}

impl ComplexPair {
    /// `l` must be a valid full-domain complex; `domains` must form a subcomplex.
    pub fn new(l: FiniteComplex, domains: Vec<Subspace>) -> Result<Self, PairError> {
        if let Some(degree) = l.domains().iter().position(|d| !d.is_full()) {
            return Err(PairError::ProperOuterDomain { degree });
        }
        l.validate().map_err(PairError::InvalidOuter)?;
        let d = l.with_domains(domains)?;
        d.validate().map_err(PairError::InvalidInner)?;
        Ok(Self { l, d })
    }

    /// The trivial pair `L ⊆ L`.
    pub fn diagonal(l: FiniteComplex) -> Result<Self, PairError> {
        let domains = l.domains().to_vec();
        Self::new(l, domains)
    }

    pub fn l(&self) -> &FiniteComplex {
        &self.l
    }

    pub fn d(&self) -> &FiniteComplex {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domain(&self, i: usize) -> &Subspace {
        self.d.domain(i)
    }

    pub fn domains(&self) -> &[Subspace] {
        self.d.domains()
    }

    pub fn space(&self, i: usize) -> &InnerProduct {
        self.l.space(i)
    }

    /// Classical adjoint `L_i†: H_{i+1} → H_i` (this is `δ_min`).
    pub fn l_adjoint(&self, i: usize) -> RationalMatrix {
        self.l.adjoint(i).expect("degree in range")
    }

    /// `D_i*` with minimal-norm representative in `V_i` (this is `δ_max`).
    pub fn d_adjoint(&self, i: usize) -> RationalMatrix {
        self.d.adjoint(i).expect("degree in range")
    }

    /// `ran L_{i−1} ∩ V_i`.
    pub fn range_meet_domain(&self, i: usize) -> Subspace {
        self.l.range(i).meet(self.domain(i))
    }

    /// `dim Ker(D_j) − dim(ran L_{j−1} ∩ V_j)`.
    pub fn image_dim(&self, j: usize) -> usize {
        self.d.kernel(j).dim() - self.range_meet_domain(j).dim()
    }

    pub fn image_dims(&self) -> Vec<usize> {
        (0..=self.len()).map(|j| self.image_dim(j)).collect()
    }

    /// `ℋ^i_min = Ker D_i ∩ V_i ∩ Ker L†_{i−1}`.
    pub fn harmonic_min(&self, i: usize) -> Subspace {
        let ker = self.d.kernel(i);
        if i == 0 {
            ker
        } else {
            ker.kernel_within(&self.l_adjoint(i - 1))
        }
    }

    /// `ℋ^i_abs = ℋ^i(L)`.
    pub fn harmonic_abs(&self, i: usize) -> Subspace {
        self.l.harmonic(i)
    }

    /// `ℋ^i_rel = ℋ^i(D)`.
    pub fn harmonic_rel(&self, i: usize) -> Subspace {
        self.d.harmonic(i)
    }

    pub fn image_cohomology(&self) -> Result<ImageReport, PairError> {
        let coh_d = self.d.cohomology()?;
        let coh_l = self.l.cohomology()?;
        let mut degrees = Vec::with_capacity(self.len() + 1);
        for j in 0..=self.len() {
            let dim = self.image_dim(j);
            let hd = &coh_d.degrees[j].harmonic;
            let hl = &coh_l.degrees[j].harmonic;
            let representatives = hd.image_under(&self.space(j).projector(hl));
            if representatives.dim() != dim {
                return Err(PairError::Inconsistent {
                    degree: j,
                    what: "dim ran π_1 differs from the quotient dimension",
                });
            }
            let (dim_d, dim_l) = (coh_d.degrees[j].dim, coh_l.degrees[j].dim);
            degrees.push(DegreeImage {
                degree: j,
                dim,
                representatives,
                dim_d,
                dim_l,
                inject: dim == dim_d,
                surject: dim == dim_l,
            });
        }
        let chi = alternating_sum(&degrees.iter().map(|d| d.dim).collect::<Vec<_>>());
        Ok(ImageReport { degrees, chi })
    }

    /// Gram-adjointness of `π_1`/`π_4` and vanishing of `π_3` on `ℋ^j(D)`.
    pub fn projection_checks(&self, j: usize) -> ProjectionChecks {
        let ip = self.space(j);
        let a = self.harmonic_rel(j);
        let b = self.harmonic_abs(j);
        let ga = ip.restricted_gram(a.basis());
        let gb = ip.restricted_gram(b.basis());
        let cross = &(&b.basis().transpose() * ip.gram()) * a.basis();
        // coordinates: π_1 = gb⁻¹ Bᵀ G A, π_4 = ga⁻¹ Aᵀ G B
        let pi1 = &gb.inverse().expect("gram of basis") * &cross;
        let pi4 = &ga.inverse().expect("gram of basis") * &cross.transpose();
        let adjoint = &gb * &pi1 == &pi4.transpose() * &ga;
        let pi3_vanishes = if j < self.len() {
            let corange = Subspace::span(&self.l_adjoint(j));
            (&ip.projector(&corange) * a.basis()).is_zero()
        } else {
            true
        };
        ProjectionChecks { adjoint, pi3_vanishes }
    }

    /// Relatedness of this pair's `D` and `L` under the given links.
    pub fn check_related(&self, links: &LinkMaps) -> Result<Relatedness, PairError> {
        check_related(&self.d, &self.l, links)
    }

    /// Block operators on `⊕H_i`: (`D` total, `L` total, `L†` total, `D*` total, offsets).
    fn total_operators(&self) -> (RationalMatrix, RationalMatrix, RationalMatrix, Vec<usize>) {
        let dims = self.l.dims();
        let mut offsets = vec![0];
        for d in &dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = offsets[dims.len()];
        let mut lt = RationalMatrix::zeros(total, total);
        let mut lad = RationalMatrix::zeros(total, total);
        let mut dad = RationalMatrix::zeros(total, total);
        for i in 0..self.len() {
            lt.set_block(offsets[i + 1], offsets[i], self.l.differential(i));
            lad.set_block(offsets[i], offsets[i + 1], &self.l_adjoint(i));
            dad.set_block(offsets[i], offsets[i + 1], &self.d_adjoint(i));
        }
        (lt, lad, dad, offsets)
    }

    /// `A_min = D + δ_min` on `⊕V_i`, `A_max = L + δ_max`; checks
    /// `Ker(A_max A_min) = ⊕ ℋ_min` and compares `ran(A_max A_min)` with `ran(A_max)`.
    pub fn friedrichs_identities(&self) -> FriedrichsReport {
        let (lt, lad, dad, offsets) = self.total_operators();
        let a_min = &lt + &lad;
        let a_max = &lt + &dad;
        let doms: Vec<&Subspace> = self.domains().iter().collect();
        let v = Subspace::direct_sum(&doms);
        let comp = &(&a_max * &a_min) * v.basis();
        let coords = comp.kernel_basis();
        let kernel = Subspace::span(&(v.basis() * coords.basis()));
        let hm: Vec<Subspace> = (0..=self.len()).map(|i| self.harmonic_min(i)).collect();
        let harmonic_min = Subspace::direct_sum(&hm.iter().collect::<Vec<_>>());
        let kernel_dims = (0..=self.len())
            .map(|i| {
                let block =
                    Subspace::coordinate(offsets[self.len() + 1], &(offsets[i]..offsets[i + 1]).collect::<Vec<_>>());
                kernel.meet(&block).dim()
            })
            .collect();
        let range = Subspace::span(&comp);
        let max_range = Subspace::span(&a_max);
        FriedrichsReport {
            kernel_identity: kernel == harmonic_min,
            kernel,
            harmonic_min,
            kernel_dims,
            range_identity: range == max_range,
            range_dim: range.dim(),
            max_range_dim: max_range.dim(),
        }
    }

    /// The five conditions of the equivalence, evaluated exactly in degree `i`.
    pub fn five_way_check(&self, i: usize) -> Result<FiveWay, PairError> {
        if i > self.len() {
            return Err(ComplexError::DegreeOutOfRange { degree: i, limit: self.len() + 1 }.into());
        }
        let ip = self.space(i);
        let h_min = self.harmonic_min(i);
        let h_abs = self.harmonic_abs(i);
        let h_rel = self.harmonic_rel(i);
        // ran δ_max in degree i: closure of the range of the adjoint relation of D_i,
        // i.e. the orthogonal complement of Ker D_i.
        let ran_delta_max = ip.complement(&self.d.kernel(i));
        let ran_d_max = self.l.range(i);
        let ran_d_min = self.d.range(i);
        let splits = |whole: &Subspace, parts: &[&Subspace]| -> bool {
            let sum = parts.iter().fold(Subspace::zero(whole.ambient()), |acc, p| acc.join(p));
            sum == *whole && parts.iter().map(|p| p.dim()).sum::<usize>() == whole.dim()
        };
        let c1 = h_min.dim() == self.image_dim(i);
        let c2 = splits(&h_abs, &[&h_min, &ran_delta_max.meet(&h_abs)]);
        let (p_rel, p_abs, p_min) = (ip.projector(&h_rel), ip.projector(&h_abs), ip.projector(&h_min));
        let c3 = &p_rel * &p_abs == p_min && &p_abs * &p_rel == p_min;
        let c4 = splits(&h_rel, &[&h_min, &ran_d_max.meet(&h_rel)]);
        let c5 = splits(&ran_d_max, &[&ran_d_max.meet(&h_rel), &ran_d_min, &ran_d_max.meet(&ran_delta_max)]);
        Ok(FiveWay { conditions: [c1, c2, c3, c4, c5] })
    }
}

fn check_links(d: &FiniteComplex, links: &LinkMaps) -> Result<(), PairError> {
    let n = d.len();
    if links.maps.len() != n + 1 {
        return Err(PairError::LinkCount { what: "link maps", expected: n + 1, found: links.maps.len() });
    }
    if links.constants.len() != n {
        return Err(PairError::LinkCount { what: "link constants", expected: n, found: links.constants.len() });
    }
    for (i, phi) in links.maps.iter().enumerate() {
        let expected = (d.dim(n - i), d.dim(i));
        if phi.shape() != expected {
            return Err(PairError::LinkShape { what: "φ", degree: i, expected, found: phi.shape() });
        }
    }
    Ok(())
}

/// Whether `L*_{n−i−1} φ_i = c_i φ_{i+1} D_i` holds on `V_i` for every `i` (related), and
/// additionally every `φ_i` is an isometry `H_i → H_{n−i}` (complementary).
pub fn check_related(d: &FiniteComplex, l: &FiniteComplex, links: &LinkMaps) -> Result<Relatedness, PairError> {
    check_links(d, links)?;
    if l.dims() != d.dims() {
        return Err(PairError::LinkCount {
            what: "spaces in the second complex",
            expected: d.len() + 1,
            found: l.len() + 1,
        });
    }
    let n = d.len();
    let mut related = true;
    for i in 0..n {
        let lhs = &(&l.adjoint(n - i - 1)? * &links.maps[i]) * d.domain(i).basis();
        let rhs = &(&links.maps[i + 1] * d.differential(i)) * d.domain(i).basis();
        if lhs != rhs.scale(&links.constants[i]) {
            related = false;
            break;
        }
    }
    let complementary = related
        && links
            .maps
            .iter()
            .enumerate()
            .all(|(i, phi)| &(&phi.transpose() * d.space(n - i).gram()) * phi == *d.space(i).gram());
    Ok(Relatedness { related, complementary, domain_condition_checkable: d.has_full_domains() })
}

/// The complex `L` with `L_i := (φ_{n−i} D_{n−i−1} φ_{n−i−1}^{-1})*`, related to `d` with
/// every constant equal to 1. The returned links carry those constants.
pub fn build_complementary(d: &FiniteComplex, links: &LinkMaps) -> Result<(FiniteComplex, LinkMaps), PairError> {
    check_links(d, links)?;
    if let Some(degree) = d.domains().iter().position(|v| !v.is_full()) {
        return Err(ComplexError::ProperDomain { degree }.into());
    }
    let n = d.len();
    let inverses = links
        .maps
        .iter()
        .enumerate()
        .map(|(i, phi)| phi.inverse().ok_or(PairError::SingularLink { degree: i }))
        .collect::<Result<Vec<_>, _>>()?;
    let mut diffs = Vec::with_capacity(n);
    for i in 0..n {
        let k = n - i - 1;
        // T_i: H_{i+1} → H_i
        let t = &(&links.maps[n - i] * d.differential(k)) * &inverses[k];
        diffs.push(InnerProduct::adjoint(&t, d.space(i + 1), d.space(i)));
    }
    let l = FiniteComplex::new(d.spaces().to_vec(), diffs, None)?;
    let links = LinkMaps { maps: links.maps.clone(), constants: vec![Rational::from_integer(1.into()); n] };
    Ok((l, links))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::circle_complex;
    use crate::linalg::q;

    /// `n = 1`, `H_0 = Q`, `H_1 = Q²`, `L_0 = (1,0)ᵀ`, `V_0 = 0`, `V_1 = Q²`.
    fn hand_pair() -> ComplexPair {
        let l = FiniteComplex::standard(vec![RationalMatrix::from_ints(2, 1, &[1, 0])], &[1, 2]).unwrap();
        ComplexPair::new(l, vec![Subspace::zero(1), Subspace::full(2)]).unwrap()
    }

    #[test]
    fn image_examples() {
        let p = hand_pair();
        let rep = p.image_cohomology().unwrap();
        assert_eq!(rep.dims(), vec![0, 1]);
        assert_eq!(rep.chi, -1);
        let full = ComplexPair::diagonal(circle_complex()).unwrap();
        assert_eq!(full.image_cohomology().unwrap().dims(), vec![1, 1]);
        let zero = ComplexPair::new(circle_complex(), vec![Subspace::zero(3), Subspace::zero(3)]).unwrap();
        assert_eq!(zero.image_cohomology().unwrap().dims(), vec![0, 0]);
    }

    #[test]
    fn related_examples() {
        let zero = FiniteComplex::standard(vec![RationalMatrix::zeros(1, 1)], &[1, 1]).unwrap();
        let links = LinkMaps::identity(&[1, 1]);
        let r = check_related(&zero, &zero, &links).unwrap();
        assert!(r.related && r.complementary);

        let two = FiniteComplex::standard(vec![RationalMatrix::from_ints(1, 1, &[2])], &[1, 1]).unwrap();
        let (l, links) = build_complementary(&two, &links).unwrap();
        assert_eq!(l.differential(0), &RationalMatrix::from_ints(1, 1, &[2]));
        assert!(check_related(&two, &l, &links).unwrap().related);
        assert_eq!(two.cohomology().unwrap().harmonic_dims(), vec![0, 0]);
        assert_eq!(l.cohomology().unwrap().harmonic_dims(), vec![0, 0]);

        let scaled = LinkMaps { maps: vec![RationalMatrix::from_ints(1, 1, &[3]); 2], constants: vec![q(1)] };
        let r = check_related(&zero, &zero, &scaled).unwrap();
        assert!(r.related && !r.complementary);
    }

    #[test]
    fn singular_link_rejected() {
        let zero = FiniteComplex::standard(vec![RationalMatrix::zeros(1, 1)], &[1, 1]).unwrap();
        let links = LinkMaps { maps: vec![RationalMatrix::zeros(1, 1); 2], constants: vec![q(1)] };
        assert_eq!(build_complementary(&zero, &links).unwrap_err(), PairError::SingularLink { degree: 0 });
    }

    #[test]
    fn friedrichs_examples() {
        let p = hand_pair();
        let f = p.friedrichs_identities();
        assert!(f.kernel_identity);
        assert_eq!(f.kernel_dims, vec![0, 1]);
        assert_eq!(p.harmonic_min(1), Subspace::coordinate(2, &[1]));
        let full = ComplexPair::diagonal(circle_complex()).unwrap();
        let f = full.friedrichs_identities();
        assert!(f.kernel_identity);
        assert_eq!(f.kernel_dims, vec![1, 1]);
    }

    #[test]
    fn five_way_examples() {
        let p = hand_pair();
        for i in 0..=1 {
            assert!(p.five_way_check(i).unwrap().all_equal());
        }
        let full = ComplexPair::diagonal(circle_complex()).unwrap();
        for i in 0..=1 {
            assert_eq!(full.five_way_check(i).unwrap().conditions, [true; 5]);
        }
    }

    #[test]
    fn projections_on_hand_pair() {
        let p = hand_pair();
        for j in 0..=1 {
            let c = p.projection_checks(j);
            assert!(c.adjoint && c.pi3_vanishes);
        }
    }

    #[test]
    fn rejects_non_subcomplex_domains() {
        let l = circle_complex();
        let err = ComplexPair::new(l, vec![Subspace::full(3), Subspace::zero(3)]).unwrap_err();
        assert_eq!(err, PairError::InvalidInner(Violation::DomainNotPreserved { degree: 0 }));
    }
}
