//! Middle-degree pairings and signatures.
//!
//! The pairing of two degree-`k` cochains on an oriented `2k`-dimensional complex is
//! `⟨α ∪ β, [X]⟩`, with the Alexander–Whitney cup product on the global vertex order:
//! for a top simplex `[v_0 < … < v_n]`, `(α ∪ β)[v_0 … v_n] = α[v_0 … v_k] · β[v_k … v_n]`
//! (front face, back face). `[X]` is the coherently oriented sum of top simplices.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::FiniteComplex;
use crate::linalg::{congruence_signature, qq, Inertia, InnerProduct, Rational, RationalMatrix, Subspace};
use crate::pairs::{ComplexPair, PairError};
use crate::strat::{image_ih, Perversity, StratError, StratifiedComplex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("pairings need even dimension, got {0}")]
    OddDimension(usize),
    #[error("a manifold complex without singular strata is required")]
    NotAManifold,
    #[error("representatives have {found} rows but the cochain space has dimension {expected}")]
    Shape { expected: usize, found: usize },
}

/// The coherently oriented sum of top simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    /// Coefficient `±1` per top simplex, indexed like `simplices(n)`.
    pub signs: Vec<i8>,
    /// Whether the `R₀` boundary of the chain vanishes.
    pub is_cycle: bool,
}

/// The sum of coherently oriented top simplices, and whether it is an `R₀` cycle (it is
/// for closed pseudomanifolds; for complexes with boundary its boundary is `∂X`).
pub fn fundamental_cycle(x: &StratifiedComplex) -> Result<FundamentalCycle, PairingError> {
    let signs = x.coherent_orientation()?;
    let n = x.dim();
    let chain: Vec<Rational> =
        x.regular(n).iter().map(|&i| if signs[i] > 0 { Rational::one() } else { -Rational::one() }).collect();
    let is_cycle = n == 0 || x.r0_boundary(n).mul_vec(&chain).iter().all(Zero::is_zero);
    Ok(FundamentalCycle { signs, is_cycle })
}

/// A middle-degree pairing on a chosen basis of an image space.
#[derive(Clone, Debug)]
pub struct PairingReport {
    pub degree: usize,
    /// Representatives as columns, in cochain coordinates over all `degree`-simplices.
    pub basis: RationalMatrix,
    pub matrix: RationalMatrix,
    pub symmetric: bool,
    /// Inertia of `(M + Mᵀ)/2`, reported when `n ≡ 0 (mod 4)`.
    pub inertia: Option<Inertia>,
    /// `det M ≠ 0` (vacuously true on a zero-dimensional image).
    pub nondegenerate: bool,
    /// The representatives are not known to be cohomology classes of the pairing; the
    /// signature is a model signature.
    pub model: bool,
}

impl PairingReport {
    pub fn signature(&self) -> Option<i64> {
        self.inertia.map(|i| i.signature())
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// `M_ab = ⟨α_a ∪ α_b, [X]⟩` for representative cochains given as columns over all
/// `k`-simplices of `x` (`n = 2k`).
pub fn cup_pairing_matrix(x: &StratifiedComplex, reps: &RationalMatrix) -> Result<RationalMatrix, PairingError> {
    let n = x.dim();
    if n % 2 == 1 {
        return Err(PairingError::OddDimension(n));
    }
    let k = n / 2;
    let expected = x.simplices(k).len();
    if reps.rows() != expected {
        return Err(PairingError::Shape { expected, found: reps.rows() });
    }
    let signs = x.coherent_orientation()?;
    let r = reps.cols();
    let tops = x.simplices(n);
    let mut front = RationalMatrix::zeros(tops.len(), r);
    let mut back = RationalMatrix::zeros(tops.len(), r);
    for (t, s) in tops.iter().enumerate() {
        let fi = x.simplex_index(&s[..=k]).expect("front face");
        let bi = x.simplex_index(&s[k..]).expect("back face");
        let sign = if signs[t] > 0 { Rational::one() } else { -Rational::one() };
        for a in 0..r {
            front.set(t, a, reps.get(fi, a) * &sign);
            back.set(t, a, reps.get(bi, a).clone());
        }
    }
    Ok(&front.transpose() * &back)
}

/// Builds the report for given representatives.
pub fn pairing_report(x: &StratifiedComplex, reps: RationalMatrix, model: bool) -> Result<PairingReport, PairingError> {
    let matrix = cup_pairing_matrix(x, &reps)?;
    let n = x.dim();
    let symmetric = matrix.is_symmetric();
    let nondegenerate = matrix.determinant().is_some_and(|d| !d.is_zero());
    let inertia = (n % 4 == 0).then(|| {
        let sym = (&matrix + &matrix.transpose()).scale(&qq(1, 2));
        congruence_signature(&sym).expect("symmetrized matrix")
    });
    Ok(PairingReport { degree: n / 2, basis: reps, matrix, symmetric, inertia, nondegenerate, model })
}

/// A compact oriented manifold-with-boundary and its cochain pair: `L` is the coboundary on
/// all cochains, the `D`-domains are the cochains vanishing on the boundary.
#[derive(Clone, Debug)]
pub struct RelAbsPair {
    complex: StratifiedComplex,
    pair: ComplexPair,
}

/// Coboundary `δ_i = ∂_{i+1}ᵀ: C^i → C^{i+1}` over all simplices.
fn coboundaries(x: &StratifiedComplex) -> Vec<RationalMatrix> {
    (0..x.dim()).map(|i| x.full_boundary(i + 1).transpose()).collect()
}

/// Per degree, the indices of simplices not in the boundary subcomplex.
fn interior_indices(x: &StratifiedComplex) -> Vec<Vec<usize>> {
    let mut in_boundary: Vec<Vec<bool>> = (0..=x.dim()).map(|d| vec![false; x.simplices(d).len()]).collect();
    for f in x.boundary_simplices() {
        for face in
            (1u32..(1 << f.len())).map(|m| (0..f.len()).filter(|b| m >> b & 1 == 1).map(|b| f[b]).collect::<Vec<_>>())
        {
            let d = face.len() - 1;
            in_boundary[d][x.simplex_index(&face).expect("face")] = true;
        }
    }
    in_boundary.iter().map(|v| (0..v.len()).filter(|&i| !v[i]).collect()).collect()
}

impl RelAbsPair {
    pub fn new(x: StratifiedComplex) -> Result<Self, PairingError> {
        if !x.strata().is_empty() {
            return Err(PairingError::NotAManifold);
        }
        x.coherent_orientation()?;
        let dims: Vec<usize> = (0..=x.dim()).map(|d| x.simplices(d).len()).collect();
        let l = FiniteComplex::standard(coboundaries(&x), &dims).map_err(PairError::Complex)?;
        let domains = interior_indices(&x).iter().zip(&dims).map(|(idx, &d)| Subspace::coordinate(d, idx)).collect();
        let pair = ComplexPair::new(l, domains)?;
        Ok(Self { complex: x, pair })
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.complex
    }

    pub fn pair(&self) -> &ComplexPair {
        &self.pair
    }
}

/// Harmonic cochains `Ker δ_k ∩ Ker δ_{k−1}ᵀ` restricted to the coordinates in `support`
/// (relative when `support` is the interior, absolute when it is everything).
fn harmonic_cochains(x: &StratifiedComplex, k: usize, support: &[Vec<usize>]) -> RationalMatrix {
    let count = x.simplices(k).len();
    let cols = &support[k];
    let mut blocks: Vec<RationalMatrix> = Vec::new();
    if k < x.dim() {
        blocks.push(x.full_boundary(k + 1).transpose().select_columns(cols));
    }
    if k > 0 {
        // (δ_{k−1} restricted to supported (k−1)-cochains)ᵀ, on supported k-cochains
        blocks.push(x.full_boundary(k).select_rows(&support[k - 1]).select_columns(cols));
    }
    let stacked = if blocks.is_empty() {
        RationalMatrix::zeros(0, cols.len())
    } else {
        RationalMatrix::vstack(&blocks.iter().collect::<Vec<_>>()).expect("same column count")
    };
    let kernel = stacked.kernel_basis();
    let mut out = RationalMatrix::zeros(count, kernel.dim());
    for (r, &c) in cols.iter().enumerate() {
        for j in 0..kernel.dim() {
            out.set(c, j, kernel.basis().get(r, j).clone());
        }
    }
    out
}

/// Columns of `m` at the pivot positions of its reduced echelon form (a maximal independent
/// subset, chosen left to right).
fn independent_columns(m: &RationalMatrix) -> Vec<usize> {
    m.rref().pivots
}

/// Relative harmonic cocycles whose absolute classes form a basis of
/// `im(H^k(X, ∂X) → H^k(X))`.
pub fn image_representatives(m: &RelAbsPair, k: usize) -> RationalMatrix {
    let x = &m.complex;
    let all: Vec<Vec<usize>> = (0..=x.dim()).map(|d| (0..x.simplices(d).len()).collect()).collect();
    let interior = interior_indices(x);
    let abs = harmonic_cochains(x, k, &all);
    if interior == all {
        return abs;
    }
    let rel = harmonic_cochains(x, k, &interior);
    // the absolute class of a cocycle is determined by its projection onto ℋ_abs
    let coords = &abs.transpose() * &rel;
    rel.select_columns(&independent_columns(&coords))
}

/// The cup-product pairing on the image of relative in absolute middle cohomology.
pub fn image_pairing(m: &RelAbsPair) -> Result<PairingReport, PairingError> {
    let n = m.complex.dim();
    if n % 2 == 1 {
        return Err(PairingError::OddDimension(n));
    }
    pairing_report(&m.complex, image_representatives(m, n / 2), false)
}

/// The pairing on the middle-degree image of `I^{small}H → I^{large}H` for `p` and its dual,
/// with representatives the small-perversity cycles projected orthogonally off the
/// large-perversity boundaries, read as cochains on the regular part. Reported as a model
/// signature unless the complex has no singular strata.
pub fn perverse_signature(x: &StratifiedComplex, p: &Perversity) -> Result<PairingReport, PairingError> {
    let n = x.dim();
    if n % 2 == 1 {
        return Err(PairingError::OddDimension(n));
    }
    let k = n / 2;
    let q = p.dual(x);
    let image = image_ih(x, p, &q)?;
    let z = image.source.cycles[k].basis();
    let projected = InnerProduct::standard(z.rows()).complement(&image.target.boundaries[k]);
    let proj = InnerProduct::standard(z.rows()).projector(&projected);
    let moved = &proj * z;
    let picked = moved.select_columns(&independent_columns(&moved));
    // R₀ coordinates → cochains over all k-simplices (zero on singular simplices)
    let mut reps = RationalMatrix::zeros(x.simplices(k).len(), picked.cols());
    for (pos, &i) in x.regular(k).iter().enumerate() {
        for a in 0..picked.cols() {
            reps.set(i, a, picked.get(pos, a).clone());
        }
    }
    let model = !x.strata().is_empty();
    pairing_report(x, reps, model)
}
