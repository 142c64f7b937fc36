use std::collections::HashMap;

use super::{Perversity, PerversityOrder, StratError, StratifiedComplex};
use crate::complex::alternating_sum;
use crate::linalg::{q, RationalMatrix, Subspace};

/// Allowability of every regular `i`-simplex: for each stratum `Y` touched, the largest face
/// in `Y` has dimension at most `i − cod(Y) + p(Y)`.
fn allowable_flags(x: &StratifiedComplex, i: usize, p: &Perversity) -> Result<Vec<bool>, StratError> {
    if i > x.dim() {
        return Err(StratError::DegreeOutOfRange { degree: i, limit: x.dim() });
    }
    let strata = x.strata();
    let bound: Vec<i64> = strata
        .iter()
        .map(|s| {
            p.value(&s.label)
                .map(|v| i as i64 - s.codim as i64 + v)
                .ok_or_else(|| StratError::MissingStratum { label: s.label.clone() })
        })
        .collect::<Result<_, _>>()?;
    Ok(x.singular_contact(i).iter().map(|contact| contact.iter().all(|&(st, d)| d as i64 <= bound[st])).collect())
}

/// Span of the allowable generators of the `R₀` chain space in degree `i`.
pub fn allowable_subspace(x: &StratifiedComplex, i: usize, p: &Perversity) -> Result<Subspace, StratError> {
    let flags = allowable_flags(x, i, p)?;
    let idx: Vec<usize> = (0..flags.len()).filter(|&k| flags[k]).collect();
    Ok(Subspace::coordinate(flags.len(), &idx))
}

/// Intersection chains, cycles and boundaries for one perversity, in `R₀` coordinates.
#[derive(Clone, Debug)]
pub struct IhData {
    /// `I^pS_i = A_i ∩ ∂⁻¹(A_{i−1})`.
    pub chains: Vec<Subspace>,
    /// `Ker ∂_i ∩ I^pS_i`.
    pub cycles: Vec<Subspace>,
    /// `∂_{i+1}(I^pS_{i+1})`.
    pub boundaries: Vec<Subspace>,
    /// `dim I^pH_i`.
    pub dims: Vec<usize>,
}

impl IhData {
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

/// `R₀` boundary matrices `∂_0 … ∂_n`.
fn r0_boundaries(x: &StratifiedComplex) -> Vec<RationalMatrix> {
    (0..=x.dim()).map(|d| x.r0_boundary(d)).collect()
}

fn ih_with(x: &StratifiedComplex, p: &Perversity, boundary: &[RationalMatrix]) -> Result<IhData, StratError> {
    let n = x.dim();
    let flags: Vec<Vec<bool>> = (0..=n).map(|i| allowable_flags(x, i, p)).collect::<Result<_, _>>()?;
    let mut chains = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let cols: Vec<usize> = (0..flags[i].len()).filter(|&k| flags[i][k]).collect();
        let basis = if i == 0 {
            Subspace::coordinate(flags[0].len(), &cols)
        } else {
            let bad_rows: Vec<usize> = (0..flags[i - 1].len()).filter(|&k| !flags[i - 1][k]).collect();
            let restricted = boundary[i].select_rows(&bad_rows).select_columns(&cols);
            let kernel = restricted.kernel_basis();
            let mut m = RationalMatrix::zeros(flags[i].len(), kernel.dim());
            for (r, &c) in cols.iter().enumerate() {
                for k in 0..kernel.dim() {
                    m.set(c, k, kernel.basis().get(r, k).clone());
                }
            }
            Subspace::span(&m)
        };
        chains.push(basis);
    }
    let cycles: Vec<Subspace> = (0..=n).map(|i| chains[i].kernel_within(&boundary[i])).collect();
    let boundaries: Vec<Subspace> = (0..=n)
        .map(|i| if i == n { Subspace::zero(chains[n].ambient()) } else { chains[i + 1].image_under(&boundary[i + 1]) })
        .collect();
    let dims = (0..=n).map(|i| cycles[i].dim() - boundaries[i].dim()).collect();
    Ok(IhData { chains, cycles, boundaries, dims })
}

/// `I^pH_*` with `R₀` coefficients.
pub fn intersection_homology(x: &StratifiedComplex, p: &Perversity) -> Result<IhData, StratError> {
    ih_with(x, p, &r0_boundaries(x))
}

/// The map `I^{small}H → I^{large}H` induced by the chain inclusion.
#[derive(Clone, Debug)]
pub struct ImageIh {
    /// `true` when the first argument is the smaller perversity (the source of the map).
    pub first_is_source: bool,
    pub source: IhData,
    pub target: IhData,
    /// `dim im`, per degree.
    pub dims: Vec<usize>,
    /// `dim Ker` and `dim Coker` of the induced map, per degree.
    pub kernel_dims: Vec<usize>,
    pub cokernel_dims: Vec<usize>,
}

impl ImageIh {
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

/// Image of intersection homology under the inclusion of the smaller perversity's chains
/// into the larger's: `dim Z^s_i − dim(Z^s_i ∩ ∂(I^lS_{i+1}))`.
pub fn image_ih(x: &StratifiedComplex, p: &Perversity, q: &Perversity) -> Result<ImageIh, StratError> {
    let first_is_source = match p.compare(q) {
        PerversityOrder::Equal | PerversityOrder::Less => true,
        PerversityOrder::Greater => false,
        PerversityOrder::Incomparable => return Err(StratError::Incomparable),
    };
    let boundary = r0_boundaries(x);
    let (small, large) = if first_is_source { (p, q) } else { (q, p) };
    let source = ih_with(x, small, &boundary)?;
    let target = if small == large { source.clone() } else { ih_with(x, large, &boundary)? };
    let dims: Vec<usize> =
        (0..=x.dim()).map(|i| source.cycles[i].dim() - source.cycles[i].meet(&target.boundaries[i]).dim()).collect();
    let kernel_dims = dims.iter().zip(&source.dims).map(|(im, s)| s - im).collect();
    let cokernel_dims = dims.iter().zip(&target.dims).map(|(im, t)| t - im).collect();
    Ok(ImageIh { first_is_source, source, target, dims, kernel_dims, cokernel_dims })
}

/// Betti numbers of a simplicial complex given by its simplices per dimension.
fn betti_of(simplices: &[Vec<Vec<usize>>]) -> Vec<usize> {
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        simplices.iter().map(|ss| ss.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let ranks: Vec<usize> = (0..simplices.len())
        .map(|d| {
            if d == 0 || simplices[d].is_empty() {
                return 0;
            }
            let mut m = RationalMatrix::zeros(simplices[d - 1].len(), simplices[d].len());
            for (c, s) in simplices[d].iter().enumerate() {
                for (sign, f) in StratifiedComplex::boundary_faces(s) {
                    m.set(index[d - 1][&f], c, q(sign));
                }
            }
            m.rank()
        })
        .collect();
    (0..simplices.len()).map(|d| simplices[d].len() - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0)).collect()
}

/// Ordinary simplicial Betti numbers of the whole complex.
pub fn plain_betti(x: &StratifiedComplex) -> Vec<usize> {
    let all: Vec<Vec<Vec<usize>>> = (0..=x.dim()).map(|d| x.simplices(d).to_vec()).collect();
    betti_of(&all)
}

/// Betti numbers of the full subcomplex on vertices outside `X_{n−1}` (an approximation of
/// the regular part, exact up to homotopy when the triangulation is full).
pub fn regular_part_betti(x: &StratifiedComplex) -> Vec<usize> {
    let regular: std::collections::HashSet<usize> = x.regular_vertices().into_iter().collect();
    let sub: Vec<Vec<Vec<usize>>> = (0..=x.dim())
        .map(|d| x.simplices(d).iter().filter(|s| s.iter().all(|v| regular.contains(v))).cloned().collect())
        .collect();
    betti_of(&sub)
}

/// Duality and Euler characteristic checks for a perversity and its dual.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub n: usize,
    pub p: Perversity,
    pub q: Perversity,
    /// `p ≥ 0` off codimension one, `p = −1` on codimension-one strata, and `p ≤ q`.
    pub hypothesis_lower: bool,
    /// `p ≥ 0` off codimension one, `p = 0` on codimension-one strata, and `p ≥ q`.
    pub hypothesis_upper: bool,
    pub ih_p: Vec<usize>,
    pub ih_q: Vec<usize>,
    /// `true` when the image is taken from `I^pH` into `I^qH`.
    pub p_is_source: bool,
    pub image: Vec<usize>,
    /// `image[j] == image[n − j]`.
    pub duality: Vec<bool>,
    pub chi: i64,
    /// `0` for odd `n`; `±dim image[n/2]` for even `n`, `+` when `n/2` is even.
    pub chi_expected: i64,
    pub chi_holds: bool,
    /// `χ ≡ dim image[n/2] (mod 2)` for even `n`, `χ == 0` for odd `n`.
    pub chi_parity_holds: bool,
    pub regular_betti: Vec<usize>,
    /// `dim H_j(X, X_{n−1})`, the compactly supported cohomology of the regular part.
    pub compact_dims: Vec<usize>,
    /// Rank of `H^j_c(reg) → H^j(reg)`, computed as the rank of `H_j(N) → H_j(X, X_{n−1})`.
    pub compact_image: Vec<usize>,
    /// `compact_image[j] ≤ min(ih_p[j], ih_q[j])`.
    pub betti_bound: Vec<bool>,
    /// When `H^j_c → H^j` is injective: `b_{n−j}(reg) ≤ min(ih_p[n−j], ih_q[n−j])`.
    pub betti_bound_improved: Vec<Option<bool>>,
    /// For `n == 2` with nonempty singular set: lower-middle `χ ≤ χ(reg)`.
    pub chi_regular_bound: Option<bool>,
}

impl DualityReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_lower || self.hypothesis_upper
    }
}

/// Image duality `j ↔ n − j`, the Euler characteristic identities and Betti inequalities
/// for `p` and its dual. Fails on non-orientable input.
pub fn duality_chi_report(x: &StratifiedComplex, p: &Perversity) -> Result<DualityReport, StratError> {
    x.coherent_orientation()?;
    let n = x.dim();
    let q = p.dual(x);
    let mut lower = p.le(&q);
    let mut upper = q.le(p);
    for s in x.strata() {
        let v = p.value(&s.label).ok_or_else(|| StratError::MissingStratum { label: s.label.clone() })?;
        if s.codim == 1 {
            lower &= v == -1;
            upper &= v == 0;
        } else {
            lower &= v >= 0;
            upper &= v >= 0;
        }
    }
    let image = image_ih(x, p, &q)?;
    let (ih_p, ih_q) =
        if image.first_is_source { (&image.source, &image.target) } else { (&image.target, &image.source) };
    let duality = (0..=n).map(|j| image.dims[j] == image.dims[n - j]).collect();
    let chi = image.euler_characteristic();
    let (chi_expected, chi_parity_holds) = if n % 2 == 1 {
        (0, chi == 0)
    } else {
        let mid = image.dims[n / 2] as i64;
        (if (n / 2) % 2 == 0 { mid } else { -mid }, (chi - mid).rem_euclid(2) == 0)
    };

    // regular part and compact supports
    let regular_betti = regular_part_betti(x);
    let boundary = r0_boundaries(x);
    let regular: std::collections::HashSet<usize> = x.regular_vertices().into_iter().collect();
    let mut compact_dims = Vec::with_capacity(n + 1);
    let mut compact_image = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let cycles = boundary[j].kernel_basis();
        let bounds = if j == n { Subspace::zero(boundary[j].cols()) } else { boundary[j + 1].image_basis() };
        compact_dims.push(cycles.dim() - bounds.dim());
        // cycles of the full regular subcomplex N, as R₀ chains
        let in_n: Vec<usize> = x
            .regular(j)
            .iter()
            .enumerate()
            .filter(|(_, &i)| x.simplices(j)[i].iter().all(|v| regular.contains(v)))
            .map(|(pos, _)| pos)
            .collect();
        let n_cycles = Subspace::coordinate(boundary[j].cols(), &in_n).kernel_within(&boundary[j]);
        compact_image.push(n_cycles.join(&bounds).dim() - bounds.dim());
    }
    let pd = &ih_p.dims;
    let qd = &ih_q.dims;
    let betti_bound = (0..=n).map(|j| compact_image[j] <= pd[j].min(qd[j])).collect();
    let betti_bound_improved = (0..=n)
        .map(|j| (compact_image[j] == compact_dims[j]).then(|| regular_betti[n - j] <= pd[n - j].min(qd[n - j])))
        .collect();
    let chi_regular_bound = (n == 2 && !x.strata().is_empty()).then(|| -> Result<bool, StratError> {
        let lm = intersection_homology(x, &Perversity::lower_middle(x))?;
        Ok(lm.euler_characteristic() <= alternating_sum(&regular_betti))
    });
    let chi_regular_bound = chi_regular_bound.transpose()?;

    Ok(DualityReport {
        n,
        p: p.clone(),
        q: q.clone(),
        hypothesis_lower: lower,
        hypothesis_upper: upper,
        ih_p: ih_p.dims.clone(),
        ih_q: ih_q.dims.clone(),
        p_is_source: image.first_is_source,
        image: image.dims.clone(),
        duality,
        chi,
        chi_expected,
        chi_holds: chi == chi_expected,
        chi_parity_holds,
        regular_betti,
        compact_dims,
        compact_image,
        betti_bound,
        betti_bound_improved,
        chi_regular_bound,
    })
}
