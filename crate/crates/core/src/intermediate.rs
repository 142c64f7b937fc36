//! The intermediate complex `D ⊆ P ⊆ L` whose cohomology is the image of `H(D)` in `H(L)`.
//!
//! The construction runs degreewise in the graph inner product
//! `⟨u, v⟩_𝒢 = ⟨u, v⟩ + ⟨L_i u, L_i v⟩` on `H_i`:
//!
//! 1. `Vg_i` = graph-orthocomplement of `Ker L_i`;
//! 2. `A_i` = graph-orthocomplement of `Ker D_i` inside `V_i`;
//! 3. `C_i = {α : L_i α ∈ V_{i+1}}` (the pullback domain);
//! 4. `W_i = C_i ∩ Vg_i`;
//! 5. `π_1, π_2` = graph projections of `A_i` onto `Ker L_i` and `Vg_i`;
//! 6. `N_i` = graph-orthocomplement of `π_2(A_i)` inside `W_i`;
//! 7. `B_i = V_i ⊕ N_i` and `P_i = L_i|_{B_i}`.
//!
//! When `Ker D_i == Ker L_i` the construction short-cuts to `B_i = C_i`.

use thiserror::Error;

use crate::complex::{alternating_sum, ComplexError, FiniteComplex};
use crate::linalg::{InnerProduct, RationalMatrix, Subspace};
use crate::pairs::{ComplexPair, PairError};

/// Every intermediate space of the construction in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTrace {
    pub degree: usize,
    pub ker_l: Subspace,
    pub ker_d: Subspace,
    /// Graph-orthocomplement of `Ker L_i`.
    pub v_graph: Subspace,
    pub pullback: Subspace,
    pub w: Subspace,
    pub a: Subspace,
    /// `π_2(A_i)`.
    pub pi2_range: Subspace,
    pub n: Subspace,
    /// Graph-orthocomplement of `Ker D_i` inside `B_i`.
    pub m: Subspace,
    /// The `Ker D_i == Ker L_i` shortcut was taken.
    pub shortcut: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateComplex {
    pair: ComplexPair,
    b: Vec<Subspace>,
    p: FiniteComplex,
    trace: Vec<DegreeTrace>,
}

/// The four defining invariants, per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    /// `V_i ⊆ B_i ⊆ H_i`.
    pub sandwich: Vec<bool>,
    /// `Ker P_i == Ker D_i`.
    pub kernel: Vec<bool>,
    /// `ran P_i == ran L_i ∩ V_{i+1}` (recorded in degree `i + 1`).
    pub range: Vec<bool>,
    /// `P_{i+1} P_i == 0` on `B_i`, and `P_i(B_i) ⊆ B_{i+1}`.
    pub square_zero: Vec<bool>,
}

impl InvariantReport {
    pub fn all_hold(&self) -> bool {
        [&self.sandwich, &self.kernel, &self.range, &self.square_zero].iter().all(|v| v.iter().all(|&b| b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IntermediateError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("degree {degree}: dim H(P) = {p_dim} but the image dimension is {image_dim}")]
    Mismatch { degree: usize, p_dim: usize, image_dim: usize },
}

/// `Δ_𝔪,i` and its kernel inside `B_i`.
#[derive(Clone, Debug)]
pub struct LaplacianM {
    pub matrix: RationalMatrix,
    pub kernel: Subspace,
}

/// Graph inner product `G_i + L_iᵀ G_{i+1} L_i` in degree `i`.
pub fn graph_inner_product(l: &FiniteComplex, i: usize) -> InnerProduct {
    let g = l.space(i).gram().clone();
    if i == l.len() {
        return l.space(i).clone();
    }
    let li = l.differential(i);
    let extra = &(&li.transpose() * l.space(i + 1).gram()) * li;
    InnerProduct::new(&g + &extra).expect("graph gram of a positive definite gram is positive definite")
}

fn trace_degree(pair: &ComplexPair, i: usize) -> DegreeTrace {
    let l = pair.l();
    let n = l.len();
    let h = l.dim(i);
    let ip = graph_inner_product(l, i);
    let v = pair.domain(i);
    let ker_l = l.kernel(i);
    let ker_d = pair.d().kernel(i);
    let v_graph = ip.complement(&ker_l);
    let pullback = if i < n {
        Subspace::full(h).preimage_within(l.differential(i), pair.domain(i + 1))
    } else {
        Subspace::full(h)
    };
    let w = pullback.meet(&v_graph);
    let a = ip.complement_within(&ker_d, v);
    let pi2_range = a.image_under(&ip.projector(&v_graph));
    let shortcut = ker_d == ker_l;
    let (n_space, b) = if shortcut {
        (ip.complement_within(v, &pullback), pullback.clone())
    } else {
        let n_space = ip.complement_within(&pi2_range, &w);
        let b = v.join(&n_space);
        (n_space, b)
    };
    let m = ip.complement_within(&ker_d, &b);
    DegreeTrace { degree: i, ker_l, ker_d, v_graph, pullback, w, a, pi2_range, n: n_space, m, shortcut }
}

impl IntermediateComplex {
    pub fn build(pair: &ComplexPair) -> Result<Self, IntermediateError> {
        let trace: Vec<DegreeTrace> = (0..=pair.len()).map(|i| trace_degree(pair, i)).collect();
        let b: Vec<Subspace> = (0..=pair.len())
            .map(|i| if trace[i].shortcut { trace[i].pullback.clone() } else { pair.domain(i).join(&trace[i].n) })
            .collect();
        let p = pair.l().with_domains(b.clone())?;
        Ok(Self { pair: pair.clone(), b, p, trace })
    }

    pub fn pair(&self) -> &ComplexPair {
        &self.pair
    }

    pub fn b(&self) -> &[Subspace] {
        &self.b
    }

    /// The complex `P`: `L`'s matrices with domains `B_i`.
    pub fn p(&self) -> &FiniteComplex {
        &self.p
    }

    pub fn trace(&self) -> &[DegreeTrace] {
        &self.trace
    }

    pub fn invariants(&self) -> InvariantReport {
        let pair = &self.pair;
        let n = pair.len();
        let l = pair.l();
        let sandwich = (0..=n).map(|i| self.b[i].contains(pair.domain(i))).collect();
        let kernel = (0..=n).map(|i| self.p.kernel(i) == pair.d().kernel(i)).collect();
        let range = (0..=n).map(|i| self.p.range(i) == l.range(i).meet(pair.domain(i))).collect();
        let square_zero = (0..=n)
            .map(|i| {
                if i == n {
                    return true;
                }
                let image_ok = self.b[i + 1].contains(&self.b[i].image_under(l.differential(i)));
                let zero_ok =
                    i + 1 == n || (&(l.differential(i + 1) * l.differential(i)) * self.b[i].basis()).is_zero();
                image_ok && zero_ok
            })
            .collect();
        InvariantReport { sandwich, kernel, range, square_zero }
    }

    /// Compares `dim H^i(P)` from the complex pipeline with the pair's image dimensions.
    pub fn verify_against_oracle(&self) -> Result<(), IntermediateError> {
        let p_dims = self.p.cohomology()?.dims();
        let image = self.pair.image_dims();
        for (degree, (&p_dim, &image_dim)) in p_dims.iter().zip(&image).enumerate() {
            if p_dim != image_dim {
                return Err(IntermediateError::Mismatch { degree, p_dim, image_dim });
            }
        }
        Ok(())
    }

    /// `dim H^i(P)` in every degree.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.p.cohomology().expect("P is a complex").dims()
    }

    /// `Δ_𝔪,i = P_i* P_i + P_{i−1} P_{i−1}*` with minimal-norm adjoints into the `B`
    /// domains; the kernel is taken inside `B_i`.
    pub fn laplacian_m(&self, i: usize) -> Result<LaplacianM, IntermediateError> {
        let n = self.p.len();
        if i > n {
            return Err(ComplexError::DegreeOutOfRange { degree: i, limit: n + 1 }.into());
        }
        let h = self.p.dim(i);
        let mut matrix = RationalMatrix::zeros(h, h);
        if i < n {
            matrix = &matrix + &(&self.p.adjoint(i)? * self.p.differential(i));
        }
        if i > 0 {
            matrix = &matrix + &(self.p.differential(i - 1) * &self.p.adjoint(i - 1)?);
        }
        let kernel = self.b[i].kernel_within(&matrix);
        Ok(LaplacianM { matrix, kernel })
    }

    /// `dim Ker − dim Coker` of `(P + P*)` from `⊕B_even` to `⊕B_odd`.
    pub fn index_even(&self) -> Result<i64, IntermediateError> {
        let n = self.p.len();
        let dims = self.p.dims();
        let mut offsets = vec![0];
        for d in &dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = offsets[n + 1];
        let mut op = RationalMatrix::zeros(total, total);
        for i in 0..n {
            op.set_block(offsets[i + 1], offsets[i], self.p.differential(i));
            op.set_block(offsets[i], offsets[i + 1], &self.p.adjoint(i)?);
        }
        let embed = |parity: usize| -> Subspace {
            let parts: Vec<Subspace> =
                (0..=n).map(|i| if i % 2 == parity { self.b[i].clone() } else { Subspace::zero(dims[i]) }).collect();
            Subspace::direct_sum(&parts.iter().collect::<Vec<_>>())
        };
        let (even, odd) = (embed(0), embed(1));
        let image = &op * even.basis();
        let rank = Subspace::span(&image).dim();
        debug_assert!(odd.contains(&Subspace::span(&image)));
        let kernel = even.dim() - rank;
        let coker = odd.dim() - rank;
        Ok(kernel as i64 - coker as i64)
    }

    /// `Σ (−1)^i dim H^i(P)`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.cohomology_dims())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::circle_complex;

    fn hand_pair() -> ComplexPair {
        let l = FiniteComplex::standard(vec![RationalMatrix::from_ints(2, 1, &[1, 0])], &[1, 2]).unwrap();
        ComplexPair::new(l, vec![Subspace::zero(1), Subspace::full(2)]).unwrap()
    }

    #[test]
    fn diagonal_pair_gives_l() {
        let pair = ComplexPair::diagonal(circle_complex()).unwrap();
        let ic = IntermediateComplex::build(&pair).unwrap();
        assert!(ic.trace().iter().all(|t| t.n.is_zero()));
        assert_eq!(ic.p(), pair.l());
        assert!(ic.invariants().all_hold());
        assert_eq!(ic.index_even().unwrap(), 0);
    }

    #[test]
    fn hand_pair_trace() {
        let ic = IntermediateComplex::build(&hand_pair()).unwrap();
        assert!(ic.invariants().all_hold());
        assert_eq!(ic.cohomology_dims(), vec![0, 1]);
        ic.verify_against_oracle().unwrap();
        assert_eq!(ic.laplacian_m(1).unwrap().kernel.dim(), 1);
        assert_eq!(ic.index_even().unwrap(), -1);
        assert_eq!(ic.p().kernel(0).dim(), 0);
    }
}
