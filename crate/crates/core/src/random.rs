//! Seeded random instances: complexes, pairs, sandwiched domains, link maps and basis
//! changes. Instance `k` of a suite with seed `s` is drawn from its own ChaCha8 stream, so
//! any instance can be regenerated without replaying the others.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::FiniteComplex;
use crate::linalg::{qq, InnerProduct, Rational, RationalMatrix, Subspace};
use crate::pairs::{ComplexPair, LinkMaps};

/// Size limits for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    /// Maximum length `n` (spaces `H_0 … H_n`).
    pub max_len: usize,
    /// Maximum dimension of each space.
    pub max_dim: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self { max_len: 4, max_dim: 6 }
    }
}

/// The generator for instance `index` of the suite with the given seed.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A small rational, zero with probability about 2/5.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.4) {
        return Rational::zero();
    }
    let num = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = if rng.gen_bool(0.75) { 1 } else { 2 };
    qq(num, den)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| small_rational(rng))
}

/// Identity, positive diagonal, or `MᵀM + I`, with equal odds.
pub fn random_gram(rng: &mut impl Rng, n: usize) -> InnerProduct {
    match rng.gen_range(0..3) {
        0 => InnerProduct::standard(n),
        1 => {
            let d: Vec<Rational> = (0..n).map(|_| qq(rng.gen_range(1..=4), rng.gen_range(1..=2))).collect();
            InnerProduct::new(RationalMatrix::diagonal(&d)).expect("positive diagonal")
        }
        _ => {
            let m = random_matrix(rng, n, n);
            let g = &(&m.transpose() * &m) + &RationalMatrix::identity(n);
            InnerProduct::new(g).expect("MᵀM + I is positive definite")
        }
    }
}

/// Span of `k` random vectors in `Q^n`.
pub fn random_subspace(rng: &mut impl Rng, n: usize, k: usize) -> Subspace {
    Subspace::span(&random_matrix(rng, n, k))
}

/// Differentials with `L_{i+1} L_i = 0` for the given dims, built top-down: each `L_i`
/// is a kernel basis of `L_{i+1}` times a random matrix.
pub fn random_differentials(rng: &mut impl Rng, dims: &[usize]) -> Vec<RationalMatrix> {
    let n = dims.len().saturating_sub(1);
    let mut diffs: Vec<RationalMatrix> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let d = if i + 1 == n {
            random_matrix(rng, dims[i + 1], dims[i])
        } else {
            let next: &RationalMatrix = diffs.last().expect("built above");
            let k = next.kernel_basis();
            &k.basis().clone() * &random_matrix(rng, k.dim(), dims[i])
        };
        diffs.push(d);
    }
    diffs.reverse();
    diffs
}

fn random_dims(rng: &mut impl Rng, spec: &RandomSpec) -> Vec<usize> {
    let n = rng.gen_range(0..=spec.max_len);
    (0..=n).map(|_| rng.gen_range(0..=spec.max_dim)).collect()
}

/// A valid full-domain complex with random grams.
pub fn random_complex(rng: &mut impl Rng, spec: &RandomSpec) -> FiniteComplex {
    let dims = random_dims(rng, spec);
    let spaces = dims.iter().map(|&d| random_gram(rng, d)).collect();
    let diffs = random_differentials(rng, &dims);
    FiniteComplex::new(spaces, diffs, None).expect("shapes agree")
}

/// A valid pair: random full-domain `L`, `V_0` random, and `V_i = L_{i−1}(V_{i−1})` plus
/// random extra vectors.
pub fn random_pair(rng: &mut impl Rng, spec: &RandomSpec) -> ComplexPair {
    let l = random_complex(rng, spec);
    let domains = random_subcomplex_domains(rng, &l, None);
    ComplexPair::new(l, domains).expect("domains form a subcomplex by construction")
}

/// Domains `U_i` forming a subcomplex of `l`, containing `lower` when given.
pub fn random_subcomplex_domains(rng: &mut impl Rng, l: &FiniteComplex, lower: Option<&[Subspace]>) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::with_capacity(l.len() + 1);
    for i in 0..=l.len() {
        let n = l.dim(i);
        let k = rng.gen_range(0..=n);
        let extra = random_subspace(rng, n, k);
        let mut u = match lower {
            Some(v) => v[i].join(&extra),
            None => extra,
        };
        if i > 0 {
            u = u.join(&out[i - 1].image_under(l.differential(i - 1)));
        }
        out.push(u);
    }
    out
}

/// Rational orthogonal matrix by the Cayley transform `(I − A)(I + A)^{-1}`, `A = −Aᵀ`.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = small_rational(rng);
            a.set(j, i, -x.clone());
            a.set(i, j, x);
        }
    }
    let id = RationalMatrix::identity(n);
    let inv = (&id + &a).inverse().expect("I + A is invertible for antisymmetric A");
    &(&id - &a) * &inv
}

/// Random invertible matrix (retries until the determinant is nonzero).
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    loop {
        let m = &random_matrix(rng, n, n) + &RationalMatrix::identity(n).scale(&qq(rng.gen_range(1..=3), 1));
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// A full-domain complex with palindromic dims and standard grams, plus random orthogonal
/// link maps `φ_i: H_i → H_{n−i}`.
pub fn random_complementary_input(rng: &mut impl Rng, spec: &RandomSpec) -> (FiniteComplex, LinkMaps) {
    let n = rng.gen_range(0..=spec.max_len);
    let half: Vec<usize> = (0..=n / 2).map(|_| rng.gen_range(0..=spec.max_dim)).collect();
    let dims: Vec<usize> = (0..=n).map(|i| half[i.min(n - i)]).collect();
    let diffs = random_differentials(rng, &dims);
    let d = FiniteComplex::standard(diffs, &dims).expect("shapes agree");
    let maps = dims.iter().map(|&k| random_orthogonal(rng, k)).collect();
    (d, LinkMaps { maps, constants: vec![qq(1, 1); n] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let spec = RandomSpec::default();
        let a = random_pair(&mut instance_rng(7, 3), &spec);
        let b = random_pair(&mut instance_rng(7, 3), &spec);
        assert_eq!(a, b);
    }

    #[test]
    fn generated_objects_are_valid() {
        let spec = RandomSpec::default();
        for k in 0..50 {
            let rng = &mut instance_rng(1, k);
            let c = random_complex(rng, &spec);
            assert_eq!(c.validate(), Ok(()));
            let q = random_orthogonal(rng, 4);
            assert_eq!(&q.transpose() * &q, RationalMatrix::identity(4));
        }
    }
}
