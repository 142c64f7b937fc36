//! Independent reference computations used to cross-check `hcplx`.
//!
//! Nothing here depends on the main library. Every answer is reduced to integer ranks
//! obtained by fraction-free Bareiss elimination, so a bug in the main crate's
//! Gauss–Jordan, subspace or orthogonality code cannot leak into the oracle.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix as a vector of rows.
pub type Mat = Vec<Vec<BigRational>>;

/// Rank by fraction-free Bareiss elimination after clearing row denominators.
pub fn rank(m: &Mat) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| integer_row(row)).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

pub fn transpose(m: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Product of `a` (`n × k`) and `b` (`k × m`); `m_cols` describes `b` when `k == 0`.
pub fn mul(a: &Mat, b: &Mat, m_cols: usize) -> Mat {
    a.iter()
        .map(|row| {
            (0..m_cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).fold(BigRational::zero(), |s, t| s + t))
                .collect()
        })
        .collect()
}

/// Horizontal concatenation of two matrices with the same number of rows.
pub fn hcat(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect()
}

/// Dimension of the image cohomology `Ker(L_j|V_j) / (ran L_{j-1} ∩ V_j)` from ranks alone.
///
/// `l` maps column vectors of length `dims[j]` to length `dims[j+1]` (`dims[j+1]` rows);
/// `v[j]` is a spanning set of `V_j` given as a `dims[j] × k` matrix.
pub fn image_cohomology_dims(dims: &[usize], l: &[Mat], v: &[(Mat, usize)]) -> Vec<usize> {
    let n = dims.len();
    (0..n)
        .map(|j| {
            let (vj, kj) = &v[j];
            let dim_v = rank(vj);
            // dim Ker(L_j) ∩ V_j = dim V_j − rank(L_j V_j)
            let ker = if j + 1 < n { dim_v - rank(&mul(&l[j], vj, *kj)) } else { dim_v };
            // dim(ran L_{j-1} ∩ V_j) = rank L + dim V − rank [L | V]
            let meet = if j > 0 {
                let prev = &l[j - 1];
                rank(prev) + dim_v - rank(&hcat(prev, vj))
            } else {
                0
            };
            ker - meet
        })
        .collect()
}

/// Cohomology dimensions of a full-domain complex: `dim H_i − rank D_i − rank D_{i−1}`.
pub fn cohomology_dims(dims: &[usize], d: &[Mat]) -> Vec<usize> {
    let ranks: Vec<usize> = d.iter().map(rank).collect();
    (0..dims.len())
        .map(|i| dims[i] - ranks.get(i).copied().unwrap_or(0) - if i > 0 { ranks[i - 1] } else { 0 })
        .collect()
}

/// All faces of the given simplices, grouped by dimension, vertices sorted.
pub fn faces(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        let k = f.len();
        for mask in 1u32..(1u32 << k) {
            let s: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
            sets[s.len() - 1].insert(s);
        }
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Boundary matrix `C_k → C_{k−1}` (rows indexed by `lower`, columns by `upper`).
pub fn boundary(upper: &[Vec<usize>], lower: &[Vec<usize>]) -> Mat {
    let index: BTreeMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![BigRational::zero(); upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for drop in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            m[index[&face]][j] = BigRational::from_integer(sign.into());
        }
    }
    m
}

/// Rational Betti numbers of the simplicial complex generated by `facets`.
pub fn betti(facets: &[Vec<usize>]) -> Vec<usize> {
    let f = faces(facets);
    let ranks: Vec<usize> = (1..f.len()).map(|k| rank(&boundary(&f[k], &f[k - 1]))).collect();
    (0..f.len())
        .map(|k| f[k].len() - if k > 0 { ranks[k - 1] } else { 0 } - ranks.get(k).copied().unwrap_or(0))
        .collect()
}

/// `dim im(H_j(X) → H_j(X, A))` for the subcomplex `A` generated by `sub_facets`.
///
/// Equals `dim(Z_j + C_j(A)) − dim(B_j + C_j(A))`, evaluated with ranks. Over a field this
/// is also `dim im(H^j(X, A) → H^j(X))`, the transpose map.
pub fn relative_image_dims(facets: &[Vec<usize>], sub_facets: &[Vec<usize>]) -> Vec<usize> {
    let f = faces(facets);
    let sub = faces(sub_facets);
    let in_a: Vec<BTreeSet<&Vec<usize>>> =
        (0..f.len()).map(|k| sub.get(k).map(|s| s.iter().collect()).unwrap_or_default()).collect();
    let bd: Vec<Mat> = (1..f.len()).map(|k| boundary(&f[k], &f[k - 1])).collect();
    (0..f.len())
        .map(|j| {
            let cj = f[j].len();
            let aj = in_a[j].len();
            let rank_dj = if j > 0 { rank(&bd[j - 1]) } else { 0 };
            let z = cj - rank_dj;
            // cycles of A: restrict ∂_j to columns in A (rows in A automatically)
            let z_a = if j > 0 {
                let cols: Vec<usize> = (0..cj).filter(|&c| in_a[j].contains(&f[j][c])).collect();
                let m: Mat = bd[j - 1].iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
                aj - rank(&m)
            } else {
                aj
            };
            let z_plus_a = z + aj - z_a;
            // B_j + C_j(A): rank of ∂_{j+1} with A-rows deleted, plus |A_j|
            let b_plus_a = if j + 1 < f.len() {
                let rows: Mat = (0..cj).filter(|&r| !in_a[j].contains(&f[j][r])).map(|r| bd[j][r].clone()).collect();
                rank(&rows) + aj
            } else {
                aj
            };
            z_plus_a - b_plus_a
        })
        .collect()
}

/// Intersection homology of a suspension `ΣX` whose two cone points form the singular
/// strata (codimension `m + 1`, both with perversity value `p`), from the Betti numbers of
/// the closed `m`-dimensional `X`: `H_i(X)` for `i < m − p`, `0` at `i = m − p`, and
/// `H_{i−1}(X)` above.
pub fn suspension_ih(betti_x: &[usize], p: i64) -> Vec<usize> {
    let m = betti_x.len() as i64 - 1;
    let cut = m - p;
    (0..=m + 1)
        .map(|i| {
            if i < cut {
                betti_x.get(i as usize).copied().unwrap_or(0)
            } else if i == cut {
                0
            } else {
                betti_x[(i - 1) as usize]
            }
        })
        .collect()
}

/// Characteristic polynomial coefficients `c_0..c_n` (`c_n = 1`) by Faddeev–LeVerrier.
pub fn char_poly(a: &Mat) -> Vec<BigRational> {
    let n = a.len();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m: Mat = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(a, &m, n);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am = mul(a, &m, n);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).fold(BigRational::zero(), |s, t| s + t);
        c[n - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    c
}

/// Inertia `(pos, neg, zero)` of a symmetric matrix from its characteristic polynomial.
///
/// A symmetric matrix has only real eigenvalues, so Descartes' rule of signs counts the
/// positive and negative roots exactly; the zero count is the multiplicity of the root 0.
pub fn inertia(a: &Mat) -> (usize, usize, usize) {
    let c = char_poly(a);
    let zero = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    let tail = &c[zero..];
    let changes = |flip: bool| -> usize {
        let signs: Vec<bool> = tail
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| x.is_positive() ^ (flip && (k + zero) % 2 == 1))
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    (changes(false), changes(true), zero)
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn int_mat(rows: usize, cols: usize, xs: &[i64]) -> Mat {
    assert_eq!(xs.len(), rows * cols);
    (0..rows).map(|i| xs[i * cols..(i + 1) * cols].iter().map(|&x| int(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_rank() {
        assert_eq!(rank(&int_mat(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1])), 2);
        assert_eq!(rank(&int_mat(2, 2, &[0, 0, 0, 0])), 0);
        assert_eq!(rank(&vec![]), 0);
        let half = vec![vec![BigRational::new(1.into(), 2.into()), int(1)], vec![int(1), int(2)]];
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn sphere_and_torus_betti() {
        let s2 = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        assert_eq!(betti(&s2), vec![1, 0, 1]);
        let circle = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert_eq!(betti(&circle), vec![1, 1]);
    }

    #[test]
    fn relative_image_of_interval() {
        // H_0(I) → H_0(I, ∂I) is zero; H_1 groups vanish in the absolute side
        let seg = vec![vec![0, 1], vec![1, 2]];
        assert_eq!(relative_image_dims(&seg, &[vec![0], vec![2]]), vec![0, 0]);
        // with empty subcomplex the image is all of homology
        assert_eq!(relative_image_dims(&seg, &[]), vec![1, 0]);
    }

    #[test]
    fn suspension_formula() {
        let t2 = [1, 2, 1];
        assert_eq!(suspension_ih(&t2, 0), vec![1, 2, 0, 1]);
        assert_eq!(suspension_ih(&t2, 1), vec![1, 0, 2, 1]);
        let s2 = [1, 0, 1];
        assert_eq!(suspension_ih(&s2, 0), vec![1, 0, 0, 1]);
    }

    #[test]
    fn descartes_inertia() {
        assert_eq!(inertia(&int_mat(3, 3, &[2, 0, 0, 0, -3, 0, 0, 0, 0])), (1, 1, 1));
        assert_eq!(inertia(&int_mat(2, 2, &[0, 1, 1, 0])), (1, 1, 0));
        assert_eq!(inertia(&int_mat(2, 2, &[2, 1, 1, 2])), (2, 0, 0));
    }

    #[test]
    fn image_dims_hand_example() {
        // n = 1: H_0 = Q, H_1 = Q^2, L_0 = (1,0)^T, V_0 = 0, V_1 = Q^2
        let l0 = int_mat(2, 1, &[1, 0]);
        let v0 = (vec![vec![]], 0);
        let v1 = (int_mat(2, 2, &[1, 0, 0, 1]), 2);
        assert_eq!(image_cohomology_dims(&[1, 2], &[l0], &[v0, v1]), vec![0, 1]);
    }
}
