use num_traits::{Signed, Zero};

use super::{LinalgError, Rational, RationalMatrix};

/// Sylvester inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.zero
    }
}

/// Inertia by exact symmetric Gaussian elimination (`S ↦ Cᵀ S C`).
///
/// A nonzero diagonal entry is used as pivot when one exists; otherwise a nonzero
/// off-diagonal entry `s_ij` is moved onto the diagonal by adding row and column `j`
/// to row and column `i`, which makes the new `s_ii = 2 s_ij ≠ 0`.
pub fn congruence_signature(s: &RationalMatrix) -> Result<Inertia, LinalgError> {
    if !s.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut a = s.clone();
    let mut active: Vec<usize> = (0..s.rows()).collect();
    let mut out = Inertia::default();
    while !active.is_empty() {
        let k = match active.iter().copied().find(|&k| !a.get(k, k).is_zero()) {
            Some(k) => k,
            None => {
                let off = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                let Some((i, j)) = off else {
                    out.zero += active.len();
                    break;
                };
                // row_i += row_j, then col_i += col_j
                for &c in &active {
                    let v = a.get(i, c) + a.get(j, c);
                    a.set(i, c, v);
                }
                for &r in &active {
                    let v = a.get(r, i) + a.get(r, j);
                    a.set(r, i, v);
                }
                i
            }
        };
        let d = a.get(k, k).clone();
        if d.is_positive() {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
        active.retain(|&x| x != k);
        let col: Vec<(usize, Rational)> =
            active.iter().map(|&i| (i, a.get(i, k).clone())).filter(|(_, v)| !v.is_zero()).collect();
        for (x, (i, aik)) in col.iter().enumerate() {
            let f = aik / &d;
            for (j, akj) in &col[x..] {
                let v = a.get(*i, *j) - &f * akj;
                a.set(*i, *j, v.clone());
                a.set(*j, *i, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn diagonal_and_hyperbolic() {
        let d = RationalMatrix::diagonal(&[q(2), q(-3), q(0)]);
        assert_eq!(congruence_signature(&d).unwrap(), Inertia { pos: 1, neg: 1, zero: 1 });
        let h = RationalMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        assert_eq!(congruence_signature(&h).unwrap(), Inertia { pos: 1, neg: 1, zero: 0 });
    }

    #[test]
    fn rejects_asymmetric() {
        let m = RationalMatrix::from_ints(2, 2, &[0, 1, 0, 0]);
        assert_eq!(congruence_signature(&m), Err(LinalgError::NotSymmetric));
    }

    #[test]
    fn degenerate_hyperbolic_blocks() {
        // H ⊕ H ⊕ 0 with zero diagonal throughout
        let m = RationalMatrix::from_ints(
            5,
            5,
            &[
                0, 1, 0, 0, 0, //
                1, 0, 0, 0, 0, //
                0, 0, 0, 2, 0, //
                0, 0, 2, 0, 0, //
                0, 0, 0, 0, 0,
            ],
        );
        assert_eq!(congruence_signature(&m).unwrap(), Inertia { pos: 2, neg: 2, zero: 1 });
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(congruence_signature(&RationalMatrix::zeros(0, 0)).unwrap(), Inertia::default());
    }
}
