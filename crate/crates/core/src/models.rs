//! Standard triangulations used as geometric instances: spheres, surfaces with and without
//! boundary, suspensions with cone-point strata, and closed 4-manifolds.
//!
//! Every constructor returns a validated [`StratifiedComplex`] whose declared orientation
//! signs are coherent whenever the space is orientable.

use crate::strat::{ComplexKind, StratSpec, StratifiedComplex};

/// Replaces the declared signs by the coherent orientation when one exists.
fn oriented(spec: StratSpec) -> StratifiedComplex {
    let x = StratifiedComplex::new(spec).expect("model triangulations are valid");
    let Ok(signs) = x.coherent_orientation() else {
        return x;
    };
    let n = x.dim();
    let mut spec = x.spec().clone();
    for (sign, s) in &mut spec.simplices {
        if s.len() == n + 1 {
            *sign = signs[x.simplex_index(s).expect("top simplex")];
        }
    }
    StratifiedComplex::new(spec).expect("reorienting keeps validity")
}

fn facets_from(list: &[&[usize]]) -> Vec<Vec<usize>> {
    list.iter().map(|f| f.to_vec()).collect()
}

fn closed(vertices: usize, facets: Vec<Vec<usize>>) -> StratifiedComplex {
    oriented(StratSpec::manifold(vertices, ComplexKind::Closed, &facets))
}

fn bounded(vertices: usize, facets: Vec<Vec<usize>>) -> StratifiedComplex {
    oriented(StratSpec::manifold(vertices, ComplexKind::Boundary, &facets))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facets of the boundary of the `(d+1)`-simplex, a `d`-sphere on `d + 2` vertices.
pub fn sphere_facets(d: usize) -> Vec<Vec<usize>> {
    subsets(d + 2, d + 1)
}

/// `S^d` as the boundary of the `(d+1)`-simplex.
pub fn sphere(d: usize) -> StratifiedComplex {
    closed(d + 2, sphere_facets(d))
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus_facets() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..7 {
        out.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        out.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    out
}

pub fn torus() -> StratifiedComplex {
    closed(7, torus_facets())
}

/// The 6-vertex real projective plane (non-orientable).
pub fn projective_plane() -> StratifiedComplex {
    closed(
        6,
        facets_from(&[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 1],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 1],
            &[4, 5, 2],
            &[5, 1, 3],
        ]),
    )
}

/// The 5-vertex Möbius band (non-orientable, with boundary).
pub fn mobius_band() -> StratifiedComplex {
    bounded(5, (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect())
}

/// A 6-vertex annulus `S¹ × [0, 1]`.
pub fn cylinder() -> StratifiedComplex {
    bounded(6, facets_from(&[&[0, 1, 3], &[1, 3, 4], &[1, 2, 4], &[2, 4, 5], &[2, 0, 5], &[0, 5, 3]]))
}

/// A disk: the cone over a 4-cycle.
pub fn disk() -> StratifiedComplex {
    bounded(5, facets_from(&[&[0, 1, 4], &[1, 2, 4], &[2, 3, 4], &[3, 0, 4]]))
}

/// The 7-vertex torus with the triangle `{0, 1, 3}` removed.
pub fn punctured_torus() -> StratifiedComplex {
    let facets = torus_facets().into_iter().filter(|f| !is_triangle(f, &[0, 1, 3])).collect();
    bounded(7, facets)
}

fn is_triangle(f: &[usize], t: &[usize]) -> bool {
    let mut a = f.to_vec();
    a.sort_unstable();
    a == t
}

/// Facets of the closed genus-2 surface on 11 vertices: two 7-vertex tori with the
/// triangle `{0, 1, 3}` removed, glued along its boundary.
pub fn genus_two_facets() -> Vec<Vec<usize>> {
    let relabel = |v: usize| match v {
        0 | 1 | 3 => v,
        2 => 7,
        4 => 8,
        5 => 9,
        6 => 10,
        _ => unreachable!(),
    };
    let mut facets: Vec<Vec<usize>> = torus_facets().into_iter().filter(|f| !is_triangle(f, &[0, 1, 3])).collect();
    let copy: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|&v| relabel(v)).collect()).collect();
    facets.extend(copy);
    facets
}

pub fn genus_two() -> StratifiedComplex {
    closed(11, genus_two_facets())
}

/// The genus-2 surface with the triangle `{2, 4, 5}` removed (one boundary circle).
pub fn punctured_genus_two() -> StratifiedComplex {
    let facets = genus_two_facets().into_iter().filter(|f| !is_triangle(f, &[2, 4, 5])).collect();
    bounded(11, facets)
}

/// Suspension of a closed complex on `vertices` vertices: cone points `vertices` ("north")
/// and `vertices + 1` ("south") form two 0-dimensional strata.
pub fn suspension(vertices: usize, facets: &[Vec<usize>]) -> StratifiedComplex {
    let (north, south) = (vertices, vertices + 1);
    let mut simplices = Vec::with_capacity(2 * facets.len());
    for cone in [north, south] {
        for f in facets {
            let mut s = f.clone();
            s.push(cone);
            simplices.push((1, s));
        }
    }
    oriented(StratSpec {
        vertices: vertices + 2,
        kind: ComplexKind::Closed,
        simplices,
        strata: vec![("north".into(), 0), ("south".into(), 0)],
        singular: vec![("north".into(), vec![north]), ("south".into(), vec![south])],
        weights: Vec::new(),
    })
}

/// `ΣT²` on 9 vertices, with the two cone points as codimension-3 strata.
pub fn suspended_torus() -> StratifiedComplex {
    suspension(7, &torus_facets())
}

/// `ΣS³` (a 4-sphere) on 7 vertices with two codimension-4 cone-point strata.
pub fn suspended_three_sphere() -> StratifiedComplex {
    suspension(5, &sphere_facets(3))
}

/// Staircase triangulation of the product of two simplicial complexes on `m` and `k`
/// vertices; vertex `(a, b)` becomes `a·k + b`.
pub fn product_facets(a: &[Vec<usize>], m: usize, b: &[Vec<usize>], k: usize) -> (usize, Vec<Vec<usize>>) {
    let mut out = Vec::new();
    for s in a {
        let mut s = s.clone();
        s.sort_unstable();
        for t in b {
            let mut t = t.clone();
            t.sort_unstable();
            // lattice paths from (0, 0) to (|s|−1, |t|−1)
            let (p, q) = (s.len() - 1, t.len() - 1);
            for steps in subsets(p + q, p) {
                let (mut i, mut j) = (0, 0);
                let mut facet = vec![s[0] * k + t[0]];
                for step in 0..p + q {
                    if steps.contains(&step) {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    facet.push(s[i] * k + t[j]);
                }
                out.push(facet);
            }
        }
    }
    (m * k, out)
}

/// `S² × S²` on 16 vertices and 96 facets.
pub fn s2_times_s2() -> StratifiedComplex {
    let s2 = sphere_facets(2);
    let (v, facets) = product_facets(&s2, 4, &s2, 4);
    closed(v, facets)
}

/// The 9-vertex complex projective plane.
pub fn cp2() -> StratifiedComplex {
    const FACETS: [[usize; 5]; 36] = [
        [0, 1, 2, 3, 4],
        [0, 1, 2, 3, 5],
        [0, 1, 2, 4, 5],
        [0, 1, 3, 4, 6],
        [0, 1, 3, 5, 7],
        [0, 1, 3, 6, 7],
        [0, 1, 4, 5, 6],
        [0, 1, 5, 6, 8],
        [0, 1, 5, 7, 8],
        [0, 1, 6, 7, 8],
        [0, 2, 3, 4, 8],
        [0, 2, 3, 5, 8],
        [0, 2, 4, 5, 6],
        [0, 2, 4, 6, 7],
        [0, 2, 4, 7, 8],
        [0, 2, 5, 6, 8],
        [0, 2, 6, 7, 8],
        [0, 3, 4, 6, 7],
        [0, 3, 4, 7, 8],
        [0, 3, 5, 7, 8],
        [1, 2, 3, 4, 8],
        [1, 2, 3, 5, 7],
        [1, 2, 3, 6, 7],
        [1, 2, 3, 6, 8],
        [1, 2, 4, 5, 7],
        [1, 2, 4, 7, 8],
        [1, 2, 6, 7, 8],
        [1, 3, 4, 6, 8],
        [1, 4, 5, 6, 8],
        [1, 4, 5, 7, 8],
        [2, 3, 5, 6, 7],
        [2, 3, 5, 6, 8],
        [2, 4, 5, 6, 7],
        [3, 4, 5, 6, 7],
        [3, 4, 5, 6, 8],
        [3, 4, 5, 7, 8],
    ];
    closed(9, FACETS.iter().map(|f| f.to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_vector(x: &StratifiedComplex) -> Vec<usize> {
        (0..=x.dim()).map(|d| x.simplices(d).len()).collect()
    }

    #[test]
    fn face_counts() {
        assert_eq!(f_vector(&torus()), vec![7, 21, 14]);
        assert_eq!(f_vector(&suspended_torus()), vec![9, 35, 56, 28]);
        assert_eq!(f_vector(&genus_two()), vec![11, 39, 26]);
        assert_eq!(f_vector(&cp2()), vec![9, 36, 84, 90, 36]);
        let s = s2_times_s2();
        assert_eq!(s.simplices(4).len(), 96);
        assert_eq!(s.vertex_count(), 16);
    }

    #[test]
    fn orientability() {
        assert!(torus().coherent_orientation().is_ok());
        assert!(projective_plane().coherent_orientation().is_err());
        assert!(mobius_band().coherent_orientation().is_err());
        assert!(cp2().declared_is_coherent());
        assert!(suspended_torus().declared_is_coherent());
    }
}
