mod common;

use std::collections::BTreeMap;

use hcplx::models;
use hcplx::strat::{
    allowable_subspace, duality_chi_report, image_ih, intersection_homology, plain_betti, regular_part_betti,
    ComplexKind, Perversity, StratError, StratSpec, StratifiedComplex,
};
use hcplx_oracle::{betti, suspension_ih};
use proptest::prelude::*;

fn facets(x: &StratifiedComplex) -> Vec<Vec<usize>> {
    x.simplices(x.dim()).to_vec()
}

fn perversity(x: &StratifiedComplex, values: &[i64]) -> Perversity {
    let map: BTreeMap<String, i64> = x.strata().iter().zip(values).map(|(s, &v)| (s.label.clone(), v)).collect();
    Perversity::new(x, map).unwrap()
}

#[test]
fn suspended_torus_validates_with_codim_three_strata() {
    let x = models::suspended_torus();
    assert_eq!(x.dim(), 3);
    assert_eq!(x.vertex_count(), 9);
    assert!(x.strata().iter().all(|s| s.codim == 3));
}

#[test]
fn suspended_torus_matches_suspension_oracle() {
    let x = models::suspended_torus();
    let bt = betti(&models::torus_facets());
    let lower = intersection_homology(&x, &Perversity::lower_middle(&x)).unwrap();
    let upper = intersection_homology(&x, &Perversity::upper_middle(&x)).unwrap();
    assert_eq!(lower.dims, suspension_ih(&bt, 0));
    assert_eq!(lower.dims, vec![1, 2, 0, 1]);
    assert_eq!(upper.dims, suspension_ih(&bt, 1));
    assert_eq!(upper.dims, vec![1, 0, 2, 1]);
    let image = image_ih(&x, &Perversity::lower_middle(&x), &Perversity::upper_middle(&x)).unwrap();
    assert_eq!(image.dims, vec![1, 0, 0, 1]);
    assert_eq!(image.euler_characteristic(), 0);
}

#[test]
fn suspension_oracle_for_all_constant_perversities() {
    let x = models::suspended_torus();
    let bt = betti(&models::torus_facets());
    for p in 0..=2 {
        let ih = intersection_homology(&x, &perversity(&x, &[p, p])).unwrap();
        assert_eq!(ih.dims, suspension_ih(&bt, p), "p = {p}");
    }
}

#[test]
fn sphere_has_sphere_homology_for_every_perversity() {
    let x = models::sphere(3);
    let p = Perversity::zero(&x);
    assert_eq!(intersection_homology(&x, &p).unwrap().dims, vec![1, 0, 0, 1]);
    assert_eq!(plain_betti(&x), betti(&facets(&x)));
}

#[test]
fn no_strata_gives_plain_homology() {
    for x in [models::torus(), models::genus_two(), models::projective_plane(), models::cp2()] {
        let p = Perversity::zero(&x);
        assert_eq!(intersection_homology(&x, &p).unwrap().dims, betti(&facets(&x)));
    }
}

#[test]
fn image_of_equal_perversities_is_ih() {
    let x = models::suspended_torus();
    let p = Perversity::upper_middle(&x);
    let image = image_ih(&x, &p, &p).unwrap();
    assert_eq!(image.dims, image.source.dims);
}

#[test]
fn incomparable_perversities_are_rejected() {
    let x = models::suspended_torus();
    let err = image_ih(&x, &perversity(&x, &[0, 1]), &perversity(&x, &[1, 0])).unwrap_err();
    assert_eq!(err, StratError::Incomparable);
}

#[test]
fn duality_report_on_suspended_torus() {
    let x = models::suspended_torus();
    let r = duality_chi_report(&x, &Perversity::lower_middle(&x)).unwrap();
    assert!(r.hypothesis_lower);
    assert!(r.p_is_source);
    assert_eq!(r.image, vec![1, 0, 0, 1]);
    assert!(r.duality.iter().all(|&d| d));
    assert_eq!(r.chi, 0);
    assert!(r.chi_holds);
    assert_eq!(r.regular_betti, vec![1, 2, 1, 0]);
    assert_eq!(r.regular_betti, regular_part_betti(&x));
    assert_eq!(r.compact_dims, vec![0, 1, 2, 1]);
    assert!(r.betti_bound.iter().all(|&m| m));
}

#[test]
fn duality_report_rejects_non_orientable() {
    let x = models::projective_plane();
    assert!(matches!(duality_chi_report(&x, &Perversity::zero(&x)), Err(StratError::NonOrientable { .. })));
}

#[test]
fn allowability_examples() {
    let x = models::suspended_torus();
    let zero = Perversity::zero(&x);
    // cone points are singular, so all R₀ vertices are regular and allowable
    assert!(allowable_subspace(&x, 0, &zero).unwrap().is_full());
    // an edge hitting a codim-3 cone point in a vertex: 0 ≤ 1 − 3 + 0 fails
    let edge = x.simplex_index(&[0, 7]).unwrap();
    let pos = x.regular_position(1, edge).unwrap();
    let a1 = allowable_subspace(&x, 1, &zero).unwrap();
    let mut e = vec![hcplx::linalg::q(0); a1.ambient()];
    e[pos] = hcplx::linalg::q(1);
    assert!(!a1.contains_vector(&e));
    assert!(allowable_subspace(&x, 4, &zero).is_err());
}

#[test]
fn validation_errors_name_the_simplex() {
    let dangling = StratSpec {
        vertices: 5,
        kind: ComplexKind::Closed,
        simplices: vec![
            (1, vec![0, 1, 2]),
            (1, vec![0, 1, 3]),
            (1, vec![0, 2, 3]),
            (1, vec![1, 2, 3]),
            (1, vec![3, 4]),
        ],
        strata: vec![],
        singular: vec![],
        weights: vec![],
    };
    assert_eq!(StratifiedComplex::new(dangling).unwrap_err(), StratError::NotPure { simplex: "[3 4]".into() });
    let open = StratSpec::manifold(4, ComplexKind::Closed, &[vec![0, 1, 2], vec![0, 1, 3]]);
    assert!(matches!(StratifiedComplex::new(open), Err(StratError::Pseudomanifold { .. })));
    let bad_filtration = StratSpec {
        vertices: 4,
        kind: ComplexKind::Closed,
        simplices: models::sphere_facets(2).into_iter().map(|f| (1, f)).collect(),
        strata: vec![("a".into(), 0), ("b".into(), 0)],
        singular: vec![("a".into(), vec![0]), ("b".into(), vec![1])],
        weights: vec![],
    };
    assert!(matches!(StratifiedComplex::new(bad_filtration), Err(StratError::IncompatibleFiltration { .. })));
}

#[test]
fn orientation_reversal_flips_every_sign() {
    let x = models::suspended_torus();
    let y = StratifiedComplex::new(x.spec().reversed()).unwrap();
    let a = x.coherent_orientation().unwrap();
    let b = y.coherent_orientation().unwrap();
    assert!(a.iter().zip(&b).all(|(s, t)| *s == -*t));
}

#[test]
fn r0_boundary_squares_to_zero() {
    for x in [models::suspended_torus(), models::suspended_three_sphere()] {
        for d in 1..x.dim() {
            assert!((&x.r0_boundary(d) * &x.r0_boundary(d + 1)).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chains_are_monotone_in_the_perversity(a in -1i64..3, b in -1i64..3, da in 0i64..2, db in 0i64..2) {
        let x = models::suspended_torus();
        let p = perversity(&x, &[a, b]);
        let q = perversity(&x, &[a + da, b + db]);
        let ip = intersection_homology(&x, &p).unwrap();
        let iq = intersection_homology(&x, &q).unwrap();
        for i in 0..=x.dim() {
            prop_assert!(iq.chains[i].contains(&ip.chains[i]));
        }
        let image = image_ih(&x, &p, &q).unwrap();
        for i in 0..=x.dim() {
            prop_assert!(image.dims[i] <= ip.dims[i].min(iq.dims[i]));
        }
    }

    #[test]
    fn suspension_oracle_on_spheres_and_tori(p in 0i64..3, torus in any::<bool>()) {
        let (x, base) = if torus {
            (models::suspended_torus(), models::torus_facets())
        } else {
            (models::suspension(4, &models::sphere_facets(2)), models::sphere_facets(2))
        };
        let ih = intersection_homology(&x, &perversity(&x, &[p, p])).unwrap();
        prop_assert_eq!(ih.dims, suspension_ih(&betti(&base), p));
    }
}
