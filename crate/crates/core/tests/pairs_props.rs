mod common;

use common::to_oracle;
use hcplx::pairs::{build_complementary, check_related, ComplexPair};
use hcplx::random::{instance_rng, random_complementary_input, random_pair, random_subcomplex_domains, RandomSpec};
use proptest::prelude::*;

fn oracle_image_dims(p: &ComplexPair) -> Vec<usize> {
    let l = p.l();
    let diffs: Vec<_> = l.differentials().iter().map(to_oracle).collect();
    let doms: Vec<_> = p.domains().iter().map(|v| (to_oracle(v.basis()), v.dim())).collect();
    hcplx_oracle::image_cohomology_dims(&l.dims(), &diffs, &doms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn image_dims_match_rank_oracle(seed in any::<u64>()) {
        let p = random_pair(&mut instance_rng(seed, 0), &RandomSpec::default());
        let rep = p.image_cohomology().unwrap();
        prop_assert_eq!(rep.dims(), oracle_image_dims(&p));
        for d in &rep.degrees {
            prop_assert!(d.dim <= d.dim_d.min(d.dim_l));
        }
    }

    #[test]
    fn duality_projections(seed in any::<u64>()) {
        let p = random_pair(&mut instance_rng(seed, 1), &RandomSpec::default());
        for j in 0..=p.len() {
            let c = p.projection_checks(j);
            prop_assert!(c.adjoint, "π1/π4 not adjoint in degree {}", j);
            prop_assert!(c.pi3_vanishes, "π3 nonzero on ℋ(D) in degree {}", j);
        }
    }

    #[test]
    fn five_way_conditions_agree(seed in any::<u64>()) {
        let p = random_pair(&mut instance_rng(seed, 2), &RandomSpec::default());
        for i in 0..=p.len() {
            let f = p.five_way_check(i).unwrap();
            prop_assert!(f.all_equal(), "degree {}: {:?}", i, f.conditions);
        }
    }

    #[test]
    fn friedrichs_kernel_identity(seed in any::<u64>()) {
        let p = random_pair(&mut instance_rng(seed, 3), &RandomSpec::default());
        let f = p.friedrichs_identities();
        prop_assert!(f.kernel_identity);
    }

    #[test]
    fn complementary_links_mirror_harmonics(seed in any::<u64>()) {
        let (d, links) = random_complementary_input(&mut instance_rng(seed, 4), &RandomSpec::default());
        let (l, links) = build_complementary(&d, &links).unwrap();
        let r = check_related(&d, &l, &links).unwrap();
        prop_assert!(r.related && r.complementary);
        let hd = d.cohomology().unwrap().harmonic_dims();
        let mut hl = l.cohomology().unwrap().harmonic_dims();
        hl.reverse();
        prop_assert_eq!(hd, hl);
    }

    #[test]
    fn sandwich_monotonicity(seed in any::<u64>()) {
        let rng = &mut instance_rng(seed, 5);
        let p = random_pair(rng, &RandomSpec::default());
        let middle = random_subcomplex_domains(rng, p.l(), Some(p.domains()));
        let q = ComplexPair::new(p.l().clone(), middle).unwrap();
        for (a, b) in p.image_dims().iter().zip(q.image_dims()) {
            prop_assert!(*a <= b);
        }
    }
}
