mod common;

use common::to_oracle;
use hcplx::random::{instance_rng, random_complex, RandomSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kodaira_decomposition_is_exact(seed in any::<u64>()) {
        let c = random_complex(&mut instance_rng(seed, 0), &RandomSpec::default());
        let rep = c.cohomology().unwrap();
        let diffs: Vec<_> = c.differentials().iter().map(to_oracle).collect();
        let oracle = hcplx_oracle::cohomology_dims(&c.dims(), &diffs);
        prop_assert_eq!(rep.dims(), oracle.clone());
        prop_assert_eq!(rep.harmonic_dims(), oracle);
        for d in &rep.degrees {
            prop_assert!(d.kodaira_exact, "degree {}", d.degree);
            let ip = c.space(d.degree);
            let sum = d.harmonic.join(&d.range).join(&d.corange);
            prop_assert!(sum.is_full());
            prop_assert!(ip.orthogonal(&d.harmonic, &d.range) && ip.orthogonal(&d.range, &d.corange));
        }
    }

    #[test]
    fn adjoint_kernel_is_range_complement(seed in any::<u64>()) {
        let c = random_complex(&mut instance_rng(seed, 1), &RandomSpec::default());
        for i in 0..c.len() {
            let adj = c.adjoint(i).unwrap();
            let range = c.range(i + 1);
            prop_assert_eq!(adj.kernel_basis(), c.space(i + 1).complement(&range));
        }
    }

    #[test]
    fn euler_characteristic_is_alternating_dimension(seed in any::<u64>()) {
        let c = random_complex(&mut instance_rng(seed, 2), &RandomSpec::default());
        let chi = c.cohomology().unwrap().euler_characteristic();
        prop_assert_eq!(chi, hcplx::complex::alternating_sum(&c.dims()));
    }

    #[test]
    fn dual_mirrors_harmonics_and_is_involutive(seed in any::<u64>()) {
        let c = random_complex(&mut instance_rng(seed, 3), &RandomSpec::default());
        let dual = c.dual_complex().unwrap();
        prop_assert_eq!(dual.validate(), Ok(()));
        let h = c.cohomology().unwrap().harmonic_dims();
        let mut hd = dual.cohomology().unwrap().harmonic_dims();
        hd.reverse();
        prop_assert_eq!(h, hd);
        prop_assert_eq!(dual.dual_complex().unwrap(), c);
    }

    #[test]
    fn laplacian_kernel_is_harmonic(seed in any::<u64>()) {
        let c = random_complex(&mut instance_rng(seed, 4), &RandomSpec::default());
        for i in 0..=c.len() {
            prop_assert_eq!(c.laplacian(i).unwrap().kernel, c.harmonic(i));
        }
    }
}
