use hcplx::intermediate::{graph_inner_product, IntermediateComplex};
use hcplx::pairs::ComplexPair;
use hcplx::random::{instance_rng, random_pair, RandomSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn construction_invariants(seed in any::<u64>()) {
        let pair = random_pair(&mut instance_rng(seed, 0), &RandomSpec::default());
        let ic = IntermediateComplex::build(&pair).unwrap();
        let inv = ic.invariants();
        prop_assert!(inv.all_hold(), "{:?}", inv);
        prop_assert!(ic.verify_against_oracle().is_ok());
    }

    #[test]
    fn trace_properties(seed in any::<u64>()) {
        let pair = random_pair(&mut instance_rng(seed, 1), &RandomSpec::default());
        let ic = IntermediateComplex::build(&pair).unwrap();
        for t in ic.trace() {
            let i = t.degree;
            let ip = graph_inner_product(pair.l(), i);
            // π_2 is injective on A and lands in W
            prop_assert_eq!(t.pi2_range.dim(), t.a.dim());
            prop_assert!(t.w.contains(&t.pi2_range));
            // B = V ⊕ N with graph-orthogonal summands, and B = Ker D ⊕ M
            let b = &ic.b()[i];
            if !t.shortcut {
                prop_assert!(ip.orthogonal(pair.domain(i), &t.n));
                prop_assert_eq!(b.dim(), pair.domain(i).dim() + t.n.dim());
            }
            prop_assert_eq!(t.ker_d.join(&t.m), b.clone());
            prop_assert_eq!(t.ker_d.dim() + t.m.dim(), b.dim());
        }
    }

    #[test]
    fn laplacian_m_kernel_and_index(seed in any::<u64>()) {
        let pair = random_pair(&mut instance_rng(seed, 2), &RandomSpec::default());
        let ic = IntermediateComplex::build(&pair).unwrap();
        let image = pair.image_dims();
        for i in 0..=pair.len() {
            prop_assert_eq!(ic.laplacian_m(i).unwrap().kernel.dim(), image[i]);
        }
        prop_assert_eq!(ic.index_even().unwrap(), pair.image_cohomology().unwrap().chi);
    }

    #[test]
    fn rebuilding_on_p_is_stable(seed in any::<u64>()) {
        let pair = random_pair(&mut instance_rng(seed, 3), &RandomSpec::default());
        let ic = IntermediateComplex::build(&pair).unwrap();
        let again = ComplexPair::new(pair.l().clone(), ic.b().to_vec()).unwrap();
        let ic2 = IntermediateComplex::build(&again).unwrap();
        prop_assert_eq!(ic2.cohomology_dims(), ic.cohomology_dims());
        prop_assert!(ic2.invariants().all_hold());
        for i in 0..=pair.len() {
            prop_assert_eq!(ic2.p().kernel(i), ic.p().kernel(i));
            prop_assert_eq!(ic2.p().range(i), ic.p().range(i));
        }
    }
}
