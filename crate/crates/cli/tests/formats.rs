use hcplx::models;
use hcplx::random::{instance_rng, random_complex, random_pair, random_subcomplex_domains, RandomSpec};
use hcplx::strat::StratifiedComplex;
use hcplx_cli::format::{
    emit_complex, emit_pair, emit_strat, parse_complex, parse_pair, parse_strat, parse_strat_spec, PairFile,
};
use proptest::prelude::*;

#[test]
fn tetrahedron_boundary() {
    let text =
        "strat 1\nvertices 4\nkind closed\nsimplex + 1 2 3\nsimplex - 0 2 3\nsimplex + 0 1 3\nsimplex - 0 1 2\nend\n";
    let x = parse_strat(text).unwrap();
    assert_eq!((x.vertex_count(), x.simplices(2).len()), (4, 4));
    assert_eq!(emit_strat(&x), text);
}

#[test]
fn non_canonical_input_is_canonicalised() {
    // vertices out of order flip the sign; comments and spacing are dropped
    let text =
        "# S²\nstrat 1\nvertices 4\nsimplex -   3 2 1\nsimplex - 0 2 3\nsimplex + 0 1 3\nsimplex - 0 1 2 # last\nend\n";
    let x = parse_strat(text).unwrap();
    let canonical = emit_strat(&x);
    assert!(canonical.contains("simplex + 1 2 3\n"));
    assert_eq!(emit_strat(&parse_strat(&canonical).unwrap()), canonical);
}

#[test]
fn strat_errors_have_positions() {
    let e = parse_strat_spec("strat 1\nvertices 4\nsimplex * 0 1 2\nend\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 9));
    let e = parse_strat_spec("strat 2\n").unwrap_err();
    assert_eq!((e.line, e.column), (1, 7));
    let e = parse_strat_spec("strat 1\nvertices 4\nkind open\nend\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 6));
    let e = parse_strat_spec("strat 1\nvertices 4\nend\nsimplex + 0 1\n").unwrap_err();
    assert_eq!(e.line, 4);
}

#[test]
fn pair_errors_have_positions() {
    let e = parse_pair("pair 1\nlength 1\ndims 1 2\ndiff 0\n| 1\n| 0 3\nend\n").unwrap_err();
    assert_eq!((e.line, e.column), (6, 5));
    let e = parse_pair("pair 1\nlength 1\ndims 1 1\ndiff 0\n| 1\nphi 0\n| 1\nend\n").unwrap_err();
    assert!(e.message.contains("phi 1") || e.message.contains("constants"), "{e}");
    let e = parse_pair("pair 1\nlength 1\ndims 1 1\ndiff 3\n").unwrap_err();
    assert_eq!((e.line, e.column), (4, 6));
}

#[test]
fn gram_and_domain_blocks_round_trip() {
    let text = "cplx 1\nlength 1\ndims 2 1\ngram 0\n| 2 1\n| 1 2\ndiff 0\n| 1 -1\ndomain 0 1\n| 1 1/2\nend\n";
    let c = parse_complex(text).unwrap();
    assert!(!c.has_full_domains());
    assert_eq!(emit_complex(&c), text);
    // a non-positive gram is rejected
    assert!(parse_complex("cplx 1\nlength 0\ndims 1\ngram 0\n| -1\nend\n").is_err());
}

#[test]
fn every_model_round_trips_as_an_object() {
    for x in [models::suspended_torus(), models::cp2(), models::punctured_genus_two(), models::mobius_band()] {
        let y = parse_strat(&emit_strat(&x)).unwrap();
        assert_eq!(y.spec(), &x.spec().canonical());
        let reparsed: StratifiedComplex = parse_strat(&emit_strat(&y)).unwrap();
        assert_eq!(reparsed.spec(), y.spec());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_complexes_round_trip(seed in any::<u64>()) {
        let rng = &mut instance_rng(seed, 0);
        let c = random_complex(rng, &RandomSpec::default());
        let domains = random_subcomplex_domains(rng, &c, None);
        let c = c.with_domains(domains).unwrap();
        let text = emit_complex(&c);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_complex(&back), text);
    }

    #[test]
    fn random_pairs_round_trip(seed in any::<u64>()) {
        let file = PairFile { pair: random_pair(&mut instance_rng(seed, 1), &RandomSpec::default()), links: None };
        let text = emit_pair(&file);
        let back = parse_pair(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(emit_pair(&back), text);
    }
}
