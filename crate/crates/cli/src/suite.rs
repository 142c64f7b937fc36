//! The `check` property suite: seeded random instances and geometric models, compared with
//! the independent oracles.
//!
//! Random instance `i` of a seeded run is drawn from its own ChaCha8 stream, so results do
//! not depend on scheduling: instances run on the rayon pool and are merged by index.
//! Stream layout: pairs use stream `i`, full-domain complexes `2³² + i`, complementary
//! inputs `2·2³² + i`, basis changes `3·2³² + i`.
//!
//! | criterion | suite |
//! |---|---|
//! | 1 | `intermediate`: the four invariants of `P` and `dim H(P)` = oracle image dims |
//! | 2 | `five-way`: the five conditions agree in every degree |
//! | 3 | `friedrichs`: `Ker(A_max A_min) = ⊕ ℋ_min` |
//! | 4 | `kodaira`: orthogonal decomposition and `dim H = dim ℋ` on full-domain complexes |
//! | 5 | `mirror`: complementary links mirror harmonic dimensions (`instances / 5` cases) |
//! | 6 | `lefschetz`: image duality on surfaces with boundary |
//! | 7 | `ih-oracle`: intersection homology against the suspension and simplicial oracles |
//! | 8 | `weight-perversity`: the `p_g` bracket table |
//! | 9 | `signature`: signatures, orientation reversal, basis change, nondegeneracy |
//! | 10 | `index`: `ind (P + P*)_ev = χ(P)` on random pairs and geometric instances |
//! | 11 | `round-trip`: emit∘parse on models and random instances |

use hcplx::intermediate::IntermediateComplex;
use hcplx::linalg::RationalMatrix;
use hcplx::models;
use hcplx::pairing::{image_pairing, image_representatives, pairing_report, perverse_signature, RelAbsPair};
use hcplx::pairs::{build_complementary, check_related};
use hcplx::random::{
    instance_rng, random_complementary_input, random_complex, random_invertible, random_pair, RandomSpec,
};
use hcplx::strat::{
    duality_chi_report, image_ih, intersection_homology, weight_perversity_value, Perversity, StratifiedComplex,
};
use hcplx_oracle::{betti, relative_image_dims, suspension_ih};
use rayon::prelude::*;

use crate::commands::{emit_model, oracle_cohomology_dims, oracle_image_dims, strat_model, weight_table, MODEL_NAMES};
use crate::format::{emit_complex, emit_pair, parse_complex, parse_pair, parse_strat, PairFile};
use crate::report::Report;

const STREAM: u64 = 1 << 32;
/// Random basis changes tried on the middle-degree image of `S²×S²`.
const BASIS_CHANGES: u64 = 8;
/// Random instances also pushed through the text formats.
const ROUND_TRIP_INSTANCES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub spec: RandomSpec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 0, instances: 1000, spec: RandomSpec::default() }
    }
}

/// The outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub criterion: u8,
    pub name: &'static str,
    pub cases: usize,
    /// `(case, message)` for every failed case, in case order.
    pub failures: Vec<(String, String)>,
}

impl SuiteResult {
    fn new(criterion: u8, name: &'static str) -> Self {
        Self { criterion, name, cases: 0, failures: Vec::new() }
    }

    /// Records one case; `check` returns the failure message, if any.
    fn case(&mut self, label: impl Into<String>, outcome: Option<String>) {
        self.cases += 1;
        if let Some(message) = outcome {
            self.failures.push((label.into(), message));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn expect(ok: bool, message: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(message)
}

/// Per-pair findings for criteria 1, 2, 3, 10 and 11.
struct PairOutcome {
    intermediate: Option<String>,
    five_way: Option<String>,
    friedrichs: Option<String>,
    index: Option<String>,
    round_trip: Option<Option<String>>,
}

fn pair_instance(cfg: &SuiteConfig, i: usize) -> PairOutcome {
    let pair = random_pair(&mut instance_rng(cfg.seed, i as u64), &cfg.spec);
    let oracle = oracle_image_dims(&pair);
    let (intermediate, index) = match IntermediateComplex::build(&pair) {
        Err(e) => (Some(format!("construction failed: {e}")), Some("no intermediate complex".into())),
        Ok(ic) => {
            let inv = ic.invariants();
            let dims = ic.cohomology_dims();
            let intermediate = if !inv.all_hold() {
                Some(format!(
                    "invariants sandwich {:?} kernel {:?} range {:?} square-zero {:?}",
                    inv.sandwich, inv.kernel, inv.range, inv.square_zero
                ))
            } else {
                expect(dims == oracle, || format!("dim H(P) {dims:?} but oracle image dims {oracle:?}"))
            };
            let index = match ic.index_even() {
                Ok(k) => expect(k == ic.euler_characteristic(), || {
                    format!("index {k} but Euler characteristic {}", ic.euler_characteristic())
                }),
                Err(e) => Some(e.to_string()),
            };
            (intermediate, index)
        }
    };
    let five_way = (0..=pair.len()).find_map(|d| match pair.five_way_check(d) {
        Ok(f) => expect(f.all_equal(), || format!("degree {d}: conditions {:?}", f.conditions)),
        Err(e) => Some(e.to_string()),
    });
    let f = pair.friedrichs_identities();
    let friedrichs = expect(f.kernel_identity, || {
        format!("kernel dims {:?}, minimal harmonic dim {}", f.kernel_dims, f.harmonic_min.dim())
    });
    let round_trip = (i < ROUND_TRIP_INSTANCES).then(|| {
        let file = PairFile { pair, links: None };
        let text = emit_pair(&file);
        match parse_pair(&text) {
            Ok(back) => expect(back == file && emit_pair(&back) == text, || "pair text does not round-trip".into()),
            Err(e) => Some(format!("emitted pair does not parse: {e}")),
        }
    });
    PairOutcome { intermediate, five_way, friedrichs, index, round_trip }
}

/// Criterion 4 (and complex round-trips): one random full-domain complex.
fn complex_instance(cfg: &SuiteConfig, i: usize) -> (Option<String>, Option<Option<String>>) {
    let c = random_complex(&mut instance_rng(cfg.seed, STREAM + i as u64), &cfg.spec);
    let kodaira = match c.cohomology() {
        Err(e) => Some(e.to_string()),
        Ok(coh) => {
            let bad = coh.degrees.iter().find(|d| !d.kodaira_exact || d.dim != d.harmonic.dim());
            let oracle = oracle_cohomology_dims(&c);
            match bad {
                Some(d) => Some(format!(
                    "degree {}: kodaira {} dim {} harmonic {}",
                    d.degree,
                    d.kodaira_exact,
                    d.dim,
                    d.harmonic.dim()
                )),
                None => expect(oracle == coh.dims(), || format!("cohomology {:?} but oracle {oracle:?}", coh.dims())),
            }
        }
    };
    let round_trip = (i < ROUND_TRIP_INSTANCES).then(|| {
        let text = emit_complex(&c);
        match parse_complex(&text) {
            Ok(back) => expect(back == c && emit_complex(&back) == text, || "complex text does not round-trip".into()),
            Err(e) => Some(format!("emitted complex does not parse: {e}")),
        }
    });
    (kodaira, round_trip)
}

/// Criterion 5: one complementary pair.
fn mirror_instance(cfg: &SuiteConfig, i: usize) -> Option<String> {
    let (d, links) = random_complementary_input(&mut instance_rng(cfg.seed, 2 * STREAM + i as u64), &cfg.spec);
    let (l, links) = match build_complementary(&d, &links) {
        Ok(x) => x,
        Err(e) => return Some(e.to_string()),
    };
    match check_related(&d, &l, &links) {
        Ok(r) if r.related && r.complementary => {}
        Ok(r) => return Some(format!("related {} complementary {}", r.related, r.complementary)),
        Err(e) => return Some(e.to_string()),
    }
    let (hd, hl) = match (d.cohomology(), l.cohomology()) {
        (Ok(a), Ok(b)) => (a.harmonic_dims(), b.harmonic_dims()),
        _ => return Some("cohomology failed".into()),
    };
    let mirrored: Vec<usize> = hl.iter().rev().copied().collect();
    expect(hd == mirrored, || format!("harmonic dims {hd:?} vs reversed {mirrored:?}"))
}

fn rel_abs(x: &StratifiedComplex) -> Result<RelAbsPair, String> {
    RelAbsPair::new(x.clone()).map_err(|e| e.to_string())
}

fn lefschetz_suite() -> SuiteResult {
    let mut s = SuiteResult::new(6, "lefschetz");
    let cases = [
        ("cylinder", models::cylinder(), Some(vec![0, 0, 0])),
        ("disk", models::disk(), Some(vec![0, 0, 0])),
        ("punctured-torus", models::punctured_torus(), Some(vec![0, 2, 0])),
        ("punctured-genus-two", models::punctured_genus_two(), None),
    ];
    let results: Vec<_> = cases
        .par_iter()
        .map(|(name, x, expected)| {
            let outcome = rel_abs(x).map(|m| {
                let dims = m.pair().image_dims();
                let oracle = relative_image_dims(x.simplices(x.dim()), &x.boundary_simplices());
                let n = dims.len() - 1;
                if dims != oracle {
                    Some(format!("image {dims:?} but relative oracle {oracle:?}"))
                } else if (0..=n).any(|j| dims[j] != dims[n - j]) {
                    Some(format!("image {dims:?} is not palindromic"))
                } else {
                    expected.as_ref().and_then(|e| expect(e == &dims, || format!("image {dims:?}, expected {e:?}")))
                }
            });
            (name.to_string(), outcome.unwrap_or_else(Some))
        })
        .collect();
    for (name, outcome) in results {
        s.case(name, outcome);
    }
    s
}

fn ih_suite() -> SuiteResult {
    let mut s = SuiteResult::new(7, "ih-oracle");
    let st = models::suspended_torus();
    let bt = betti(&models::torus_facets());
    let lower = Perversity::lower_middle(&st);
    let upper = Perversity::upper_middle(&st);
    let dims =
        |x: &StratifiedComplex, p: &Perversity| intersection_homology(x, p).map(|d| d.dims).map_err(|e| e.to_string());
    let check = |got: Result<Vec<usize>, String>, expected: &[usize]| match got {
        Ok(d) => expect(d == expected, || format!("{d:?}, expected {expected:?}")),
        Err(e) => Some(e),
    };
    s.case("sigma-t2 lower-middle", check(dims(&st, &lower), &[1, 2, 0, 1]));
    s.case("sigma-t2 lower-middle oracle", check(dims(&st, &lower), &suspension_ih(&bt, 0)));
    s.case("sigma-t2 upper-middle", check(dims(&st, &upper), &[1, 0, 2, 1]));
    s.case("sigma-t2 upper-middle oracle", check(dims(&st, &upper), &suspension_ih(&bt, 1)));
    s.case(
        "sigma-t2 middle image",
        check(image_ih(&st, &lower, &upper).map(|i| i.dims).map_err(|e| e.to_string()), &[1, 0, 0, 1]),
    );
    s.case(
        "sigma-t2 image duality and chi",
        match duality_chi_report(&st, &lower) {
            Ok(r) => expect(r.duality.iter().all(|&b| b) && r.chi == 0 && r.chi_holds, || {
                format!("duality {:?} chi {}", r.duality, r.chi)
            }),
            Err(e) => Some(e.to_string()),
        },
    );
    let s3 = models::sphere(3);
    s.case("s3 every perversity", check(dims(&s3, &Perversity::zero(&s3)), &[1, 0, 0, 1]));
    let s2 = models::sphere_facets(2);
    let sigma_s2 = models::suspension(4, &s2);
    for p in 0..=2 {
        let pv =
            Perversity::new(&sigma_s2, [("north".to_string(), p), ("south".to_string(), p)].into()).expect("labels");
        s.case(format!("sigma-s2 p={p}"), check(dims(&sigma_s2, &pv), &suspension_ih(&betti(&s2), p)));
        let pt = Perversity::new(&st, [("north".to_string(), p), ("south".to_string(), p)].into()).expect("labels");
        s.case(format!("sigma-t2 p={p}"), check(dims(&st, &pt), &suspension_ih(&bt, p)));
    }
    for name in ["torus", "genus-two", "projective-plane", "cylinder"] {
        let x = strat_model(name).expect("model");
        s.case(format!("{name} plain"), check(dims(&x, &Perversity::zero(&x)), &betti(x.simplices(x.dim()))));
    }
    s
}

fn weight_suite() -> SuiteResult {
    let mut s = SuiteResult::new(8, "weight-perversity");
    for (l, c, expected) in weight_table() {
        let got = weight_perversity_value(l, &c);
        s.case(format!("l={l} c={c}"), expect(got == expected, || format!("{got}, expected {expected}")));
    }
    s
}

fn signature_of(x: &StratifiedComplex) -> Result<(Option<i64>, usize, bool, RationalMatrix), String> {
    let r = image_pairing(&rel_abs(x)?).map_err(|e| e.to_string())?;
    Ok((r.signature(), r.dim(), r.nondegenerate, r.matrix))
}

fn signature_suite(cfg: &SuiteConfig) -> SuiteResult {
    let mut s = SuiteResult::new(9, "signature");
    let cp2 = models::cp2();
    let cp2_rev = StratifiedComplex::new(cp2.spec().reversed()).expect("reversed orientation is valid");
    let named: Vec<(&str, StratifiedComplex)> = vec![
        ("s4", models::sphere(4)),
        ("s2xs2", models::s2_times_s2()),
        ("cp2", cp2),
        ("cp2-reversed", cp2_rev),
        ("torus", models::torus()),
        ("genus-two", models::genus_two()),
        ("punctured-torus", models::punctured_torus()),
        ("punctured-genus-two", models::punctured_genus_two()),
    ];
    let results: Vec<_> = named.par_iter().map(|(n, x)| (*n, signature_of(x))).collect();
    let get = |name: &str| results.iter().find(|(n, _)| *n == name).map(|(_, r)| r.clone()).expect("named");
    let sig = |name: &str, want: i64| match get(name) {
        Ok((sig, _, _, _)) => expect(sig == Some(want), || format!("signature {sig:?}, expected {want}")),
        Err(e) => Some(e),
    };
    s.case("s4 signature 0", sig("s4", 0));
    s.case("s2xs2 signature 0", sig("s2xs2", 0));
    s.case(
        "cp2 signature ±1, reversed negated",
        match (get("cp2"), get("cp2-reversed")) {
            (Ok((a, _, _, ma)), Ok((b, _, _, mb))) => {
                expect(matches!(a, Some(1) | Some(-1)) && b == a.map(|v| -v) && mb == -&ma, || {
                    format!("signatures {a:?} and {b:?}")
                })
            }
            (Err(e), _) | (_, Err(e)) => Some(e),
        },
    );
    for (name, r) in &results {
        s.case(
            format!("{name} nondegenerate"),
            match r {
                Ok((_, dim, nondeg, _)) => {
                    expect(*dim == 0 || *nondeg, || format!("degenerate on a {dim}-dimensional image"))
                }
                Err(e) => Some(e.clone()),
            },
        );
    }
    let sigma_s3 = models::suspended_three_sphere();
    s.case(
        "sigma-s3 perverse signature 0",
        match perverse_signature(&sigma_s3, &Perversity::lower_middle(&sigma_s3)) {
            Ok(r) => expect(r.signature() == Some(0) && r.model, || format!("signature {:?}", r.signature())),
            Err(e) => Some(e.to_string()),
        },
    );
    let x = models::s2_times_s2();
    match rel_abs(&x) {
        Err(e) => s.case("s2xs2 basis changes", Some(e)),
        Ok(m) => {
            let reps = image_representatives(&m, 2);
            let base = pairing_report(&x, reps.clone(), false).map(|r| r.signature());
            let changed: Vec<_> = (0..BASIS_CHANGES)
                .into_par_iter()
                .map(|k| {
                    let c = random_invertible(&mut instance_rng(cfg.seed, 3 * STREAM + k), reps.cols());
                    pairing_report(&x, &reps * &c, false).map(|r| (r.signature(), r.nondegenerate))
                })
                .collect();
            for (k, r) in changed.into_iter().enumerate() {
                s.case(
                    format!("s2xs2 basis change {k}"),
                    match (&base, r) {
                        (Ok(b), Ok((sig, nondeg))) => expect(sig == *b && nondeg, || {
                            format!("signature {sig:?} vs {b:?}, nondegenerate {nondeg}")
                        }),
                        (Err(e), _) => Some(e.to_string()),
                        (_, Err(e)) => Some(e.to_string()),
                    },
                );
            }
        }
    }
    s
}

fn geometric_index() -> Vec<(String, Option<String>)> {
    ["tetrahedron", "torus", "cylinder", "disk", "punctured-torus"]
        .par_iter()
        .map(|name| {
            let x = strat_model(name).expect("model");
            let outcome = rel_abs(&x)
                .and_then(|m| IntermediateComplex::build(m.pair()).map_err(|e| e.to_string()))
                .and_then(|ic| {
                    let k = ic.index_even().map_err(|e| e.to_string())?;
                    Ok(expect(ic.invariants().all_hold() && k == ic.euler_characteristic(), || {
                        format!("index {k} but Euler characteristic {}", ic.euler_characteristic())
                    }))
                });
            (format!("{name} (geometric)"), outcome.unwrap_or_else(Some))
        })
        .collect()
}

fn model_round_trips() -> Vec<(String, Option<String>)> {
    MODEL_NAMES
        .par_iter()
        .map(|name| {
            let outcome = match emit_model(name) {
                Err(e) => Some(e.to_string()),
                Ok((ext, text)) => {
                    let again = match ext {
                        "strat" => parse_strat(&text).map(|x| crate::format::emit_strat(&x)),
                        "cplx" => parse_complex(&text).map(|c| emit_complex(&c)),
                        _ => parse_pair(&text).map(|p| emit_pair(&p)),
                    };
                    match again {
                        Ok(t) => expect(t == text, || "re-emitted text differs".into()),
                        Err(e) => Some(e.to_string()),
                    }
                }
            };
            (format!("model {name}"), outcome)
        })
        .collect()
}

/// Runs every suite. The result order and content depend only on `cfg`.
pub fn run_suites(cfg: &SuiteConfig) -> Vec<SuiteResult> {
    let pairs: Vec<PairOutcome> = (0..cfg.instances).into_par_iter().map(|i| pair_instance(cfg, i)).collect();
    let complexes: Vec<_> = (0..cfg.instances).into_par_iter().map(|i| complex_instance(cfg, i)).collect();
    let mirror_count = cfg.instances.div_ceil(5);
    let mirrors: Vec<_> = (0..mirror_count).into_par_iter().map(|i| mirror_instance(cfg, i)).collect();

    let mut intermediate = SuiteResult::new(1, "intermediate");
    let mut five_way = SuiteResult::new(2, "five-way");
    let mut friedrichs = SuiteResult::new(3, "friedrichs");
    let mut kodaira = SuiteResult::new(4, "kodaira");
    let mut mirror = SuiteResult::new(5, "mirror");
    let mut index = SuiteResult::new(10, "index");
    let mut round_trip = SuiteResult::new(11, "round-trip");
    for (i, p) in pairs.into_iter().enumerate() {
        let label = format!("pair {i}");
        intermediate.case(&label, p.intermediate);
        five_way.case(&label, p.five_way);
        friedrichs.case(&label, p.friedrichs);
        index.case(&label, p.index);
        if let Some(r) = p.round_trip {
            round_trip.case(&label, r);
        }
    }
    for (i, (k, r)) in complexes.into_iter().enumerate() {
        kodaira.case(format!("complex {i}"), k);
        if let Some(r) = r {
            round_trip.case(format!("complex {i}"), r);
        }
    }
    for (i, m) in mirrors.into_iter().enumerate() {
        mirror.case(format!("complementary {i}"), m);
    }
    for (label, outcome) in geometric_index() {
        index.case(label, outcome);
    }
    for (label, outcome) in model_round_trips() {
        round_trip.case(label, outcome);
    }
    vec![
        intermediate,
        five_way,
        friedrichs,
        kodaira,
        mirror,
        lefschetz_suite(),
        ih_suite(),
        weight_suite(),
        signature_suite(cfg),
        index,
        round_trip,
    ]
}

/// The `check` report: one table row per suite and one failure line per failed case.
pub fn check_report(cfg: &SuiteConfig) -> (Report, Vec<SuiteResult>) {
    let results = run_suites(cfg);
    let mut r = Report::new("check");
    r.field("seed", cfg.seed)
        .field("instances", cfg.instances)
        .field("max-len", cfg.spec.max_len)
        .field("max-dim", cfg.spec.max_dim);
    let rows = results
        .iter()
        .map(|s| {
            vec![
                s.criterion.to_string(),
                s.name.to_string(),
                s.cases.to_string(),
                s.failures.len().to_string(),
                if s.passed() { "pass" } else { "fail" }.to_string(),
            ]
        })
        .collect();
    r.table("suites", &["criterion", "suite", "cases", "failures", "result"], rows);
    for s in &results {
        for (case, message) in &s.failures {
            r.fail(format!("{} {case}: {message} (seed {})", s.name, cfg.seed));
        }
    }
    (r, results)
}
