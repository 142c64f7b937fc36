//! The analysis commands. Each takes parsed input and returns a [`Report`]; invalid input is
//! a [`CommandError`] (exit 1), failed invariants or oracle comparisons are report failures
//! (exit 2).

use std::collections::BTreeMap;
use std::str::FromStr;

use hcplx::complex::{circle_complex, FiniteComplex};
use hcplx::intermediate::IntermediateComplex;
use hcplx::linalg::{format_rational, parse_rational, q, Rational, RationalMatrix, Subspace};
use hcplx::models;
use hcplx::pairing::{image_pairing, perverse_signature, PairingReport, RelAbsPair};
use hcplx::pairs::{build_complementary, ComplexPair, LinkMaps};
use hcplx::strat::{duality_chi_report, intersection_homology, plain_betti, Perversity, StratifiedComplex};
use hcplx_oracle::Mat;
use thiserror::Error;

use crate::format::{emit_complex, emit_pair, emit_strat, PairFile};
use crate::report::{list, Report};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl ToString) -> CommandError {
    CommandError::Invalid(e.to_string())
}

/// A perversity selection from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerversityChoice {
    Zero,
    Top,
    LowerMiddle,
    UpperMiddle,
    /// Explicit `label=value` pairs.
    Table(BTreeMap<String, i64>),
}

/// Splits `a=x,b=y` into pairs.
fn key_values(s: &str) -> Result<Vec<(String, String)>, String> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected label=value, found {part:?}"))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

impl FromStr for PerversityChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "zero" => Self::Zero,
            "top" => Self::Top,
            "lower-middle" => Self::LowerMiddle,
            "upper-middle" => Self::UpperMiddle,
            table => {
                let mut values = BTreeMap::new();
                for (k, v) in key_values(table)? {
                    let v: i64 = v.parse().map_err(|_| format!("perversity value for {k:?} is not an integer"))?;
                    values.insert(k, v);
                }
                if values.is_empty() {
                    return Err("expected zero, top, lower-middle, upper-middle or label=value,…".into());
                }
                Self::Table(values)
            }
        })
    }
}

/// Parses a weight table `label=c,…` with rational `c`.
pub fn parse_weights(s: &str) -> Result<Vec<(String, Rational)>, String> {
    key_values(s)?
        .into_iter()
        .map(|(k, v)| {
            let c = parse_rational(&v).map_err(|_| format!("weight for {k:?} is not a rational"))?;
            Ok((k, c))
        })
        .collect()
}

/// The perversity for a stratified complex: explicit weights win, then an explicit choice,
/// then weights declared in the file, then lower-middle.
pub fn resolve_perversity(
    x: &StratifiedComplex,
    choice: Option<&PerversityChoice>,
    weights: Option<&[(String, Rational)]>,
) -> Result<Perversity, CommandError> {
    if let Some(w) = weights {
        return Perversity::from_weights(x, w).map_err(invalid);
    }
    match choice {
        Some(PerversityChoice::Zero) => Ok(Perversity::zero(x)),
        Some(PerversityChoice::Top) => Ok(Perversity::top(x)),
        Some(PerversityChoice::LowerMiddle) => Ok(Perversity::lower_middle(x)),
        Some(PerversityChoice::UpperMiddle) => Ok(Perversity::upper_middle(x)),
        Some(PerversityChoice::Table(values)) => Perversity::new(x, values.clone()).map_err(invalid),
        None if !x.weights().is_empty() => Perversity::from_weights(x, x.weights()).map_err(invalid),
        None => Ok(Perversity::lower_middle(x)),
    }
}

fn perversity_text(p: &Perversity) -> String {
    if p.values().is_empty() {
        return "-".into();
    }
    p.values().iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

fn flag(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

/// Rows of a matrix in the oracle's representation.
pub fn to_oracle(m: &RationalMatrix) -> Mat {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Image dimensions from the independent rank pipeline.
pub fn oracle_image_dims(p: &ComplexPair) -> Vec<usize> {
    let l = p.l();
    let diffs: Vec<Mat> = l.differentials().iter().map(to_oracle).collect();
    let doms: Vec<(Mat, usize)> = p.domains().iter().map(|v| (to_oracle(v.basis()), v.dim())).collect();
    hcplx_oracle::image_cohomology_dims(&l.dims(), &diffs, &doms)
}

/// Cohomology dimensions of a full-domain complex from the rank oracle.
pub fn oracle_cohomology_dims(c: &FiniteComplex) -> Vec<usize> {
    let diffs: Vec<Mat> = c.differentials().iter().map(to_oracle).collect();
    hcplx_oracle::cohomology_dims(&c.dims(), &diffs)
}

/// `analyze-complex`: cohomology, harmonic spaces and the Kodaira decomposition.
pub fn analyze_complex(c: &FiniteComplex) -> Result<Report, CommandError> {
    c.validate().map_err(invalid)?;
    let coh = c.cohomology().map_err(invalid)?;
    let mut r = Report::new("analyze-complex");
    r.field("length", c.len()).field("dims", list(&c.dims())).field("full-domains", flag(c.has_full_domains()));
    let rows = coh
        .degrees
        .iter()
        .map(|d| {
            vec![
                d.degree.to_string(),
                d.dim.to_string(),
                d.harmonic.dim().to_string(),
                d.range.dim().to_string(),
                d.corange.dim().to_string(),
                flag(d.kodaira_exact),
            ]
        })
        .collect();
    r.table("cohomology", &["degree", "H", "harmonic", "range", "corange", "kodaira"], rows);
    r.field("cohomology", list(&coh.dims())).field("euler", coh.euler_characteristic());
    for d in &coh.degrees {
        r.require(
            d.kodaira_exact,
            format!("degree {}: Kodaira decomposition is not an orthogonal direct sum", d.degree),
        );
        r.require(d.dim == d.harmonic.dim(), format!("degree {}: dim H != dim harmonic", d.degree));
    }
    if c.has_full_domains() {
        let oracle = oracle_cohomology_dims(c);
        r.field("oracle", list(&oracle));
        r.require(oracle == coh.dims(), "cohomology differs from the rank oracle");
    }
    Ok(r)
}

/// `analyze-pair`: image cohomology, the five-way equivalence and the Friedrichs identities.
pub fn analyze_pair(file: &PairFile) -> Result<Report, CommandError> {
    let p = &file.pair;
    let image = p.image_cohomology().map_err(invalid)?;
    let mut r = Report::new("analyze-pair");
    r.field("length", p.len()).field("dims", list(&p.l().dims()));
    r.field("domain-dims", list(&p.domains().iter().map(Subspace::dim).collect::<Vec<_>>()));
    let mut rows = Vec::new();
    for d in &image.degrees {
        let five = p.five_way_check(d.degree).map_err(invalid)?;
        let proj = p.projection_checks(d.degree);
        let bits: String = five.conditions.iter().map(|&c| if c { '1' } else { '0' }).collect();
        rows.push(vec![
            d.degree.to_string(),
            d.dim.to_string(),
            d.dim_d.to_string(),
            d.dim_l.to_string(),
            flag(d.inject),
            flag(d.surject),
            bits,
            flag(proj.adjoint && proj.pi3_vanishes),
        ]);
        r.require(
            five.all_equal(),
            format!("degree {}: five-way conditions disagree ({:?})", d.degree, five.conditions),
        );
        r.require(proj.adjoint, format!("degree {}: projections are not adjoint", d.degree));
        r.require(proj.pi3_vanishes, format!("degree {}: third projection does not vanish", d.degree));
    }
    r.table("image", &["degree", "image", "H(D)", "H(L)", "inject", "surject", "five-way", "projections"], rows);
    let dims = image.dims();
    let oracle = oracle_image_dims(p);
    r.field("image", list(&dims)).field("oracle", list(&oracle)).field("chi", image.chi);
    r.require(dims == oracle, "image dimensions differ from the rank oracle");
    let f = p.friedrichs_identities();
    r.field("friedrichs-kernel", flag(f.kernel_identity))
        .field("friedrichs-kernel-dims", list(&f.kernel_dims))
        .field("friedrichs-range", flag(f.range_identity))
        .field("friedrichs-range-dims", format!("{} {}", f.range_dim, f.max_range_dim));
    r.require(f.kernel_identity, "Ker(A_max A_min) differs from the minimal harmonic space");
    if let Some(links) = &file.links {
        let rel = p.check_related(links).map_err(invalid)?;
        r.field("related", flag(rel.related)).field("complementary", flag(rel.complementary));
        if rel.complementary {
            let hd = p.d().cohomology().map_err(invalid)?.harmonic_dims();
            let mut hl = p.l().cohomology().map_err(invalid)?.harmonic_dims();
            hl.reverse();
            r.field("mirror", flag(hd == hl));
            r.require(hd == hl, "complementary harmonic dimensions are not mirrored");
        }
    }
    Ok(r)
}

/// `build-intermediate`: the complex `P` between `D` and `L`, its invariants and index.
pub fn build_intermediate(file: &PairFile) -> Result<Report, CommandError> {
    let ic = IntermediateComplex::build(&file.pair).map_err(invalid)?;
    let inv = ic.invariants();
    let mut r = Report::new("build-intermediate");
    r.field("length", file.pair.len()).field("dims", list(&file.pair.l().dims()));
    let rows = (0..=file.pair.len())
        .map(|i| {
            vec![
                i.to_string(),
                file.pair.domain(i).dim().to_string(),
                ic.b()[i].dim().to_string(),
                flag(ic.trace()[i].shortcut),
                flag(inv.sandwich[i]),
                flag(inv.kernel[i]),
                flag(inv.range[i]),
                flag(inv.square_zero[i]),
            ]
        })
        .collect();
    r.table("domains", &["degree", "V", "B", "shortcut", "sandwich", "kernel", "range", "square-zero"], rows);
    let dims = ic.cohomology_dims();
    let image = file.pair.image_dims();
    let oracle = oracle_image_dims(&file.pair);
    let index = ic.index_even().map_err(invalid)?;
    r.field("cohomology", list(&dims))
        .field("image", list(&image))
        .field("oracle", list(&oracle))
        .field("index", index)
        .field("euler", ic.euler_characteristic());
    r.require(inv.all_hold(), "an intermediate-complex invariant fails");
    r.require(ic.verify_against_oracle().is_ok() && dims == oracle, "dim H(P) differs from the image dimensions");
    r.require(index == ic.euler_characteristic(), "index differs from the Euler characteristic");
    Ok(r)
}

/// `ih`: intersection homology, the image for the dual perversity, duality and `χ`.
pub fn ih(x: &StratifiedComplex, p: &Perversity) -> Result<Report, CommandError> {
    let data = intersection_homology(x, p).map_err(invalid)?;
    let mut r = Report::new("ih");
    r.field("dimension", x.dim())
        .field("strata", list(&x.strata().iter().map(|s| format!("{}:{}", s.label, s.codim)).collect::<Vec<_>>()))
        .field("perversity", perversity_text(p))
        .field("ih", list(&data.dims))
        .field("ih-euler", data.euler_characteristic());
    if x.strata().is_empty() {
        let betti = hcplx_oracle::betti(x.simplices(x.dim()));
        r.field("oracle", list(&betti));
        r.require(data.dims == betti && plain_betti(x) == betti, "homology differs from the simplicial oracle");
    }
    match duality_chi_report(x, p) {
        Ok(d) => {
            r.field("orientable", "yes")
                .field("dual", perversity_text(&d.q))
                .field("ih-dual", list(&d.ih_q))
                .field("image-direction", if d.p_is_source { "p->dual" } else { "dual->p" })
                .field("image", list(&d.image))
                .field("hypotheses", flag(d.hypotheses_hold()))
                .field("duality", list(&d.duality.iter().map(|&b| flag(b)).collect::<Vec<_>>()))
                .field("chi", d.chi)
                .field("chi-expected", d.chi_expected)
                .field("chi-holds", flag(d.chi_holds))
                .field("chi-parity-holds", flag(d.chi_parity_holds))
                .field("regular-betti", list(&d.regular_betti))
                .field("compact", list(&d.compact_dims))
                .field("compact-image", list(&d.compact_image))
                .field("betti-bound", list(&d.betti_bound.iter().map(|&b| flag(b)).collect::<Vec<_>>()))
                .field(
                    "betti-bound-improved",
                    list(&d.betti_bound_improved.iter().map(|b| b.map_or("-".into(), flag)).collect::<Vec<_>>()),
                )
                .field("chi-regular-bound", d.chi_regular_bound.map_or("-".into(), flag));
            if d.hypotheses_hold() {
                r.require(d.duality.iter().all(|&b| b), "image duality fails although the hypotheses hold");
            }
        }
        Err(e) => {
            r.field("orientable", "no").field("duality", format!("unavailable: {e}"));
        }
    }
    Ok(r)
}

fn pairing_fields(r: &mut Report, rep: &PairingReport) {
    r.field("degree", rep.degree).field("image-dim", rep.dim());
    let rows = (0..rep.matrix.rows())
        .map(|i| std::iter::once(i.to_string()).chain(rep.matrix.row(i).iter().map(format_rational)).collect())
        .collect();
    let headers: Vec<String> =
        std::iter::once("row".to_string()).chain((0..rep.matrix.cols()).map(|j| j.to_string())).collect();
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    r.table("pairing", &headers, rows);
    r.field("symmetric", flag(rep.symmetric)).field("nondegenerate", flag(rep.nondegenerate));
    match rep.inertia {
        Some(i) => r.field("inertia", format!("{} {} {}", i.pos, i.neg, i.zero)).field("signature", i.signature()),
        None => r.field("inertia", "-").field("signature", "-"),
    };
    r.field("model", flag(rep.model));
}

/// `signature`: the middle-degree pairing. Complexes without singular strata use the
/// relative-to-absolute image; otherwise the perverse image for `p` and its dual.
pub fn signature(x: &StratifiedComplex, p: &Perversity) -> Result<Report, CommandError> {
    let rep = if x.strata().is_empty() {
        image_pairing(&RelAbsPair::new(x.clone()).map_err(invalid)?).map_err(invalid)?
    } else {
        perverse_signature(x, p).map_err(invalid)?
    };
    let mut r = Report::new("signature");
    r.field("dimension", x.dim()).field("perversity", perversity_text(p));
    pairing_fields(&mut r, &rep);
    r.require(rep.nondegenerate, "the pairing is degenerate on a nonzero image");
    if x.dim() % 4 == 0 {
        r.require(rep.symmetric, "the pairing is not symmetric");
    }
    Ok(r)
}

/// Names accepted by `emit-model`.
pub const MODEL_NAMES: &[&str] = &[
    "point",
    "circle",
    "hand-pair",
    "linked-pair",
    "tetrahedron",
    "s3",
    "s4",
    "torus",
    "projective-plane",
    "mobius-band",
    "cylinder",
    "disk",
    "punctured-torus",
    "genus-two",
    "punctured-genus-two",
    "sigma-s2",
    "sigma-t2",
    "sigma-s3",
    "s2xs2",
    "cp2",
];

/// A built-in stratified model by name.
pub fn strat_model(name: &str) -> Option<StratifiedComplex> {
    Some(match name {
        "tetrahedron" => models::sphere(2),
        "s3" => models::sphere(3),
        "s4" => models::sphere(4),
        "torus" => models::torus(),
        "projective-plane" => models::projective_plane(),
        "mobius-band" => models::mobius_band(),
        "cylinder" => models::cylinder(),
        "disk" => models::disk(),
        "punctured-torus" => models::punctured_torus(),
        "genus-two" => models::genus_two(),
        "punctured-genus-two" => models::punctured_genus_two(),
        "sigma-s2" => models::suspension(4, &models::sphere_facets(2)),
        "sigma-t2" => models::suspended_torus(),
        "sigma-s3" => models::suspended_three_sphere(),
        "s2xs2" => models::s2_times_s2(),
        "cp2" => models::cp2(),
        _ => return None,
    })
}

/// `n = 1`, `H_0 = Q`, `H_1 = Q²`, `L_0 = (1, 0)ᵀ`, `V_0 = 0`, `V_1 = Q²`.
pub fn hand_pair() -> ComplexPair {
    let l = FiniteComplex::standard(vec![RationalMatrix::from_ints(2, 1, &[1, 0])], &[1, 2]).expect("shapes");
    ComplexPair::new(l, vec![Subspace::zero(1), Subspace::full(2)]).expect("valid pair")
}

/// `D_0 = (2)` on `Q → Q` and its complementary partner under identity links.
pub fn linked_pair() -> PairFile {
    let d = FiniteComplex::standard(vec![RationalMatrix::from_ints(1, 1, &[2])], &[1, 1]).expect("shapes");
    let (l, links) = build_complementary(&d, &LinkMaps::identity(&[1, 1])).expect("links");
    PairFile { pair: ComplexPair::diagonal(l).expect("full domains"), links: Some(links) }
}

/// Canonical text of a built-in model and its file extension.
pub fn emit_model(name: &str) -> Result<(&'static str, String), CommandError> {
    if let Some(x) = strat_model(name) {
        return Ok(("strat", emit_strat(&x)));
    }
    match name {
        "point" => {
            let c = FiniteComplex::standard(Vec::new(), &[1]).expect("one space");
            Ok(("cplx", emit_complex(&c)))
        }
        "circle" => Ok(("cplx", emit_complex(&circle_complex()))),
        "hand-pair" => Ok(("pair", emit_pair(&PairFile { pair: hand_pair(), links: None }))),
        "linked-pair" => Ok(("pair", emit_pair(&linked_pair()))),
        _ => Err(invalid(format!("unknown model {name:?}; known models: {}", MODEL_NAMES.join(", ")))),
    }
}

/// The perversity `p_g` table: `(l, c, hand value)` over all three branches of the formula.
pub fn weight_table() -> Vec<(usize, Rational, i64)> {
    let quarter = Rational::new(1.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    vec![
        (0, quarter.clone(), 0),
        (0, q(2), 0),
        (1, quarter.clone(), 2),
        (1, half.clone(), 1),
        (1, q(1), 0),
        (1, q(2), 0),
        (2, quarter, 2),
        (2, half.clone(), 1),
        (2, q(1), 1),
        (2, q(2), 1),
        (3, half, 2),
        (3, q(1), 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use hcplx::strat::weight_perversity_value;

    #[test]
    fn perversity_choices_parse() {
        assert_eq!("lower-middle".parse::<PerversityChoice>().unwrap(), PerversityChoice::LowerMiddle);
        let t: PerversityChoice = "north=0, south=1".parse().unwrap();
        let PerversityChoice::Table(values) = t else { panic!("table expected") };
        assert_eq!(values["south"], 1);
        assert!("north=x".parse::<PerversityChoice>().is_err());
        assert!("".parse::<PerversityChoice>().is_err());
        assert_eq!(parse_weights("a=1/2").unwrap(), vec![("a".to_string(), Rational::new(1.into(), 2.into()))]);
    }

    #[test]
    fn weight_table_matches_formula() {
        for (l, c, expected) in weight_table() {
            assert_eq!(weight_perversity_value(l, &c), expected, "l = {l}, c = {c}");
        }
    }

    #[test]
    fn circle_report() {
        let r = analyze_complex(&circle_complex()).unwrap();
        assert!(r.passed());
        assert_eq!(r.get("cohomology"), Some("1 1"));
    }

    #[test]
    fn explicit_weights_select_pg() {
        let x = models::suspended_torus();
        let w = parse_weights("north=1/4,south=1/4").unwrap();
        let p = resolve_perversity(&x, Some(&PerversityChoice::Zero), Some(&w)).unwrap();
        assert_eq!(p.value("north"), Some(weight_perversity_value(2, &w[0].1)));
    }

    #[test]
    fn every_model_emits() {
        for name in MODEL_NAMES {
            emit_model(name).unwrap();
        }
        assert!(emit_model("klein").is_err());
    }
}
