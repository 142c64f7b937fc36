//! Text formats for complexes (`.cplx`), pairs (`.pair`) and stratified complexes (`.strat`).
//!
//! All formats are line oriented; `#` starts a comment and blank lines are ignored. Matrix
//! rows and vectors are written one per line after a `|` marker, entries separated by
//! whitespace, each an integer or `p/q`.
//!
//! ```text
//! cplx 1                    pair 1                   strat 1
//! length 1                  length 1                 vertices 4
//! dims 1 1                  dims 1 2                 kind closed
//! diff 0                    diff 0                   simplex + 1 2 3
//! | 0                       | 1                      simplex - 0 2 3
//! end                       | 0                      stratum north 0
//!                           domain 0 0               singular north 3
//!                           end                      weight north 1/2
//!                                                    end
//! ```
//!
//! * `.cplx`: `length n`, `dims d_0 … d_n`, optional `gram i` (`d_i` rows), `diff i`
//!   (`d_{i+1}` rows of `d_i` entries) for every `i < n`, optional `domain i k` followed by
//!   `k` basis vectors. Missing grams are standard; missing domains are full.
//! * `.pair`: the same body describing `L`, where `domain i k` gives the inner domains
//!   `V_i`; optional `phi i` (`d_{n−i}` rows, for every `i ≤ n`) and `constants c_0 …
//!   c_{n−1}` give link maps.
//! * `.strat`: `vertices N`, optional `kind closed|boundary`, `simplex ± v…` oriented
//!   generators (sign relative to the listed order), `stratum label dim`, `singular label
//!   v…`, optional `weight label c`.
//!
//! Emitting writes the canonical form: grams only when non-standard, domains only when
//! proper and as reduced echelon bases, simplices in sorted vertex order.

use std::fmt::Write as _;

use hcplx::complex::FiniteComplex;
use hcplx::linalg::{format_rational, parse_rational, InnerProduct, Rational, RationalMatrix, Subspace};
use hcplx::pairs::{ComplexPair, LinkMaps};
use hcplx::strat::{ComplexKind, StratSpec, StratifiedComplex};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed pair file: the pair and its optional link maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFile {
    pub pair: ComplexPair,
    pub links: Option<LinkMaps>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.chars().count())
    }

    fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.len().cmp(&n) {
            std::cmp::Ordering::Equal => Ok(()),
            std::cmp::Ordering::Less => Err(self.error(self.end_column(), format!("expected {} fields", n))),
            std::cmp::Ordering::Greater => Err(self.error(self.tokens[n].column, "unexpected trailing field")),
        }
    }

    fn usize_at(&self, k: usize) -> Result<usize, ParseError> {
        let t = self.tokens.get(k).ok_or_else(|| self.error(self.end_column(), "missing integer"))?;
        t.text.parse().map_err(|_| self.error(t.column, format!("expected a nonnegative integer, found {:?}", t.text)))
    }

    fn rational_at(&self, k: usize) -> Result<Rational, ParseError> {
        let t = &self.tokens[k];
        parse_rational(t.text).map_err(|_| self.error(t.column, format!("expected a rational p/q, found {:?}", t.text)))
    }
}

fn tokenize(input: &str) -> Vec<Line<'_>> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut column = 0;
            let mut start: Option<(usize, usize)> = None; // (byte, column)
            for (byte, ch) in content.char_indices() {
                column += 1;
                if ch.is_whitespace() {
                    if let Some((b, c)) = start.take() {
                        tokens.push(Token { text: &content[b..byte], column: c });
                    }
                } else if start.is_none() {
                    start = Some((byte, column));
                }
            }
            if let Some((b, c)) = start {
                tokens.push(Token { text: &content[b..], column: c });
            }
            (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        let last_line = input.lines().count().max(1);
        Self { lines: tokenize(input), pos: 0, last_line }
    }

    fn next(&mut self) -> Result<&Line<'a>, ParseError> {
        let eof = ParseError { line: self.last_line, column: 1, message: "unexpected end of input".into() };
        let line = self.lines.get(self.pos).ok_or(eof)?;
        self.pos += 1;
        Ok(line)
    }

    fn header(&mut self, magic: &str) -> Result<(), ParseError> {
        let line = self.next()?;
        if line.keyword() != magic {
            return Err(line.error(1, format!("expected header \"{magic} 1\"")));
        }
        line.expect_len(2)?;
        if line.tokens[1].text != "1" {
            return Err(line.error(line.tokens[1].column, "unsupported format version"));
        }
        Ok(())
    }

    /// One `|` row with exactly `cols` entries.
    fn row(&mut self, cols: usize) -> Result<Vec<Rational>, ParseError> {
        let line = self.next()?;
        if line.keyword() != "|" {
            return Err(line.error(line.tokens[0].column, "expected a row starting with '|'"));
        }
        line.expect_len(cols + 1)?;
        (1..=cols).map(|k| line.rational_at(k)).collect()
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Result<RationalMatrix, ParseError> {
        let data = (0..rows).map(|_| self.row(cols)).collect::<Result<Vec<_>, _>>()?;
        Ok(RationalMatrix::from_rows(data, cols).expect("rows have the declared length"))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if let Some(line) = self.lines.get(self.pos) {
            return Err(line.error(1, "content after \"end\""));
        }
        Ok(())
    }
}

/// The common body of `.cplx` and `.pair` files.
struct Body {
    dims: Vec<usize>,
    grams: Vec<Option<RationalMatrix>>,
    diffs: Vec<Option<RationalMatrix>>,
    domains: Vec<Option<Subspace>>,
    phis: Vec<Option<RationalMatrix>>,
    constants: Option<Vec<Rational>>,
}

fn parse_body(cur: &mut Cursor<'_>, allow_links: bool) -> Result<(Body, usize), ParseError> {
    let line = cur.next()?;
    if line.keyword() != "length" {
        return Err(line.error(1, "expected \"length n\""));
    }
    line.expect_len(2)?;
    let n = line.usize_at(1)?;
    let header_line = line.number;
    let line = cur.next()?;
    if line.keyword() != "dims" {
        return Err(line.error(1, "expected \"dims d_0 … d_n\""));
    }
    line.expect_len(n + 2)?;
    let dims: Vec<usize> = (1..=n + 1).map(|k| line.usize_at(k)).collect::<Result<_, _>>()?;
    let mut body = Body {
        grams: vec![None; n + 1],
        diffs: vec![None; n],
        domains: vec![None; n + 1],
        phis: vec![None; n + 1],
        constants: None,
        dims: dims.clone(),
    };
    loop {
        let line = cur.next()?;
        let (number, keyword) = (line.number, line.keyword());
        let degree_at = |line: &Line<'_>, limit: usize| -> Result<usize, ParseError> {
            let i = line.usize_at(1)?;
            if i >= limit {
                return Err(line.error(line.tokens[1].column, format!("degree {i} out of range")));
            }
            Ok(i)
        };
        match keyword {
            "end" => {
                line.expect_len(1)?;
                break;
            }
            "gram" => {
                line.expect_len(2)?;
                let i = degree_at(line, n + 1)?;
                let dup = body.grams[i].is_some();
                let col = line.tokens[1].column;
                let err = line.error(col, format!("duplicate gram {i}"));
                if dup {
                    return Err(err);
                }
                let g = cur.matrix(dims[i], dims[i])?;
                body.grams[i] = Some(g);
            }
            "diff" => {
                line.expect_len(2)?;
                let i = degree_at(line, n)?;
                if body.diffs[i].is_some() {
                    return Err(line.error(line.tokens[1].column, format!("duplicate diff {i}")));
                }
                let m = cur.matrix(dims[i + 1], dims[i])?;
                body.diffs[i] = Some(m);
            }
            "domain" => {
                line.expect_len(3)?;
                let i = degree_at(line, n + 1)?;
                let k = line.usize_at(2)?;
                if body.domains[i].is_some() {
                    return Err(line.error(line.tokens[1].column, format!("duplicate domain {i}")));
                }
                let vectors = (0..k).map(|_| cur.row(dims[i])).collect::<Result<Vec<_>, _>>()?;
                body.domains[i] = Some(Subspace::from_vectors(dims[i], &vectors));
            }
            "phi" if allow_links => {
                line.expect_len(2)?;
                let i = degree_at(line, n + 1)?;
                if body.phis[i].is_some() {
                    return Err(line.error(line.tokens[1].column, format!("duplicate phi {i}")));
                }
                let m = cur.matrix(dims[n - i], dims[i])?;
                body.phis[i] = Some(m);
            }
            "constants" if allow_links => {
                line.expect_len(n + 1)?;
                body.constants = Some((1..=n).map(|k| line.rational_at(k)).collect::<Result<_, _>>()?);
            }
            other => {
                return Err(ParseError { line: number, column: 1, message: format!("unknown keyword {other:?}") });
            }
        }
    }
    cur.finish()?;
    Ok((body, header_line))
}

fn build_complex(body: &Body, header_line: usize, with_domains: bool) -> Result<FiniteComplex, ParseError> {
    let at = |message: String| ParseError { line: header_line, column: 1, message };
    let n = body.dims.len() - 1;
    let mut spaces = Vec::with_capacity(n + 1);
    for (i, g) in body.grams.iter().enumerate() {
        spaces.push(match g {
            None => InnerProduct::standard(body.dims[i]),
            Some(g) => InnerProduct::new(g.clone()).map_err(|e| at(format!("gram {i}: {e}")))?,
        });
    }
    let diffs = body
        .diffs
        .iter()
        .enumerate()
        .map(|(i, d)| d.clone().ok_or_else(|| at(format!("missing diff {i}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let domains = with_domains.then(|| {
        body.domains.iter().zip(&body.dims).map(|(d, &k)| d.clone().unwrap_or_else(|| Subspace::full(k))).collect()
    });
    FiniteComplex::new(spaces, diffs, domains).map_err(|e| at(e.to_string()))
}

/// Parses a `.cplx` file. The complex axioms are checked by the caller.
pub fn parse_complex(input: &str) -> Result<FiniteComplex, ParseError> {
    let mut cur = Cursor::new(input);
    cur.header("cplx")?;
    let (body, header_line) = parse_body(&mut cur, false)?;
    build_complex(&body, header_line, true)
}

/// Parses and validates a `.pair` file.
pub fn parse_pair(input: &str) -> Result<PairFile, ParseError> {
    let mut cur = Cursor::new(input);
    cur.header("pair")?;
    let (body, header_line) = parse_body(&mut cur, true)?;
    let at = |message: String| ParseError { line: header_line, column: 1, message };
    let l = build_complex(&body, header_line, false)?;
    let domains =
        body.domains.iter().zip(&body.dims).map(|(d, &k)| d.clone().unwrap_or_else(|| Subspace::full(k))).collect();
    let pair = ComplexPair::new(l, domains).map_err(|e| at(e.to_string()))?;
    let any_phi = body.phis.iter().any(Option::is_some);
    let links = match (any_phi, body.constants) {
        (false, None) => None,
        (true, Some(constants)) => {
            let maps = body
                .phis
                .iter()
                .enumerate()
                .map(|(i, m)| m.clone().ok_or_else(|| at(format!("missing phi {i}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Some(LinkMaps { maps, constants })
        }
        (true, None) => return Err(at("link maps given without \"constants\"".into())),
        (false, Some(_)) => return Err(at("\"constants\" given without link maps".into())),
    };
    Ok(PairFile { pair, links })
}

/// Parses a `.strat` file into a spec (validation is [`StratifiedComplex::new`]).
pub fn parse_strat_spec(input: &str) -> Result<StratSpec, ParseError> {
    let mut cur = Cursor::new(input);
    cur.header("strat")?;
    let line = cur.next()?;
    if line.keyword() != "vertices" {
        return Err(line.error(1, "expected \"vertices N\""));
    }
    line.expect_len(2)?;
    let mut spec = StratSpec {
        vertices: line.usize_at(1)?,
        kind: ComplexKind::Closed,
        simplices: Vec::new(),
        strata: Vec::new(),
        singular: Vec::new(),
        weights: Vec::new(),
    };
    let vertex_list = |line: &Line<'_>, from: usize| -> Result<Vec<usize>, ParseError> {
        if line.tokens.len() <= from {
            return Err(line.error(line.end_column(), "expected at least one vertex"));
        }
        (from..line.tokens.len()).map(|k| line.usize_at(k)).collect()
    };
    loop {
        let line = cur.next()?;
        match line.keyword() {
            "end" => {
                line.expect_len(1)?;
                break;
            }
            "kind" => {
                line.expect_len(2)?;
                spec.kind = match line.tokens[1].text {
                    "closed" => ComplexKind::Closed,
                    "boundary" => ComplexKind::Boundary,
                    other => return Err(line.error(line.tokens[1].column, format!("unknown kind {other:?}"))),
                };
            }
            "simplex" => {
                let sign = match line.tokens.get(1).map(|t| t.text) {
                    Some("+") => 1,
                    Some("-") => -1,
                    _ => {
                        return Err(line
                            .error(line.tokens.get(1).map_or(line.end_column(), |t| t.column), "expected sign + or -"))
                    }
                };
                spec.simplices.push((sign, vertex_list(line, 2)?));
            }
            "stratum" => {
                line.expect_len(3)?;
                spec.strata.push((line.tokens[1].text.to_string(), line.usize_at(2)?));
            }
            "singular" => {
                if line.tokens.len() < 2 {
                    return Err(line.error(line.end_column(), "expected a stratum label"));
                }
                spec.singular.push((line.tokens[1].text.to_string(), vertex_list(line, 2)?));
            }
            "weight" => {
                line.expect_len(3)?;
                spec.weights.push((line.tokens[1].text.to_string(), line.rational_at(2)?));
            }
            other => return Err(line.error(1, format!("unknown keyword {other:?}"))),
        }
    }
    cur.finish()?;
    Ok(spec)
}

/// Parses and validates a `.strat` file.
pub fn parse_strat(input: &str) -> Result<StratifiedComplex, ParseError> {
    let spec = parse_strat_spec(input)?;
    StratifiedComplex::new(spec).map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })
}

fn write_row(out: &mut String, row: &[Rational]) {
    out.push('|');
    for x in row {
        out.push(' ');
        out.push_str(&format_rational(x));
    }
    out.push('\n');
}

fn write_matrix(out: &mut String, m: &RationalMatrix) {
    for i in 0..m.rows() {
        write_row(out, m.row(i));
    }
}

fn write_body(out: &mut String, c: &FiniteComplex, domains: &[Subspace]) {
    let n = c.len();
    let dims = c.dims();
    writeln!(out, "length {n}").unwrap();
    writeln!(out, "dims {}", dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).unwrap();
    for i in 0..=n {
        if !c.space(i).is_standard() {
            writeln!(out, "gram {i}").unwrap();
            write_matrix(out, c.space(i).gram());
        }
    }
    for i in 0..n {
        writeln!(out, "diff {i}").unwrap();
        write_matrix(out, c.differential(i));
    }
    for (i, d) in domains.iter().enumerate() {
        if !d.is_full() {
            writeln!(out, "domain {i} {}", d.dim()).unwrap();
            for v in d.vectors() {
                write_row(out, &v);
            }
        }
    }
}

/// Canonical `.cplx` text.
pub fn emit_complex(c: &FiniteComplex) -> String {
    let mut out = String::from("cplx 1\n");
    write_body(&mut out, c, c.domains());
    out.push_str("end\n");
    out
}

/// Canonical `.pair` text.
pub fn emit_pair(p: &PairFile) -> String {
    let mut out = String::from("pair 1\n");
    write_body(&mut out, p.pair.l(), p.pair.domains());
    if let Some(links) = &p.links {
        for (i, m) in links.maps.iter().enumerate() {
            writeln!(out, "phi {i}").unwrap();
            write_matrix(&mut out, m);
        }
        let cs: Vec<String> = links.constants.iter().map(format_rational).collect();
        writeln!(out, "constants {}", cs.join(" ")).unwrap();
    }
    out.push_str("end\n");
    out
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Canonical `.strat` text of a spec.
pub fn emit_strat_spec(spec: &StratSpec) -> String {
    let spec = spec.canonical();
    let mut out = String::from("strat 1\n");
    writeln!(out, "vertices {}", spec.vertices).unwrap();
    let kind = match spec.kind {
        ComplexKind::Closed => "closed",
        ComplexKind::Boundary => "boundary",
    };
    writeln!(out, "kind {kind}").unwrap();
    for (sign, vs) in &spec.simplices {
        writeln!(out, "simplex {} {}", if *sign > 0 { '+' } else { '-' }, join(vs)).unwrap();
    }
    for (label, dim) in &spec.strata {
        writeln!(out, "stratum {label} {dim}").unwrap();
    }
    for (label, vs) in &spec.singular {
        writeln!(out, "singular {label} {}", join(vs)).unwrap();
    }
    for (label, c) in &spec.weights {
        writeln!(out, "weight {label} {}", format_rational(c)).unwrap();
    }
    out.push_str("end\n");
    out
}

pub fn emit_strat(x: &StratifiedComplex) -> String {
    emit_strat_spec(x.spec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hcplx::complex::circle_complex;

    #[test]
    fn minimal_complex() {
        let c = parse_complex("cplx 1\nlength 0\ndims 1\nend\n").unwrap();
        assert_eq!(c.dims(), vec![1]);
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn circle_round_trip() {
        let text = emit_complex(&circle_complex());
        let c = parse_complex(&text).unwrap();
        assert_eq!(c, circle_complex());
        assert_eq!(emit_complex(&c), text);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_complex("cplx 1\nlength 1\ndims 1 1\ndiff 0\n| x\nend\n").unwrap_err();
        assert_eq!((err.line, err.column), (5, 3));
        let err = parse_complex("cplx 1\nlength 1\ndims 1 1\nbogus\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 1));
        let err = parse_complex("cplx 1\nlength 1\n").unwrap_err();
        assert!(err.message.contains("end of input"));
    }

    #[test]
    fn tetrahedron_strat() {
        let text = "strat 1\nvertices 4\n# boundary of a tetrahedron\nsimplex + 1 2 3\nsimplex - 0 2 3\nsimplex + 0 1 3\nsimplex - 0 1 2\nend\n";
        let x = parse_strat(text).unwrap();
        assert_eq!(x.vertex_count(), 4);
        assert_eq!(x.simplices(2).len(), 4);
        assert!(x.declared_is_coherent());
        let again = parse_strat(&emit_strat(&x)).unwrap();
        assert_eq!(again.spec(), x.spec());
    }
}
