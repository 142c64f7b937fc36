use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;

use super::StratError;
use crate::linalg::{Rational, RationalMatrix};

/// Whether the pseudomanifold is closed or a manifold-with-boundary style complex, in which
/// regular codimension-one faces may have a single coface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Closed,
    Boundary,
}

/// Declarative description of a stratified complex, as read from a file.
///
/// `simplices` are oriented generators `(sign, vertices)`; the sign is relative to the
/// listed vertex order. `singular` assigns stratum labels to simplices of the singular
/// set; unlisted faces of listed simplices inherit the label when it is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratSpec {
    pub vertices: usize,
    pub kind: ComplexKind,
    pub simplices: Vec<(i8, Vec<usize>)>,
    pub strata: Vec<(String, usize)>,
    pub singular: Vec<(String, Vec<usize>)>,
    pub weights: Vec<(String, Rational)>,
}

impl StratSpec {
    /// A spec with no singular strata.
    pub fn manifold(vertices: usize, kind: ComplexKind, facets: &[Vec<usize>]) -> Self {
        Self {
            vertices,
            kind,
            simplices: facets.iter().map(|f| (1, f.clone())).collect(),
            strata: Vec::new(),
            singular: Vec::new(),
            weights: Vec::new(),
        }
    }

    /// Canonical form: vertex lists sorted with signs adjusted by permutation parity,
    /// singular lists sorted; generator order is preserved.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        for (sign, vs) in &mut out.simplices {
            if permutation_parity(vs) {
                *sign = -*sign;
            }
            vs.sort_unstable();
        }
        for (_, vs) in &mut out.singular {
            vs.sort_unstable();
        }
        out
    }

    /// The same complex with every declared orientation sign negated.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        for (sign, _) in &mut out.simplices {
            *sign = -*sign;
        }
        out
    }
}

/// True when sorting `vs` needs an odd permutation.
pub(crate) fn permutation_parity(vs: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[i] > vs[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// A singular stratum: label, dimension and codimension in the ambient pseudomanifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub label: String,
    pub dim: usize,
    pub codim: usize,
}

/// A validated filtered simplicial pseudomanifold.
#[derive(Clone, Debug)]
pub struct StratifiedComplex {
    spec: StratSpec,
    n: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    labels: Vec<Vec<Option<usize>>>,
    strata: Vec<Stratum>,
    /// Indices of the oriented top simplices in generator order, with signs relative to
    /// sorted vertex order.
    top: Vec<(usize, i8)>,
    /// Per dimension: indices of regular simplices, and the inverse map.
    regular: Vec<Vec<usize>>,
    regular_pos: Vec<HashMap<usize, usize>>,
    /// Per regular simplex: `(stratum, dimension of the largest face in that stratum)`.
    singular_contact: Vec<Vec<Vec<(usize, usize)>>>,
}

/// All nonempty faces of a sorted simplex.
pub(crate) fn all_faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u32..(1u32 << s.len())).map(move |mask| (0..s.len()).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect())
}

fn describe(s: &[usize]) -> String {
    format!("[{}]", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
}

impl StratifiedComplex {
    pub fn new(spec: StratSpec) -> Result<Self, StratError> {
        let spec = spec.canonical();
        if spec.simplices.is_empty() {
            return Err(StratError::Empty);
        }
        for s in spec.simplices.iter().map(|(_, s)| s).chain(spec.singular.iter().map(|(_, s)| s)) {
            if s.is_empty() {
                return Err(StratError::Empty);
            }
            if let Some(&v) = s.iter().find(|&&v| v >= spec.vertices) {
                return Err(StratError::BadVertex { simplex: describe(s), vertex: v });
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(StratError::RepeatedVertex { simplex: describe(s) });
            }
        }
        let n = spec.simplices.iter().map(|(_, s)| s.len() - 1).max().expect("nonempty");
        // purity: lower-dimensional generators must be faces of top simplices
        let top_sets: Vec<&Vec<usize>> =
            spec.simplices.iter().filter(|(_, s)| s.len() == n + 1).map(|(_, s)| s).collect();
        let is_face_of_top = |s: &[usize]| top_sets.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()));
        for (_, s) in &spec.simplices {
            if s.len() <= n && !is_face_of_top(s) {
                return Err(StratError::NotPure { simplex: describe(s) });
            }
        }
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); n + 1];
        for t in &top_sets {
            for f in all_faces(t) {
                sets[f.len() - 1].insert(f);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> =
            simplices.iter().map(|ss| ss.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();

        // strata
        let mut strata = Vec::new();
        let mut by_label: BTreeMap<&str, usize> = BTreeMap::new();
        for (label, dim) in &spec.strata {
            if by_label.insert(label, strata.len()).is_some() {
                return Err(StratError::DuplicateStratum { label: label.clone() });
            }
            if *dim >= n {
                return Err(StratError::StratumDimension { label: label.clone(), declared: *dim, found: None });
            }
            strata.push(Stratum { label: label.clone(), dim: *dim, codim: n - dim });
        }

        // explicit labels
        let mut labels: Vec<Vec<Option<usize>>> = simplices.iter().map(|ss| vec![None; ss.len()]).collect();
        let mut listed: Vec<(usize, usize, usize)> = Vec::new(); // (dim, index, stratum)
        for (label, s) in &spec.singular {
            let &st =
                by_label.get(label.as_str()).ok_or_else(|| StratError::UnknownStratum { label: label.clone() })?;
            let d = s.len() - 1;
            let Some(&idx) = index.get(d).and_then(|m| m.get(s)) else {
                return Err(StratError::SingularNotFace { simplex: describe(s) });
            };
            match labels[d][idx] {
                Some(prev) if prev != st => {
                    return Err(StratError::LabelConflict {
                        simplex: describe(s),
                        labels: vec![strata[prev].label.clone(), label.clone()],
                    })
                }
                _ => labels[d][idx] = Some(st),
            }
            listed.push((d, idx, st));
        }
        // inherited labels
        let mut inherited: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
        for &(d, idx, st) in &listed {
            for f in all_faces(&simplices[d][idx]) {
                let fd = f.len() - 1;
                let fi = index[fd][&f];
                if labels[fd][fi].is_none() || inherited.contains_key(&(fd, fi)) {
                    inherited.entry((fd, fi)).or_default().insert(st);
                }
            }
        }
        for ((fd, fi), cands) in &inherited {
            if cands.len() > 1 {
                return Err(StratError::LabelConflict {
                    simplex: describe(&simplices[*fd][*fi]),
                    labels: cands.iter().map(|&c| strata[c].label.clone()).collect(),
                });
            }
            labels[*fd][*fi] = cands.iter().next().copied();
        }
        // faces of a Y-simplex lie in strata of dimension ≤ dim Y; stratum dimensions match
        let mut max_dim: Vec<Option<usize>> = vec![None; strata.len()];
        for d in 0..=n {
            for (i, s) in simplices[d].iter().enumerate() {
                let Some(st) = labels[d][i] else { continue };
                max_dim[st] = Some(max_dim[st].map_or(d, |m: usize| m.max(d)));
                for f in all_faces(s) {
                    let fd = f.len() - 1;
                    let fl = labels[fd][index[fd][&f]].expect("faces of singular simplices are labelled");
                    if strata[fl].dim > strata[st].dim {
                        return Err(StratError::FaceInHigherStratum {
                            face: describe(&f),
                            face_stratum: strata[fl].label.clone(),
                            stratum: strata[st].label.clone(),
                        });
                    }
                }
            }
        }
        for (st, s) in strata.iter().enumerate() {
            if max_dim[st] != Some(s.dim) {
                return Err(StratError::StratumDimension {
                    label: s.label.clone(),
                    declared: s.dim,
                    found: max_dim[st],
                });
            }
        }

        // pseudomanifold condition on regular codimension-one faces
        if n > 0 {
            let mut cofaces = vec![0usize; simplices[n - 1].len()];
            for t in &simplices[n] {
                for drop in 0..t.len() {
                    let f: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &v)| v).collect();
                    cofaces[index[n - 1][&f]] += 1;
                }
            }
            for (i, &c) in cofaces.iter().enumerate() {
                if labels[n - 1][i].is_some() {
                    continue;
                }
                let ok = match spec.kind {
                    ComplexKind::Closed => c == 2,
                    ComplexKind::Boundary => c == 1 || c == 2,
                };
                if !ok {
                    return Err(StratError::Pseudomanifold { face: describe(&simplices[n - 1][i]), cofaces: c });
                }
            }
        }

        // filtration compatibility: σ ∩ X_j spans a face lying in X_j
        let vertex_label: Vec<Option<usize>> =
            (0..spec.vertices).map(|v| index[0].get(&vec![v]).and_then(|&i| labels[0][i])).collect();
        for t in &simplices[n] {
            for j in 0..n {
                let sub: Vec<usize> =
                    t.iter().copied().filter(|&v| vertex_label[v].is_some_and(|st| strata[st].dim <= j)).collect();
                if sub.is_empty() {
                    continue;
                }
                let l = labels[sub.len() - 1][index[sub.len() - 1][&sub]];
                if !l.is_some_and(|st| strata[st].dim <= j) {
                    return Err(StratError::IncompatibleFiltration { simplex: describe(t), level: j });
                }
            }
        }

        // top simplices in generator order
        let top =
            spec.simplices.iter().filter(|(_, s)| s.len() == n + 1).map(|(sign, s)| (index[n][s], *sign)).collect();

        let regular: Vec<Vec<usize>> =
            (0..=n).map(|d| (0..simplices[d].len()).filter(|&i| labels[d][i].is_none()).collect()).collect();
        let regular_pos = regular.iter().map(|r| r.iter().enumerate().map(|(p, &i)| (i, p)).collect()).collect();
        let singular_contact = (0..=n)
            .map(|d| {
                regular[d]
                    .iter()
                    .map(|&i| {
                        let mut best: BTreeMap<usize, usize> = BTreeMap::new();
                        for f in all_faces(&simplices[d][i]) {
                            let fd = f.len() - 1;
                            if let Some(st) = labels[fd][index[fd][&f]] {
                                let e = best.entry(st).or_insert(fd);
                                *e = (*e).max(fd);
                            }
                        }
                        best.into_iter().collect()
                    })
                    .collect()
            })
            .collect();

        Ok(Self { spec, n, simplices, index, labels, strata, top, regular, regular_pos, singular_contact })
    }

    /// The canonical spec this complex was built from.
    pub fn spec(&self) -> &StratSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.vertices
    }

    pub fn kind(&self) -> ComplexKind {
        self.spec.kind
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum_index(&self, label: &str) -> Option<usize> {
        self.strata.iter().position(|s| s.label == label)
    }

    /// All `d`-simplices, sorted.
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        &self.simplices[d]
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Stratum of the interior of the `i`-th `d`-simplex; `None` for regular simplices.
    pub fn label(&self, d: usize, i: usize) -> Option<usize> {
        self.labels[d][i]
    }

    /// Top simplices (index, declared sign relative to sorted order) in generator order.
    pub fn top(&self) -> &[(usize, i8)] {
        &self.top
    }

    /// Indices of regular (`R₀`-generating) `d`-simplices.
    pub fn regular(&self, d: usize) -> &[usize] {
        &self.regular[d]
    }

    pub fn regular_position(&self, d: usize, i: usize) -> Option<usize> {
        self.regular_pos[d].get(&i).copied()
    }

    /// For each regular `d`-simplex: the strata its faces touch, with the largest face dimension.
    pub fn singular_contact(&self, d: usize) -> &[Vec<(usize, usize)>] {
        &self.singular_contact[d]
    }

    pub fn weights(&self) -> &[(String, Rational)] {
        &self.spec.weights
    }

    /// Faces `(sign, face)` of a sorted simplex with the standard alternating signs.
    pub fn boundary_faces(s: &[usize]) -> impl Iterator<Item = (i64, Vec<usize>)> + '_ {
        (0..s.len()).map(move |drop| {
            let f = s.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &v)| v).collect();
            (if drop % 2 == 0 { 1 } else { -1 }, f)
        })
    }

    /// `R₀` boundary `∂_d`: regular `d`-simplices to regular `(d−1)`-simplices, faces in
    /// the singular set dropped. For `d == 0` the matrix has no rows.
    pub fn r0_boundary(&self, d: usize) -> RationalMatrix {
        let cols = self.regular[d].len();
        if d == 0 {
            return RationalMatrix::zeros(0, cols);
        }
        let mut m = RationalMatrix::zeros(self.regular[d - 1].len(), cols);
        for (c, &i) in self.regular[d].iter().enumerate() {
            for (sign, f) in Self::boundary_faces(&self.simplices[d][i]) {
                let fi = self.index[d - 1][&f];
                if let Some(r) = self.regular_pos[d - 1].get(&fi) {
                    m.set(*r, c, Rational::from_integer(sign.into()));
                }
            }
        }
        m
    }

    /// Ordinary simplicial boundary over all simplices `∂_d: C_d → C_{d−1}`.
    pub fn full_boundary(&self, d: usize) -> RationalMatrix {
        let cols = self.simplices[d].len();
        if d == 0 {
            return RationalMatrix::zeros(0, cols);
        }
        let mut m = RationalMatrix::zeros(self.simplices[d - 1].len(), cols);
        for (c, s) in self.simplices[d].iter().enumerate() {
            for (sign, f) in Self::boundary_faces(s) {
                m.set(self.index[d - 1][&f], c, Rational::from_integer(sign.into()));
            }
        }
        m
    }

    /// Vertices outside the singular set.
    pub fn regular_vertices(&self) -> Vec<usize> {
        self.regular[0].iter().map(|&i| self.simplices[0][i][0]).collect()
    }

    /// Codimension-one faces with a single coface (the boundary of a `Boundary` complex).
    pub fn boundary_simplices(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        if n == 0 {
            return Vec::new();
        }
        let mut count = vec![0usize; self.simplices[n - 1].len()];
        for t in &self.simplices[n] {
            for (_, f) in Self::boundary_faces(t) {
                count[self.index[n - 1][&f]] += 1;
            }
        }
        (0..count.len()).filter(|&i| count[i] == 1).map(|i| self.simplices[n - 1][i].clone()).collect()
    }

    /// Coherent orientation of the top simplices (signs relative to sorted order, indexed
    /// like `simplices(n)`), propagated across regular codimension-one faces starting from
    /// the first declared generator of each connected piece.
    pub fn coherent_orientation(&self) -> Result<Vec<i8>, StratError> {
        let n = self.n;
        let count = self.simplices[n].len();
        if n == 0 {
            let mut signs = vec![1i8; count];
            for &(i, s) in &self.top {
                signs[i] = s;
            }
            return Ok(signs);
        }
        // regular codim-one face -> [(top index, incidence sign)]
        let mut cofaces: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (t, s) in self.simplices[n].iter().enumerate() {
            for (sign, f) in Self::boundary_faces(s) {
                let fi = self.index[n - 1][&f];
                if self.labels[n - 1][fi].is_none() {
                    cofaces.entry(fi).or_default().push((t, sign));
                }
            }
        }
        let mut adj: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); count];
        for list in cofaces.values() {
            if let [(a, sa), (b, sb)] = list[..] {
                adj[a].push((b, sa, sb));
                adj[b].push((a, sb, sa));
            }
        }
        let mut signs: Vec<Option<i8>> = vec![None; count];
        for &(start, declared) in &self.top {
            if signs[start].is_some() {
                continue;
            }
            signs[start] = Some(declared);
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                let ea = signs[a].expect("visited") as i64;
                for &(b, sa, sb) in &adj[a] {
                    // coherent: ea * sa + eb * sb == 0
                    let want = (-(ea * sa) * sb) as i8;
                    match signs[b] {
                        None => {
                            signs[b] = Some(want);
                            stack.push(b);
                        }
                        Some(have) if have != want => {
                            return Err(StratError::NonOrientable { simplex: describe(&self.simplices[n][b]) });
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(signs.into_iter().map(|s| s.unwrap_or(1)).collect())
    }

    /// Whether the declared signs already form a coherent orientation.
    pub fn declared_is_coherent(&self) -> bool {
        match self.coherent_orientation() {
            Ok(signs) => self.top.iter().all(|&(i, s)| signs[i] == s),
            Err(_) => false,
        }
    }

    /// Sum of coherently oriented top simplices as a vector over all `n`-simplices.
    pub fn fundamental_chain(&self) -> Result<Vec<Rational>, StratError> {
        let signs = self.coherent_orientation()?;
        Ok(signs.iter().map(|&s| if s > 0 { Rational::one() } else { -Rational::one() }).collect())
    }
}
