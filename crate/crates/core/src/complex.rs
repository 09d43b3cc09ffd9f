//! Finite abstract simplicial complexes: cones, joins, product
//! triangulations, barycentric subdivision, links and stars, and exact
//! homology over ℚ or 𝔽₂.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Coefficients, FastRational, Field, Gf2, SparseVec};
use crate::poset::{self, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex `{0}` collides with an existing vertex")]
    Collision(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(String),
    #[error("complex is not closed under faces: {0}")]
    Invalid(ComplexReport),
}

/// Sorted vertex indices of a simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Face with the `i`-th vertex removed.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }
}

/// A single failed closure condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ComplexViolation {
    MissingFace { simplex: Vec<String>, face: Vec<String> },
    UnknownVertex { simplex: Vec<String>, vertex: String },
    EmptySimplex,
    UnlistedVertex { vertex: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub violations: Vec<ComplexViolation>,
}

impl ComplexReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ComplexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                ComplexViolation::MissingFace { simplex, face } => {
                    format!("face {{{}}} of {{{}}} missing", face.join(","), simplex.join(","))
                }
                ComplexViolation::UnknownVertex { simplex, vertex } => {
                    format!("{{{}}} uses unknown vertex {vertex}", simplex.join(","))
                }
                ComplexViolation::EmptySimplex => "empty simplex".to_string(),
                ComplexViolation::UnlistedVertex { vertex } => format!("vertex {vertex} has no 0-simplex"),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks that an explicit list of simplices is closed under taking faces
/// and that every vertex appears as a 0-simplex.
pub fn validate_complex(vertices: &[String], simplices: &[Vec<String>]) -> ComplexReport {
    let known: HashSet<&str> = vertices.iter().map(String::as_str).collect();
    let mut present: HashSet<Vec<&str>> = HashSet::new();
    let mut violations = Vec::new();
    let pos: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    fn canonical<'a>(s: &'a [String], pos: &HashMap<&str, usize>) -> Vec<&'a str> {
        let mut v: Vec<&str> = s.iter().map(String::as_str).collect();
        v.sort_by_key(|x| pos.get(x).copied().unwrap_or(usize::MAX));
        v.dedup();
        v
    }
    for s in simplices {
        if s.is_empty() {
            violations.push(ComplexViolation::EmptySimplex);
            continue;
        }
        if let Some(bad) = s.iter().find(|v| !known.contains(v.as_str())) {
            violations.push(ComplexViolation::UnknownVertex { simplex: s.clone(), vertex: bad.clone() });
            continue;
        }
        present.insert(canonical(s, &pos));
    }
    let mut listed: Vec<&Vec<&str>> = present.iter().collect();
    listed.sort();
    for s in listed {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            if !present.contains(&face) {
                violations.push(ComplexViolation::MissingFace {
                    simplex: s.iter().map(|x| x.to_string()).collect(),
                    face: face.iter().map(|x| x.to_string()).collect(),
                });
            }
        }
    }
    for v in vertices {
        if !present.contains(&vec![v.as_str()])
            && !violations.iter().any(|x| matches!(x, ComplexViolation::MissingFace { face, .. } if face == &vec![v.clone()]))
        {
            violations.push(ComplexViolation::UnlistedVertex { vertex: v.clone() });
        }
    }
    ComplexReport { violations }
}

/// JSON form: vertex list and the maximal simplices (faces are implied).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
}

/// A finite abstract simplicial complex over totally ordered vertices.
///
/// Simplices are kept sorted by dimension, then lexicographically by vertex
/// position, so iteration order (and any serialisation) is canonical.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// Facet indices per simplex, built on first use.
    facets: OnceLock<Vec<Box<[usize]>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("maximal", &self.maximal_simplices().iter().map(|&i| self.label(i)).collect::<Vec<_>>())
            .finish()
    }
}

fn index_vertices(vertices: &[String]) -> Result<HashMap<String, usize>, ComplexError> {
    let mut index = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(ComplexError::DuplicateVertex(v.clone()));
        }
    }
    Ok(index)
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_closed_family(Vec::new(), Vec::new())
    }

    /// Closure of the given simplices (named by vertex identifiers).
    pub fn new<S: AsRef<str>>(vertices: Vec<String>, simplices: &[Vec<S>]) -> Result<Self, ComplexError> {
        let vertex_index = index_vertices(&vertices)?;
        let mut sets = Vec::with_capacity(simplices.len());
        for s in simplices {
            if s.is_empty() {
                return Err(ComplexError::EmptySimplex);
            }
            let idx = s
                .iter()
                .map(|v| vertex_index.get(v.as_ref()).copied().ok_or_else(|| ComplexError::UnknownVertex(v.as_ref().to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            sets.push(idx);
        }
        Ok(Self::from_index_sets(vertices, sets))
    }

    /// Closure of index sets; vertices are assumed unique.
    pub(crate) fn from_index_sets(vertices: Vec<String>, sets: Vec<Vec<usize>>) -> Self {
        let mut all: HashSet<Vec<usize>> = HashSet::new();
        for v in 0..vertices.len() {
            all.insert(vec![v]);
        }
        let mut stack: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        while let Some(s) = stack.pop() {
            if s.is_empty() || all.contains(&s) && s.len() > 1 {
                continue;
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !all.contains(&f) {
                        stack.push(f);
                    }
                }
            }
            all.insert(s);
        }
        Self::from_closed_family(vertices, all.into_iter().collect())
    }

    /// Trusted constructor: `simplices` must already be closed under faces
    /// and contain every vertex.
    pub(crate) fn from_closed_family(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Self {
        let vertex_index = index_vertices(&vertices).expect("vertex identifiers are unique");
        let mut simplices: Vec<Simplex> = simplices.into_iter().map(Simplex::new).collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
        simplices.dedup();
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let k = SimplicialComplex { vertices, vertex_index, simplices, index, facets: OnceLock::new() };
        debug_assert!(k.simplices.len() > 2000 || k.is_closed(), "family is not closed under faces");
        k
    }

    fn is_closed(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.index.contains_key(&Simplex(vec![v])))
            && self.simplices.iter().all(|s| s.len() < 2 || (0..s.len()).all(|i| self.index.contains_key(&s.facet(i))))
    }

    /// The full simplex Δⁿ on vertices `0..=n`.
    pub fn simplex(n: usize) -> Self {
        let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        Self::from_index_sets(vertices, vec![(0..=n).collect()])
    }

    /// The boundary ∂Δⁿ on vertices `0..=n` (n ≥ 1).
    pub fn simplex_boundary(n: usize) -> Self {
        let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let facets = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
        Self::from_index_sets(vertices, facets)
    }

    pub fn from_doc(doc: &ComplexDoc) -> Result<Self, ComplexError> {
        Self::new(doc.vertices.clone(), &doc.simplices)
    }

    pub fn to_doc(&self) -> ComplexDoc {
        ComplexDoc { vertices: self.vertices.clone(), simplices: self.maximal_simplices().into_iter().map(|i| self.simplex_ids(i)).collect() }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex_at(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Index of the simplex spanned by the given vertex identifiers.
    pub fn find<S: AsRef<str>>(&self, ids: &[S]) -> Result<usize, ComplexError> {
        let mut v = Vec::with_capacity(ids.len());
        for id in ids {
            v.push(self.vertex_index(id.as_ref()).ok_or_else(|| ComplexError::UnknownVertex(id.as_ref().to_string()))?);
        }
        let s = Simplex::new(v);
        self.index_of(&s).ok_or_else(|| ComplexError::NotASimplex(self.label_of(&s)))
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.last().map_or(-1, |s| s.dim() as i64)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1) as usize];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    /// Alternating simplex count.
    pub fn euler(&self) -> i64 {
        self.simplices.iter().map(|s| if s.dim() % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn simplex_ids(&self, i: usize) -> Vec<String> {
        self.simplices[i].0.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    fn label_of(&self, s: &Simplex) -> String {
        let ids: Vec<&str> = s.0.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }

    /// Canonical identifier `{a,b,...}` of simplex `i`.
    pub fn label(&self, i: usize) -> String {
        self.label_of(&self.simplices[i])
    }

    pub fn maximal_simplices(&self) -> Vec<usize> {
        let mut is_face = vec![false; self.len()];
        for s in &self.simplices {
            if s.len() > 1 {
                for j in 0..s.len() {
                    is_face[self.index[&s.facet(j)]] = true;
                }
            }
        }
        (0..self.len()).filter(|&i| !is_face[i]).collect()
    }

    /// Indices of the codimension-one faces of simplex `i`, in facet order.
    pub fn facets_of(&self, i: usize) -> Vec<usize> {
        self.facet_slice(i).to_vec()
    }

    pub(crate) fn facet_slice(&self, i: usize) -> &[usize] {
        let table = self.facets.get_or_init(|| {
            self.simplices.iter().map(|s| if s.len() < 2 { Box::default() } else { (0..s.len()).map(|j| self.index[&s.facet(j)]).collect() }).collect()
        });
        &table[i]
    }

    /// Indices of all nonempty faces of simplex `i` (including itself).
    pub fn faces_of(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i].0;
        let n = s.len();
        (1u64..(1u64 << n))
            .map(|bits| {
                let f: Vec<usize> = (0..n).filter(|&j| bits >> j & 1 == 1).map(|j| s[j]).collect();
                self.index[&Simplex(f)]
            })
            .collect()
    }

    /// Face poset, elements in simplex order and named by [`label`](Self::label).
    pub fn face_poset(&self) -> Poset {
        let n = self.len();
        let mut matrix = vec![false; n * n];
        for j in 0..n {
            for i in self.faces_of(j) {
                matrix[i * n + j] = true;
            }
        }
        let labels = (0..n).map(|i| self.label(i)).collect();
        Poset::from_fn_unchecked(labels, |i, j| matrix[i * n + j])
    }

    /// Full subcomplex on the selected vertices (vertex order preserved).
    pub fn full_subcomplex(&self, keep: &[bool]) -> SimplicialComplex {
        let mask: Vec<bool> = self.simplices.iter().map(|s| s.0.iter().all(|&v| keep[v])).collect();
        self.subcomplex(&mask)
    }

    /// Subcomplex given by a face-closed mask over simplices.
    pub fn subcomplex(&self, mask: &[bool]) -> SimplicialComplex {
        let mut used = vec![false; self.vertices.len()];
        for (s, _) in self.simplices.iter().zip(mask).filter(|(_, &m)| m) {
            for &v in &s.0 {
                used[v] = true;
            }
        }
        let mut renumber = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, _) in used.iter().enumerate().filter(|(_, &u)| u) {
            renumber[v] = vertices.len();
            vertices.push(self.vertices[v].clone());
        }
        let simplices = self.simplices.iter().zip(mask).filter(|(_, &m)| m).map(|(s, _)| s.0.iter().map(|&v| renumber[v]).collect()).collect();
        SimplicialComplex::from_closed_family(vertices, simplices)
    }

    /// Same complex with every vertex identifier prefixed.
    pub fn with_prefix(&self, prefix: &str) -> SimplicialComplex {
        let vertices = self.vertices.iter().map(|v| format!("{prefix}{v}")).collect();
        SimplicialComplex::from_closed_family(vertices, self.simplices.iter().map(|s| s.0.clone()).collect())
    }

    /// Connected component id for each vertex (components numbered in order of first vertex).
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            adj[s.0[0]].push(s.0[1]);
            adj[s.0[1]].push(s.0[0]);
        }
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// Vertex-disjoint union with identifiers tagged `L:` and `R:`.
pub fn disjoint_union(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let off = k.vertices.len();
    let vertices = k.vertices.iter().map(|v| format!("L:{v}")).chain(l.vertices.iter().map(|v| format!("R:{v}"))).collect();
    let simplices = k.simplices.iter().map(|s| s.0.clone()).chain(l.simplices.iter().map(|s| s.0.iter().map(|v| v + off).collect())).collect();
    SimplicialComplex::from_closed_family(vertices, simplices)
}

/// The cone `v * K`; `v` becomes the first vertex.
pub fn cone_complex(v: &str, k: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    join_complex(&SimplicialComplex::new(vec![v.to_string()], &[vec![v]])?, k)
}

/// The join `K * L`: all unions of a simplex of `K` (or nothing) with a
/// simplex of `L` (or nothing). Vertex order is `K`'s followed by `L`'s.
pub fn join_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    if let Some(v) = l.vertices.iter().find(|v| k.vertex_index.contains_key(*v)) {
        return Err(ComplexError::Collision(v.clone()));
    }
    let off = k.vertices.len();
    let vertices: Vec<String> = k.vertices.iter().chain(&l.vertices).cloned().collect();
    let mut simplices: Vec<Vec<usize>> = k.simplices.iter().map(|s| s.0.clone()).collect();
    let shifted: Vec<Vec<usize>> = l.simplices.iter().map(|t| t.0.iter().map(|v| v + off).collect()).collect();
    simplices.extend(shifted.iter().cloned());
    for s in &k.simplices {
        for t in &shifted {
            let mut u = s.0.clone();
            u.extend(t.iter().copied());
            simplices.push(u);
        }
    }
    Ok(SimplicialComplex::from_closed_family(vertices, simplices))
}

/// Barycentric subdivision with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Subdivision {
    /// Order complex of the face poset; vertex ids are simplex labels.
    pub complex: SimplicialComplex,
    /// Subdivision vertex -> simplex of the original complex.
    pub origin: Vec<usize>,
    /// Subdivision simplex (a chain of faces) -> its largest member.
    pub carrier: Vec<usize>,
}

/// Equal to the order complex of [`face_poset`](SimplicialComplex::face_poset)
/// with the same vertex order, built without the dense relation matrix.
pub fn subdivide(k: &SimplicialComplex) -> Subdivision {
    let n = k.len();
    let proper: Vec<Vec<usize>> = (0..n).map(|i| k.faces_of(i).into_iter().filter(|&f| f != i).collect()).collect();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, faces) in proper.iter().enumerate() {
        for &f in faces {
            above[f].push(i);
        }
    }
    // same tie-break as Poset::linear_extension: smallest label first
    let labels: Vec<String> = (0..n).map(|i| k.label(i)).collect();
    let mut below: Vec<usize> = proper.iter().map(Vec::len).collect();
    let mut heap: BinaryHeap<Reverse<(&str, usize)>> = (0..n).filter(|&i| below[i] == 0).map(|i| Reverse((labels[i].as_str(), i))).collect();
    let mut origin = Vec::with_capacity(n);
    while let Some(Reverse((_, i))) = heap.pop() {
        origin.push(i);
        for &j in &above[i] {
            below[j] -= 1;
            if below[j] == 0 {
                heap.push(Reverse((labels[j].as_str(), j)));
            }
        }
    }
    let mut position = vec![0; n];
    for (p, &i) in origin.iter().enumerate() {
        position[i] = p;
    }
    // each chain is reached once, from its top element downwards
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let low = *chain.last().expect("chains are nonempty");
        for &f in &proper[low] {
            let mut longer = chain.clone();
            longer.push(f);
            stack.push(longer);
        }
        chains.push(chain.iter().map(|&i| position[i]).collect());
    }
    let vertices = origin.iter().map(|&i| labels[i].clone()).collect();
    let complex = SimplicialComplex::from_closed_family(vertices, chains);
    let carrier = complex.simplices.iter().map(|chain| origin[*chain.0.last().expect("nonempty chain")]).collect();
    Subdivision { complex, origin, carrier }
}

/// Triangulation of `|K| × |L|`: the order complex of the product of face posets.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    poset::order_complex(&poset::product(&k.face_poset(), &l.face_poset()))
}

/// Betti numbers and Euler characteristic over a chosen field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub field: Coefficients,
    pub betti: Vec<usize>,
    pub euler: i64,
}

/// Boundary column of simplex `i`: `(facet index, ±1)`.
pub(crate) fn boundary_column<F: Field>(k: &SimplicialComplex, i: usize) -> SparseVec<F> {
    let entries = k.facet_slice(i).iter().enumerate().map(|(j, &f)| (f, F::from_i64(if j % 2 == 0 { 1 } else { -1 }))).collect();
    linalg::sparse_from_entries(entries)
}

/// Ranks of ∂_d for `d = 0..=dim` on the subcomplex selected by `mask`
/// (all simplices when `None`); `rank[0] = 0`.
pub(crate) fn boundary_ranks<F: Field>(k: &SimplicialComplex, mask: Option<&[bool]>) -> Vec<usize> {
    let inside = |i: usize| mask.is_none_or(|m| m[i]);
    let top = k.simplices.iter().enumerate().filter(|(i, _)| inside(*i)).map(|(_, s)| s.dim()).max();
    let Some(top) = top else { return Vec::new() };
    let mut ranks = vec![0; top + 1];
    // A simplex that is a pivot row of ∂_{d+1} has a column in ∂_d that reduces to zero.
    let mut cleared = vec![false; k.len()];
    for d in (1..=top).rev() {
        let cols = (0..k.len()).filter(|&i| inside(i) && !cleared[i] && k.simplices[i].dim() == d).map(|i| boundary_column::<F>(k, i)).collect();
        let pivots = linalg::pivot_rows(cols);
        ranks[d] = pivots.len();
        for p in pivots {
            cleared[p] = true;
        }
    }
    ranks
}

pub(crate) fn betti_masked(k: &SimplicialComplex, mask: Option<&[bool]>, field: Coefficients) -> Vec<usize> {
    let ranks = match field {
        Coefficients::Rational => boundary_ranks::<FastRational>(k, mask),
        Coefficients::Mod2 => boundary_ranks::<Gf2>(k, mask),
    };
    let mut counts = vec![0usize; ranks.len()];
    for (i, s) in k.simplices.iter().enumerate() {
        if mask.is_none_or(|m| m[i]) {
            counts[s.dim()] += 1;
        }
    }
    (0..ranks.len()).map(|d| counts[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0)).collect()
}

fn alternating(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// Simplicial homology by exact rank computation on boundary matrices.
///
/// The Betti vector has one entry per degree `0..=dim`. Panics if the
/// Euler characteristic of the Betti numbers disagrees with the simplex
/// count, which would mean the elimination itself is wrong.
pub fn homology(k: &SimplicialComplex, field: Coefficients) -> HomologyProfile {
    let betti = betti_masked(k, None, field);
    let euler = k.euler();
    assert_eq!(alternating(&betti), euler, "Euler characteristic cross-check failed");
    HomologyProfile { field, betti, euler }
}

/// Link and closed star of a simplex.
#[derive(Clone, Debug)]
pub struct LinkStar {
    pub link: SimplicialComplex,
    pub star: SimplicialComplex,
}

pub fn link_star<S: AsRef<str>>(sigma: &[S], k: &SimplicialComplex) -> Result<LinkStar, ComplexError> {
    let si = k.find(sigma)?;
    let s = k.simplices[si].clone();
    let mut star_mask = vec![false; k.len()];
    let mut link_mask = vec![false; k.len()];
    for (i, t) in k.simplices.iter().enumerate() {
        let mut u = t.0.clone();
        u.extend(s.0.iter().copied());
        if k.index.contains_key(&Simplex::new(u)) {
            star_mask[i] = true;
            link_mask[i] = t.0.iter().all(|v| !s.0.contains(v));
        }
    }
    Ok(LinkStar { link: k.subcomplex(&link_mask), star: k.subcomplex(&star_mask) })
}

fn vertex_colors(k: &SimplicialComplex, l: &SimplicialComplex) -> (Vec<usize>, Vec<usize>) {
    let init = |x: &SimplicialComplex| -> Vec<Vec<usize>> {
        let width = (x.dim() + 1).max(0) as usize;
        let mut c = vec![vec![0; width]; x.vertices.len()];
        for s in &x.simplices {
            for &v in &s.0 {
                c[v][s.dim()] += 1;
            }
        }
        c
    };
    let neighbours = |x: &SimplicialComplex| -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); x.vertices.len()];
        for s in x.simplices.iter().filter(|s| s.len() == 2) {
            adj[s.0[0]].push(s.0[1]);
            adj[s.0[1]].push(s.0[0]);
        }
        adj
    };
    let (ak, al) = (neighbours(k), neighbours(l));
    let mut table = BTreeMap::new();
    let relabel = |sigs: Vec<Vec<usize>>, table: &mut BTreeMap<Vec<usize>, usize>| -> Vec<usize> {
        sigs.into_iter()
            .map(|s| {
                let n = table.len();
                *table.entry(s).or_insert(n)
            })
            .collect::<Vec<_>>()
    };
    let mut ck = relabel(init(k), &mut table);
    let mut cl = relabel(init(l), &mut table);
    let mut classes = table.len();
    loop {
        let step = |c: &[usize], adj: &[Vec<usize>]| -> Vec<Vec<usize>> {
            (0..c.len())
                .map(|v| {
                    let mut s: Vec<usize> = adj[v].iter().map(|&w| c[w]).collect();
                    s.sort_unstable();
                    s.insert(0, c[v]);
                    s
                })
                .collect()
        };
        let mut t = BTreeMap::new();
        let nk = relabel(step(&ck, &ak), &mut t);
        let nl = relabel(step(&cl, &al), &mut t);
        let stable = t.len() == classes;
        classes = t.len();
        ck = nk;
        cl = nl;
        if stable {
            return (ck, cl);
        }
    }
}

/// Searches for a simplicial isomorphism `K -> L`, returned as a vertex map.
pub fn isomorphism(k: &SimplicialComplex, l: &SimplicialComplex) -> Option<Vec<usize>> {
    if k.vertices.len() != l.vertices.len() || k.f_vector() != l.f_vector() {
        return None;
    }
    let (ck, cl) = vertex_colors(k, l);
    let (mut hk, mut hl) = (ck.clone(), cl.clone());
    hk.sort_unstable();
    hl.sort_unstable();
    if hk != hl {
        return None;
    }
    let n = k.vertices.len();
    let stars = |x: &SimplicialComplex| -> Vec<Vec<usize>> {
        let mut st = vec![Vec::new(); x.vertices.len()];
        for (i, s) in x.simplices.iter().enumerate() {
            if s.len() > 1 {
                for &v in &s.0 {
                    st[v].push(i);
                }
            }
        }
        st
    };
    let (sk, sl) = (stars(k), stars(l));

    // Visit vertices breadth-first so each new vertex is adjacent to mapped ones.
    let comp = k.vertex_components();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut adj = vec![Vec::new(); n];
    for s in k.simplices.iter().filter(|s| s.len() == 2) {
        adj[s.0[0]].push(s.0[1]);
        adj[s.0[1]].push(s.0[0]);
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (comp[v], ck.iter().filter(|&&c| c == ck[v]).count(), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    struct Search<'a> {
        k: &'a SimplicialComplex,
        l: &'a SimplicialComplex,
        ck: &'a [usize],
        cl: &'a [usize],
        sk: &'a [Vec<usize>],
        sl: &'a [Vec<usize>],
        order: &'a [usize],
        image: Vec<usize>,
        preimage: Vec<usize>,
    }

    impl Search<'_> {
        fn consistent(&self, a: usize, b: usize) -> bool {
            let forward = self.sk[a].iter().all(|&si| {
                let s = &self.k.simplices[si].0;
                if s.iter().any(|&v| v != a && self.image[v] == usize::MAX) {
                    return true;
                }
                let img = Simplex::new(s.iter().map(|&v| if v == a { b } else { self.image[v] }).collect());
                self.l.index.contains_key(&img)
            });
            forward
                && self.sl[b].iter().all(|&ti| {
                    let t = &self.l.simplices[ti].0;
                    if t.iter().any(|&w| w != b && self.preimage[w] == usize::MAX) {
                        return true;
                    }
                    let pre = Simplex::new(t.iter().map(|&w| if w == b { a } else { self.preimage[w] }).collect());
                    self.k.index.contains_key(&pre)
                })
        }

        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let a = self.order[depth];
            for b in 0..self.l.vertices.len() {
                if self.preimage[b] != usize::MAX || self.cl[b] != self.ck[a] || !self.consistent(a, b) {
                    continue;
                }
                self.image[a] = b;
                self.preimage[b] = a;
                if self.run(depth + 1) {
                    return true;
                }
                self.image[a] = usize::MAX;
                self.preimage[b] = usize::MAX;
            }
            false
        }
    }

    let mut search = Search { k, l, ck: &ck, cl: &cl, sk: &sk, sl: &sl, order: &order, image: vec![usize::MAX; n], preimage: vec![usize::MAX; n] };
    search.run(0).then_some(search.image)
}

pub fn is_isomorphic(k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    isomorphism(k, l).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|x| x.to_string()).collect()
    }

    fn betti(k: &SimplicialComplex, f: Coefficients) -> Vec<usize> {
        homology(k, f).betti
    }

    #[test]
    fn validate_examples() {
        let v = s(&["a", "b"]);
        assert!(validate_complex(&v, &[s(&["a"]), s(&["b"]), s(&["a", "b"])]).is_valid());
        let r = validate_complex(&v, &[s(&["b"]), s(&["a", "b"])]);
        assert_eq!(r.violations, vec![ComplexViolation::MissingFace { simplex: s(&["a", "b"]), face: s(&["a"]) }]);
        let k = SimplicialComplex::simplex(3);
        let all: Vec<Vec<String>> = (0..k.len()).map(|i| k.simplex_ids(i)).collect();
        assert_eq!(all.len(), 15);
        assert!(validate_complex(k.vertices(), &all).is_valid());
    }

    #[test]
    fn cone_examples() {
        let p = cone_complex("v", &SimplicialComplex::empty()).unwrap();
        assert_eq!(p.f_vector(), vec![1]);
        let two = SimplicialComplex::new(s(&["a", "b"]), &[s(&["a"]), s(&["b"])]).unwrap();
        let path = cone_complex("v", &two).unwrap();
        assert_eq!(path.f_vector(), vec![3, 2]);
        assert_eq!(betti(&path, Coefficients::Rational), vec![1, 0]);
        let disk = cone_complex("v", &SimplicialComplex::simplex_boundary(2)).unwrap();
        assert_eq!(betti(&disk, Coefficients::Rational), vec![1, 0, 0]);
        assert!(matches!(cone_complex("a", &two), Err(ComplexError::Collision(_))));
    }

    #[test]
    fn join_examples() {
        let l = SimplicialComplex::simplex_boundary(2);
        assert_eq!(join_complex(&SimplicialComplex::empty(), &l).unwrap(), l);
        let pt = SimplicialComplex::new(s(&["v"]), &[s(&["v"])]).unwrap();
        assert_eq!(join_complex(&pt, &l).unwrap(), cone_complex("v", &l).unwrap());
        let poles = SimplicialComplex::new(s(&["n", "s"]), &[s(&["n"]), s(&["s"])]).unwrap();
        let sphere = join_complex(&l, &poles).unwrap();
        assert_eq!(betti(&sphere, Coefficients::Rational), vec![1, 0, 1]);
    }

    #[test]
    fn subdivision_examples() {
        let sd = subdivide(&SimplicialComplex::simplex(1));
        assert_eq!(sd.complex.f_vector(), vec![3, 2]);
        let hex = subdivide(&SimplicialComplex::simplex_boundary(2));
        assert_eq!(hex.complex.f_vector(), vec![6, 6]);
        assert_eq!(betti(&hex.complex, Coefficients::Rational), vec![1, 1]);
        let chain = sd.complex.find(&["{0}", "{0,1}"]).unwrap();
        assert_eq!(SimplicialComplex::simplex(1).label(sd.carrier[chain]), "{0,1}");
    }

    #[test]
    fn subdivision_is_the_order_complex_of_faces() {
        for k in [SimplicialComplex::simplex(3), SimplicialComplex::simplex_boundary(3), crate::corpus::rp2()] {
            let (nerve, origin) = poset::nerve(&k.face_poset());
            let sd = subdivide(&k);
            assert_eq!(sd.origin, origin);
            assert_eq!(sd.complex, nerve);
        }
    }

    #[test]
    fn product_examples() {
        let l = SimplicialComplex::simplex_boundary(2);
        let pt = SimplicialComplex::simplex(0);
        assert!(is_isomorphic(&product_complex(&pt, &l), &subdivide(&l).complex));
        let sq = product_complex(&SimplicialComplex::simplex(1), &SimplicialComplex::simplex(1));
        assert_eq!(betti(&sq, Coefficients::Rational), vec![1, 0, 0]);
        let torus = product_complex(&l, &l);
        assert_eq!(betti(&torus, Coefficients::Rational), vec![1, 2, 1]);
    }

    #[test]
    fn homology_examples() {
        assert_eq!(betti(&SimplicialComplex::simplex_boundary(3), Coefficients::Rational), vec![1, 0, 1]);
        let e = homology(&SimplicialComplex::empty(), Coefficients::Rational);
        assert!(e.betti.iter().all(|&b| b == 0));
        assert_eq!(e.euler, 0);
    }

    #[test]
    fn link_and_star_examples() {
        let tri = SimplicialComplex::simplex_boundary(2);
        let ls = link_star(&["0"], &tri).unwrap();
        assert_eq!(ls.link.f_vector(), vec![2]);
        let tet = SimplicialComplex::simplex_boundary(3);
        assert_eq!(link_star(&["0", "1"], &tet).unwrap().link.f_vector(), vec![2]);
        let d2 = SimplicialComplex::simplex(2);
        let st = link_star(&["0", "1", "2"], &d2).unwrap().star;
        assert_eq!(st, d2);
        assert!(link_star(&["0", "1", "2"], &tri).is_err());
    }

    #[test]
    fn isomorphism_detects_relabelling_and_difference() {
        let a = SimplicialComplex::simplex_boundary(2);
        let b = SimplicialComplex::new(s(&["x", "y", "z"]), &[s(&["x", "y"]), s(&["y", "z"]), s(&["z", "x"])]).unwrap();
        assert!(is_isomorphic(&a, &b));
        let path = SimplicialComplex::new(s(&["x", "y", "z"]), &[s(&["x", "y"]), s(&["y", "z"])]).unwrap();
        assert!(!is_isomorphic(&a, &path));
    }
}
