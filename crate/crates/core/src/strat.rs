//! Stratified simplicial complexes: a complex with a monotone map from its
//! simplices to a finite poset, plus cones, joins, products, restriction
//! along consecutive subsets, and the depth/dimension report.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{self, ComplexDoc, ComplexError, SimplicialComplex};
use crate::poset::{self, Consecutivity, DepthDim, Poset, PosetDoc, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StratError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("assignment is not monotone: {0}")]
    Invalid(StratReport),
    #[error("simplex {0} has no stratum")]
    Unassigned(String),
    #[error("simplex {0} is assigned twice")]
    DuplicateAssignment(String),
    #[error("assignment refers to unknown stratum `{0}`")]
    UnknownStratum(String),
    #[error("subset is not consecutive: {0:?}")]
    NotConsecutive(Consecutivity),
    #[error("dimension must be non-negative, got {0}")]
    NegativeDimension(i64),
}

/// A face pair whose strata are out of order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub face: String,
    pub coface: String,
    pub face_stratum: String,
    pub coface_stratum: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StratReport {
    pub violations: Vec<MonotonicityViolation>,
    /// Strata with no simplices; reported, not an error.
    pub empty_strata: Vec<String>,
}

impl StratReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StratReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "monotone")?;
        } else {
            let parts: Vec<String> =
                self.violations.iter().map(|v| format!("{} <= {} but {} is not <= {}", v.face, v.coface, v.face_stratum, v.coface_stratum)).collect();
            write!(f, "{}", parts.join("; "))?;
        }
        if !self.empty_strata.is_empty() {
            write!(f, " (empty strata: {})", self.empty_strata.join(", "))?;
        }
        Ok(())
    }
}

/// Checks monotonicity over every face pair and lists empty strata.
pub fn validate_strat(k: &SimplicialComplex, p: &Poset, assignment: &[usize]) -> StratReport {
    let mut violations = Vec::new();
    for t in 0..k.len() {
        for s in k.faces_of(t) {
            if !p.leq(assignment[s], assignment[t]) {
                violations.push(MonotonicityViolation {
                    face: k.label(s),
                    coface: k.label(t),
                    face_stratum: p.id(assignment[s]).to_string(),
                    coface_stratum: p.id(assignment[t]).to_string(),
                });
            }
        }
    }
    let mut used = vec![false; p.len()];
    for &a in assignment {
        used[a] = true;
    }
    let empty_strata = (0..p.len()).filter(|&i| !used[i]).map(|i| p.id(i).to_string()).collect();
    StratReport { violations, empty_strata }
}

/// JSON form of a stratified complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratDoc {
    pub complex: ComplexDoc,
    pub poset: PosetDoc,
    pub assignment: Vec<(Vec<String>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedComplex {
    complex: SimplicialComplex,
    poset: Poset,
    assignment: Vec<usize>,
}

impl StratifiedComplex {
    /// Builds a stratified complex, rejecting non-monotone assignments.
    pub fn new(complex: SimplicialComplex, poset: Poset, assignment: Vec<usize>) -> Result<Self, StratError> {
        assert_eq!(complex.len(), assignment.len(), "one stratum per simplex");
        let report = validate_strat(&complex, &poset, &assignment);
        if !report.is_valid() {
            return Err(StratError::Invalid(report));
        }
        Ok(StratifiedComplex { complex, poset, assignment })
    }

    pub(crate) fn new_unchecked(complex: SimplicialComplex, poset: Poset, assignment: Vec<usize>) -> Self {
        debug_assert!(complex.len() > 2000 || validate_strat(&complex, &poset, &assignment).is_valid());
        StratifiedComplex { complex, poset, assignment }
    }

    /// Parses a document without checking monotonicity; see [`Self::from_doc`].
    pub fn parts_from_doc(doc: &StratDoc) -> Result<(SimplicialComplex, Poset, Vec<usize>), StratError> {
        let k = SimplicialComplex::from_doc(&doc.complex)?;
        let p = Poset::from_doc(&doc.poset)?;
        let mut assignment = vec![usize::MAX; k.len()];
        for (simplex, stratum) in &doc.assignment {
            let s = k.find(simplex)?;
            let a = p.index_of(stratum).ok_or_else(|| StratError::UnknownStratum(stratum.clone()))?;
            if assignment[s] != usize::MAX {
                return Err(StratError::DuplicateAssignment(k.label(s)));
            }
            assignment[s] = a;
        }
        if let Some(s) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(StratError::Unassigned(k.label(s)));
        }
        Ok((k, p, assignment))
    }

    pub fn from_doc(doc: &StratDoc) -> Result<Self, StratError> {
        let (k, p, a) = Self::parts_from_doc(doc)?;
        Self::new(k, p, a)
    }

    pub fn to_doc(&self) -> StratDoc {
        StratDoc {
            complex: self.complex.to_doc(),
            poset: self.poset.to_doc(),
            assignment: (0..self.complex.len()).map(|s| (self.complex.simplex_ids(s), self.poset.id(self.assignment[s]).to_string())).collect(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Stratum index of each simplex, in simplex order.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn stratum_of(&self, simplex: usize) -> &str {
        self.poset.id(self.assignment[simplex])
    }

    pub fn report(&self) -> StratReport {
        validate_strat(&self.complex, &self.poset, &self.assignment)
    }

    /// Simplex mask of the strata selected by `strata`.
    pub fn simplices_in(&self, strata: &[bool]) -> Vec<bool> {
        self.assignment.iter().map(|&a| strata[a]).collect()
    }
}

/// Every simplex is its own stratum; the poset is the face poset.
pub fn face_stratification(k: &SimplicialComplex) -> StratifiedComplex {
    StratifiedComplex::new_unchecked(k.clone(), k.face_poset(), (0..k.len()).collect())
}

/// Δⁿ over the chain `[n]`, each simplex sent to its largest vertex.
pub fn standard_simplex_stratification(n: i64) -> Result<StratifiedComplex, StratError> {
    if n < 0 {
        return Err(StratError::NegativeDimension(n));
    }
    let k = SimplicialComplex::simplex(n as usize);
    let assignment = k.simplices().iter().map(|s| *s.vertices().last().expect("nonempty")).collect();
    Ok(StratifiedComplex::new_unchecked(k, Poset::chain(n as usize), assignment))
}

/// The whole complex as one stratum named `id`.
pub fn single_stratum(k: &SimplicialComplex, id: &str) -> StratifiedComplex {
    StratifiedComplex::new_unchecked(k.clone(), Poset::point(id), vec![0; k.len()])
}

/// Stratified cone. `apex` names both the new vertex and the new minimal stratum.
pub fn cone_strat(apex: &str, x: &StratifiedComplex) -> Result<StratifiedComplex, StratError> {
    let k = complex::cone_complex(apex, &x.complex)?;
    let p = poset::cone(&x.poset, apex)?;
    let assignment = k
        .simplices()
        .iter()
        .map(|s| {
            let base: Vec<usize> = s.vertices().iter().filter(|&&v| v != 0).map(|&v| v - 1).collect();
            if base.is_empty() {
                0
            } else {
                let i = x.complex.index_of(&complex::Simplex::new(base)).expect("base face exists");
                x.assignment[i] + 1
            }
        })
        .collect();
    Ok(StratifiedComplex::new_unchecked(k, p, assignment))
}

/// Stratified join over [`poset::join_poset`].
pub fn join_strat(x: &StratifiedComplex, y: &StratifiedComplex) -> Result<StratifiedComplex, StratError> {
    let k = complex::join_complex(&x.complex, &y.complex)?;
    let p = poset::join_poset(&x.poset, &y.poset)?;
    let off = x.complex.vertices().len();
    let (np, nq) = (x.poset.len(), y.poset.len());
    let assignment = k
        .simplices()
        .iter()
        .map(|s| {
            let (left, right): (Vec<usize>, Vec<usize>) = s.vertices().iter().partition(|&&v| v < off);
            let right: Vec<usize> = right.into_iter().map(|v| v - off).collect();
            let a = (!left.is_empty()).then(|| x.assignment[x.complex.index_of(&complex::Simplex::new(left)).expect("face")]);
            let b = (!right.is_empty()).then(|| y.assignment[y.complex.index_of(&complex::Simplex::new(right)).expect("face")]);
            match (a, b) {
                (Some(a), None) => a,
                (None, Some(b)) => np + b,
                (Some(a), Some(b)) => np + nq + a * nq + b,
                (None, None) => unreachable!("simplices are nonempty"),
            }
        })
        .collect();
    Ok(StratifiedComplex::new_unchecked(k, p, assignment))
}

/// Product triangulation stratified over the product poset; a chain of
/// pairs goes to the strata of its largest pair.
pub fn product_strat(x: &StratifiedComplex, y: &StratifiedComplex) -> StratifiedComplex {
    let m = y.complex.len();
    let (k, origin) = poset::nerve(&poset::product(&x.complex.face_poset(), &y.complex.face_poset()));
    let nq = y.poset.len();
    let assignment = k
        .simplices()
        .iter()
        .map(|chain| {
            let top = origin[*chain.vertices().last().expect("nonempty")];
            x.assignment[top / m] * nq + y.assignment[top % m]
        })
        .collect();
    StratifiedComplex::new_unchecked(k, poset::product(&x.poset, &y.poset), assignment)
}

/// Maps each simplex of `sub` to the simplex of `parent` with the same vertex identifiers.
pub(crate) fn embed_simplices(sub: &SimplicialComplex, parent: &SimplicialComplex) -> Vec<usize> {
    let vmap: Vec<usize> = sub.vertices().iter().map(|v| parent.vertex_index(v).expect("shared vertex")).collect();
    sub.simplices()
        .iter()
        .map(|s| {
            let t = complex::Simplex::new(s.vertices().iter().map(|&v| vmap[v]).collect());
            parent.index_of(&t).expect("simplex of parent")
        })
        .collect()
}

pub(crate) fn reindex(mask: &[bool]) -> Vec<usize> {
    let mut next = 0;
    mask.iter()
        .map(|&m| {
            if m {
                next += 1;
                next - 1
            } else {
                usize::MAX
            }
        })
        .collect()
}

/// Restriction to the strata in `q`, which must be consecutive.
///
/// A downward-closed `q` gives the literal closed subcomplex. Otherwise the
/// result is the full subcomplex of the barycentric subdivision on
/// barycenters of simplices in `q`, stratified by the chain maximum; this
/// models the locally closed union of those strata up to homotopy.
pub fn restrict<S: AsRef<str>>(x: &StratifiedComplex, q: &[S]) -> Result<StratifiedComplex, StratError> {
    let mask = x.poset.mask(q)?;
    restrict_mask(x, &mask)
}

pub fn restrict_mask(x: &StratifiedComplex, mask: &[bool]) -> Result<StratifiedComplex, StratError> {
    let ids: Vec<&str> = (0..x.poset.len()).filter(|&i| mask[i]).map(|i| x.poset.id(i)).collect();
    match poset::consecutive_check(&ids, &x.poset)? {
        Consecutivity::Consecutive => {}
        other => return Err(StratError::NotConsecutive(other)),
    }
    let p = x.poset.induced(mask);
    let renumber = reindex(mask);
    if x.poset.is_downward_closed(mask) {
        let k = x.complex.subcomplex(&x.simplices_in(mask));
        let assignment = embed_simplices(&k, &x.complex).into_iter().map(|s| renumber[x.assignment[s]]).collect();
        return Ok(StratifiedComplex::new_unchecked(k, p, assignment));
    }
    let sd = complex::subdivide(&x.complex);
    let keep: Vec<bool> = sd.origin.iter().map(|&s| mask[x.assignment[s]]).collect();
    let k = sd.complex.full_subcomplex(&keep);
    let assignment = embed_simplices(&k, &sd.complex).into_iter().map(|c| renumber[x.assignment[sd.carrier[c]]]).collect();
    Ok(StratifiedComplex::new_unchecked(k, p, assignment))
}

/// One row of the depth table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthRow {
    pub stratum: String,
    pub stratum_dim: usize,
    pub star_dim: usize,
    pub depth: usize,
    /// False when local dimensions vary across the stratum; such strata
    /// are excluded from the monotonicity verdict.
    pub pure: bool,
    /// Image in the depth/dimension poset, as `(depth,dim)`.
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthDimReport {
    pub rows: Vec<DepthRow>,
    pub empty_strata: Vec<String>,
    /// Largest star dimension, the top of the target poset; -1 when empty.
    pub max_dim: i64,
    pub monotone: bool,
    /// Pairs `p <= q` of pure strata whose images are out of order.
    pub witnesses: Vec<(String, String)>,
}

impl DepthDimReport {
    pub fn row(&self, stratum: &str) -> Option<&DepthRow> {
        self.rows.iter().find(|r| r.stratum == stratum)
    }

    pub fn depth_of(&self, stratum: &str) -> Option<usize> {
        self.row(stratum).map(|r| r.depth)
    }

    pub fn max_depth(&self) -> usize {
        self.rows.iter().map(|r| r.depth).max().unwrap_or(0)
    }
}

/// Cofaces of every simplex, including itself.
pub(crate) fn cofaces(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    let mut up = vec![Vec::new(); k.len()];
    for t in 0..k.len() {
        for s in k.faces_of(t) {
            up[s].push(t);
        }
    }
    up
}

/// Per-stratum depth and dimension, and the induced map to the depth/dimension poset.
pub fn depth_dim_report(x: &StratifiedComplex) -> DepthDimReport {
    let k = &x.complex;
    let p = &x.poset;
    let up = cofaces(k);
    let dim = |t: usize| k.simplex_at(t).dim();
    // local (star, stratum) dimension at each simplex
    let local: Vec<(usize, usize)> = (0..k.len())
        .map(|s| {
            let star = up[s].iter().map(|&t| dim(t)).max().expect("contains itself");
            let within = up[s].iter().filter(|&&t| x.assignment[t] == x.assignment[s]).map(|&t| dim(t)).max().expect("contains itself");
            (star, within)
        })
        .collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for (s, &a) in x.assignment.iter().enumerate() {
        members[a].push(s);
    }
    let mut rows = Vec::new();
    let mut image: HashMap<usize, (DepthDim, bool)> = HashMap::new();
    let mut empty_strata = Vec::new();
    for (a, ms) in members.iter().enumerate() {
        if ms.is_empty() {
            empty_strata.push(p.id(a).to_string());
            continue;
        }
        let stratum_dim = ms.iter().map(|&s| dim(s)).max().expect("nonempty");
        let star_dim = ms.iter().map(|&s| local[s].0).max().expect("nonempty");
        let pure = ms.iter().all(|&s| local[s] == local[ms[0]]);
        let depth = star_dim - stratum_dim;
        let dd = DepthDim { depth: depth as i64, dim: star_dim as i64 };
        image.insert(a, (dd, pure));
        rows.push(DepthRow { stratum: p.id(a).to_string(), stratum_dim, star_dim, depth, pure, target: dd.id() });
    }
    let mut witnesses = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if a == b || !p.leq(a, b) {
                continue;
            }
            if let (Some((da, true)), Some((db, true))) = (image.get(&a), image.get(&b)) {
                if !da.leq(db) {
                    witnesses.push((p.id(a).to_string(), p.id(b).to_string()));
                }
            }
        }
    }
    DepthDimReport { rows, empty_strata, max_dim: k.dim(), monotone: witnesses.is_empty(), witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::linalg::Coefficients;

    fn s(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|x| x.to_string()).collect()
    }

    fn edge() -> SimplicialComplex {
        SimplicialComplex::new(s(&["a", "b"]), &[s(&["a", "b"])]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let k = edge();
        let p = Poset::chain(1);
        let ok: Vec<usize> = (0..k.len()).map(|i| if k.simplex_at(i).len() == 2 { 1 } else { 0 }).collect();
        assert!(StratifiedComplex::new(k.clone(), p.clone(), ok).is_ok());
        let bad: Vec<usize> = (0..k.len()).map(|i| if k.simplex_at(i).len() == 2 { 0 } else { 1 }).collect();
        match StratifiedComplex::new(k, p, bad) {
            Err(StratError::Invalid(r)) => assert_eq!(r.violations.len(), 2),
            other => panic!("expected violation, got {other:?}"),
        }
        let tri = SimplicialComplex::simplex_boundary(3);
        assert!(face_stratification(&tri).report().is_valid());
    }

    #[test]
    fn face_stratification_examples() {
        assert_eq!(face_stratification(&SimplicialComplex::simplex(2)).poset().len(), 7);
        let circle = face_stratification(&SimplicialComplex::simplex_boundary(2));
        let r = depth_dim_report(&circle);
        assert_eq!(r.rows.len(), 6);
        assert_eq!(r.depth_of("{0}"), Some(1));
        assert_eq!(r.depth_of("{0,1}"), Some(0));
        assert_eq!(face_stratification(&SimplicialComplex::simplex(0)).poset().len(), 1);
    }

    #[test]
    fn standard_stratification_examples() {
        let x0 = standard_simplex_stratification(0).unwrap();
        assert_eq!((x0.complex().len(), x0.poset().len()), (1, 1));
        let x1 = standard_simplex_stratification(1).unwrap();
        assert_eq!(x1.stratum_of(x1.complex().find(&["0"]).unwrap()), "0");
        assert_eq!(x1.stratum_of(x1.complex().find(&["1"]).unwrap()), "1");
        assert_eq!(x1.stratum_of(x1.complex().find(&["0", "1"]).unwrap()), "1");
        let x2 = standard_simplex_stratification(2).unwrap();
        let mut sizes = vec![0; 3];
        for &a in x2.assignment() {
            sizes[a] += 1;
        }
        assert_eq!(sizes, vec![1, 2, 4]);
        assert!(standard_simplex_stratification(-1).is_err());
    }

    #[test]
    fn cone_examples() {
        let pt = face_stratification(&SimplicialComplex::simplex(0));
        let c = cone_strat("*", &pt).unwrap();
        assert_eq!(c.complex().f_vector(), vec![2, 1]);
        assert_eq!(c.poset().elements(), &s(&["*", "{0}"]));
        let disk = cone_strat("*", &face_stratification(&SimplicialComplex::simplex_boundary(2))).unwrap();
        // apex, 3 base vertices; 3 base edges, 3 spokes; 3 triangles
        assert_eq!(disk.complex().f_vector(), vec![4, 6, 3]);
        assert_eq!(disk.poset().len(), 6 + 1);
        assert_eq!(depth_dim_report(&disk).depth_of("*"), Some(2));
        assert!(cone_strat("0", &pt).is_err());
    }

    #[test]
    fn cone_depth_table_by_hand() {
        let disk = cone_strat("*", &face_stratification(&SimplicialComplex::simplex_boundary(2))).unwrap();
        let r = depth_dim_report(&disk);
        // {0} carries the vertex and the spoke {*,0}: stratum dim 1, star dim 2
        assert_eq!(r.row("{0}").unwrap().target, "(1,2)");
        // {0,1} carries the base edge and the triangle {*,0,1}
        assert_eq!(r.row("{0,1}").unwrap().target, "(0,2)");
        assert_eq!(r.row("*").unwrap().target, "(2,2)");
        assert!(r.monotone);
    }

    #[test]
    fn join_examples() {
        let y = face_stratification(&SimplicialComplex::simplex_boundary(2));
        let empty = face_stratification(&SimplicialComplex::empty());
        let j = join_strat(&empty, &y).unwrap();
        assert_eq!(j.complex(), y.complex());
        assert!(poset::is_isomorphic(j.poset(), y.poset()));
        let a = single_stratum(&SimplicialComplex::new(s(&["a"]), &[s(&["a"])]).unwrap(), "p");
        let b = single_stratum(&SimplicialComplex::new(s(&["b"]), &[s(&["b"])]).unwrap(), "q");
        let ab = join_strat(&a, &b).unwrap();
        assert_eq!(ab.complex().f_vector(), vec![2, 1]);
        assert_eq!(ab.poset().len(), 3);
        assert_eq!(ab.poset().minimal_elements().len(), 2);
        let cj = cone_strat("*", &ab).unwrap();
        let prod = poset::product(&poset::cone(a.poset(), "*").unwrap(), &poset::cone(b.poset(), "*").unwrap());
        assert!(poset::is_isomorphic(cj.poset(), &prod));
    }

    #[test]
    fn product_examples() {
        let x = face_stratification(&SimplicialComplex::simplex_boundary(2));
        let pt = face_stratification(&SimplicialComplex::simplex(0));
        let xp = product_strat(&x, &pt);
        assert!(poset::is_isomorphic(xp.poset(), x.poset()));
        assert!(xp.report().is_valid());
        let e = face_stratification(&SimplicialComplex::simplex(1));
        let sq = product_strat(&e, &e);
        assert_eq!(sq.poset().len(), 9);
        assert_eq!(homology(sq.complex(), Coefficients::Rational).betti, vec![1, 0, 0]);
        assert!(sq.report().is_valid());
    }

    #[test]
    fn restrict_examples() {
        let x = face_stratification(&SimplicialComplex::simplex_boundary(2));
        let all: Vec<String> = x.poset().elements().to_vec();
        assert_eq!(restrict(&x, &all).unwrap(), x);

        let std2 = standard_simplex_stratification(2).unwrap();
        let open = restrict(&std2, &["2"]).unwrap();
        assert_eq!(homology(open.complex(), Coefficients::Rational).betti, vec![1, 0, 0]);
        assert_eq!(open.complex().vertices().len(), 4);

        let z = face_stratification(&SimplicialComplex::simplex_boundary(2));
        let c = cone_strat("*", &z).unwrap();
        let punctured = restrict(&c, z.poset().elements()).unwrap();
        assert_eq!(homology(punctured.complex(), Coefficients::Rational).betti[..2], [1, 1]);

        let chain = standard_simplex_stratification(2).unwrap();
        assert!(matches!(restrict(&chain, &["0", "2"]), Err(StratError::NotConsecutive(_))));
    }

    #[test]
    fn depth_examples() {
        let tet = face_stratification(&SimplicialComplex::simplex(3));
        let r = depth_dim_report(&tet);
        for row in &r.rows {
            assert_eq!(row.depth + row.stratum_dim, 3);
            assert_eq!(row.star_dim, 3);
        }
        assert!(r.monotone);
        let single = depth_dim_report(&single_stratum(&SimplicialComplex::simplex_boundary(3), "x"));
        assert_eq!(single.max_depth(), 0);
        let std2 = depth_dim_report(&standard_simplex_stratification(2).unwrap());
        let depths: Vec<usize> = ["0", "1", "2"].iter().map(|p| std2.depth_of(p).unwrap()).collect();
        assert_eq!(depths, vec![2, 1, 0]);
    }

    #[test]
    fn doc_round_trip() {
        let x = standard_simplex_stratification(2).unwrap();
        let doc = x.to_doc();
        let back = StratifiedComplex::from_doc(&doc).unwrap();
        assert_eq!(back.to_doc(), doc);
        let mut missing = doc.clone();
        missing.assignment.pop();
        assert!(matches!(StratifiedComplex::from_doc(&missing), Err(StratError::Unassigned(_))));
    }
}
