//! Constructible sheaves on stratified complexes, presented as functors on
//! the face poset that invert the weak (stratum-preserving) relations.
//!
//! Stalks sit on simplices and maps run from a face to a coface. The
//! cochain complex puts the stalk of the top element on every chain, so
//! degree zero cohomology is the limit, i.e. the space of global sections.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{self, ComplexDoc, SimplicialComplex};
use crate::exitpath::{enter_category, RelativeCategory};
use crate::linalg::{self, Matrix, Rational, SparseVec};
use crate::poset::{self, Poset};
use crate::strat::{self, StratDoc, StratifiedComplex};

use num_traits::{One, Zero};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error("expected one stalk dimension per base element ({expected}), got {found}")]
    DimCount { expected: usize, found: usize },
    #[error("map {src} -> {dst} has shape {found:?}, expected {expected:?}")]
    Shape { src: String, dst: String, expected: (usize, usize), found: (usize, usize) },
    #[error("missing map on covering relation {src} -> {dst}")]
    MissingMap { src: String, dst: String },
    #[error("{src} -> {dst} is not a covering relation")]
    NotACover { src: String, dst: String },
    #[error("unknown base element `{0}`")]
    UnknownElement(String),
    #[error("bad matrix for {src} -> {dst}: {reason}")]
    BadMatrix { src: String, dst: String, reason: String },
    #[error("sheaf is not valid: {0}")]
    Invalid(SheafReport),
    #[error("sheaf does not live on the face poset of the given complex")]
    BaseMismatch,
    #[error("chain functor needs {expected} maps, got {found}")]
    ChainLength { expected: usize, found: usize },
}

/// Two chains of covering relations from `source` to `target` whose composites differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub source: String,
    pub target: String,
    pub first_path: Vec<String>,
    pub second_path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SheafReport {
    pub diamond: Option<Diamond>,
    /// Weak relations whose composite is not invertible.
    pub non_inverting: Vec<(String, String)>,
}

impl SheafReport {
    pub fn is_valid(&self) -> bool {
        self.diamond.is_none() && self.non_inverting.is_empty()
    }
}

impl fmt::Display for SheafReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(d) = &self.diamond {
            parts.push(format!("paths {} and {} from {} to {} disagree", d.first_path.join(" -> "), d.second_path.join(" -> "), d.source, d.target));
        }
        for (a, b) in &self.non_inverting {
            parts.push(format!("weak relation {a} -> {b} is not inverted"));
        }
        if parts.is_empty() {
            write!(f, "valid")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Composite matrices for every relation `a <= b`, or the first diamond
/// that fails to commute.
fn transports(base: &Poset, dims: &[usize], maps: &BTreeMap<(usize, usize), Matrix>) -> Result<HashMap<(usize, usize), Matrix>, Diamond> {
    let n = base.len();
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in maps.keys() {
        lower[b].push(a);
    }
    let position: Vec<usize> = {
        let mut pos = vec![0; n];
        for (i, &e) in base.linear_extension().iter().enumerate() {
            pos[e] = i;
        }
        pos
    };
    let mut table = HashMap::new();
    for s in 0..n {
        let mut up = base.up_set(s);
        up.sort_by_key(|&t| position[t]);
        let mut paths: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in up {
            if t == s {
                table.insert((s, s), Matrix::identity(dims[s]));
                paths.insert(s, vec![s]);
                continue;
            }
            let mut found: Option<(Matrix, Vec<usize>)> = None;
            for &r in lower[t].iter().filter(|&&r| base.leq(s, r)) {
                let m = maps[&(r, t)].mul(&table[&(s, r)]);
                let mut path = paths[&r].clone();
                path.push(t);
                match &found {
                    None => found = Some((m, path)),
                    Some((m0, p0)) if *m0 != m => {
                        let ids = |p: &[usize]| p.iter().map(|&i| base.id(i).to_string()).collect();
                        return Err(Diamond { source: base.id(s).to_string(), target: base.id(t).to_string(), first_path: ids(p0), second_path: ids(&path) });
                    }
                    Some(_) => {}
                }
            }
            let (m, path) = found.expect("every strict relation factors through a cover");
            table.insert((s, t), m);
            paths.insert(t, path);
        }
    }
    Ok(table)
}

fn check_shapes(carrier: &RelativeCategory, dims: &[usize], maps: &BTreeMap<(usize, usize), Matrix>) -> Result<(), SheafError> {
    let base = carrier.base();
    if dims.len() != base.len() {
        return Err(SheafError::DimCount { expected: base.len(), found: dims.len() });
    }
    let covers = base.covers();
    let name = |i: usize| base.id(i).to_string();
    for (&(a, b), m) in maps {
        if covers.binary_search(&(a, b)).is_err() {
            return Err(SheafError::NotACover { src: name(a), dst: name(b) });
        }
        if (m.rows(), m.cols()) != (dims[b], dims[a]) {
            return Err(SheafError::Shape { src: name(a), dst: name(b), expected: (dims[b], dims[a]), found: (m.rows(), m.cols()) });
        }
    }
    if let Some(&(a, b)) = covers.iter().find(|c| !maps.contains_key(c)) {
        return Err(SheafError::MissingMap { src: name(a), dst: name(b) });
    }
    Ok(())
}

/// Shape checks (as errors), then path independence and weak inversion (as a report).
pub fn validate_sheaf(carrier: &RelativeCategory, dims: &[usize], maps: &BTreeMap<(usize, usize), Matrix>) -> Result<SheafReport, SheafError> {
    check_shapes(carrier, dims, maps)?;
    Ok(match transports(carrier.base(), dims, maps) {
        Err(d) => SheafReport { diamond: Some(d), non_inverting: Vec::new() },
        Ok(t) => SheafReport { diamond: None, non_inverting: non_inverting(carrier, &t) },
    })
}

fn non_inverting(carrier: &RelativeCategory, t: &HashMap<(usize, usize), Matrix>) -> Vec<(String, String)> {
    let base = carrier.base();
    carrier.weak().iter().filter(|&&(a, b)| !t[&(a, b)].is_invertible()).map(|&(a, b)| (base.id(a).to_string(), base.id(b).to_string())).collect()
}

/// A validated weak-inverting functor from a relative poset to ℚ-vector spaces.
#[derive(Clone)]
pub struct Sheaf {
    carrier: RelativeCategory,
    dims: Vec<usize>,
    maps: BTreeMap<(usize, usize), Matrix>,
    transport: HashMap<(usize, usize), Matrix>,
}

impl PartialEq for Sheaf {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.dims == other.dims && self.maps == other.maps
    }
}

impl fmt::Debug for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sheaf").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

impl Sheaf {
    pub fn new(carrier: RelativeCategory, dims: Vec<usize>, maps: BTreeMap<(usize, usize), Matrix>) -> Result<Self, SheafError> {
        check_shapes(&carrier, &dims, &maps)?;
        let transport =
            transports(carrier.base(), &dims, &maps).map_err(|d| SheafError::Invalid(SheafReport { diamond: Some(d), non_inverting: Vec::new() }))?;
        let bad = non_inverting(&carrier, &transport);
        if !bad.is_empty() {
            return Err(SheafError::Invalid(SheafReport { diamond: None, non_inverting: bad }));
        }
        Ok(Sheaf { carrier, dims, maps, transport })
    }

    /// Builds the sheaf whose covering map `a -> b` is `edge(a, b)`.
    pub fn from_covers(carrier: RelativeCategory, dims: Vec<usize>, edge: impl Fn(usize, usize) -> Matrix) -> Result<Self, SheafError> {
        let maps = carrier.base().covers().into_iter().map(|(a, b)| ((a, b), edge(a, b))).collect();
        Self::new(carrier, dims, maps)
    }

    pub fn carrier(&self) -> &RelativeCategory {
        &self.carrier
    }

    pub fn base(&self) -> &Poset {
        self.carrier.base()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.maps
    }

    /// The composite map for `a <= b`.
    pub fn transport(&self, a: usize, b: usize) -> Option<&Matrix> {
        self.transport.get(&(a, b))
    }

    pub fn from_doc(doc: &SheafDoc, x: &StratifiedComplex) -> Result<Self, SheafError> {
        let carrier = enter_category(x);
        let base = carrier.base();
        let lookup = |id: &str| base.index_of(id).ok_or_else(|| SheafError::UnknownElement(id.to_string()));
        let mut dims = vec![usize::MAX; base.len()];
        for (id, &d) in &doc.dims {
            dims[lookup(id)?] = d;
        }
        if let Some(i) = dims.iter().position(|&d| d == usize::MAX) {
            return Err(SheafError::UnknownElement(format!("no stalk dimension for {}", base.id(i))));
        }
        let mut maps = BTreeMap::new();
        for (src, dst, rows) in &doc.maps {
            let (a, b) = (lookup(src)?, lookup(dst)?);
            let m = Matrix::parse(dims[b], dims[a], rows).map_err(|reason| SheafError::BadMatrix { src: src.clone(), dst: dst.clone(), reason })?;
            maps.insert((a, b), m);
        }
        for (a, b) in base.covers() {
            if dims[a] == 0 || dims[b] == 0 {
                maps.entry((a, b)).or_insert_with(|| Matrix::zeros(dims[b], dims[a]));
            }
        }
        Self::new(carrier, dims, maps)
    }

    pub fn to_doc(&self, base: SheafBase) -> SheafDoc {
        let p = self.base();
        SheafDoc {
            base,
            dims: (0..p.len()).map(|i| (p.id(i).to_string(), self.dims[i])).collect(),
            maps: self
                .maps
                .iter()
                .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
                .map(|(&(a, b), m)| (p.id(a).to_string(), p.id(b).to_string(), m.to_strings()))
                .collect(),
        }
    }
}

/// Where a sheaf document's base comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SheafBase {
    /// A named document or corpus entry, resolved by the caller.
    Ref(String),
    Stratified(Box<StratDoc>),
    Complex(ComplexDoc),
}

/// JSON form: stalk dimensions by simplex label, and covering maps with
/// rational entries as `"p/q"` strings. Maps with a zero-dimensional side
/// may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDoc {
    pub base: SheafBase,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: Vec<(String, String, Vec<Vec<String>>)>,
}

/// All stalks `ℚ^rank`, all maps the identity.
pub fn constant_sheaf(x: &StratifiedComplex, rank: usize) -> Sheaf {
    let carrier = enter_category(x);
    let n = carrier.base().len();
    Sheaf::from_covers(carrier, vec![rank; n], |_, _| Matrix::identity(rank)).expect("constant functors are valid")
}

/// Every covering map is invertible.
pub fn is_locally_constant(f: &Sheaf) -> bool {
    f.maps.values().all(Matrix::is_invertible)
}

/// Dimension and a basis of the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSections {
    pub dim: usize,
    /// Each basis vector as one component per base element.
    pub basis: Vec<Vec<Vec<Rational>>>,
}

impl GlobalSections {
    /// Basis rendered with `"p/q"` entries, keyed by element identifier.
    pub fn basis_strings(&self, base: &Poset) -> Vec<BTreeMap<String, Vec<String>>> {
        self.basis.iter().map(|v| v.iter().enumerate().map(|(i, c)| (base.id(i).to_string(), c.iter().map(ToString::to_string).collect())).collect()).collect()
    }
}

fn offsets(dims: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(dims.len());
    let mut total = 0;
    for &d in dims {
        off.push(total);
        total += d;
    }
    (off, total)
}

/// Families `(x_a)` with `M_ab x_a = x_b` on every covering relation.
pub fn global_sections(f: &Sheaf) -> GlobalSections {
    let (off, total) = offsets(&f.dims);
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); total];
    let mut row = 0;
    for (&(a, b), m) in &f.maps {
        for r in 0..f.dims[b] {
            for j in 0..f.dims[a] {
                let v = m.get(r, j);
                if !v.is_zero() {
                    cols[off[a] + j].push((row + r, v.clone()));
                }
            }
            cols[off[b] + r].push((row + r, -Rational::one()));
        }
        row += f.dims[b];
    }
    let cols: Vec<SparseVec<Rational>> = cols.into_iter().map(linalg::sparse_from_entries).collect();
    let kernel = linalg::reduce_columns(cols, true).kernel;
    let basis = kernel
        .iter()
        .map(|v| {
            let mut dense = vec![Rational::zero(); total];
            for (i, x) in v {
                dense[*i] = x.clone();
            }
            (0..f.dims.len()).map(|a| dense[off[a]..off[a] + f.dims[a]].to_vec()).collect()
        })
        .collect();
    GlobalSections { dim: kernel.len(), basis }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfile {
    /// `dims[n]` is the dimension of `Hⁿ`, for `n` up to the length of the longest chain.
    pub dims: Vec<usize>,
    pub euler: i64,
    /// Dimensions of the cochain groups.
    pub cochain_dims: Vec<usize>,
}

/// Cohomology of the chain cochain complex.
///
/// Panics if the two Euler characteristics disagree.
pub fn cohomology(f: &Sheaf) -> CohomologyProfile {
    let (nerve, origin) = poset::nerve(f.base());
    if nerve.is_empty() {
        return CohomologyProfile { dims: Vec::new(), euler: 0, cochain_dims: Vec::new() };
    }
    let top = nerve.dim() as usize;
    let top_of = |c: usize| origin[*nerve.simplex_at(c).vertices().last().expect("nonempty chain")];
    let mut offset = vec![0; nerve.len()];
    let mut cdim = vec![0usize; top + 1];
    for c in 0..nerve.len() {
        let d = nerve.simplex_at(c).dim();
        offset[c] = cdim[d];
        cdim[d] += f.dims[top_of(c)];
    }
    let mut ranks = vec![0usize; top + 1];
    for n in 0..top {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cdim[n]];
        for c in (0..nerve.len()).filter(|&c| nerve.simplex_at(c).dim() == n + 1) {
            let t = top_of(c);
            let row0 = offset[c];
            for (i, face) in nerve.facets_of(c).into_iter().enumerate() {
                let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                let col0 = offset[face];
                if i <= n {
                    for r in 0..f.dims[t] {
                        cols[col0 + r].push((row0 + r, sign.clone()));
                    }
                } else {
                    let m = &f.transport[&(top_of(face), t)];
                    for r in 0..m.rows() {
                        for j in 0..m.cols() {
                            let v = m.get(r, j);
                            if !v.is_zero() {
                                cols[col0 + j].push((row0 + r, &sign * v));
                            }
                        }
                    }
                }
            }
        }
        ranks[n] = linalg::rank(cols.into_iter().map(linalg::sparse_from_entries).collect());
    }
    let dims: Vec<usize> = (0..=top).map(|n| cdim[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect();
    let alt = |v: &[usize]| v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
    let euler = alt(&cdim);
    assert_eq!(alt(&dims), euler, "Euler characteristic of cochains and cohomology differ");
    CohomologyProfile { dims, euler, cochain_dims: cdim }
}

/// Pulls `f` back along a monotone map `fine -> base`. The weak relations
/// of the result are those sent to identities or to weak relations.
pub fn pullback_along(f: &Sheaf, fine: Poset, map: &[usize]) -> Result<Sheaf, SheafError> {
    let mut weak = Vec::new();
    for a in 0..fine.len() {
        for b in fine.up_set(a) {
            if a != b && (map[a] == map[b] || f.carrier.is_weak(map[a], map[b])) {
                weak.push((a, b));
            }
        }
    }
    let carrier = RelativeCategory::new(fine, weak).map_err(|_| SheafError::BaseMismatch)?;
    let dims = map.iter().map(|&c| f.dims[c]).collect();
    Sheaf::from_covers(carrier, dims, |a, b| f.transport[&(map[a], map[b])].clone())
}

/// Pullback along the refinement `Face(Sd K) -> Face(K)` sending a chain to its maximum.
pub fn pullback_refinement(f: &Sheaf, k: &SimplicialComplex) -> Result<Sheaf, SheafError> {
    if f.base().elements() != k.face_poset().elements() {
        return Err(SheafError::BaseMismatch);
    }
    let sd = complex::subdivide(k);
    pullback_along(f, sd.complex.face_poset(), &sd.carrier)
}

/// A functor on the chain `0 < 1 < ... < n`: stalks and the maps `i -> i+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFunctor {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl ChainFunctor {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Composite map `i -> j` for `i <= j`.
    pub fn composite(&self, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::identity(self.dims[i]);
        for step in i..j {
            m = self.maps[step].mul(&m);
        }
        m
    }

    /// As a sheaf on the chain itself (no weak relations).
    pub fn as_sheaf(&self) -> Result<Sheaf, SheafError> {
        let n = self.dims.len();
        if self.maps.len() + 1 != n {
            return Err(SheafError::ChainLength { expected: n.saturating_sub(1), found: self.maps.len() });
        }
        let carrier = RelativeCategory::new(Poset::chain(n - 1), []).expect("no weak pairs");
        Sheaf::from_covers(carrier, self.dims.clone(), |a, _| self.maps[a].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoarseEquivalenceReport {
    pub n: usize,
    pub weak_inverting: bool,
    /// Cohomology over the face poset of the simplex.
    pub face_side: Vec<usize>,
    /// Cohomology over the chain directly.
    pub chain_side: Vec<usize>,
    pub agree: bool,
}

/// Induces a sheaf on the standard stratified Δⁿ from a functor on `[n]`
/// and compares its cohomology with the functor's own.
pub fn coarse_equivalence_check(n: usize, g: &ChainFunctor) -> Result<CoarseEquivalenceReport, SheafError> {
    let chain = g.as_sheaf()?;
    if g.len() != n + 1 {
        return Err(SheafError::ChainLength { expected: n, found: g.maps.len() });
    }
    let x = strat::standard_simplex_stratification(n as i64).expect("n is non-negative");
    let carrier = enter_category(&x);
    let a = x.assignment().to_vec();
    let dims = a.iter().map(|&s| g.dims[s]).collect();
    let induced = Sheaf::from_covers(carrier, dims, |s, t| g.composite(a[s], a[t]));
    let (weak_inverting, face_side) = match induced {
        Ok(f) => (true, cohomology(&f).dims),
        Err(SheafError::Invalid(_)) => (false, Vec::new()),
        Err(e) => return Err(e),
    };
    let chain_side = cohomology(&chain).dims;
    Ok(CoarseEquivalenceReport { n, weak_inverting, agree: weak_inverting && face_side == chain_side, face_side, chain_side })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::linalg::Coefficients;
    use crate::strat::{face_stratification, standard_simplex_stratification};

    fn circle() -> StratifiedComplex {
        face_stratification(&SimplicialComplex::simplex_boundary(2))
    }

    /// Rank-one system on the triangle boundary with one edge map set to `sign`.
    fn local_system(sign: i64) -> Sheaf {
        let x = circle();
        let flip = (x.poset().require("{0}").unwrap(), x.poset().require("{0,1}").unwrap());
        Sheaf::from_covers(enter_category(&x), vec![1; 6], |a, b| Matrix::from_i64_rows(&[&[if (a, b) == flip { sign } else { 1 }]])).unwrap()
    }

    #[test]
    fn constant_sheaf_examples() {
        let zero = cohomology(&constant_sheaf(&circle(), 0));
        assert!(zero.dims.iter().all(|&d| d == 0));
        assert_eq!(cohomology(&constant_sheaf(&circle(), 1)).dims, vec![1, 1]);
        let disk = face_stratification(&SimplicialComplex::simplex(2));
        assert_eq!(cohomology(&constant_sheaf(&disk, 1)).dims, vec![1, 0, 0]);
    }

    #[test]
    fn validation_examples() {
        let x = face_stratification(&SimplicialComplex::simplex(2));
        let f = constant_sheaf(&x, 1);
        assert!(validate_sheaf(f.carrier(), f.dims(), f.maps()).unwrap().is_valid());
        let p = x.poset();
        let bad = (p.require("{0,1}").unwrap(), p.require("{0,1,2}").unwrap());
        let mut maps = f.maps().clone();
        maps.insert(bad, Matrix::from_i64_rows(&[&[2]]));
        let report = validate_sheaf(f.carrier(), f.dims(), &maps).unwrap();
        let d = report.diamond.expect("non-commuting square");
        assert_eq!(d.target, "{0,1,2}");
        maps.insert(bad, Matrix::zeros(2, 1));
        assert!(matches!(validate_sheaf(f.carrier(), f.dims(), &maps), Err(SheafError::Shape { .. })));
        // tree-shaped Hasse diagram: every map assignment commutes
        let path = face_stratification(&SimplicialComplex::simplex(1));
        let g = Sheaf::from_covers(enter_category(&path), vec![1; 3], |a, _| Matrix::from_i64_rows(&[&[a as i64 + 2]]));
        assert!(g.is_ok());
    }

    #[test]
    fn weak_relations_must_be_inverted() {
        let x = standard_simplex_stratification(1).unwrap();
        let zero = Sheaf::from_covers(enter_category(&x), vec![1; 3], |_, _| Matrix::zeros(1, 1));
        match zero {
            Err(SheafError::Invalid(r)) => assert_eq!(r.non_inverting, vec![("{1}".to_string(), "{0,1}".to_string())]),
            other => panic!("expected weak failure, got {other:?}"),
        }
    }

    #[test]
    fn local_constancy_examples() {
        assert!(is_locally_constant(&constant_sheaf(&circle(), 2)));
        let x = standard_simplex_stratification(1).unwrap();
        let rc = enter_category(&x);
        let (v0, e) = (rc.base().require("{0}").unwrap(), rc.base().require("{0,1}").unwrap());
        let f = Sheaf::from_covers(rc, vec![1; 3], |a, b| Matrix::from_i64_rows(&[&[i64::from((a, b) != (v0, e))]])).unwrap();
        assert!(!is_locally_constant(&f));
        assert!(is_locally_constant(&local_system(-1)));
    }

    #[test]
    fn global_section_examples() {
        assert_eq!(global_sections(&constant_sheaf(&circle(), 1)).dim, 1);
        assert_eq!(global_sections(&local_system(-1)).dim, 0);
        let two = crate::complex::disjoint_union(&SimplicialComplex::simplex(1), &SimplicialComplex::simplex(2));
        let s = global_sections(&constant_sheaf(&face_stratification(&two), 1));
        assert_eq!(s.dim, 2);
        for v in &s.basis {
            assert_eq!(v.len(), two.len());
        }
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(cohomology(&local_system(1)).dims, vec![1, 1]);
        let minus = cohomology(&local_system(-1));
        assert_eq!(minus.dims, vec![0, 0]);
        assert_eq!(minus.cochain_dims, vec![6, 6]);
    }

    #[test]
    fn constant_sheaf_matches_homology() {
        for k in [SimplicialComplex::simplex_boundary(3), SimplicialComplex::simplex(2), SimplicialComplex::simplex_boundary(2)] {
            let x = face_stratification(&k);
            assert_eq!(cohomology(&constant_sheaf(&x, 1)).dims, homology(&k, Coefficients::Rational).betti);
        }
    }

    #[test]
    fn pullback_examples() {
        let k = SimplicialComplex::simplex_boundary(2);
        let c = constant_sheaf(&circle(), 1);
        let pc = pullback_refinement(&c, &k).unwrap();
        assert!(pc.maps().values().all(|m| *m == Matrix::identity(1)));
        assert!(pc.dims().iter().all(|&d| d == 1));
        for sign in [1, -1] {
            let f = local_system(sign);
            let g = pullback_refinement(&f, &k).unwrap();
            assert_eq!(cohomology(&g).dims, cohomology(&f).dims);
            assert_eq!(is_locally_constant(&g), is_locally_constant(&f));
        }
        assert!(matches!(pullback_refinement(&c, &SimplicialComplex::simplex(2)), Err(SheafError::BaseMismatch)));
    }

    #[test]
    fn double_pullback_matches_direct_carrier() {
        let k = SimplicialComplex::simplex(1);
        let x = standard_simplex_stratification(1).unwrap();
        let rc = enter_category(&x);
        let f = Sheaf::from_covers(rc, vec![2, 1, 1], |a, _| if a == 0 { Matrix::from_i64_rows(&[&[1, 3]]) } else { Matrix::identity(1) }).unwrap();
        let sd = complex::subdivide(&k);
        let twice = pullback_refinement(&pullback_refinement(&f, &k).unwrap(), &sd.complex).unwrap();
        // direct carrier: the union of all vertex sets in a chain of chains
        let sd2 = complex::subdivide(&sd.complex);
        let direct: Vec<usize> = (0..sd2.complex.len())
            .map(|c| {
                let mut verts: Vec<usize> = Vec::new();
                for &v in sd2.complex.simplex_at(c).vertices() {
                    for &w in sd.complex.simplex_at(sd2.origin[v]).vertices() {
                        verts.extend_from_slice(k.simplex_at(sd.origin[w]).vertices());
                    }
                }
                k.index_of(&complex::Simplex::new(verts)).unwrap()
            })
            .collect();
        let once = pullback_along(&f, sd2.complex.face_poset(), &direct).unwrap();
        assert_eq!(twice.dims(), once.dims());
        assert_eq!(twice.maps(), once.maps());
    }

    #[test]
    fn coarse_equivalence_examples() {
        let zero_map = ChainFunctor { dims: vec![1, 1], maps: vec![Matrix::zeros(1, 1)] };
        let r = coarse_equivalence_check(1, &zero_map).unwrap();
        assert!(r.agree);
        assert_eq!(r.chain_side, vec![1, 0]);
        let id = ChainFunctor { dims: vec![1, 1, 1], maps: vec![Matrix::identity(1), Matrix::identity(1)] };
        let r = coarse_equivalence_check(2, &id).unwrap();
        assert_eq!((r.face_side.clone(), r.agree), (vec![1, 0, 0], true));
        let proj = ChainFunctor { dims: vec![2, 1], maps: vec![Matrix::from_i64_rows(&[&[1, 0]])] };
        let r = coarse_equivalence_check(1, &proj).unwrap();
        // the limit over a chain is the stalk at its minimum
        assert_eq!(r.chain_side, vec![2, 0]);
        assert!(r.agree);
    }

    #[test]
    fn doc_round_trip() {
        let f = local_system(-1);
        let doc = f.to_doc(SheafBase::Ref("corpus:boundary-delta2-faces".into()));
        let back = Sheaf::from_doc(&doc, &circle()).unwrap();
        assert_eq!(back, f);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: SheafDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);
    }
}
