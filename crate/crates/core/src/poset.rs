//! Finite posets with the Alexandrov topology (open = upward closed) and the
//! constructions used to stratify spaces: products, cones, joins, the
//! depth/dimension poset, and nerves.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;

/// Identifier used for the adjoined minimum of a cone.
pub const APEX: &str = "*";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not a partial order: {0}")]
    Invalid(PosetReport),
    #[error("identifier `{0}` collides with an existing element")]
    Collision(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("maximal dimension must be at least -1, got {0}")]
    BadDimension(i64),
}

/// A single failed poset axiom, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum PosetViolation {
    Reflexivity { element: String },
    Antisymmetry { a: String, b: String },
    Transitivity { a: String, b: String, c: String },
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetViolation::Reflexivity { element } => write!(f, "not reflexive at {element}"),
            PosetViolation::Antisymmetry { a, b } => write!(f, "{a} <= {b} and {b} <= {a}"),
            PosetViolation::Transitivity { a, b, c } => write!(f, "{a} <= {b} <= {c} but not {a} <= {c}"),
        }
    }
}

/// Every violated axiom of a relation. Empty iff the relation is a partial order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PosetReport {
    pub violations: Vec<PosetViolation>,
}

impl PosetReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for PosetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A binary relation on a finite set, not yet known to be a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    elements: Vec<String>,
    matrix: Vec<bool>,
}

impl Relation {
    /// Builds a relation from explicit pairs. Reflexive pairs are *not* added.
    pub fn new(elements: Vec<String>, pairs: &[(String, String)]) -> Result<Self, PosetError> {
        let index = index_elements(&elements)?;
        let n = elements.len();
        let mut matrix = vec![false; n * n];
        for (a, b) in pairs {
            let i = *index.get(a).ok_or_else(|| PosetError::UnknownElement(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| PosetError::UnknownElement(b.clone()))?;
            matrix[i * n + j] = true;
        }
        Ok(Relation { elements, matrix })
    }

    /// Builds a relation from a predicate on indices.
    pub fn from_fn(elements: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        index_elements(&elements)?;
        let n = elements.len();
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = rel(i, j);
            }
        }
        Ok(Relation { elements, matrix })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.elements.len() + j]
    }

    /// Adds all reflexive pairs.
    pub fn with_reflexive(mut self) -> Self {
        let n = self.elements.len();
        for i in 0..n {
            self.matrix[i * n + i] = true;
        }
        self
    }

    /// Reports every violated axiom with witnesses.
    pub fn validate(&self) -> PosetReport {
        let n = self.elements.len();
        let name = |i: usize| self.elements[i].clone();
        let mut violations = Vec::new();
        for i in 0..n {
            if !self.holds(i, i) {
                violations.push(PosetViolation::Reflexivity { element: name(i) });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.holds(i, j) && self.holds(j, i) {
                    violations.push(PosetViolation::Antisymmetry { a: name(i), b: name(j) });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.holds(i, j) {
                    continue;
                }
                for k in 0..n {
                    if k != j && self.holds(j, k) && !self.holds(i, k) {
                        violations.push(PosetViolation::Transitivity { a: name(i), b: name(j), c: name(k) });
                    }
                }
            }
        }
        PosetReport { violations }
    }
}

/// Validates a raw relation (the `validate_poset` operation).
pub fn validate_poset(relation: &Relation) -> PosetReport {
    relation.validate()
}

fn index_elements(elements: &[String]) -> Result<HashMap<String, usize>, PosetError> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(e.clone()));
        }
    }
    Ok(index)
}

/// JSON form of a poset: the full relation, reflexive pairs optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

/// A finite partially ordered set.
///
/// The order is stored as a full relation matrix so that `leq` is O(1);
/// covering relations are derived on demand.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    matrix: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset").field("elements", &self.elements).field("covers", &self.cover_ids()).finish()
    }
}

impl TryFrom<Relation> for Poset {
    type Error = PosetError;

    fn try_from(relation: Relation) -> Result<Self, Self::Error> {
        let report = relation.validate();
        if !report.is_valid() {
            return Err(PosetError::Invalid(report));
        }
        let index = index_elements(&relation.elements)?;
        Ok(Poset { elements: relation.elements, index, matrix: relation.matrix })
    }
}

impl Poset {
    pub fn empty() -> Self {
        Poset { elements: Vec::new(), index: HashMap::new(), matrix: Vec::new() }
    }

    /// One-element poset.
    pub fn point(id: &str) -> Self {
        Self::antichain(&[id])
    }

    pub fn antichain<S: AsRef<str>>(ids: &[S]) -> Self {
        let elements: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_fn_unchecked(elements, |i, j| i == j)
    }

    /// The chain `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        let elements = (0..=n).map(|i| i.to_string()).collect();
        Self::from_fn_unchecked(elements, |i, j| i <= j)
    }

    /// Chain on the given identifiers, in order.
    pub fn chain_of<S: AsRef<str>>(ids: &[S]) -> Self {
        let elements = ids.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_fn_unchecked(elements, |i, j| i <= j)
    }

    /// Trusted constructor for relations that are partial orders by construction.
    pub(crate) fn from_fn_unchecked(elements: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = rel(i, j);
            }
        }
        let index = index_elements(&elements).expect("constructed poset has unique identifiers");
        let p = Poset { elements, index, matrix };
        debug_assert!(p.len() > 64 || p.relation().validate().is_valid(), "constructed relation is not a partial order");
        p
    }

    /// Reflexive-transitive closure of `pairs`; fails if the closure is not antisymmetric.
    pub fn from_generators(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let index = index_elements(&elements)?;
        let n = elements.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for &(a, b) in pairs {
            m[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let relation = Relation { elements, matrix: m };
        let report = relation.validate();
        if !report.is_valid() {
            return Err(PosetError::Invalid(report));
        }
        Ok(Poset { elements: relation.elements, index, matrix: relation.matrix })
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self, PosetError> {
        Poset::try_from(Relation::new(doc.elements.clone(), &doc.leq)?.with_reflexive())
    }

    /// Elements sorted, strict relations listed in full and sorted.
    pub fn to_doc(&self) -> PosetDoc {
        let mut elements = self.elements.clone();
        elements.sort();
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq(i, j) {
                    leq.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        leq.sort();
        PosetDoc { elements, leq }
    }

    pub fn relation(&self) -> Relation {
        Relation { elements: self.elements.clone(), matrix: self.matrix.clone() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn id(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize, PosetError> {
        self.index_of(id).ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.elements.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            let above: Vec<usize> = (0..n).filter(|&b| self.lt(a, b)).collect();
            for &b in &above {
                if !above.iter().any(|&c| self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn cover_ids(&self) -> Vec<(String, String)> {
        self.covers().into_iter().map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone())).collect()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !(0..self.len()).any(|j| self.lt(j, i))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !(0..self.len()).any(|j| self.lt(i, j))).collect()
    }

    /// Open in the Alexandrov topology.
    pub fn is_upward_closed(&self, subset: &[bool]) -> bool {
        (0..self.len()).all(|i| !subset[i] || self.up_set(i).into_iter().all(|j| subset[j]))
    }

    /// Closed in the Alexandrov topology.
    pub fn is_downward_closed(&self, subset: &[bool]) -> bool {
        (0..self.len()).all(|i| !subset[i] || self.down_set(i).into_iter().all(|j| subset[j]))
    }

    /// First pair `(inside, outside)` with `outside <= inside`, if any.
    pub fn downward_closure_witness(&self, subset: &[bool]) -> Option<(usize, usize)> {
        (0..self.len()).filter(|&i| subset[i]).find_map(|i| self.down_set(i).into_iter().find(|&j| !subset[j]).map(|j| (i, j)))
    }

    pub fn upward_closure(&self, subset: &[bool]) -> Vec<bool> {
        (0..self.len()).map(|j| (0..self.len()).any(|i| subset[i] && self.leq(i, j))).collect()
    }

    pub fn downward_closure(&self, subset: &[bool]) -> Vec<bool> {
        (0..self.len()).map(|j| (0..self.len()).any(|i| subset[i] && self.leq(j, i))).collect()
    }

    /// Converts identifiers to a membership mask.
    pub fn mask<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<bool>, PosetError> {
        let mut mask = vec![false; self.len()];
        for id in ids {
            mask[self.require(id.as_ref())?] = true;
        }
        Ok(mask)
    }

    /// Every downward-closed subset as a mask. Exponential in general;
    /// meant for small posets.
    pub fn down_sets(&self) -> Vec<Vec<bool>> {
        fn grow(p: &Poset, order: &[usize], mask: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            let Some((&e, rest)) = order.split_first() else {
                out.push(mask.clone());
                return;
            };
            grow(p, rest, mask, out);
            if (0..p.len()).all(|j| !p.lt(j, e) || mask[j]) {
                mask[e] = true;
                grow(p, rest, mask, out);
                mask[e] = false;
            }
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        grow(self, &order, &mut vec![false; self.len()], &mut out);
        out
    }

    /// Induced subposet on the selected elements, preserving their order of appearance.
    pub fn induced(&self, subset: &[bool]) -> Poset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| subset[i]).collect();
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        Self::from_fn_unchecked(elements, |a, b| self.leq(keep[a], keep[b]))
    }

    /// Linear extension: Kahn's algorithm, always emitting the available
    /// element with the smallest identifier.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut below: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| self.lt(j, i)).count()).collect();
        let mut heap: BinaryHeap<Reverse<(&str, usize)>> = (0..n).filter(|&i| below[i] == 0).map(|i| Reverse((self.elements[i].as_str(), i))).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = heap.pop() {
            order.push(i);
            for j in 0..n {
                if self.lt(i, j) {
                    below[j] -= 1;
                    if below[j] == 0 {
                        heap.push(Reverse((self.elements[j].as_str(), j)));
                    }
                }
            }
        }
        order
    }

    /// Length (number of elements) of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut h = vec![1; self.len()];
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[..pos] {
                if self.lt(j, i) {
                    h[i] = h[i].max(h[j] + 1);
                }
            }
        }
        h
    }
}

/// Product order on pairs; identifiers `(a,b)`.
pub fn product(p: &Poset, q: &Poset) -> Poset {
    let m = q.len();
    let elements = p.elements.iter().flat_map(|a| q.elements.iter().map(move |b| pair_id(a, b))).collect();
    Poset::from_fn_unchecked(elements, |x, y| p.leq(x / m, y / m) && q.leq(x % m, y % m))
}

/// `n`-fold product `P^n`, identifiers `(a1,...,an)`.
pub fn power(p: &Poset, n: usize) -> Poset {
    let tuples = tuples(p.len(), n);
    let elements = tuples.iter().map(|t| format!("({})", t.iter().map(|&i| p.id(i)).collect::<Vec<_>>().join(","))).collect();
    Poset::from_fn_unchecked(elements, |x, y| tuples[x].iter().zip(&tuples[y]).all(|(&a, &b)| p.leq(a, b)))
}

/// All length-`n` tuples over `0..k`, lexicographic.
pub(crate) fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

pub(crate) fn pair_id(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Adjoins a new minimum with identifier `apex`.
pub fn cone(p: &Poset, apex: &str) -> Result<Poset, PosetError> {
    if p.index_of(apex).is_some() {
        return Err(PosetError::Collision(apex.to_string()));
    }
    let mut elements = Vec::with_capacity(p.len() + 1);
    elements.push(apex.to_string());
    elements.extend(p.elements.iter().cloned());
    Ok(Poset::from_fn_unchecked(elements, |i, j| i == 0 || (j > 0 && p.leq(i - 1, j - 1))))
}

/// The poset `P ⊔ Q ⊔ (P×Q)` whose cone is the product of the cones.
///
/// Order: `P` and `Q` keep their orders, `P×Q` has the product order, and
/// `a <= (c,d)` iff `a <= c`, `b <= (c,d)` iff `b <= d`.
pub fn join_poset(p: &Poset, q: &Poset) -> Result<Poset, PosetError> {
    let (np, nq) = (p.len(), q.len());
    let mut elements: Vec<String> = p.elements.iter().chain(q.elements.iter()).cloned().collect();
    for a in &p.elements {
        for b in &q.elements {
            elements.push(pair_id(a, b));
        }
    }
    let mut seen = HashMap::new();
    for e in &elements {
        if seen.insert(e.as_str(), ()).is_some() {
            return Err(PosetError::Collision(e.clone()));
        }
    }
    #[derive(Clone, Copy)]
    enum Part {
        Left(usize),
        Right(usize),
        Pair(usize, usize),
    }
    let part = |i: usize| {
        if i < np {
            Part::Left(i)
        } else if i < np + nq {
            Part::Right(i - np)
        } else {
            let k = i - np - nq;
            Part::Pair(k / nq, k % nq)
        }
    };
    Ok(Poset::from_fn_unchecked(elements, |x, y| match (part(x), part(y)) {
        (Part::Left(a), Part::Left(c)) => p.leq(a, c),
        (Part::Right(b), Part::Right(d)) => q.leq(b, d),
        (Part::Pair(a, b), Part::Pair(c, d)) => p.leq(a, c) && q.leq(b, d),
        (Part::Left(a), Part::Pair(c, _)) => p.leq(a, c),
        (Part::Right(b), Part::Pair(_, d)) => q.leq(b, d),
        _ => false,
    }))
}

/// Disjoint union with identifiers tagged `L:a` and `R:b`.
pub fn disjoint_union(p: &Poset, q: &Poset) -> Poset {
    let np = p.len();
    let elements = p.elements.iter().map(|a| format!("L:{a}")).chain(q.elements.iter().map(|b| format!("R:{b}"))).collect();
    Poset::from_fn_unchecked(elements, |x, y| match (x < np, y < np) {
        (true, true) => p.leq(x, y),
        (false, false) => q.leq(x - np, y - np),
        _ => false,
    })
}

/// A point of the depth/dimension poset: `-1 <= depth <= dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DepthDim {
    pub depth: i64,
    pub dim: i64,
}

impl DepthDim {
    pub fn new(depth: i64, dim: i64) -> Option<Self> {
        (-1 <= depth && depth <= dim).then_some(DepthDim { depth, dim })
    }

    /// `(k,n) <= (k',n')` iff `k >= k'` and `n >= n'`: deeper and bigger is lower.
    pub fn leq(&self, other: &DepthDim) -> bool {
        self.depth >= other.depth && self.dim >= other.dim
    }

    pub fn id(&self) -> String {
        format!("({},{})", self.depth, self.dim)
    }
}

impl fmt::Display for DepthDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.depth, self.dim)
    }
}

/// The depth/dimension poset truncated at `maxdim`.
pub fn pp_make(maxdim: i64) -> Result<Poset, PosetError> {
    if maxdim < -1 {
        return Err(PosetError::BadDimension(maxdim));
    }
    let pts: Vec<DepthDim> = (-1..=maxdim).flat_map(|n| (-1..=n).map(move |k| DepthDim { depth: k, dim: n })).collect();
    let elements = pts.iter().map(DepthDim::id).collect();
    Ok(Poset::from_fn_unchecked(elements, |i, j| pts[i].leq(&pts[j])))
}

/// Outcome of a consecutiveness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Consecutivity {
    Consecutive,
    /// The embedding does not reflect the order: `a <= b` fails in the sub-poset but holds in the ambient one (or vice versa).
    NotFull {
        a: String,
        b: String,
    },
    /// `low <= mid <= high` with `low`, `high` selected but `mid` not.
    NotInterval {
        low: String,
        mid: String,
        high: String,
    },
}

/// Tests whether the subset `q` (with the induced order) is consecutive in `p`.
pub fn consecutive_check<S: AsRef<str>>(q: &[S], p: &Poset) -> Result<Consecutivity, PosetError> {
    let mask = p.mask(q)?;
    Ok(interval_witness(p, &mask))
}

fn interval_witness(p: &Poset, mask: &[bool]) -> Consecutivity {
    let n = p.len();
    for x in (0..n).filter(|&x| mask[x]) {
        for z in (0..n).filter(|&z| mask[z] && p.leq(x, z)) {
            if let Some(y) = (0..n).find(|&y| !mask[y] && p.leq(x, y) && p.leq(y, z)) {
                return Consecutivity::NotInterval { low: p.id(x).to_string(), mid: p.id(y).to_string(), high: p.id(z).to_string() };
            }
        }
    }
    Consecutivity::Consecutive
}

/// Tests whether an injection `embedding: Q -> P` is consecutive.
pub fn consecutive_embedding(q: &Poset, p: &Poset, embedding: &[usize]) -> Consecutivity {
    assert_eq!(q.len(), embedding.len(), "embedding must be defined on every element of Q");
    for a in 0..q.len() {
        for b in 0..q.len() {
            if q.leq(a, b) != p.leq(embedding[a], embedding[b]) {
                return Consecutivity::NotFull { a: q.id(a).to_string(), b: q.id(b).to_string() };
            }
        }
    }
    let mut mask = vec![false; p.len()];
    for &i in embedding {
        mask[i] = true;
    }
    interval_witness(p, &mask)
}

/// The nerve of `p`: vertices are the elements, simplices the nonempty chains.
///
/// Vertices are ordered by [`Poset::linear_extension`], so each chain is
/// listed in increasing order and downstream triangulations are stable.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    nerve(p).0
}

/// Order complex together with the map (complex vertex index -> poset element index).
pub(crate) fn nerve(p: &Poset) -> (SimplicialComplex, Vec<usize>) {
    let order = p.linear_extension();
    let n = order.len();
    let succ: Vec<Vec<usize>> = (0..n).map(|a| ((a + 1)..n).filter(|&b| p.lt(order[a], order[b])).collect()).collect();
    let mut simplices = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are nonempty");
        for &b in &succ[last] {
            let mut longer = chain.clone();
            longer.push(b);
            stack.push(longer);
        }
        simplices.push(chain);
    }
    let vertices = order.iter().map(|&i| p.id(i).to_string()).collect();
    (SimplicialComplex::from_closed_family(vertices, simplices), order)
}

/// Colour refinement shared between two posets so that colours are comparable.
fn refine_colors(p: &Poset, q: &Poset) -> (Vec<usize>, Vec<usize>) {
    let sig0 = |x: &Poset, i: usize| -> Vec<usize> {
        let n = x.len();
        vec![(0..n).filter(|&j| x.lt(j, i)).count(), (0..n).filter(|&j| x.lt(i, j)).count()]
    };
    let mut table: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let relabel = |sigs: Vec<Vec<usize>>, table: &mut BTreeMap<Vec<usize>, usize>| -> Vec<usize> {
        sigs.into_iter()
            .map(|s| {
                let next = table.len();
                *table.entry(s).or_insert(next)
            })
            .collect()
    };
    let mut cp = relabel((0..p.len()).map(|i| sig0(p, i)).collect(), &mut table);
    let mut cq = relabel((0..q.len()).map(|i| sig0(q, i)).collect(), &mut table);
    let mut classes = table.len();
    loop {
        let step = |x: &Poset, c: &[usize], i: usize| -> Vec<usize> {
            let mut up: Vec<usize> = (0..x.len()).filter(|&j| x.lt(i, j)).map(|j| c[j]).collect();
            let mut down: Vec<usize> = (0..x.len()).filter(|&j| x.lt(j, i)).map(|j| c[j]).collect();
            up.sort_unstable();
            down.sort_unstable();
            let mut s = vec![c[i], usize::MAX];
            s.extend(up);
            s.push(usize::MAX);
            s.extend(down);
            s
        };
        let sp: Vec<_> = (0..p.len()).map(|i| step(p, &cp, i)).collect();
        let sq: Vec<_> = (0..q.len()).map(|i| step(q, &cq, i)).collect();
        let mut t2 = BTreeMap::new();
        let np = relabel(sp, &mut t2);
        let nq = relabel(sq, &mut t2);
        let stable = t2.len() == classes;
        classes = t2.len();
        cp = np;
        cq = nq;
        if stable {
            return (cp, cq);
        }
    }
}

/// Searches for an order isomorphism `p -> q` (backtracking with colour pruning).
pub fn isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let (cp, cq) = refine_colors(p, q);
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    let order = p.linear_extension();
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];

    fn search(k: usize, order: &[usize], p: &Poset, q: &Poset, cp: &[usize], cq: &[usize], image: &mut [usize], used: &mut [bool]) -> bool {
        if k == order.len() {
            return true;
        }
        let a = order[k];
        for b in 0..q.len() {
            if used[b] || cq[b] != cp[a] {
                continue;
            }
            let ok = order[..k].iter().all(|&x| {
                let y = image[x];
                p.leq(x, a) == q.leq(y, b) && p.leq(a, x) == q.leq(b, y)
            });
            if !ok {
                continue;
            }
            image[a] = b;
            used[b] = true;
            if search(k + 1, order, p, q, cp, cq, image, used) {
                return true;
            }
            used[b] = false;
            image[a] = usize::MAX;
        }
        false
    }

    search(0, &order, p, q, &cp, &cq, &mut image, &mut used).then_some(image)
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    isomorphism(p, q).is_some()
}

/// All posets on `n` elements up to isomorphism, with identifiers
/// `{prefix}0 .. {prefix}{n-1}`.
pub fn enumerate_posets(n: usize, prefix: &str) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let elements: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut found: Vec<Poset> = Vec::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                m[i * n + j] = true;
            }
        }
        // Natural labelling makes the relation antisymmetric; only transitivity can fail.
        let transitive = (0..n).all(|i| (0..n).all(|j| !m[i * n + j] || (0..n).all(|k| !m[j * n + k] || m[i * n + k])));
        if !transitive {
            continue;
        }
        let candidate = Poset::from_fn_unchecked(elements.clone(), |i, j| m[i * n + j]);
        if !found.iter().any(|f| is_isomorphic(f, &candidate)) {
            found.push(candidate);
        }
    }
    found
}
