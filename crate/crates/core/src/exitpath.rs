//! Enter-path categories as relative posets: the face poset of a stratified
//! complex with the stratum-preserving face relations marked weak.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{self, homology, SimplicialComplex};
use crate::linalg::Coefficients;
use crate::poset::{Poset, PosetDoc, PosetError};
use crate::strat::StratifiedComplex;

/// A poset with a set of strict relations marked as weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCategory {
    base: Poset,
    weak: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelativeCategoryDoc {
    pub poset: PosetDoc,
    pub weak: Vec<(String, String)>,
}

impl RelativeCategory {
    /// Fails if a weak pair is not a strict relation of `base`.
    pub fn new(base: Poset, weak: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PosetError> {
        let weak: BTreeSet<_> = weak.into_iter().collect();
        if let Some(&(a, b)) = weak.iter().find(|&&(a, b)| !base.lt(a, b)) {
            return Err(PosetError::UnknownElement(format!("({},{}) is not a strict relation", base.id(a), base.id(b))));
        }
        Ok(RelativeCategory { base, weak })
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn weak(&self) -> &BTreeSet<(usize, usize)> {
        &self.weak
    }

    pub fn is_weak(&self, a: usize, b: usize) -> bool {
        self.weak.contains(&(a, b))
    }

    pub fn to_doc(&self) -> RelativeCategoryDoc {
        let mut weak: Vec<(String, String)> = self.weak.iter().map(|&(a, b)| (self.base.id(a).to_string(), self.base.id(b).to_string())).collect();
        weak.sort();
        RelativeCategoryDoc { poset: self.base.to_doc(), weak }
    }

    /// First triple breaking composition or cancellation along a chain
    /// `a < b < c`, if any.
    pub fn two_out_of_three_witness(&self) -> Option<(usize, usize, usize)> {
        let p = &self.base;
        let n = p.len();
        for a in 0..n {
            for b in (0..n).filter(|&b| p.lt(a, b)) {
                for c in (0..n).filter(|&c| p.lt(b, c)) {
                    let (ab, bc, ac) = (self.is_weak(a, b), self.is_weak(b, c), self.is_weak(a, c));
                    if (ab && bc && !ac) || (ac && !(ab && bc)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Face poset of the complex, with face relations inside one stratum weak.
/// Base element `i` is simplex `i`.
pub fn enter_category(x: &StratifiedComplex) -> RelativeCategory {
    let k = x.complex();
    let a = x.assignment();
    let mut weak = BTreeSet::new();
    for t in 0..k.len() {
        for s in k.faces_of(t) {
            if s != t && a[s] == a[t] {
                weak.insert((s, t));
            }
        }
    }
    RelativeCategory { base: k.face_poset(), weak }
}

/// The functor from the face poset of the subdivision to the face poset of
/// the complex sending a chain to its largest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementFunctor {
    /// Subdivision simplex index -> simplex index.
    pub map: Vec<usize>,
    pub monotone: bool,
    /// Fiber size over each simplex.
    pub fibers: Vec<usize>,
}

pub fn refinement_functor(k: &SimplicialComplex) -> RefinementFunctor {
    let sd = complex::subdivide(k);
    let fine = &sd.complex;
    let face = k.face_poset();
    let monotone = (0..fine.len()).all(|t| fine.faces_of(t).into_iter().all(|s| face.leq(sd.carrier[s], sd.carrier[t])));
    let mut fibers = vec![0; k.len()];
    for &c in &sd.carrier {
        fibers[c] += 1;
    }
    RefinementFunctor { map: sd.carrier, monotone, fibers }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyingSpaceReport {
    pub field: Coefficients,
    /// Betti numbers of the nerve of the enter-path poset.
    pub nerve_betti: Vec<usize>,
    pub complex_betti: Vec<usize>,
    pub agree: bool,
}

/// Compares the homology of the nerve of the enter-path poset with that of the complex.
pub fn classifying_space_check(x: &StratifiedComplex, field: Coefficients) -> ClassifyingSpaceReport {
    let rc = enter_category(x);
    let nerve = crate::poset::order_complex(rc.base());
    let nerve_betti = homology(&nerve, field).betti;
    let complex_betti = homology(x.complex(), field).betti;
    ClassifyingSpaceReport { field, agree: nerve_betti == complex_betti, nerve_betti, complex_betti }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidVerdict {
    pub groupoid: bool,
    /// A strict face relation that is not weak.
    pub witness: Option<(String, String)>,
}

/// Whether every face relation is weak, i.e. the stratification is
/// constant on connected components.
pub fn is_groupoid(x: &StratifiedComplex) -> GroupoidVerdict {
    let rc = enter_category(x);
    let k = x.complex();
    for t in 0..k.len() {
        for s in k.faces_of(t) {
            if s != t && !rc.is_weak(s, t) {
                return GroupoidVerdict { groupoid: false, witness: Some((k.label(s), k.label(t))) };
            }
        }
    }
    GroupoidVerdict { groupoid: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{disjoint_union, subdivide};
    use crate::strat::{face_stratification, single_stratum, standard_simplex_stratification};

    #[test]
    fn enter_category_examples() {
        let k = SimplicialComplex::simplex_boundary(3);
        assert!(enter_category(&face_stratification(&k)).weak().is_empty());
        let x = standard_simplex_stratification(1).unwrap();
        let rc = enter_category(&x);
        let doc = rc.to_doc();
        assert_eq!(doc.weak, vec![("{1}".to_string(), "{0,1}".to_string())]);
        let single = enter_category(&single_stratum(&k, "s"));
        let strict = (0..k.len()).map(|t| k.faces_of(t).len() - 1).sum::<usize>();
        assert_eq!(single.weak().len(), strict);
    }

    #[test]
    fn weak_set_is_closed() {
        for n in 0..=3 {
            let rc = enter_category(&standard_simplex_stratification(n).unwrap());
            assert_eq!(rc.two_out_of_three_witness(), None);
        }
    }

    #[test]
    fn refinement_examples() {
        let e = SimplicialComplex::simplex(1);
        let f = refinement_functor(&e);
        assert!(f.monotone);
        let mut fibers = f.fibers.clone();
        fibers.sort_unstable();
        assert_eq!(fibers, vec![1, 1, 3]);
        let sd = subdivide(&e);
        let chain = sd.complex.find(&["{0}", "{0,1}"]).unwrap();
        assert_eq!(e.label(f.map[chain]), "{0,1}");
    }

    #[test]
    fn refinement_composes_with_second_subdivision() {
        let e = SimplicialComplex::simplex(1);
        let first = subdivide(&e);
        let second = subdivide(&first.complex);
        let outer = refinement_functor(&first.complex);
        let inner = refinement_functor(&e);
        assert_eq!(outer.map, second.carrier);
        for c in 0..second.complex.len() {
            // the largest chain's largest simplex, found directly
            let top_chain = second.carrier[c];
            let direct = first.carrier[top_chain];
            assert_eq!(inner.map[outer.map[c]], direct);
        }
    }

    #[test]
    fn classifying_space_examples() {
        let c = classifying_space_check(&face_stratification(&SimplicialComplex::simplex_boundary(2)), Coefficients::Rational);
        assert!(c.agree);
        assert_eq!(c.complex_betti, vec![1, 1]);
        let p = classifying_space_check(&face_stratification(&SimplicialComplex::simplex(0)), Coefficients::Mod2);
        assert_eq!((p.nerve_betti.clone(), p.agree), (vec![1], true));
    }

    #[test]
    fn groupoid_examples() {
        let x = standard_simplex_stratification(1).unwrap();
        let v = is_groupoid(&x);
        assert!(!v.groupoid);
        assert_eq!(v.witness, Some(("{0}".to_string(), "{0,1}".to_string())));
        assert!(is_groupoid(&single_stratum(&SimplicialComplex::simplex_boundary(2), "s")).groupoid);
        let two = disjoint_union(&SimplicialComplex::simplex(1), &SimplicialComplex::simplex(1));
        let p = crate::poset::Poset::antichain(&["a", "b"]);
        let left = two.vertices().iter().filter(|v| v.starts_with("L:")).count();
        let assignment = two.simplices().iter().map(|s| usize::from(s.vertices()[0] >= left)).collect();
        let x = StratifiedComplex::new(two, p, assignment).unwrap();
        assert!(is_groupoid(&x).groupoid);
        let pts = SimplicialComplex::new(vec!["a".into(), "b".into()], &[vec!["a"], vec!["b"]]).unwrap();
        assert!(is_groupoid(&face_stratification(&pts)).groupoid);
        assert!(!is_groupoid(&face_stratification(&SimplicialComplex::simplex(1))).groupoid);
    }
}
