//! Named example complexes, stratified complexes and sheaves, built in code
//! so every run constructs byte-identical inputs.

use crate::complex::{self, SimplicialComplex};
use crate::exitpath::enter_category;
use crate::linalg::Matrix;
use crate::poset::{self, Poset};
use crate::sheaf::{constant_sheaf, Sheaf};
use crate::strat::{self, StratifiedComplex};

fn named(vertices: &[&str], simplices: &[&[&str]]) -> SimplicialComplex {
    let simplices: Vec<Vec<&str>> = simplices.iter().map(|s| s.to_vec()).collect();
    SimplicialComplex::new(vertices.iter().map(|v| v.to_string()).collect(), &simplices).expect("corpus complexes are well formed")
}

fn cyclic(n: usize, triangles: impl Fn(usize) -> Vec<[usize; 3]>) -> SimplicialComplex {
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let simplices: Vec<Vec<String>> = (0..n).flat_map(&triangles).map(|t| t.iter().map(|v| (v % n).to_string()).collect()).collect();
    SimplicialComplex::new(vertices, &simplices).expect("corpus complexes are well formed")
}

/// The 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    cyclic(7, |i| vec![[i, i + 1, i + 3], [i, i + 2, i + 3]])
}

/// The 6-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    let faces: [[&str; 3]; 10] = [
        ["0", "1", "2"],
        ["0", "2", "3"],
        ["0", "3", "4"],
        ["0", "4", "5"],
        ["0", "5", "1"],
        ["1", "2", "4"],
        ["2", "3", "5"],
        ["3", "4", "1"],
        ["4", "5", "2"],
        ["5", "1", "3"],
    ];
    let simplices: Vec<&[&str]> = faces.iter().map(|f| &f[..]).collect();
    named(&["0", "1", "2", "3", "4", "5"], &simplices)
}

pub fn hexagon() -> SimplicialComplex {
    let edges: Vec<[String; 2]> = (0..6).map(|i| [i.to_string(), ((i + 1) % 6).to_string()]).collect();
    let simplices: Vec<Vec<String>> = edges.iter().map(|e| e.to_vec()).collect();
    SimplicialComplex::new((0..6).map(|i| i.to_string()).collect(), &simplices).expect("well formed")
}

pub fn two_points() -> SimplicialComplex {
    named(&["a", "b"], &[&["a"], &["b"]])
}

const BASE_COMPLEXES: &[&str] = &["point", "delta1", "delta2", "delta3", "boundary-delta2", "boundary-delta3", "hexagon", "two-points", "torus", "rp2"];

/// Their face stratifications have far too many down-sets to sweep, so
/// only the single-stratum versions are registered.
const SURFACES: &[&str] = &["torus", "rp2"];

fn faceable(name: &str) -> Option<SimplicialComplex> {
    if SURFACES.contains(&name) {
        return None;
    }
    base_complex(name)
}

fn base_complex(name: &str) -> Option<SimplicialComplex> {
    Some(match name {
        "point" => SimplicialComplex::simplex(0),
        "delta1" => SimplicialComplex::simplex(1),
        "delta2" => SimplicialComplex::simplex(2),
        "delta3" => SimplicialComplex::simplex(3),
        "boundary-delta2" => SimplicialComplex::simplex_boundary(2),
        "boundary-delta3" => SimplicialComplex::simplex_boundary(3),
        "hexagon" => hexagon(),
        "two-points" => two_points(),
        "torus" => torus(),
        "rp2" => rp2(),
        _ => return None,
    })
}

/// Names accepted by [`complex`]: the base shapes, `cone-<base>`, and a few joins.
pub fn complex_names() -> Vec<String> {
    let mut names: Vec<String> = BASE_COMPLEXES.iter().map(|s| s.to_string()).collect();
    names.extend(BASE_COMPLEXES.iter().map(|s| format!("cone-{s}")));
    names.extend(JOINS.iter().map(|(n, _, _)| n.to_string()));
    names
}

const JOINS: &[(&str, &str, &str)] = &[
    ("suspension-boundary-delta2", "boundary-delta2", "two-points"),
    ("join-two-points-two-points", "two-points", "two-points"),
    ("join-delta1-boundary-delta2", "delta1", "boundary-delta2"),
    ("join-hexagon-point", "hexagon", "point"),
];

/// A named corpus complex; cone apexes are `*`, join factors are prefixed `L:`/`R:`.
pub fn complex(name: &str) -> Option<SimplicialComplex> {
    if let Some(k) = base_complex(name) {
        return Some(k);
    }
    if let Some(base) = name.strip_prefix("cone-") {
        return base_complex(base).map(|k| complex::cone_complex("*", &k).expect("apex is fresh"));
    }
    let &(_, a, b) = JOINS.iter().find(|(n, _, _)| *n == name)?;
    let (a, b) = (base_complex(a)?.with_prefix("L:"), base_complex(b)?.with_prefix("R:"));
    Some(complex::join_complex(&a, &b).expect("prefixes keep vertices apart"))
}

/// Names accepted by [`stratified`].
pub fn stratified_names() -> Vec<String> {
    let mut names: Vec<String> = ["delta1-standard", "delta2-standard", "delta3-standard", "cone-s1"].iter().map(|s| s.to_string()).collect();
    for base in BASE_COMPLEXES {
        if !SURFACES.contains(base) {
            names.push(format!("{base}-faces"));
            names.push(format!("cone-{base}-faces"));
        }
        names.push(format!("{base}-single"));
    }
    names.extend(
        ["join-point-point-faces", "join-delta1-point-faces", "product-delta1-delta1-faces", "product-boundary-delta2-delta1-faces"]
            .iter()
            .map(|s| s.to_string()),
    );
    names
}

fn prefixed_faces(name: &str, prefix: &str) -> Option<StratifiedComplex> {
    Some(strat::face_stratification(&base_complex(name)?.with_prefix(prefix)))
}

/// A named stratified complex.
///
/// `<base>-faces` is the face stratification (not offered for the surfaces),
/// `<base>-single` one stratum
/// `s`, `cone-<base>-faces` its cone with apex `*`, and `cone-s1` the cone
/// over a single-stratum circle.
pub fn stratified(name: &str) -> Option<StratifiedComplex> {
    match name {
        "delta1-standard" => return strat::standard_simplex_stratification(1).ok(),
        "delta2-standard" => return strat::standard_simplex_stratification(2).ok(),
        "delta3-standard" => return strat::standard_simplex_stratification(3).ok(),
        "cone-s1" => {
            let s1 = strat::single_stratum(&SimplicialComplex::simplex_boundary(2), "s");
            return strat::cone_strat("*", &s1).ok();
        }
        "join-point-point-faces" => return strat::join_strat(&prefixed_faces("point", "L:")?, &prefixed_faces("point", "R:")?).ok(),
        "join-delta1-point-faces" => return strat::join_strat(&prefixed_faces("delta1", "L:")?, &prefixed_faces("point", "R:")?).ok(),
        "product-delta1-delta1-faces" => {
            let e = strat::face_stratification(&SimplicialComplex::simplex(1));
            return Some(strat::product_strat(&e, &e));
        }
        "product-boundary-delta2-delta1-faces" => {
            let a = strat::face_stratification(&SimplicialComplex::simplex_boundary(2));
            let b = strat::face_stratification(&SimplicialComplex::simplex(1));
            return Some(strat::product_strat(&a, &b));
        }
        _ => {}
    }
    if let Some(base) = name.strip_prefix("cone-").and_then(|r| r.strip_suffix("-faces")) {
        return strat::cone_strat("*", &strat::face_stratification(&faceable(base)?)).ok();
    }
    if let Some(base) = name.strip_suffix("-faces") {
        return Some(strat::face_stratification(&faceable(base)?));
    }
    if let Some(base) = name.strip_suffix("-single") {
        return Some(strat::single_stratum(&base_complex(base)?, "s"));
    }
    None
}

/// Names accepted by [`poset`].
pub fn poset_names() -> Vec<String> {
    [
        "poset-point",
        "poset-chain-1",
        "poset-chain-2",
        "poset-chain-3",
        "poset-vee",
        "poset-wedge",
        "poset-square",
        "poset-antichain-2",
        "poset-pp-1",
        "poset-pp-2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

/// A named small poset; `vee` has one minimum below two elements, `wedge`
/// two elements below one maximum.
pub fn poset(name: &str) -> Option<Poset> {
    let ids = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match name {
        "poset-point" => Some(Poset::point("*")),
        "poset-chain-1" => Some(Poset::chain(1)),
        "poset-chain-2" => Some(Poset::chain(2)),
        "poset-chain-3" => Some(Poset::chain(3)),
        "poset-vee" => Poset::from_generators(ids(&["a", "b", "c"]), &[(0, 1), (0, 2)]).ok(),
        "poset-wedge" => Poset::from_generators(ids(&["a", "b", "c"]), &[(0, 2), (1, 2)]).ok(),
        "poset-square" => Poset::from_generators(ids(&["a", "b", "c", "d"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).ok(),
        "poset-antichain-2" => Some(Poset::antichain(&["a", "b"])),
        "poset-pp-1" => poset::pp_make(1).ok(),
        "poset-pp-2" => poset::pp_make(2).ok(),
        _ => None,
    }
}

/// Names accepted by [`sheaf`].
pub fn sheaf_names() -> Vec<String> {
    let mut names: Vec<String> =
        ["circle-monodromy-plus", "circle-monodromy-minus", "delta1-standard-zero", "delta2-standard-projection"].iter().map(|s| s.to_string()).collect();
    for base in ["boundary-delta2-faces", "delta2-faces", "boundary-delta3-faces", "delta2-standard", "cone-s1", "hexagon-single", "two-points-faces"] {
        names.push(format!("constant-{base}"));
    }
    names
}

/// Rank-one system on the triangle boundary; the edge map `{0} -> {0,1}` is `sign`.
pub fn circle_local_system(sign: i64) -> Sheaf {
    let x = strat::face_stratification(&SimplicialComplex::simplex_boundary(2));
    let rc = enter_category(&x);
    let flip = (rc.base().require("{0}").expect("vertex"), rc.base().require("{0,1}").expect("edge"));
    Sheaf::from_covers(rc, vec![1; 6], |a, b| Matrix::from_i64_rows(&[&[if (a, b) == flip { sign } else { 1 }]])).expect("valid")
}

/// A named sheaf together with the name of the stratified complex it lives on.
pub fn sheaf(name: &str) -> Option<(String, Sheaf)> {
    match name {
        "circle-monodromy-plus" => Some(("boundary-delta2-faces".into(), circle_local_system(1))),
        "circle-monodromy-minus" => Some(("boundary-delta2-faces".into(), circle_local_system(-1))),
        "delta1-standard-zero" => {
            // zero map on the exit from the closed stratum
            let x = stratified("delta1-standard")?;
            let rc = enter_category(&x);
            let v0 = rc.base().require("{0}").ok()?;
            let f = Sheaf::from_covers(rc, vec![1; 3], |a, _| if a == v0 { Matrix::zeros(1, 1) } else { Matrix::identity(1) }).ok()?;
            Some(("delta1-standard".into(), f))
        }
        "delta2-standard-projection" => {
            // stalks 2, 1, 1 along the chain, with the first map a projection
            let x = stratified("delta2-standard")?;
            let a = x.assignment().to_vec();
            let dims = [2usize, 1, 1];
            let step = |i: usize, j: usize| -> Matrix {
                match (i, j) {
                    (0, 0) => Matrix::identity(2),
                    (0, _) => Matrix::from_i64_rows(&[&[1, 0]]),
                    _ => Matrix::identity(1),
                }
            };
            let f = Sheaf::from_covers(enter_category(&x), a.iter().map(|&s| dims[s]).collect(), |s, t| step(a[s], a[t])).ok()?;
            Some(("delta2-standard".into(), f))
        }
        _ => {
            let base = name.strip_prefix("constant-")?;
            let x = stratified(base)?;
            Some((base.to_string(), constant_sheaf(&x, 1)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::linalg::Coefficients;

    #[test]
    fn every_name_resolves() {
        for n in complex_names() {
            assert!(complex(&n).is_some(), "{n}");
        }
        for n in stratified_names() {
            let x = stratified(&n).unwrap_or_else(|| panic!("{n}"));
            assert!(x.report().is_valid(), "{n}");
        }
        for n in sheaf_names() {
            assert!(sheaf(&n).is_some(), "{n}");
        }
        for n in poset_names() {
            assert!(poset(&n).is_some(), "{n}");
        }
        assert!(complex("nope").is_none());
        assert!(stratified("cone-nope-faces").is_none());
    }

    #[test]
    fn surfaces() {
        let t = torus();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert_eq!(homology(&t, Coefficients::Rational).betti, vec![1, 2, 1]);
        let p = rp2();
        assert_eq!(p.f_vector(), vec![6, 15, 10]);
        assert_eq!(homology(&p, Coefficients::Rational).betti, vec![1, 0, 0]);
        assert_eq!(homology(&p, Coefficients::Mod2).betti, vec![1, 1, 1]);
        assert_eq!(homology(&hexagon(), Coefficients::Rational).betti, vec![1, 1]);
    }

    #[test]
    fn constructions_are_reproducible() {
        for n in stratified_names() {
            assert_eq!(stratified(&n).unwrap().to_doc(), stratified(&n).unwrap().to_doc());
        }
    }
}
