//! Combinatorial unzip along a closed union of strata, using derived
//! neighbourhoods in the first and second barycentric subdivisions.
//!
//! A chain of faces (a simplex of the subdivision) is *deep* if all of its
//! members lie in the deep subcomplex, *outer* if none do, and *mixed*
//! otherwise. The cone locus, unzip and link are full subcomplexes on the
//! corresponding barycenters.

use serde::Serialize;
use thiserror::Error;

use crate::complex::{self, betti_masked, boundary_column, Simplex, SimplicialComplex, Subdivision};
use crate::linalg::{self, Coefficients, FastRational, Field, Gf2, SparseVec};
use crate::poset::PosetError;
use crate::strat::{self, depth_dim_report, StratError, StratifiedComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnzipError {
    #[error("deep strata are not downward closed: {below} <= {above} with only {above} selected")]
    NotDownwardClosed { below: String, above: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error("deep members of chain {0} do not form an initial segment")]
    NotInitialSegment(String),
    #[error("maximal depth did not decrease at stage {stage}: {before} -> {after}")]
    DepthNotDecreasing { stage: usize, before: usize, after: usize },
    #[error("decomposition ledger does not balance: {}", .0.join("; "))]
    Unbalanced(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainClass {
    Deep,
    Outer,
    Mixed,
}

/// Class of every simplex of the subdivision.
#[derive(Clone, Debug)]
pub struct ChainClassification {
    pub subdivision: Subdivision,
    /// Per simplex of the original complex: lies in a deep stratum.
    pub deep_simplex: Vec<bool>,
    /// Per simplex of the subdivision.
    pub classes: Vec<ChainClass>,
}

impl ChainClassification {
    fn member_is_deep(&self, sd_vertex: usize) -> bool {
        self.deep_simplex[self.subdivision.origin[sd_vertex]]
    }

    /// Class of a subdivision vertex, i.e. of a single simplex.
    pub fn vertex_class(&self, sd_vertex: usize) -> ChainClass {
        if self.member_is_deep(sd_vertex) {
            ChainClass::Deep
        } else {
            ChainClass::Outer
        }
    }

    /// Splits a chain into its deep initial segment and outer final segment.
    fn segments(&self, chain: usize) -> (Vec<usize>, Vec<usize>) {
        self.subdivision.complex.simplex_at(chain).vertices().iter().partition(|&&v| self.member_is_deep(v))
    }
}

/// Classifies chains relative to the downward-closed set `deep` of strata.
pub fn classify_chains(x: &StratifiedComplex, deep: &[bool]) -> Result<ChainClassification, UnzipError> {
    classify_in(x, deep, complex::subdivide(x.complex()))
}

fn classify_in(x: &StratifiedComplex, deep: &[bool], subdivision: Subdivision) -> Result<ChainClassification, UnzipError> {
    let p = x.poset();
    if let Some((below, above)) = p.downward_closure_witness(deep) {
        return Err(UnzipError::NotDownwardClosed { below: p.id(below).to_string(), above: p.id(above).to_string() });
    }
    let deep_simplex = x.simplices_in(deep);
    let mut classes = Vec::with_capacity(subdivision.complex.len());
    for (c, chain) in subdivision.complex.simplices().iter().enumerate() {
        let flags: Vec<bool> = chain.vertices().iter().map(|&v| deep_simplex[subdivision.origin[v]]).collect();
        let count = flags.iter().filter(|&&f| f).count();
        if flags.iter().take(count).any(|&f| !f) {
            return Err(UnzipError::NotInitialSegment(subdivision.complex.label(c)));
        }
        classes.push(match count {
            0 => ChainClass::Outer,
            n if n == flags.len() => ChainClass::Deep,
            _ => ChainClass::Mixed,
        });
    }
    Ok(ChainClassification { subdivision, deep_simplex, classes })
}

/// Verification record for one unzip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub field: Coefficients,
    pub second_subdivision_simplices: usize,
    pub neighbourhood_simplices: usize,
    pub complement_simplices: usize,
    pub link_simplices: usize,
    /// Every simplex of the second subdivision lies in the neighbourhood or the complement.
    pub union_covers: bool,
    /// The neighbourhood and the complement meet exactly in the link.
    pub intersection_is_link: bool,
    pub euler_complex: i64,
    pub euler_neighbourhood: i64,
    pub euler_complement: i64,
    pub euler_link: i64,
    pub euler_balanced: bool,
    pub betti_complex: Vec<usize>,
    pub betti_deep: Vec<usize>,
    pub betti_neighbourhood: Vec<usize>,
    pub betti_complement: Vec<usize>,
    pub betti_unzip: Vec<usize>,
    pub betti_link: Vec<usize>,
    pub neighbourhood_matches_deep: bool,
    pub complement_matches_unzip: bool,
    /// Rank of `H_n(link) -> H_n(neighbourhood) ⊕ H_n(complement)` per degree.
    pub mayer_vietoris_ranks: Vec<usize>,
    /// Betti numbers of the complex predicted by the exact sequence.
    pub mayer_vietoris_prediction: Vec<usize>,
    pub mayer_vietoris_exact: bool,
    pub balanced: bool,
    pub failures: Vec<String>,
}

/// Cone locus, unzip and link of one unzip, with the two projections.
#[derive(Clone, Debug)]
pub struct UnzipDecomposition {
    /// The deep subcomplex itself.
    pub deep: SimplicialComplex,
    pub cone_locus: SimplicialComplex,
    pub unzip: StratifiedComplex,
    pub link: SimplicialComplex,
    /// Link vertex -> deep initial segment (a simplex of the cone locus).
    pub pi: Vec<(String, String)>,
    pub pi_simplicial: bool,
    /// Link vertex -> outer final segment (a simplex of the unzip).
    pub rho: Vec<(String, String)>,
    pub rho_simplicial: bool,
    /// For each cone-locus vertex, the number of link vertices sent to it.
    pub pi_fibers: Vec<(String, usize)>,
    pub ledger: Ledger,
}

impl UnzipDecomposition {
    pub fn check(&self) -> Result<(), UnzipError> {
        if self.ledger.balanced && self.pi_simplicial && self.rho_simplicial {
            Ok(())
        } else {
            let mut f = self.ledger.failures.clone();
            if !self.pi_simplicial {
                f.push("pi is not simplicial".into());
            }
            if !self.rho_simplicial {
                f.push("rho is not simplicial".into());
            }
            Err(UnzipError::Unbalanced(f))
        }
    }
}

fn trimmed(v: &[usize]) -> &[usize] {
    let end = v.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
    &v[..end]
}

fn padded(v: &[usize], len: usize) -> Vec<usize> {
    let mut out = v.to_vec();
    out.resize(len.max(v.len()), 0);
    out
}

fn masked_euler(k: &SimplicialComplex, mask: &[bool]) -> i64 {
    k.simplices().iter().zip(mask).filter(|(_, &m)| m).map(|(s, _)| if s.dim() % 2 == 0 { 1 } else { -1 }).sum()
}

/// Boundary ranks of the neighbourhood `N` and complement `U`, and ranks of
/// `H_n(L) -> H_n(N) ⊕ H_n(U)`, from one sweep over degrees `top..=0`.
struct Sweep {
    /// `rank_n[d]` is the rank of ∂_d on `N`; likewise for `U`.
    rank_n: Vec<usize>,
    rank_u: Vec<usize>,
    mayer_vietoris: Vec<usize>,
}

fn mayer_vietoris_sweep<F: Field>(k: &SimplicialComplex, n_mask: &[bool], u_mask: &[bool], l_mask: &[bool], top: usize) -> Sweep {
    let shift = k.len();
    let of_dim = |mask: &[bool], d: usize| -> Vec<usize> { (0..k.len()).filter(|&i| mask[i] && k.simplex_at(i).dim() == d).collect() };
    let mut rank_n = vec![0; top + 2];
    let mut rank_u = vec![0; top + 2];
    let mut mayer_vietoris = vec![0; top + 1];
    // pivot rows of ∂_{n+2}; their columns in ∂_{n+1} reduce to zero
    let mut cleared = vec![false; 2 * shift];
    for n in (0..=top).rev() {
        let bn: Vec<SparseVec<F>> = of_dim(n_mask, n + 1).into_iter().filter(|&i| !cleared[i]).map(|i| boundary_column::<F>(k, i)).collect();
        let bu: Vec<SparseVec<F>> = of_dim(u_mask, n + 1)
            .into_iter()
            .filter(|&i| !cleared[i + shift])
            .map(|i| boundary_column::<F>(k, i).into_iter().map(|(r, v)| (r + shift, v)).collect())
            .collect();
        let cells = of_dim(l_mask, n);
        let cycles: Vec<SparseVec<F>> = if n == 0 {
            cells.iter().map(|&i| vec![(i, F::one())]).collect()
        } else {
            let cols = cells.iter().map(|&i| boundary_column::<F>(k, i)).collect();
            linalg::reduce_columns(cols, true)
                .kernel
                .into_iter()
                .map(|z| linalg::sparse_from_entries(z.into_iter().map(|(j, v)| (cells[j], v)).collect()))
                .collect()
        };
        let split = bn.len() + bu.len();
        let mut all = bn;
        all.extend(bu);
        all.extend(cycles.into_iter().map(|z| {
            let mut both = z.clone();
            both.extend(z.into_iter().map(|(r, v)| (r + shift, v)));
            both
        }));
        let (boundary_pivots, total) = linalg::prefix_pivots(all, split);
        cleared.iter_mut().for_each(|c| *c = false);
        for &p in &boundary_pivots {
            cleared[p] = true;
        }
        rank_n[n + 1] = boundary_pivots.iter().filter(|&&p| p < shift).count();
        rank_u[n + 1] = boundary_pivots.len() - rank_n[n + 1];
        mayer_vietoris[n] = total - boundary_pivots.len();
    }
    Sweep { rank_n, rank_u, mayer_vietoris }
}

fn betti_from_ranks(k: &SimplicialComplex, mask: &[bool], ranks: &[usize]) -> Vec<usize> {
    let Some(top) = (0..k.len()).filter(|&i| mask[i]).map(|i| k.simplex_at(i).dim()).max() else { return Vec::new() };
    let mut counts = vec![0usize; top + 1];
    for i in (0..k.len()).filter(|&i| mask[i]) {
        counts[k.simplex_at(i).dim()] += 1;
    }
    (0..=top).map(|d| counts[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0)).collect()
}

/// Compares the neighbourhood / complement / link decomposition of the
/// second subdivision against the complex and its deep part.
fn decomposition_report(x: &StratifiedComplex, cls: &ChainClassification, sd2: &Subdivision, unzip: &SimplicialComplex, field: Coefficients) -> Ledger {
    let class_of = |w: usize| cls.classes[sd2.origin[w]];
    let all_in = |s: &Simplex, ok: &dyn Fn(ChainClass) -> bool| s.vertices().iter().all(|&w| ok(class_of(w)));
    let k2 = &sd2.complex;
    let n_mask: Vec<bool> = k2.simplices().iter().map(|s| all_in(s, &|c| c != ChainClass::Outer)).collect();
    let u_mask: Vec<bool> = k2.simplices().iter().map(|s| all_in(s, &|c| c != ChainClass::Deep)).collect();
    let l_mask: Vec<bool> = k2.simplices().iter().map(|s| all_in(s, &|c| c == ChainClass::Mixed)).collect();
    let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
    let union_covers = n_mask.iter().zip(&u_mask).all(|(&a, &b)| a || b);
    let intersection_is_link = (0..k2.len()).all(|i| (n_mask[i] && u_mask[i]) == l_mask[i]);

    let euler_complex = x.complex().euler();
    let (euler_neighbourhood, euler_complement, euler_link) = (masked_euler(k2, &n_mask), masked_euler(k2, &u_mask), masked_euler(k2, &l_mask));
    let euler_balanced = euler_complex == euler_neighbourhood + euler_complement - euler_link;

    let betti_complex = betti_masked(x.complex(), None, field);
    let betti_deep = betti_masked(x.complex(), Some(&cls.deep_simplex), field);
    let top = k2.dim().max(0) as usize;
    let sweep = match field {
        Coefficients::Rational => mayer_vietoris_sweep::<FastRational>(k2, &n_mask, &u_mask, &l_mask, top),
        Coefficients::Mod2 => mayer_vietoris_sweep::<Gf2>(k2, &n_mask, &u_mask, &l_mask, top),
    };
    let betti_neighbourhood = betti_from_ranks(k2, &n_mask, &sweep.rank_n);
    let betti_complement = betti_from_ranks(k2, &u_mask, &sweep.rank_u);
    let betti_unzip = betti_masked(unzip, None, field);
    let betti_link = betti_masked(k2, Some(&l_mask), field);
    let neighbourhood_matches_deep = trimmed(&betti_neighbourhood) == trimmed(&betti_deep);
    let complement_matches_unzip = trimmed(&betti_complement) == trimmed(&betti_unzip);

    let ranks = sweep.mayer_vietoris;
    let len = top + 1;
    let (bn, bu, bl) = (padded(&betti_neighbourhood, len), padded(&betti_complement, len), padded(&betti_link, len));
    let prediction: Vec<usize> = (0..len)
        .map(|n| {
            let coker = bn[n] + bu[n] - ranks[n];
            let ker = if n == 0 { 0 } else { bl[n - 1] - ranks[n - 1] };
            coker + ker
        })
        .collect();
    let mayer_vietoris_exact = trimmed(&prediction) == trimmed(&betti_complex) && bl[top] == ranks[top];

    let mut failures = Vec::new();
    if !union_covers {
        failures.push("neighbourhood and complement do not cover".to_string());
    }
    if !intersection_is_link {
        failures.push("neighbourhood and complement meet outside the link".to_string());
    }
    if !euler_balanced {
        failures.push(format!("euler {euler_complex} != {euler_neighbourhood} + {euler_complement} - {euler_link}"));
    }
    if !neighbourhood_matches_deep {
        failures.push(format!("neighbourhood betti {betti_neighbourhood:?} != deep betti {betti_deep:?}"));
    }
    if !complement_matches_unzip {
        failures.push(format!("complement betti {betti_complement:?} != unzip betti {betti_unzip:?}"));
    }
    if !mayer_vietoris_exact {
        failures.push(format!("exact sequence predicts {prediction:?}, complex has {betti_complex:?}"));
    }
    Ledger {
        field,
        second_subdivision_simplices: k2.len(),
        neighbourhood_simplices: count(&n_mask),
        complement_simplices: count(&u_mask),
        link_simplices: count(&l_mask),
        union_covers,
        intersection_is_link,
        euler_complex,
        euler_neighbourhood,
        euler_complement,
        euler_link,
        euler_balanced,
        betti_complex,
        betti_deep,
        betti_neighbourhood,
        betti_complement,
        betti_unzip,
        betti_link,
        neighbourhood_matches_deep,
        complement_matches_unzip,
        mayer_vietoris_ranks: ranks,
        mayer_vietoris_prediction: prediction,
        mayer_vietoris_exact,
        balanced: failures.is_empty(),
        failures,
    }
}

/// True when the given segments are totally ordered by inclusion.
fn nested(segments: &[Vec<usize>]) -> bool {
    let mut sorted: Vec<&Vec<usize>> = segments.iter().collect();
    sorted.sort_by_key(|s| s.len());
    sorted.windows(2).all(|w| Simplex::new(w[0].clone()).is_face_of(&Simplex::new(w[1].clone())))
}

/// Unzips `x` along the downward-closed strata selected by `deep`.
pub fn unzip_once(x: &StratifiedComplex, deep: &[bool], field: Coefficients) -> Result<UnzipDecomposition, UnzipError> {
    Unzipper::new(x).unzip(deep, field)
}

/// Holds the two subdivisions of a complex so that several deep sets can
/// be unzipped without rebuilding them.
pub struct Unzipper<'a> {
    x: &'a StratifiedComplex,
    sd: Subdivision,
    sd2: Subdivision,
}

impl<'a> Unzipper<'a> {
    pub fn new(x: &'a StratifiedComplex) -> Self {
        let sd = complex::subdivide(x.complex());
        let sd2 = complex::subdivide(&sd.complex);
        Unzipper { x, sd, sd2 }
    }

    pub fn unzip(&self, deep: &[bool], field: Coefficients) -> Result<UnzipDecomposition, UnzipError> {
        unzip_in(self.x, deep, field, self.sd.clone(), &self.sd2)
    }
}

fn unzip_in(x: &StratifiedComplex, deep: &[bool], field: Coefficients, sd: Subdivision, sd2: &Subdivision) -> Result<UnzipDecomposition, UnzipError> {
    let cls = classify_in(x, deep, sd)?;
    let sd = &cls.subdivision;
    let outer: Vec<bool> = deep.iter().map(|&d| !d).collect();

    let cone_locus = sd.complex.full_subcomplex(&(0..sd.complex.vertices().len()).map(|v| cls.member_is_deep(v)).collect::<Vec<_>>());
    let unzip_complex = sd.complex.full_subcomplex(&(0..sd.complex.vertices().len()).map(|v| !cls.member_is_deep(v)).collect::<Vec<_>>());
    let renumber = strat::reindex(&outer);
    let assignment = strat::embed_simplices(&unzip_complex, &sd.complex).into_iter().map(|c| renumber[x.assignment()[sd.carrier[c]]]).collect();
    let unzip = StratifiedComplex::new_unchecked(unzip_complex, x.poset().induced(&outer), assignment);

    let mixed: Vec<bool> = sd2.origin.iter().map(|&c| cls.classes[c] == ChainClass::Mixed).collect();
    let link = sd2.complex.full_subcomplex(&mixed);

    let segment_label = |seg: &[usize]| sd.complex.label(sd.complex.index_of(&Simplex::new(seg.to_vec())).expect("segments of chains are chains"));
    let mut pi = Vec::new();
    let mut rho = Vec::new();
    let mut fibers = vec![0usize; sd.complex.vertices().len()];
    for (w, _) in mixed.iter().enumerate().filter(|(_, &m)| m) {
        let (d, o) = cls.segments(sd2.origin[w]);
        if let [single] = d[..] {
            fibers[single] += 1;
        }
        pi.push((sd2.complex.vertices()[w].clone(), segment_label(&d)));
        rho.push((sd2.complex.vertices()[w].clone(), segment_label(&o)));
    }
    let mut pi_simplicial = true;
    let mut rho_simplicial = true;
    for s in sd2.complex.simplices().iter().filter(|s| s.vertices().iter().all(|&w| mixed[w])) {
        let segs: Vec<(Vec<usize>, Vec<usize>)> = s.vertices().iter().map(|&w| cls.segments(sd2.origin[w])).collect();
        let (ds, os): (Vec<_>, Vec<_>) = segs.into_iter().unzip();
        pi_simplicial &= nested(&ds);
        rho_simplicial &= nested(&os);
    }
    let pi_fibers = (0..sd.complex.vertices().len()).filter(|&v| cls.member_is_deep(v)).map(|v| (sd.complex.vertices()[v].clone(), fibers[v])).collect();

    let ledger = decomposition_report(x, &cls, sd2, unzip.complex(), field);
    let deep_complex = x.complex().subcomplex(&cls.deep_simplex);
    Ok(UnzipDecomposition { deep: deep_complex, cone_locus, unzip, link, pi, pi_simplicial, rho, rho_simplicial, pi_fibers, ledger })
}

/// One stage of the tower.
#[derive(Clone, Debug)]
pub struct TowerStage {
    /// Strata unzipped at this stage.
    pub deep_strata: Vec<String>,
    pub depth_before: usize,
    pub depth_after: usize,
    pub decomposition: UnzipDecomposition,
}

/// Repeatedly unzips the strata of greatest depth (and everything below
/// them) until every stratum has depth zero.
pub fn unzip_tower(x: &StratifiedComplex, field: Coefficients) -> Result<Vec<TowerStage>, UnzipError> {
    let mut stages = Vec::new();
    let mut current = x.clone();
    loop {
        let report = depth_dim_report(&current);
        let before = report.max_depth();
        if before == 0 {
            return Ok(stages);
        }
        let p = current.poset();
        let top: Vec<bool> = (0..p.len()).map(|i| report.depth_of(p.id(i)) == Some(before)).collect();
        let deep = p.downward_closure(&top);
        let deep_strata = (0..p.len()).filter(|&i| deep[i]).map(|i| p.id(i).to_string()).collect();
        let decomposition = unzip_once(&current, &deep, field)?;
        let after = depth_dim_report(&decomposition.unzip).max_depth();
        if after >= before {
            return Err(UnzipError::DepthNotDecreasing { stage: stages.len(), before, after });
        }
        current = decomposition.unzip.clone();
        stages.push(TowerStage { deep_strata, depth_before: before, depth_after: after, decomposition });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::strat::{cone_strat, face_stratification, single_stratum};

    fn cone_over(z: &SimplicialComplex) -> StratifiedComplex {
        cone_strat("*", &face_stratification(z)).unwrap()
    }

    fn apex_only(x: &StratifiedComplex) -> Vec<bool> {
        x.poset().mask(&["*"]).unwrap()
    }

    #[test]
    fn classification_on_cone() {
        let x = cone_over(&SimplicialComplex::simplex_boundary(2));
        let cls = classify_chains(&x, &apex_only(&x)).unwrap();
        let sd = &cls.subdivision.complex;
        let apex = x.complex().find(&["*"]).unwrap();
        for (c, chain) in sd.simplices().iter().enumerate() {
            let members: Vec<usize> = chain.vertices().iter().map(|&v| cls.subdivision.origin[v]).collect();
            let expected = if members == [apex] {
                ChainClass::Deep
            } else if members.contains(&apex) {
                ChainClass::Mixed
            } else {
                ChainClass::Outer
            };
            assert_eq!(cls.classes[c], expected);
        }
    }

    #[test]
    fn classification_extremes() {
        let x = cone_over(&SimplicialComplex::simplex_boundary(2));
        let none = classify_chains(&x, &vec![false; x.poset().len()]).unwrap();
        assert!(none.classes.iter().all(|&c| c == ChainClass::Outer));
        let all = classify_chains(&x, &vec![true; x.poset().len()]).unwrap();
        assert!(all.classes.iter().all(|&c| c == ChainClass::Deep));
        let not_closed = x.poset().mask(&["{0}"]).unwrap();
        assert!(matches!(classify_chains(&x, &not_closed), Err(UnzipError::NotDownwardClosed { .. })));
    }

    #[test]
    fn cone_unzip_counts() {
        let z = SimplicialComplex::simplex_boundary(2);
        let x = cone_over(&z);
        let dec = unzip_once(&x, &apex_only(&x), Coefficients::Rational).unwrap();
        assert_eq!(dec.cone_locus.f_vector(), vec![1]);
        // a 12-gon, like the second subdivision of a triangle boundary
        assert_eq!(dec.link.f_vector(), vec![12, 12]);
        assert!(complex::is_isomorphic(&dec.link, &complex::subdivide(&complex::subdivide(&z).complex).complex));
        // the unzip is the annulus around the removed apex
        assert_eq!(dec.unzip.complex().vertices().len(), 12);
        assert_eq!(dec.ledger.betti_unzip, vec![1, 1, 0]);
        assert!(dec.ledger.balanced, "{:?}", dec.ledger.failures);
        assert_eq!((dec.ledger.euler_complex, dec.ledger.euler_neighbourhood), (1, 1));
        // every mixed chain starts at the apex
        assert_eq!(dec.pi_fibers, vec![("{*}".to_string(), 12)]);
        dec.check().unwrap();
    }

    #[test]
    fn edge_with_deep_vertices() {
        let x = face_stratification(&SimplicialComplex::simplex(1));
        let deep = x.poset().mask(&["{0}", "{1}"]).unwrap();
        let dec = unzip_once(&x, &deep, Coefficients::Rational).unwrap();
        assert_eq!(dec.unzip.complex().f_vector(), vec![1]);
        assert_eq!(dec.link.f_vector(), vec![2]);
        assert_eq!(dec.cone_locus.f_vector(), vec![2]);
        dec.check().unwrap();
    }

    #[test]
    fn empty_deep_set_is_trivial() {
        let x = face_stratification(&SimplicialComplex::simplex_boundary(2));
        let dec = unzip_once(&x, &vec![false; x.poset().len()], Coefficients::Mod2).unwrap();
        assert!(dec.link.is_empty());
        assert!(dec.cone_locus.is_empty());
        assert!(dec.ledger.balanced);
    }

    #[test]
    fn tetrahedron_boundary_vertices() {
        let x = face_stratification(&SimplicialComplex::simplex_boundary(3));
        let deep = x.poset().mask(&["{0}", "{1}", "{2}", "{3}"]).unwrap();
        let dec = unzip_once(&x, &deep, Coefficients::Rational).unwrap();
        let l = &dec.ledger;
        assert_eq!(l.euler_complex, 2);
        assert_eq!(l.euler_neighbourhood, 4);
        assert_eq!(l.euler_complex, l.euler_neighbourhood + l.euler_complement - l.euler_link);
        assert!(l.balanced, "{:?}", l.failures);
    }

    #[test]
    fn tower_examples() {
        let tri = face_stratification(&SimplicialComplex::simplex(2));
        let tower = unzip_tower(&tri, Coefficients::Rational).unwrap();
        assert_eq!(tower.len(), 2);
        assert_eq!(tower[0].depth_before, 2);
        let single = single_stratum(&SimplicialComplex::simplex_boundary(3), "s");
        assert!(unzip_tower(&single, Coefficients::Rational).unwrap().is_empty());
        let z = single_stratum(&SimplicialComplex::simplex_boundary(2), "s");
        let c = cone_strat("*", &z).unwrap();
        assert_eq!(c.poset(), &crate::poset::cone(&Poset::point("s"), "*").unwrap());
        assert_eq!(unzip_tower(&c, Coefficients::Rational).unwrap().len(), 1);
    }

    #[test]
    fn surface_towers() {
        for k in [crate::corpus::torus(), crate::corpus::rp2()] {
            let tower = unzip_tower(&face_stratification(&k), Coefficients::Rational).unwrap();
            assert_eq!(tower.len(), 2);
            assert!(tower.iter().all(|s| s.decomposition.ledger.balanced));
            assert_eq!(depth_dim_report(&tower[1].decomposition.unzip).max_depth(), 0);
        }
    }
}
