//! Stratifying posets for coincidence and Ran spaces: partitions of a
//! finite set, labelled partitions (the wreath poset), and point-count
//! functions on a poset.

use serde::Serialize;
use thiserror::Error;

use crate::poset::{self, validate_poset, Poset, PosetReport, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RanError {
    #[error("the index set must be nonempty")]
    EmptyIndexSet,
    #[error("the point bound must be at least 1, got {0}")]
    BadBound(i64),
    #[error("map is not a surjection onto {0} elements")]
    NotSurjective(usize),
}

/// All set partitions of `0..n` as restricted growth strings: `rgs[i]` is
/// the block of `i`, blocks numbered by first appearance.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn grow(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            grow(n, cur, out);
            cur.pop();
        }
    }
    grow(n, &mut cur, &mut out);
    out
}

fn block_count(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |m| m + 1)
}

/// `fine ⊆ coarse` as equivalence relations.
fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    let n = fine.len();
    (0..n).all(|a| (0..n).all(|b| fine[a] != fine[b] || coarse[a] == coarse[b]))
}

fn partition_id<S: AsRef<str>>(rgs: &[usize], names: &[S]) -> String {
    let blocks: Vec<String> =
        (0..block_count(rgs)).map(|b| (0..rgs.len()).filter(|&i| rgs[i] == b).map(|i| names[i].as_ref()).collect::<Vec<_>>().join(",")).collect();
    format!("{{{}}}", blocks.join("|"))
}

/// Partitions ordered by reverse inclusion of relations: coarser is smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPoset {
    pub poset: Poset,
    pub partitions: Vec<Vec<usize>>,
}

pub fn partitions_poset<S: AsRef<str>>(index_set: &[S]) -> Result<PartitionPoset, RanError> {
    if index_set.is_empty() {
        return Err(RanError::EmptyIndexSet);
    }
    let partitions = set_partitions(index_set.len());
    let ids = partitions.iter().map(|r| partition_id(r, index_set)).collect();
    let poset = Poset::from_fn_unchecked(ids, |a, b| refines(&partitions[b], &partitions[a]));
    Ok(PartitionPoset { poset, partitions })
}

/// Labelled partitions with their projections to partitions and to `P^I`.
#[derive(Clone, Debug)]
pub struct WreathPoset {
    pub poset: Poset,
    /// Element -> (partition index, label of each block).
    pub entries: Vec<(usize, Vec<usize>)>,
    pub partitions: PartitionPoset,
    pub power: Poset,
    pub to_partitions: Vec<usize>,
    pub to_power: Vec<usize>,
}

impl WreathPoset {
    /// Both projections are order preserving.
    pub fn projections_monotone(&self) -> bool {
        let n = self.poset.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                !self.poset.leq(a, b)
                    || (self.partitions.poset.leq(self.to_partitions[a], self.to_partitions[b]) && self.power.leq(self.to_power[a], self.to_power[b]))
            })
        })
    }
}

pub fn wreath_poset<S: AsRef<str>>(index_set: &[S], p: &Poset) -> Result<WreathPoset, RanError> {
    let partitions = partitions_poset(index_set)?;
    let n = index_set.len();
    let k = p.len();
    let mut entries = Vec::new();
    for (pi, rgs) in partitions.partitions.iter().enumerate() {
        for labels in poset::tuples(k, block_count(rgs)) {
            entries.push((pi, labels));
        }
    }
    // pointwise labels on the index set
    let spread: Vec<Vec<usize>> = entries.iter().map(|(pi, labels)| partitions.partitions[*pi].iter().map(|&b| labels[b]).collect()).collect();
    let ids = entries
        .iter()
        .map(|(pi, labels)| {
            let ls: Vec<&str> = labels.iter().map(|&l| p.id(l)).collect();
            format!("{}({})", partitions.poset.id(*pi), ls.join(","))
        })
        .collect();
    let poset = Poset::from_fn_unchecked(ids, |a, b| {
        let (pa, pb) = (entries[a].0, entries[b].0);
        refines(&partitions.partitions[pb], &partitions.partitions[pa]) && (0..n).all(|i| p.leq(spread[a][i], spread[b][i]))
    });
    let power = poset::power(p, n);
    let to_power = spread.iter().map(|t| t.iter().fold(0, |acc, &x| acc * k + x)).collect();
    let to_partitions = entries.iter().map(|(pi, _)| *pi).collect();
    Ok(WreathPoset { poset, entries, partitions, power, to_partitions, to_power })
}

/// Point-count functions on `P` with the stated relation and its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct RanPoset {
    /// Elements in order of total count, then lexicographically decreasing.
    #[serde(skip)]
    pub counts: Vec<Vec<usize>>,
    #[serde(skip)]
    pub relation: Relation,
    pub elements: Vec<String>,
    /// Strict relations `c < c'` as identifier pairs.
    pub relations: Vec<(String, String)>,
    pub verdict: PosetReport,
}

impl RanPoset {
    /// The relation as a poset, when it is one.
    pub fn as_poset(&self) -> Option<Poset> {
        Poset::try_from(self.relation.clone()).ok()
    }
}

pub fn ran_poset(p: &Poset, bound: i64) -> Result<RanPoset, RanError> {
    if bound < 1 {
        return Err(RanError::BadBound(bound));
    }
    let bound = bound as usize;
    let m = p.len();
    let mut counts: Vec<Vec<usize>> = Vec::new();
    for total in 1..=bound {
        let mut level: Vec<Vec<usize>> = poset::tuples(total + 1, m).into_iter().filter(|c| c.iter().sum::<usize>() == total).collect();
        level.sort_by(|a, b| b.cmp(a));
        counts.extend(level);
    }
    let maxima = p.maximal_elements();
    let leq = |a: &[usize], b: &[usize]| maxima.iter().all(|&q| a[q] <= b[q]);
    let elements: Vec<String> = counts.iter().map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))).collect();
    let relation = Relation::from_fn(elements.clone(), |a, b| leq(&counts[a], &counts[b])).expect("identifiers are distinct");
    let n = counts.len();
    let mut relations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && relation.holds(a, b) {
                relations.push((elements[a].clone(), elements[b].clone()));
            }
        }
    }
    let verdict = validate_poset(&relation);
    Ok(RanPoset { counts, relation, elements, relations, verdict })
}

/// Pullback of a partition of `J` along `f: I -> J`, renormalised.
pub fn pullback_partition(f: &[usize], partition: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    f.iter()
        .map(|&j| {
            let b = partition[j];
            match seen.iter().position(|&x| x == b) {
                Some(i) => i,
                None => {
                    seen.push(b);
                    seen.len() - 1
                }
            }
        })
        .collect()
}

/// The induced map `partitions(J) -> partitions(I)` as element indices.
pub fn partition_pullback_map(source: usize, target: usize, f: &[usize]) -> Result<Vec<usize>, RanError> {
    let mut hit = vec![false; target];
    for &j in f {
        if j >= target {
            return Err(RanError::NotSurjective(target));
        }
        hit[j] = true;
    }
    if f.len() != source || hit.iter().any(|&h| !h) {
        return Err(RanError::NotSurjective(target));
    }
    let src = set_partitions(source);
    Ok(set_partitions(target)
        .iter()
        .map(|q| {
            let pulled = pullback_partition(f, q);
            src.iter().position(|r| *r == pulled).expect("pullbacks are partitions")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_isomorphic;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("i{i}")).collect()
    }

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        row[row.len() - 1]
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions_poset(&names(1)).unwrap().poset.len(), 1);
        let two = partitions_poset(&names(2)).unwrap().poset;
        assert!(is_isomorphic(&two, &Poset::chain(1)));
        assert_eq!(two.id(two.minimal_elements()[0]), "{i0,i1}");
        let three = partitions_poset(&names(3)).unwrap().poset;
        assert_eq!(three.len(), 5);
        assert_eq!(three.minimal_elements().len(), 1);
        assert_eq!(three.maximal_elements().len(), 1);
        assert_eq!(three.id(three.maximal_elements()[0]), "{i0|i1|i2}");
        for n in 1..=4 {
            assert_eq!(partitions_poset(&names(n)).unwrap().poset.len(), bell(n));
        }
        assert!(partitions_poset::<String>(&[]).is_err());
    }

    #[test]
    fn wreath_examples() {
        let w = wreath_poset(&names(3), &Poset::point("*")).unwrap();
        assert!(is_isomorphic(&w.poset, &partitions_poset(&names(3)).unwrap().poset));
        let p = Poset::from_generators(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]).unwrap();
        assert!(is_isomorphic(&wreath_poset(&names(1), &p).unwrap().poset, &p));
        let w = wreath_poset(&names(2), &Poset::chain(1)).unwrap();
        // one block with 2 labels, plus two blocks with 2 x 2 labels
        let oracle: usize = set_partitions(2).iter().map(|r| 2usize.pow(block_count(r) as u32)).sum();
        assert_eq!(oracle, 6);
        assert_eq!(w.poset.len(), oracle);
        assert!(validate_poset(&w.poset.relation()).is_valid());
        assert!(w.projections_monotone());
    }

    #[test]
    fn ran_examples() {
        let r = ran_poset(&Poset::point("*"), 3).unwrap();
        assert!(r.verdict.is_valid());
        assert!(is_isomorphic(&r.as_poset().unwrap(), &Poset::chain(2)));
        assert_eq!(ran_poset(&Poset::point("*"), 1).unwrap().elements.len(), 1);
        let c = ran_poset(&Poset::chain(1), 2).unwrap();
        assert_eq!(c.elements, vec!["(1,0)", "(0,1)", "(2,0)", "(1,1)", "(0,2)"]);
        // only the top of the chain counts, so (1,0) and (2,0) are mutually related
        assert!(!c.verdict.is_valid());
        assert!(ran_poset(&Poset::point("*"), 0).is_err());
    }

    #[test]
    fn pullback_is_monotone() {
        let f = [0, 0, 1, 2];
        let map = partition_pullback_map(4, 3, &f).unwrap();
        let (pi, pj) = (partitions_poset(&names(4)).unwrap(), partitions_poset(&names(3)).unwrap());
        for a in 0..pj.poset.len() {
            for b in 0..pj.poset.len() {
                if pj.poset.leq(a, b) {
                    assert!(pi.poset.leq(map[a], map[b]));
                }
            }
        }
        assert!(partition_pullback_map(3, 3, &[0, 0, 1]).is_err());
    }
}
