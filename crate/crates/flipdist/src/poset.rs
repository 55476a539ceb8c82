//! Finite posets and lattices: downset lattices, join-irreducibles, linear
//! extensions, and a cover-graph isomorphism check.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite poset given by elements and an irredundant cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    index: BTreeMap<String, usize>,
    /// up_sets[i] = all j with i <= j (reflexive).
    up_sets: Vec<BTreeSet<usize>>,
}

impl FinitePoset {
    pub fn new(elements: Vec<String>, covers_by_name: Vec<(String, String)>) -> Result<FinitePoset> {
        let mut index = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate element {e:?}")));
            }
        }
        let mut covers = Vec::with_capacity(covers_by_name.len());
        for (lo, hi) in &covers_by_name {
            let l = *index
                .get(lo)
                .ok_or_else(|| Error::Parse(format!("cover references unknown element {lo:?}")))?;
            let h = *index
                .get(hi)
                .ok_or_else(|| Error::Parse(format!("cover references unknown element {hi:?}")))?;
            if l == h {
                return Err(Error::Parse(format!("cover {lo:?} -> {hi:?} is reflexive")));
            }
            covers.push((l, h));
        }
        let up_sets = transitive_up_sets(elements.len(), &covers)?;
        // Irredundancy: no cover may be implied by a 2-step chain.
        for &(l, h) in &covers {
            let implied = covers.iter().any(|&(a, b)| {
                a == l && b != h && up_sets[b].contains(&h)
            });
            if implied {
                return Err(Error::Parse(format!(
                    "cover {:?} -> {:?} is transitive, not a cover",
                    elements[l], elements[h]
                )));
            }
        }
        Ok(FinitePoset {
            elements,
            covers,
            index,
            up_sets,
        })
    }

    /// Poset from a full order relation; covers are derived.
    pub fn from_relation(elements: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<FinitePoset> {
        let n = elements.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !le(a, b) {
                    continue;
                }
                let has_mid = (0..n).any(|c| c != a && c != b && le(a, c) && le(c, b));
                if !has_mid {
                    covers.push((a, b));
                }
            }
        }
        let cover_names = covers
            .iter()
            .map(|&(a, b)| (elements[a].clone(), elements[b].clone()))
            .collect();
        FinitePoset::new(elements, cover_names)
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

    pub fn element_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown element {name:?}")))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Reflexive order test on indices.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up_sets[a].contains(&b)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.covers.iter().all(|&(_, h)| h != v))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.covers.iter().all(|&(l, _)| l != v))
            .collect()
    }

    /// Maximum chain size.
    pub fn height(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        let mut depth = vec![1usize; n];
        // Process in topological order (covers are acyclic).
        let order = self.topological_order();
        for &v in &order {
            for &(l, h) in &self.covers {
                if l == v {
                    depth[h] = depth[h].max(depth[v] + 1);
                }
            }
        }
        depth.into_iter().max().unwrap()
    }

    fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, h) in &self.covers {
            indeg[h] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            order.push(v);
            for &(l, h) in &self.covers {
                if l == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        queue.push(h);
                    }
                }
            }
        }
        order
    }

    /// All downsets, as sorted index vectors, in a deterministic order.
    pub fn downsets(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.len();
        let mut result: BTreeSet<Vec<usize>> = BTreeSet::new();
        result.insert(Vec::new());
        let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        while let Some(d) = frontier.pop() {
            for v in 0..n {
                if d.contains(&v) {
                    continue;
                }
                // v can join if all elements strictly below it are present.
                let ok = (0..n).all(|u| u == v || !self.le(u, v) || d.contains(&u));
                if !ok {
                    continue;
                }
                let mut next = d.clone();
                next.insert(v);
                let key: Vec<usize> = next.iter().copied().collect();
                if result.insert(key) {
                    if result.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "more than {cap} downsets"
                        )));
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(result.into_iter().collect())
    }

    /// Enumerates linear extensions, calling `visit` with each; stops early
    /// if `visit` returns false.
    pub fn linear_extensions(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut prefix = Vec::with_capacity(n);
        fn rec(
            p: &FinitePoset,
            placed: &mut Vec<bool>,
            prefix: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize]) -> bool,
            stop: &mut bool,
        ) {
            if *stop {
                return;
            }
            let n = p.len();
            if prefix.len() == n {
                if !visit(prefix) {
                    *stop = true;
                }
                return;
            }
            for v in 0..n {
                if placed[v] {
                    continue;
                }
                let available = (0..n).all(|u| u == v || !p.le(u, v) || placed[u]);
                if !available {
                    continue;
                }
                placed[v] = true;
                prefix.push(v);
                rec(p, placed, prefix, visit, stop);
                prefix.pop();
                placed[v] = false;
            }
        }
        let mut stop = false;
        rec(self, &mut placed, &mut prefix, visit, &mut stop);
    }
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    elements: Vec<String>,
    covers: Vec<[String; 2]>,
}

/// Parses `{"elements":["a","b"],"covers":[["a","b"]]}`.
pub fn parse_poset(text: &[u8]) -> Result<FinitePoset> {
    let doc: PosetDoc =
        serde_json::from_slice(text).map_err(|e| Error::Parse(format!("poset JSON: {e}")))?;
    FinitePoset::new(
        doc.elements,
        doc.covers.into_iter().map(|[a, b]| (a, b)).collect(),
    )
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    let doc = PosetDoc {
        elements: p.elements().to_vec(),
        covers: p
            .covers()
            .iter()
            .map(|&(l, h)| [p.elements()[l].clone(), p.elements()[h].clone()])
            .collect(),
    };
    serde_json::to_string(&doc).expect("poset serialization cannot fail")
}

fn transitive_up_sets(n: usize, covers: &[(usize, usize)]) -> Result<Vec<BTreeSet<usize>>> {
    // Detect cycles via Kahn's algorithm, then propagate reachability in
    // reverse topological order.
    let mut indeg = vec![0usize; n];
    for &(_, h) in covers {
        indeg[h] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop() {
        order.push(v);
        for &(l, h) in covers {
            if l == v {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push(h);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::Parse("cover relation has a cycle".into()));
    }
    let mut up: Vec<BTreeSet<usize>> = (0..n).map(|v| BTreeSet::from([v])).collect();
    for &v in order.iter().rev() {
        let mut acc = up[v].clone();
        for &(l, h) in covers {
            if l == v {
                acc.extend(up[h].iter().copied());
            }
        }
        up[v] = acc;
    }
    Ok(up)
}

/// A finite lattice, wrapping its poset; construction verifies unique joins
/// and meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
}

impl FiniteLattice {
    pub fn new(poset: FinitePoset) -> Result<FiniteLattice> {
        let l = FiniteLattice { poset };
        for a in 0..l.poset.len() {
            for b in 0..l.poset.len() {
                l.join(a, b).ok_or_else(|| {
                    Error::Invalid(format!(
                        "no unique join of {:?} and {:?}",
                        l.poset.elements()[a],
                        l.poset.elements()[b]
                    ))
                })?;
                l.meet(a, b).ok_or_else(|| {
                    Error::Invalid(format!(
                        "no unique meet of {:?} and {:?}",
                        l.poset.elements()[a],
                        l.poset.elements()[b]
                    ))
                })?;
            }
        }
        Ok(l)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.poset.len())
            .filter(|&c| self.poset.le(a, c) && self.poset.le(b, c))
            .collect();
        unique_extremum(&uppers, |x, y| self.poset.le(x, y))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.poset.len())
            .filter(|&c| self.poset.le(c, a) && self.poset.le(c, b))
            .collect();
        unique_extremum(&lowers, |x, y| self.poset.le(y, x))
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.poset.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c).unwrap()).unwrap();
                    let rhs = self
                        .join(self.meet(a, b).unwrap(), self.meet(a, c).unwrap())
                        .unwrap();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The smallest element of `candidates` under `le`, if one dominates all.
fn unique_extremum(candidates: &[usize], le: impl Fn(usize, usize) -> bool) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&d| le(c, d)))
}

/// Subposet induced on the elements covering exactly one element.
pub fn join_irreducibles(l: &FiniteLattice) -> Result<FinitePoset> {
    let p = l.poset();
    let ji: Vec<usize> = (0..p.len())
        .filter(|&v| p.covers().iter().filter(|&&(_, h)| h == v).count() == 1)
        .collect();
    let names: Vec<String> = ji.iter().map(|&v| p.elements()[v].clone()).collect();
    FinitePoset::from_relation(names, |a, b| p.le(ji[a], ji[b]))
}

/// The lattice of all downsets of `p`, ordered by inclusion. Downsets are
/// named `{a,b}` with sorted members.
pub fn downset_lattice(p: &FinitePoset, cap: usize) -> Result<FiniteLattice> {
    let downsets = p.downsets(cap)?;
    let names: Vec<String> = downsets.iter().map(|d| downset_name(p, d)).collect();
    let sets: Vec<BTreeSet<usize>> = downsets
        .iter()
        .map(|d| d.iter().copied().collect())
        .collect();
    let poset = FinitePoset::from_relation(names, |a, b| sets[a].is_subset(&sets[b]))?;
    FiniteLattice::new(poset)
}

fn downset_name(p: &FinitePoset, d: &[usize]) -> String {
    let mut members: Vec<&str> = d.iter().map(|&v| p.elements()[v].as_str()).collect();
    members.sort_unstable();
    format!("{{{}}}", members.join(","))
}

/// Isomorphism of cover graphs respecting rank (height below each element).
/// Iterative color refinement with backtracking inside color classes.
pub fn lattice_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    poset_cover_isomorphic(a.poset(), b.poset())
}

pub fn poset_cover_isomorphic(pa: &FinitePoset, pb: &FinitePoset) -> bool {
    let n = pa.len();
    if n != pb.len() || pa.covers().len() != pb.covers().len() {
        return false;
    }
    let ca = refine_colors(pa);
    let cb = refine_colors(pb);
    let mut hist_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }
    // Backtracking assignment within color classes.
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn ok_so_far(pa: &FinitePoset, pb: &FinitePoset, assign: &[usize], v: usize) -> bool {
        for &(l, h) in pa.covers() {
            if l == v && assign[h] != usize::MAX {
                if !pb.covers().contains(&(assign[v], assign[h])) {
                    return false;
                }
            }
            if h == v && assign[l] != usize::MAX {
                if !pb.covers().contains(&(assign[l], assign[v])) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        pa: &FinitePoset,
        pb: &FinitePoset,
        ca: &[u64],
        cb: &[u64],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        if v == pa.len() {
            return true;
        }
        for w in 0..pb.len() {
            if used[w] || ca[v] != cb[w] {
                continue;
            }
            assign[v] = w;
            used[w] = true;
            if ok_so_far(pa, pb, assign, v) && rec(pa, pb, ca, cb, assign, used, v + 1) {
                return true;
            }
            assign[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    rec(pa, pb, &ca, &cb, &mut assign, &mut used, 0)
}

/// Stable colors from (rank, up-degree, down-degree) refined by neighbor
/// color multisets.
fn refine_colors(p: &FinitePoset) -> Vec<u64> {
    let n = p.len();
    let mut rank = vec![0usize; n];
    let order = {
        // topological order by covers
        let mut indeg = vec![0usize; n];
        for &(_, h) in p.covers() {
            indeg[h] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = queue.pop() {
            order.push(v);
            for &(l, h) in p.covers() {
                if l == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        queue.push(h);
                    }
                }
            }
        }
        order
    };
    for &v in &order {
        for &(l, h) in p.covers() {
            if l == v {
                rank[h] = rank[h].max(rank[v] + 1);
            }
        }
    }
    let up_deg = |v: usize| p.covers().iter().filter(|&&(l, _)| l == v).count();
    let down_deg = |v: usize| p.covers().iter().filter(|&&(_, h)| h == v).count();
    let mut colors: Vec<u64> = (0..n)
        .map(|v| hash3(rank[v] as u64, up_deg(v) as u64, down_deg(v) as u64))
        .collect();
    for _ in 0..n {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut ups: Vec<u64> = p
                .covers()
                .iter()
                .filter(|&&(l, _)| l == v)
                .map(|&(_, h)| colors[h])
                .collect();
            let mut downs: Vec<u64> = p
                .covers()
                .iter()
                .filter(|&&(_, h)| h == v)
                .map(|&(l, _)| colors[l])
                .collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut acc = colors[v];
            for u in ups {
                acc = hash3(acc, 1, u);
            }
            for d in downs {
                acc = hash3(acc, 2, d);
            }
            next.push(acc);
        }
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

fn hash3(a: u64, b: u64, c: u64) -> u64 {
    let mut h = 1469598103934665603u64; // FNV offset
    for x in [a, b, c] {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(1099511628211);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        let elements: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers = (1..n)
            .map(|i| (format!("c{}", i - 1), format!("c{i}")))
            .collect();
        FinitePoset::new(elements, covers).unwrap()
    }

    fn antichain(n: usize) -> FinitePoset {
        let elements: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        FinitePoset::new(elements, vec![]).unwrap()
    }

    #[test]
    fn rejects_cyclic_covers() {
        let err = FinitePoset::new(
            vec!["a".into(), "b".into()],
            vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_transitive_cover() {
        let err = FinitePoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("a".into(), "c".into()),
            ],
        );
        assert!(err.is_err());
    }

    #[test]
    fn downsets_of_chain_are_prefixes() {
        let p = chain(3);
        let d = p.downsets(100).unwrap();
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn downset_lattice_of_antichain_is_diamond() {
        let l = downset_lattice(&antichain(2), 100).unwrap();
        assert_eq!(l.poset().len(), 4);
        assert_eq!(l.poset().covers().len(), 4);
        assert!(l.is_distributive());
    }

    #[test]
    fn downset_lattice_of_chain_is_longer_chain() {
        let l = downset_lattice(&chain(4), 100).unwrap();
        assert_eq!(l.poset().len(), 5);
        assert_eq!(l.poset().covers().len(), 4);
    }

    #[test]
    fn downset_lattice_of_empty_poset() {
        let l = downset_lattice(&antichain(0), 100).unwrap();
        assert_eq!(l.poset().len(), 1);
    }

    #[test]
    fn join_irreducibles_of_diamond_is_antichain() {
        let l = downset_lattice(&antichain(2), 100).unwrap();
        let ji = join_irreducibles(&l).unwrap();
        assert_eq!(ji.len(), 2);
        assert!(ji.covers().is_empty());
    }

    #[test]
    fn join_irreducibles_of_chain() {
        let l = downset_lattice(&chain(2), 100).unwrap(); // chain of 3 as a lattice
        assert_eq!(l.poset().len(), 3);
        let ji = join_irreducibles(&l).unwrap();
        assert_eq!(ji.len(), 2);
        assert_eq!(ji.covers().len(), 1);
    }

    #[test]
    fn join_irreducibles_of_singleton_lattice() {
        let l = downset_lattice(&antichain(0), 100).unwrap();
        let ji = join_irreducibles(&l).unwrap();
        assert!(ji.is_empty());
    }

    #[test]
    fn birkhoff_correspondence_on_small_posets() {
        // P is isomorphic to the join-irreducibles of its downset lattice.
        for p in [chain(3), antichain(3), two_two_chains()] {
            let l = downset_lattice(&p, 1000).unwrap();
            let ji = join_irreducibles(&l).unwrap();
            assert!(poset_cover_isomorphic(&p, &ji));
        }
    }

    fn two_two_chains() -> FinitePoset {
        FinitePoset::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![("a".into(), "b".into()), ("c".into(), "d".into())],
        )
        .unwrap()
    }

    #[test]
    fn non_lattice_is_rejected() {
        // Two minimal and two maximal elements with crossing covers: no join.
        let p = FinitePoset::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                ("a".into(), "c".into()),
                ("a".into(), "d".into()),
                ("b".into(), "c".into()),
                ("b".into(), "d".into()),
            ],
        )
        .unwrap();
        assert!(FiniteLattice::new(p).is_err());
    }

    #[test]
    fn isomorphism_distinguishes_chain_and_antichain() {
        assert!(!poset_cover_isomorphic(&chain(3), &antichain(3)));
        assert!(poset_cover_isomorphic(&chain(3), &chain(3)));
    }

    #[test]
    fn linear_extensions_of_antichain() {
        let p = antichain(3);
        let mut count = 0;
        p.linear_extensions(&mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 6);
    }

    #[test]
    fn poset_json_round_trip() {
        let p = two_two_chains();
        let s = poset_to_json(&p);
        let q = parse_poset(s.as_bytes()).unwrap();
        assert_eq!(p, q);
    }
}
