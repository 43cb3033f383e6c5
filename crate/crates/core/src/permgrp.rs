//! Permutation groups on at most nine points, by full enumeration.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 9;
const ORDER_GUARD: usize = 1_000_000;

/// A permutation of `{0, .., n-1}` stored by images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::input(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::input(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.iter().map(|&i| i as u8).collect()))
    }

    /// Builds a permutation of `{1..n}` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(Error::input(format!("bad cycle {cycle:?} on {n} points")));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Perm::from_images(&images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(123)` on `n` points.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in text.split('(').map(str::trim).filter(|c| !c.is_empty()) {
            let body = chunk
                .strip_suffix(')')
                .ok_or_else(|| Error::input(format!("unclosed cycle in {text:?}")))?;
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| Error::input(format!("bad point {s:?}"))))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::input(format!("bad point {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            cycles.push(points);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycles of length at least two, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, l| crate::exactmath::integer::lcm(acc as u64, l as u64) as usize)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite permutation group with its full element list.
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermutationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermutationGroup {}

/// Closes a generating set under composition.
pub fn close_group(degree: usize, generators: &[Perm]) -> Result<PermutationGroup> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::input(format!("degree must lie in 1..={MAX_DEGREE}, got {degree}")));
    }
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::input(format!("generator {g} does not act on {degree} points")));
    }
    let id = Perm::identity(degree);
    let mut index: HashMap<Perm, usize> = HashMap::new();
    let mut elements = vec![id.clone()];
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let h = g.compose(&elements[i]);
            if !index.contains_key(&h) {
                if elements.len() >= ORDER_GUARD {
                    return Err(Error::limit("group order exceeds enumeration guard"));
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok(PermutationGroup::from_closed(degree, generators.to_vec(), elements))
}

impl PermutationGroup {
    fn from_closed(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermutationGroup { degree, generators, elements, index, classes: OnceLock::new() }
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return close_group(n.max(1), &[]);
        }
        let cycle: Vec<usize> = (1..=n).collect();
        close_group(n, &[Perm::from_cycles(n, &[&cycle])?, Perm::from_cycles(n, &[&[1, 2]])?])
    }

    pub fn trivial(n: usize) -> Result<Self> {
        close_group(n, &[])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements in sorted order; the identity comes first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Closes `gens` inside this group; every generator must belong to it.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermutationGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::input(format!("{g} is not an element of the group")));
        }
        close_group(self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_normal_in(&self, other: &PermutationGroup) -> bool {
        self.is_subgroup_of(other)
            && other.generators.iter().all(|g| {
                let gi = g.inverse();
                self.generators.iter().all(|h| self.contains(&g.compose(h).compose(&gi)))
            })
    }

    /// Conjugacy classes as index lists into `elements()`, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let conj: Vec<(Perm, Perm)> =
                self.generators.iter().map(|g| (g.clone(), g.inverse())).collect();
            let mut class_of = vec![usize::MAX; self.order()];
            let mut classes = Vec::new();
            for start in 0..self.order() {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = vec![start];
                class_of[start] = id;
                let mut queue = VecDeque::from([start]);
                while let Some(i) = queue.pop_front() {
                    for (g, gi) in &conj {
                        let c = g.compose(&self.elements[i]).compose(gi);
                        let j = self.index[&c];
                        if class_of[j] == usize::MAX {
                            class_of[j] = id;
                            members.push(j);
                            queue.push_back(j);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            classes
        })
    }

    /// Point orbits of the whole group.
    pub fn orbits(&self) -> OrbitPartition {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().blocks.len() == 1
    }

    /// Elements fixing point `p`.
    pub fn stabilizer_elements(&self, p: usize) -> Vec<&Perm> {
        self.elements.iter().filter(|g| g.apply(p) == p).collect()
    }
}

/// Orbits of the subgroup generated by some elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Sorted 0-based blocks, ordered by smallest point.
    pub blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

fn orbits_of<'a>(n: usize, perms: impl IntoIterator<Item = &'a Perm> + Clone) -> OrbitPartition {
    let mut block_of = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if block_of[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        block_of[start] = id;
        let mut block = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in perms.clone() {
                let j = g.apply(i);
                if block_of[j] == usize::MAX {
                    block_of[j] = id;
                    block.push(j);
                    stack.push(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    OrbitPartition { blocks }
}

/// Orbits on points of the subgroup generated by `acting`, which must lie in `g`.
pub fn orbit_partition(g: &PermutationGroup, acting: &[Perm]) -> Result<OrbitPartition> {
    if let Some(x) = acting.iter().find(|x| !g.contains(x)) {
        return Err(Error::input(format!("{x} is not an element of the group")));
    }
    Ok(orbits_of(g.degree, acting))
}

/// 2 for doubly transitive, 1 for transitive, 0 otherwise.
pub fn transitivity_degree(g: &PermutationGroup) -> u8 {
    if !g.is_transitive() {
        return 0;
    }
    let stab = g.stabilizer_elements(0);
    let rest = orbits_of(g.degree, stab.iter().copied());
    // The fixed point 0 forms its own block.
    if rest.count() <= 2 {
        2
    } else {
        1
    }
}

/// All normal subgroups, ordered by size, as unions of conjugacy classes.
pub fn normal_subgroups(g: &PermutationGroup) -> Result<Vec<PermutationGroup>> {
    if g.order() > ORDER_GUARD {
        return Err(Error::limit("group order exceeds enumeration guard"));
    }
    let classes = g.conjugacy_classes();
    let order = g.order();
    let k = classes.len();
    if k > 24 {
        return Err(Error::limit("too many conjugacy classes for class-union enumeration"));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (k - 1)) {
        let chosen: Vec<usize> = std::iter::once(0)
            .chain((1..k).filter(|&c| mask >> (c - 1) & 1 == 1))
            .collect();
        let size: usize = chosen.iter().map(|&c| classes[c].len()).sum();
        if order % size != 0 {
            continue;
        }
        let mut member = vec![false; order];
        for &c in &chosen {
            for &i in &classes[c] {
                member[i] = true;
            }
        }
        let members: Vec<usize> = (0..order).filter(|&i| member[i]).collect();
        // Closure against class representatives suffices because the set is conjugation-stable.
        let closed = chosen.iter().all(|&c| {
            let r = &g.elements[classes[c][0]];
            members.iter().all(|&j| member[g.index[&r.compose(&g.elements[j])]])
        });
        if closed {
            out.push(subgroup_from_members(g, &members));
        }
    }
    out.sort_by_key(PermutationGroup::order);
    Ok(out)
}

/// Builds a subgroup known to consist of exactly `members`, picking generators greedily.
fn subgroup_from_members(g: &PermutationGroup, members: &[usize]) -> PermutationGroup {
    let mut gens: Vec<Perm> = Vec::new();
    let mut have = close_elements(g.degree, &gens);
    for &i in members {
        let x = &g.elements[i];
        if !have.contains_key(x) {
            gens.push(x.clone());
            have = close_elements(g.degree, &gens);
        }
        if have.len() == members.len() {
            break;
        }
    }
    let elements: Vec<Perm> = members.iter().map(|&i| g.elements[i].clone()).collect();
    PermutationGroup::from_closed(g.degree, gens, elements)
}

fn close_elements(degree: usize, gens: &[Perm]) -> HashMap<Perm, ()> {
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone(), ()).is_none() {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// A named transitive group from the hard-coded catalog.
#[derive(Debug)]
pub struct CatalogGroup {
    pub name: &'static str,
    pub group: Arc<PermutationGroup>,
}

const CATALOG_3: &[(&str, &[&str], usize)] = &[("C3", &["(123)"], 3), ("S3", &["(123)", "(12)"], 6)];

const CATALOG_5: &[(&str, &[&str], usize)] = &[
    ("C5", &["(12345)"], 5),
    ("D5", &["(12345)", "(25)(34)"], 10),
    ("AGL(1,5)", &["(12345)", "(2354)"], 20),
    ("A5", &["(12345)", "(123)"], 60),
    ("S5", &["(12345)", "(12)"], 120),
];

const CATALOG_7: &[(&str, &[&str], usize)] = &[
    ("C7", &["(1234567)"], 7),
    ("D7", &["(1234567)", "(27)(36)(45)"], 14),
    ("F21", &["(1234567)", "(235)(476)"], 21),
    ("AGL(1,7)", &["(1234567)", "(243756)"], 42),
    ("PSL(3,2)", &["(1234567)", "(12)(36)"], 168),
    ("A7", &["(1234567)", "(123)"], 2520),
    ("S7", &["(1234567)", "(12)"], 5040),
];

fn build_catalog(n: usize, table: &[(&'static str, &[&str], usize)]) -> Vec<CatalogGroup> {
    table
        .iter()
        .map(|&(name, gens, expected)| {
            let gens: Vec<Perm> = gens
                .iter()
                .map(|s| Perm::parse_cycles(n, s).expect("catalog generator parses"))
                .collect();
            let group = close_group(n, &gens).expect("catalog group closes");
            // Self-check of the hard-coded data.
            assert_eq!(group.order(), expected, "catalog order for {name}");
            assert!(group.is_transitive(), "catalog group {name} is transitive");
            CatalogGroup { name, group: Arc::new(group) }
        })
        .collect()
}

/// Transitive groups of degree 3, 5 or 7 up to conjugacy, smallest first.
pub fn transitive_catalog(n: usize) -> Result<&'static [CatalogGroup]> {
    static C3: OnceLock<Vec<CatalogGroup>> = OnceLock::new();
    static C5: OnceLock<Vec<CatalogGroup>> = OnceLock::new();
    static C7: OnceLock<Vec<CatalogGroup>> = OnceLock::new();
    match n {
        3 => Ok(C3.get_or_init(|| build_catalog(3, CATALOG_3))),
        5 => Ok(C5.get_or_init(|| build_catalog(5, CATALOG_5))),
        7 => Ok(C7.get_or_init(|| build_catalog(7, CATALOG_7))),
        _ => Err(Error::input(format!("no transitive catalog for degree {n}"))),
    }
}

/// Looks up a catalog group by name.
pub fn catalog_group(n: usize, name: &str) -> Result<Arc<PermutationGroup>> {
    transitive_catalog(n)?
        .iter()
        .find(|c| c.name == name)
        .map(|c| Arc::clone(&c.group))
        .ok_or_else(|| Error::input(format!("no group named {name} of degree {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let p = Perm::parse_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(!p.is_even());
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        assert!(Perm::parse_cycles(3, "(14)").is_err());
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Perm::parse_cycles(3, "(12)").unwrap();
        let b = Perm::parse_cycles(3, "(23)").unwrap();
        // (12)∘(23) sends 2 -> 3 -> 3, 3 -> 2 -> 1
        let c = a.compose(&b);
        assert_eq!(c.apply(1), 2);
        assert_eq!(c.apply(2), 0);
    }

    #[test]
    fn identity_sorted_first() {
        let g = PermutationGroup::symmetric(4).unwrap();
        assert!(g.elements()[0].is_identity());
        assert_eq!(g.conjugacy_classes().len(), 5);
    }
}
