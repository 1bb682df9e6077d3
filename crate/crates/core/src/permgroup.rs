//! Finite permutation group engine.
//!
//! Everything here is exact and exhaustive: groups are materialized as full
//! element lists in a deterministic (lexicographic) order, conjugacy classes
//! are computed as orbits of the conjugation action, and normalizers and
//! centralizers inside the symmetric group come from a full scan of `S_n`.
//! Degrees are small by design; there is no Schreier–Sims machinery.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the permutation degree (element encoding uses 4 bits/point).
pub const MAX_DEGREE: usize = 16;
/// Largest degree for which full `S_n` scans are permitted (8! = 40320).
pub const SYM_SCAN_MAX: usize = 8;
/// Default cap on closure size in [`PermGroup::from_generators`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A permutation of `{0, …, n-1}`, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::validation(format!(
                "permutation degree must be in 1..={MAX_DEGREE}, got {n}"
            )));
        }
        let mut seen = [false; MAX_DEGREE];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::validation(format!(
                    "images {images:?} do not describe a bijection of 0..{n}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// Build from disjoint-or-not cycles; points absent from all cycles are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<u8>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        for cycle in cycles {
            for i in 0..cycle.len() {
                let from = cycle[i] as usize;
                if from >= n {
                    return Err(Error::validation(format!("cycle point {from} out of range")));
                }
                images[from] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u8 == x)
    }

    /// Cycle lengths including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .iter()
            .fold(1u64, |acc, &l| num_integer::lcm(acc, l as u64))
    }

    pub fn pow(&self, k: i64) -> Perm {
        let ord = self.order() as i64;
        let mut e = k.rem_euclid(ord);
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose(&acc);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Compact per-element key; degree <= 16 so 4 bits per point suffice.
    pub fn key(&self) -> u64 {
        self.images
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// A finite permutation group with its full element list.
///
/// Elements are sorted lexicographically by image vectors, so all outputs
/// derived from the element order are reproducible byte for byte.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index_of: HashMap<u64, usize>,
}

/// A conjugacy class: member indices into [`PermGroup::elements`], sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub members: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

impl PermGroup {
    pub fn from_generators(n: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::from_generators_capped(n, gens, DEFAULT_CLOSURE_CAP)
    }

    pub fn from_generators_capped(n: usize, gens: Vec<Perm>, cap: usize) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::validation(format!(
                "group degree must be in 1..={MAX_DEGREE}, got {n}"
            )));
        }
        for g in &gens {
            if g.degree() != n {
                return Err(Error::validation(format!(
                    "generator degree {} does not match group degree {n}",
                    g.degree()
                )));
            }
        }
        let mut seen: HashSet<u64> = HashSet::new();
        let mut elements = vec![Perm::identity(n)];
        seen.insert(elements[0].key());
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let base = elements[i].clone();
            for g in &gens {
                let p = g.compose(&base);
                if seen.insert(p.key()) {
                    if elements.len() >= cap {
                        return Err(Error::size_limit(format!(
                            "group closure exceeded cap of {cap} elements"
                        )));
                    }
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        elements.sort_unstable();
        let index_of = elements.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        Ok(PermGroup {
            degree: n,
            generators: gens,
            elements,
            index_of,
        })
    }

    /// Build directly from a complete element list (must be closed).
    pub fn from_elements(n: usize, mut elements: Vec<Perm>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let index_of: HashMap<u64, usize> =
            elements.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        for a in &elements {
            if a.degree() != n {
                return Err(Error::validation("element degree mismatch".to_string()));
            }
        }
        // closure check against the element set itself
        for a in &elements {
            for b in &elements {
                if !index_of.contains_key(&a.compose(b).key()) {
                    return Err(Error::validation(
                        "element list is not closed under composition".to_string(),
                    ));
                }
            }
        }
        if !index_of.contains_key(&Perm::identity(n).key()) {
            return Err(Error::validation("element list lacks the identity".to_string()));
        }
        Ok(PermGroup {
            degree: n,
            generators: elements.clone(),
            elements,
            index_of,
        })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup::from_generators(n, vec![]).expect("trivial group")
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n > SYM_SCAN_MAX {
            return Err(Error::size_limit(format!(
                "refusing to materialize S_{n}; max degree is {SYM_SCAN_MAX}"
            )));
        }
        let mut gens = vec![];
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
            gens.push(Perm::from_cycles(n, &[(0..n as u8).collect()])?);
        }
        PermGroup::from_generators(n, gens)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n < 1 || n > MAX_DEGREE {
            return Err(Error::validation(format!("cyclic degree {n} out of range")));
        }
        let gen = Perm::from_cycles(n, &[(0..n as u8).collect()])?;
        PermGroup::from_generators(n, vec![gen])
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

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.index_of.contains_key(&p.key())
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        self.index_of.get(&p.key()).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of[&Perm::identity(self.degree).key()]
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.degree;
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut queue = vec![0usize];
        while let Some(p) = queue.pop() {
            for g in &self.elements {
                let q = g.apply(p);
                if !reached[q] {
                    reached[q] = true;
                    queue.push(q);
                }
            }
        }
        reached.into_iter().all(|r| r)
    }

    /// Conjugacy classes as orbits of the conjugation action, sorted by
    /// (size, lexicographically smallest member).
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let m = self.order();
        let mut assigned = vec![false; m];
        let mut classes = Vec::new();
        for start in 0..m {
            if assigned[start] {
                continue;
            }
            let mut members = vec![start];
            assigned[start] = true;
            let mut queue = vec![start];
            while let Some(i) = queue.pop() {
                let x = &self.elements[i];
                for g in &self.elements {
                    let conj = g.compose(x).compose(&g.inverse());
                    let j = self.index_of[&conj.key()];
                    if !assigned[j] {
                        assigned[j] = true;
                        members.push(j);
                        queue.push(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass { members });
        }
        classes.sort_by(|a, b| {
            (a.size(), &self.elements[a.members[0]]).cmp(&(b.size(), &self.elements[b.members[0]]))
        });
        classes
    }

    fn scan_sym(&self, keep: impl Fn(&Perm) -> bool) -> Result<PermGroup> {
        if self.degree > SYM_SCAN_MAX {
            return Err(Error::size_limit(format!(
                "S_n scan requires degree <= {SYM_SCAN_MAX}, got {}",
                self.degree
            )));
        }
        let kept: Vec<Perm> = sym_elements(self.degree).into_iter().filter(keep).collect();
        PermGroup::from_elements(self.degree, kept)
    }

    /// Normalizer of this group inside `S_n`, by exhaustive scan.
    pub fn normalizer_in_sym(&self) -> Result<PermGroup> {
        self.scan_sym(|s| {
            let si = s.inverse();
            self.generators_or_all()
                .iter()
                .all(|g| self.contains(&s.compose(g).compose(&si)))
        })
    }

    /// Centralizer of this group inside `S_n`, by exhaustive scan.
    pub fn centralizer_in_sym(&self) -> Result<PermGroup> {
        self.scan_sym(|s| {
            self.generators_or_all()
                .iter()
                .all(|g| s.compose(g) == g.compose(s))
        })
    }

    pub fn center(&self) -> PermGroup {
        let kept: Vec<Perm> = self
            .elements
            .iter()
            .filter(|z| self.generators_or_all().iter().all(|g| z.compose(g) == g.compose(z)))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, kept).expect("center is a subgroup")
    }

    fn generators_or_all(&self) -> &[Perm] {
        if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }
}

/// All elements of `S_n` in lexicographic order.
pub fn sym_elements(n: usize) -> Vec<Perm> {
    assert!(n >= 1 && n <= SYM_SCAN_MAX);
    let mut out = Vec::new();
    let mut images: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Perm {
            images: images.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| images[i] < images[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}

/// Report for the large-to-small `G`-field fiber count.
#[derive(Debug, Clone, Serialize)]
pub struct FiberCountReport {
    pub group_order: u64,
    pub center_order: u64,
    pub normalizer_order: u64,
    pub centralizer_order: u64,
    /// `#N * #Z / (#C * #G)`, exact.
    #[serde(with = "crate::ratio_serde")]
    pub ratio: Ratio<i64>,
    /// The ratio has been an integer for every group we have run; non-integer
    /// values are surfaced as a diagnostic instead of an error.
    pub is_integer: bool,
}

/// The number of large G-fields mapping to one small G-field:
/// `#N_{S_n}(G) * #Z(G) / (#C_{S_n}(G) * #G)`, exact.
pub fn gfie_fiber_count(group: &PermGroup) -> Result<Ratio<i64>> {
    Ok(gfie_fiber_count_report(group)?.ratio)
}

pub fn gfie_fiber_count_report(group: &PermGroup) -> Result<FiberCountReport> {
    if !group.is_transitive() {
        return Err(Error::domain(
            "fiber count is defined for transitive groups only".to_string(),
        ));
    }
    let normalizer = group.normalizer_in_sym()?;
    let centralizer = group.centralizer_in_sym()?;
    let center = group.center();
    let ratio = Ratio::new(
        (normalizer.order() * center.order()) as i64,
        (centralizer.order() * group.order()) as i64,
    );
    Ok(FiberCountReport {
        group_order: group.order() as u64,
        center_order: center.order() as u64,
        normalizer_order: normalizer.order() as u64,
        centralizer_order: centralizer.order() as u64,
        ratio,
        is_integer: ratio.is_integer(),
    })
}

/// Cap on the tuple space `|G|^k` scanned by [`surjection_orbit_oracle`].
pub const ORACLE_TUPLE_CAP: u128 = 10_000_000;

/// Independent oracle for the fiber count: enumerate all generating
/// `k`-tuples of `G` (surjections from the free group of rank `k`) and
/// compare orbit counts under `G`-conjugation and `N_{S_n}(G)`-conjugation.
/// Per-orbit stabilizers are `Z(G)` and `C_{S_n}(G)`, so the ratio of orbit
/// counts reproduces the fiber count without referencing it.
pub fn surjection_orbit_oracle(group: &PermGroup, k: usize) -> Result<Ratio<i64>> {
    if k < 2 {
        return Err(Error::domain("tuple rank k must be >= 2".to_string()));
    }
    let m = group.order();
    let tuple_space = (m as u128).checked_pow(k as u32);
    if tuple_space.is_none_or(|t| t > ORACLE_TUPLE_CAP) {
        return Err(Error::size_limit(format!(
            "|G|^k = {m}^{k} exceeds the oracle cap of {ORACLE_TUPLE_CAP}"
        )));
    }

    // enumerate generating tuples
    let mut generating: Vec<Vec<u16>> = Vec::new();
    let mut tuple = vec![0usize; k];
    loop {
        let gens: Vec<Perm> = tuple.iter().map(|&i| group.element(i).clone()).collect();
        let closure = PermGroup::from_generators(group.degree(), gens)?;
        if closure.order() == m {
            generating.push(tuple.iter().map(|&i| i as u16).collect());
        }
        // odometer increment
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < m {
                break;
            }
            tuple[pos] = 0;
        }
        if tuple.iter().all(|&t| t == 0) {
            break;
        }
    }

    let conj_maps = |conjugators: &PermGroup| -> Vec<Vec<u16>> {
        conjugators
            .elements()
            .iter()
            .map(|c| {
                let ci = c.inverse();
                (0..m)
                    .map(|i| {
                        let conj = c.compose(group.element(i)).compose(&ci);
                        group.index_of(&conj).expect("conjugation stays in G") as u16
                    })
                    .collect()
            })
            .collect()
    };

    let count_orbits = |maps: &[Vec<u16>], tuples: &[Vec<u16>]| -> usize {
        let members: HashSet<&[u16]> = tuples.iter().map(|t| t.as_slice()).collect();
        let mut visited: HashSet<Vec<u16>> = HashSet::new();
        let mut orbits = 0;
        for t in tuples {
            if visited.contains(t) {
                continue;
            }
            orbits += 1;
            let mut queue = vec![t.clone()];
            visited.insert(t.clone());
            while let Some(cur) = queue.pop() {
                for map in maps {
                    let img: Vec<u16> = cur.iter().map(|&i| map[i as usize]).collect();
                    debug_assert!(members.contains(img.as_slice()));
                    if !visited.contains(&img) {
                        visited.insert(img.clone());
                        queue.push(img);
                    }
                }
            }
        }
        orbits
    };

    let g_orbits = count_orbits(&conj_maps(group), &generating);
    let normalizer = group.normalizer_in_sym()?;
    let n_orbits = count_orbits(&conj_maps(&normalizer), &generating);
    Ok(Ratio::new(g_orbits as i64, n_orbits as i64))
}

/// Parse the group text format: first line the degree `n`, each following
/// non-empty line one generator as space-separated images.
pub fn parse_group_text(text: &str) -> Result<PermGroup> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty group description".to_string(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        message: format!("expected degree on first line, got {first:?}"),
    })?;
    let mut gens = Vec::new();
    for (lineno, line) in lines {
        let images: std::result::Result<Vec<u8>, _> =
            line.split_whitespace().map(|t| t.parse::<u8>()).collect();
        let images = images.map_err(|e| Error::Parse {
            line: lineno + 1,
            message: format!("bad image list: {e}"),
        })?;
        gens.push(Perm::new(images).map_err(|e| Error::Parse {
            line: lineno + 1,
            message: e.to_string(),
        })?);
    }
    PermGroup::from_generators(n, gens)
}

pub fn format_group_text(group: &PermGroup) -> String {
    let mut out = format!("{}\n", group.degree());
    for g in group.generators() {
        out.push_str(&format!("{g}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Subgroup lattice enumeration (degree <= 6), used to exercise identities on
// every transitive subgroup. Built on a full multiplication table.
// ---------------------------------------------------------------------------

/// Largest degree for which the full subgroup lattice is enumerated.
pub const LATTICE_MAX_DEGREE: usize = 6;

struct SymTable {
    perms: Vec<Perm>,
    mult: Vec<u16>, // mult[a * size + b] = index of perms[a] ∘ perms[b]
    size: usize,
}

impl SymTable {
    fn new(n: usize) -> Self {
        let perms = sym_elements(n);
        let size = perms.len();
        let index: HashMap<u64, u16> =
            perms.iter().enumerate().map(|(i, p)| (p.key(), i as u16)).collect();
        let mut mult = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                mult[a * size + b] = index[&perms[a].compose(&perms[b]).key()];
            }
        }
        SymTable { perms, mult, size }
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.size + b as usize]
    }

    fn identity(&self) -> u16 {
        self.perms.iter().position(|p| p.is_identity()).unwrap() as u16
    }
}

type Bitset = Vec<u64>;

fn bitset_new(size: usize) -> Bitset {
    vec![0u64; size.div_ceil(64)]
}

fn bitset_set(bs: &mut Bitset, i: u16) -> bool {
    let w = i as usize / 64;
    let mask = 1u64 << (i as usize % 64);
    let fresh = bs[w] & mask == 0;
    bs[w] |= mask;
    fresh
}

fn bitset_get(bs: &Bitset, i: u16) -> bool {
    bs[i as usize / 64] & (1u64 << (i as usize % 64)) != 0
}

fn close_over(table: &SymTable, seed: &[u16], gens: &[u16]) -> (Bitset, Vec<u16>) {
    let mut set = bitset_new(table.size);
    let mut list: Vec<u16> = Vec::new();
    let id = table.identity();
    if bitset_set(&mut set, id) {
        list.push(id);
    }
    for &s in seed {
        if bitset_set(&mut set, s) {
            list.push(s);
        }
    }
    let mut cursor = 0;
    while cursor < list.len() {
        let x = list[cursor];
        cursor += 1;
        for &g in gens {
            let p = table.mul(x, g);
            if bitset_set(&mut set, p) {
                list.push(p);
            }
        }
    }
    (set, list)
}

/// Every subgroup of `S_n` (not merely up to conjugacy), for `n <= 6`.
pub fn all_subgroups(n: usize) -> Result<Vec<PermGroup>> {
    if n == 0 || n > LATTICE_MAX_DEGREE {
        return Err(Error::size_limit(format!(
            "subgroup lattice enumeration supports degree 1..={LATTICE_MAX_DEGREE}, got {n}"
        )));
    }
    let table = SymTable::new(n);
    let id = table.identity();

    struct Node {
        set: Bitset,
        list: Vec<u16>,
        gens: Vec<u16>,
    }

    let mut seen: HashMap<Bitset, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let (triv_set, triv_list) = close_over(&table, &[], &[]);
    seen.insert(triv_set.clone(), 0);
    nodes.push(Node {
        set: triv_set,
        list: triv_list,
        gens: vec![],
    });

    let mut frontier = 0;
    while frontier < nodes.len() {
        let (cur_set, cur_list, cur_gens) = {
            let node = &nodes[frontier];
            (node.set.clone(), node.list.clone(), node.gens.clone())
        };
        frontier += 1;
        let mut tried = cur_set.clone();
        for g in 0..table.size as u16 {
            if g == id || bitset_get(&tried, g) {
                continue;
            }
            // every g' in the right coset Hg generates the same extension
            for &h in &cur_list {
                bitset_set(&mut tried, table.mul(h, g));
            }
            let mut gens = cur_gens.clone();
            gens.push(g);
            let (set, list) = close_over(&table, &cur_list, &gens);
            if !seen.contains_key(&set) {
                seen.insert(set.clone(), nodes.len());
                nodes.push(Node { set, list, gens });
            }
        }
    }

    let mut groups: Vec<PermGroup> = nodes
        .into_iter()
        .map(|node| {
            let elems: Vec<Perm> =
                node.list.iter().map(|&i| table.perms[i as usize].clone()).collect();
            let gens: Vec<Perm> =
                node.gens.iter().map(|&i| table.perms[i as usize].clone()).collect();
            let mut g = PermGroup::from_elements(n, elems).expect("closed by construction");
            if !gens.is_empty() {
                g.generators = gens;
            }
            g
        })
        .collect();
    groups.sort_by_key(|g| (g.order(), g.elements().to_vec()));
    Ok(groups)
}

/// All transitive subgroups of `S_n` (including conjugates), `n <= 6`.
pub fn transitive_subgroups(n: usize) -> Result<Vec<PermGroup>> {
    Ok(all_subgroups(n)?.into_iter().filter(|g| g.is_transitive()).collect())
}

/// Reduce a list of subgroups of `S_n` to representatives up to conjugacy.
pub fn up_to_conjugacy(groups: &[PermGroup], n: usize) -> Vec<PermGroup> {
    let sym = sym_elements(n);
    let mut reps: Vec<PermGroup> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for g in groups {
        let key: Vec<u64> = {
            let mut keys: Vec<u64> = g.elements().iter().map(|p| p.key()).collect();
            keys.sort_unstable();
            keys
        };
        if seen.contains(&key) {
            continue;
        }
        // mark the whole conjugacy orbit
        for s in &sym {
            let si = s.inverse();
            let mut conj: Vec<u64> = g
                .elements()
                .iter()
                .map(|p| s.compose(p).compose(&si).key())
                .collect();
            conj.sort_unstable();
            seen.insert(conj);
        }
        reps.push(g.clone());
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::symmetric(3).unwrap()
    }

    fn c3() -> PermGroup {
        PermGroup::cyclic(3).unwrap()
    }

    #[test]
    fn closure_from_generators() {
        // cyclic closure
        assert_eq!(c3().order(), 3);
        // brute-force closure equals S_3
        let g = PermGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        // empty generating set
        assert_eq!(PermGroup::trivial(2).order(), 1);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = PermGroup::from_generators_capped(
            4,
            vec![
                Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
            ],
            5,
        )
        .unwrap_err();
        assert!(matches!(err, Error::SizeLimit(_)));
    }

    #[test]
    fn invalid_perm_rejected() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
        assert!(Perm::new(vec![]).is_err());
    }

    #[test]
    fn element_order_is_lexicographic_and_deterministic() {
        let g = s3();
        let mut sorted = g.elements().to_vec();
        sorted.sort();
        assert_eq!(g.elements(), sorted.as_slice());
        let again = PermGroup::symmetric(3).unwrap();
        assert_eq!(g.elements(), again.elements());
    }

    #[test]
    fn conjugacy_classes_s3() {
        let classes = s3().conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        let total: usize = sizes.iter().sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn conjugacy_classes_abelian_and_trivial() {
        assert_eq!(c3().conjugacy_classes().len(), 3);
        assert_eq!(PermGroup::trivial(2).conjugacy_classes().len(), 1);
    }

    #[test]
    fn class_sizes_divide_group_order() {
        for g in [s3(), PermGroup::symmetric(4).unwrap(), c3()] {
            let order = g.order();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), order);
            for c in &classes {
                assert_eq!(order % c.size(), 0);
            }
        }
    }

    #[test]
    fn sym_scans_match_brute_force() {
        let c3 = c3();
        assert_eq!(c3.centralizer_in_sym().unwrap().order(), 3);
        assert_eq!(c3.normalizer_in_sym().unwrap().order(), 6);
        assert_eq!(s3().center().order(), 1);
        assert_eq!(c3.center().order(), 3);
    }

    #[test]
    fn containment_chain_center_centralizer_normalizer() {
        for g in [c3(), s3(), PermGroup::cyclic(4).unwrap()] {
            let center = g.center();
            let centralizer = g.centralizer_in_sym().unwrap();
            let normalizer = g.normalizer_in_sym().unwrap();
            assert!(center.is_subgroup_of(&centralizer));
            assert!(centralizer.is_subgroup_of(&normalizer));
            assert!(g.is_subgroup_of(&normalizer));
        }
    }

    #[test]
    fn fiber_count_examples() {
        for n in 2..=5 {
            let sn = PermGroup::symmetric(n).unwrap();
            assert_eq!(gfie_fiber_count(&sn).unwrap(), Ratio::from_integer(1));
        }
        let c2 = PermGroup::cyclic(2).unwrap();
        assert_eq!(gfie_fiber_count(&c2).unwrap(), Ratio::from_integer(1));
        // 6*3/(3*3) = 2
        assert_eq!(gfie_fiber_count(&c3()).unwrap(), Ratio::from_integer(2));
        let report = gfie_fiber_count_report(&c3()).unwrap();
        assert!(report.is_integer);
        assert_eq!(report.normalizer_order, 6);
        assert_eq!(report.centralizer_order, 3);
    }

    #[test]
    fn fiber_count_rejects_intransitive() {
        let g = PermGroup::from_generators(3, vec![Perm::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        assert!(matches!(gfie_fiber_count(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn surjection_oracle_small_groups() {
        let c2 = PermGroup::cyclic(2).unwrap();
        assert_eq!(surjection_orbit_oracle(&c2, 2).unwrap(), Ratio::from_integer(1));
        assert_eq!(surjection_orbit_oracle(&c3(), 2).unwrap(), Ratio::from_integer(2));
        assert_eq!(surjection_orbit_oracle(&s3(), 2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn group_text_round_trip() {
        let g = s3();
        let text = format_group_text(&g);
        let parsed = parse_group_text(&text).unwrap();
        assert_eq!(parsed.elements(), g.elements());
        assert!(parse_group_text("3\n0 0 1\n").is_err());
        assert!(parse_group_text("").is_err());
    }

    #[test]
    fn subgroup_lattice_counts() {
        // total subgroup counts of S_n
        assert_eq!(all_subgroups(3).unwrap().len(), 6);
        assert_eq!(all_subgroups(4).unwrap().len(), 30);
        assert_eq!(all_subgroups(5).unwrap().len(), 156);
    }

    #[test]
    fn transitive_classification_counts() {
        // classical counts of transitive groups up to conjugacy
        for (n, classes) in [(2usize, 1usize), (3, 2), (4, 5), (5, 5)] {
            let tr = transitive_subgroups(n).unwrap();
            assert_eq!(up_to_conjugacy(&tr, n).len(), classes, "degree {n}");
        }
    }

    #[test]
    fn perm_identities() {
        let p = Perm::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
    }
}
