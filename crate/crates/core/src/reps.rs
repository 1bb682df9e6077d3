//! Linear representations recorded as eigenvalue-exponent data, and the
//! invariants read off from them: ages, indices, K-conjugacy fusion and the
//! singularity/exponent package for quotient varieties.
//!
//! A fixed abstract primitive root of order `N = |G|` is never realized
//! numerically; an element `g` is recorded by the multiset of exponents
//! `a_i` of its eigenvalues, `0 <= a_i < N`. All age arithmetic is exact on
//! these integers.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::gcd_u64;
use crate::permgroup::{ConjClass, Perm, PermGroup};

/// A representation of a permutation group given by per-element exponent
/// multisets for a primitive root of order `root_order`.
#[derive(Debug, Clone)]
pub struct EigenRep {
    group: PermGroup,
    root_order: u64,
    dim: usize,
    /// exponents[i] is the sorted exponent multiset of group.element(i)
    exponents: Vec<Vec<u64>>,
}

impl EigenRep {
    pub fn new(group: PermGroup, root_order: u64, dim: usize, exponents: Vec<Vec<u64>>) -> Result<Self> {
        if exponents.len() != group.order() {
            return Err(Error::validation(format!(
                "need one exponent multiset per element: {} != {}",
                exponents.len(),
                group.order()
            )));
        }
        let mut exps = exponents;
        for e in &mut exps {
            if e.len() != dim {
                return Err(Error::validation(format!(
                    "exponent multiset has {} entries, dim is {dim}",
                    e.len()
                )));
            }
            if e.iter().any(|&a| a >= root_order) {
                return Err(Error::validation("exponent out of range [0, N)".to_string()));
            }
            e.sort_unstable();
        }
        let rep = EigenRep {
            group,
            root_order,
            dim,
            exponents: exps,
        };
        rep.validate()?;
        Ok(rep)
    }

    fn validate(&self) -> Result<()> {
        let id = self.group.identity_index();
        if self.exponents[id].iter().any(|&a| a != 0) {
            return Err(Error::validation(
                "identity must have all exponents zero".to_string(),
            ));
        }
        for (i, g) in self.group.elements().iter().enumerate() {
            // exponents of g^{-1} are the negations mod N
            let inv = self.group.index_of(&g.inverse()).expect("closed");
            let mut negated: Vec<u64> = self.exponents[i]
                .iter()
                .map(|&a| (self.root_order - a) % self.root_order)
                .collect();
            negated.sort_unstable();
            if negated != self.exponents[inv] {
                return Err(Error::validation(format!(
                    "exponents of the inverse of element {i} are not the negated multiset"
                )));
            }
            // exponents of an order-m element are multiples of N/m
            let m = g.order();
            if self.root_order % m == 0 {
                let step = self.root_order / m;
                if self.exponents[i].iter().any(|&a| a % step != 0) {
                    return Err(Error::validation(format!(
                        "element {i} of order {m} has an exponent not divisible by N/m"
                    )));
                }
            }
            // class function: conjugates carry equal multisets
            for h in self.group.generators() {
                let conj = h.compose(g).compose(&h.inverse());
                let j = self.group.index_of(&conj).expect("closed");
                if self.exponents[j] != self.exponents[i] {
                    return Err(Error::validation(
                        "exponent data is not a class function".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponents_of_index(&self, i: usize) -> &[u64] {
        &self.exponents[i]
    }

    pub fn exponents_of(&self, g: &Perm) -> Result<&[u64]> {
        let i = self
            .group
            .index_of(g)
            .ok_or_else(|| Error::domain("element not in the representation's group".to_string()))?;
        Ok(&self.exponents[i])
    }

    /// `age(g) = (1/N) * sum of exponents`; zero exactly for the identity.
    pub fn age(&self, g: &Perm) -> Result<Ratio<i64>> {
        Ok(self.age_of_index(
            self.group
                .index_of(g)
                .ok_or_else(|| Error::domain("element not in the representation's group".to_string()))?,
        ))
    }

    pub fn age_of_index(&self, i: usize) -> Ratio<i64> {
        let sum: u64 = self.exponents[i].iter().sum();
        Ratio::new(sum as i64, self.root_order as i64)
    }

    /// Minimum age over non-identity elements.
    pub fn min_age(&self) -> Result<Ratio<i64>> {
        let id = self.group.identity_index();
        (0..self.group.order())
            .filter(|&i| i != id)
            .map(|i| self.age_of_index(i))
            .min()
            .ok_or_else(|| Error::domain("the trivial group has no non-identity element".to_string()))
    }

    /// The representation is faithful iff no non-identity element acts as
    /// the identity matrix, i.e. has an all-zero exponent multiset.
    pub fn is_faithful(&self) -> bool {
        let id = self.group.identity_index();
        self.exponents
            .iter()
            .enumerate()
            .all(|(i, e)| i == id || e.iter().any(|&a| a != 0))
    }
}

/// The permutation representation: an element with cycle type
/// `(c_1, …, c_k)` has exponents `{ (N/c_j) * i : 0 <= i < c_j }` per cycle,
/// with `N = |G|`.
pub fn permutation_rep(group: &PermGroup) -> EigenRep {
    let n_root = group.order() as u64;
    let dim = group.degree();
    let exponents = group
        .elements()
        .iter()
        .map(|g| {
            let mut exps = Vec::with_capacity(dim);
            for c in g.cycle_type() {
                let step = n_root / c as u64;
                for i in 0..c as u64 {
                    exps.push(step * i);
                }
            }
            exps
        })
        .collect();
    EigenRep::new(group.clone(), n_root, dim, exponents).expect("permutation rep is valid")
}

/// Direct sum: exponent multisets concatenate per element.
pub fn direct_sum(a: &EigenRep, b: &EigenRep) -> Result<EigenRep> {
    if a.group.elements() != b.group.elements() || a.root_order != b.root_order {
        return Err(Error::domain(
            "direct sum requires the same group and root order".to_string(),
        ));
    }
    let exponents = a
        .exponents
        .iter()
        .zip(&b.exponents)
        .map(|(x, y)| {
            let mut e = x.clone();
            e.extend_from_slice(y);
            e
        })
        .collect();
    EigenRep::new(a.group.clone(), a.root_order, a.dim + b.dim, exponents)
}

pub fn double(rep: &EigenRep) -> EigenRep {
    direct_sum(rep, rep).expect("doubling always type-checks")
}

/// The cyclic group `C_n` acting diagonally with the given weights:
/// the distinguished generator (the `n`-cycle) gets exponents = weights,
/// and its k-th power gets `{ k*w mod n }`. Root order is `n`.
pub fn cyclic_weight_rep(n: usize, weights: &[i64]) -> Result<EigenRep> {
    if n < 2 {
        return Err(Error::validation("cyclic weight rep needs n >= 2".to_string()));
    }
    let group = PermGroup::cyclic(n)?;
    let nn = n as u64;
    let reduced: Vec<u64> = weights.iter().map(|&w| w.rem_euclid(n as i64) as u64).collect();
    let gen = Perm::from_cycles(n, &[(0..n as u8).collect()])?;
    // element g^k is identified by where it sends 0
    let exponents = group
        .elements()
        .iter()
        .map(|g| {
            let mut k = 0u64;
            let mut probe = Perm::identity(n);
            while &probe != g {
                probe = gen.compose(&probe);
                k += 1;
            }
            reduced.iter().map(|&w| (k * w) % nn).collect()
        })
        .collect();
    EigenRep::new(group, nn, reduced.len(), exponents)
}

/// `ind(g) = n - #(g-orbits on the n points)`; fixed points count as orbits.
pub fn index_of_perm(group: &PermGroup, g: &Perm) -> Result<u64> {
    if !group.contains(g) {
        return Err(Error::domain("element not in group".to_string()));
    }
    Ok((group.degree() - g.cycle_count()) as u64)
}

/// The subgroup of units used to fuse conjugacy classes over Q: every
/// residue coprime to N (the image of the cyclotomic character is all of
/// `(Z/N)^*`).
pub fn units_mod(n: u64) -> BTreeSet<u64> {
    (1..n.max(2)).filter(|&a| gcd_u64(a, n) == 1).collect()
}

fn check_power_subgroup(n: u64, h: &BTreeSet<u64>) -> Result<()> {
    if !h.contains(&1) {
        return Err(Error::domain("residue set must contain 1".to_string()));
    }
    for &a in h {
        if a == 0 || gcd_u64(a, n) != 1 {
            return Err(Error::domain(format!("residue {a} is not a unit mod {n}")));
        }
        for &b in h {
            if !h.contains(&(a * b % n)) {
                return Err(Error::domain(
                    "residue set is not multiplicatively closed".to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// A K-conjugacy class: ordinary classes fused under the power maps
/// `g -> g^a`, `a` in a subgroup `H` of units mod N.
#[derive(Debug, Clone)]
pub struct KConjClass {
    /// indices into the `conjugacy_classes()` list that were fused
    pub class_indices: Vec<usize>,
    /// all member element indices, sorted
    pub members: Vec<usize>,
}

/// Fuse the conjugacy classes of `group` under `g -> g^a`, `a ∈ h` (units
/// mod `root_order`). Classes are returned sorted by smallest member.
pub fn k_conjugacy_classes(
    group: &PermGroup,
    root_order: u64,
    h: &BTreeSet<u64>,
) -> Result<Vec<KConjClass>> {
    check_power_subgroup(root_order, h)?;
    let classes = group.conjugacy_classes();
    let class_of_element: BTreeMap<usize, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.members.iter().map(move |&m| (m, ci)))
        .collect();

    let mut fused_with: Vec<usize> = (0..classes.len()).collect();
    fn find(f: &mut Vec<usize>, i: usize) -> usize {
        if f[i] != i {
            let root = find(f, f[i]);
            f[i] = root;
        }
        f[i]
    }
    for (ci, class) in classes.iter().enumerate() {
        let rep = group.element(class.representative());
        for &a in h {
            let powered = rep.pow(a as i64);
            let cj = class_of_element[&group.index_of(&powered).expect("closed")];
            let (ri, rj) = (find(&mut fused_with, ci), find(&mut fused_with, cj));
            if ri != rj {
                fused_with[ri.max(rj)] = ri.min(rj);
            }
        }
    }

    let mut buckets: BTreeMap<usize, KConjClass> = BTreeMap::new();
    for ci in 0..classes.len() {
        let root = find(&mut fused_with, ci);
        let entry = buckets.entry(root).or_insert_with(|| KConjClass {
            class_indices: Vec::new(),
            members: Vec::new(),
        });
        entry.class_indices.push(ci);
        entry.members.extend_from_slice(&classes[ci].members);
    }
    let mut out: Vec<KConjClass> = buckets.into_values().collect();
    for k in &mut out {
        k.members.sort_unstable();
    }
    out.sort_by_key(|k| k.members[0]);
    Ok(out)
}

/// The singularity / predicted-exponent package of the quotient of
/// projective space by the recorded linear action.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingularityInvariants {
    /// minimum age over non-identity elements
    #[serde(with = "crate::ratio_serde")]
    pub age_group: Ratio<i64>,
    /// minimal log discrepancy; equals the group age
    #[serde(with = "crate::ratio_serde")]
    pub mld: Ratio<i64>,
    /// number of youngest K-conjugacy classes
    pub upsilon: u64,
    /// number of minimally discrepant divisors; equals upsilon
    pub delta: u64,
    /// number of crepant divisors: age-1 K-classes (0 when mld > 1)
    pub gamma: u64,
    /// Picard number of the compactified quotient; one for these quotients
    pub rho: u64,
    /// quotient map is etale in codimension one (no pseudo-reflections,
    /// no non-identity scalars)
    pub etale_codim1: bool,
    /// mld >= 1
    pub canonical: bool,
    /// predicted power of B on the point-counting side
    #[serde(with = "crate::ratio_serde")]
    pub manin_alpha: Ratio<i64>,
    /// predicted log-power on the point-counting side; None when the
    /// non-canonical regime leaves it undetermined
    pub manin_log_exponent: Option<u64>,
    /// upper bound 1/mld for the B-power in the toric case
    #[serde(with = "crate::ratio_serde")]
    pub toric_alpha_bound: Ratio<i64>,
    /// predicted power of B on the field-counting side: 1/age
    #[serde(with = "crate::ratio_serde")]
    pub malle_alpha: Ratio<i64>,
    /// predicted log-power on the field-counting side: upsilon - 1
    pub malle_log_exponent: u64,
    /// human-readable diagnostics (age disagreements within fused classes)
    pub diagnostics: Vec<String>,
}

/// Per-K-class age summary used by [`singularity_invariants`].
#[derive(Debug, Clone)]
pub struct KClassAge {
    pub members: Vec<usize>,
    /// common age when all members agree, otherwise the minimum
    pub age: Ratio<i64>,
    pub ages_agree: bool,
}

/// Ages of the non-identity K-classes. For a fused class whose members have
/// unequal ages the minimum is recorded and `ages_agree` is false.
pub fn k_class_ages(rep: &EigenRep, h: &BTreeSet<u64>) -> Result<Vec<KClassAge>> {
    let id = rep.group().identity_index();
    let classes = k_conjugacy_classes(rep.group(), rep.root_order(), h)?;
    Ok(classes
        .into_iter()
        .filter(|k| !(k.members.len() == 1 && k.members[0] == id))
        .map(|k| {
            let ages: Vec<Ratio<i64>> = k.members.iter().map(|&m| rep.age_of_index(m)).collect();
            let min = *ages.iter().min().unwrap();
            let agree = ages.iter().all(|&a| a == min);
            KClassAge {
                members: k.members,
                age: min,
                ages_agree: agree,
            }
        })
        .collect())
}

pub fn singularity_invariants(rep: &EigenRep, h: &BTreeSet<u64>) -> Result<SingularityInvariants> {
    if !rep.is_faithful() {
        return Err(Error::domain(
            "singularity invariants need a faithful representation".to_string(),
        ));
    }
    if rep.group().order() < 2 {
        return Err(Error::domain(
            "the trivial group gives no quotient singularity".to_string(),
        ));
    }
    let age_group = rep.min_age()?;
    let class_ages = k_class_ages(rep, h)?;
    let mut diagnostics = Vec::new();
    for (i, k) in class_ages.iter().enumerate() {
        if !k.ages_agree {
            diagnostics.push(format!(
                "K-class #{i} fuses elements of unequal age; recorded the minimum {}",
                crate::ratio_serde::format(&k.age)
            ));
        }
    }
    let upsilon = class_ages.iter().filter(|k| k.age == age_group).count() as u64;
    let one = Ratio::from_integer(1);
    let gamma = if age_group <= one {
        class_ages.iter().filter(|k| k.age == one).count() as u64
    } else {
        0
    };

    let id = rep.group().identity_index();
    let mut pseudo_reflection = false;
    let mut scalar = false;
    for i in 0..rep.group().order() {
        if i == id {
            continue;
        }
        let exps = rep.exponents_of_index(i);
        let nonzero = exps.iter().filter(|&&a| a != 0).count();
        if nonzero == 1 {
            pseudo_reflection = true;
        }
        if nonzero == exps.len() && exps.iter().all(|&a| a == exps[0]) {
            scalar = true;
        }
    }
    let etale_codim1 = !pseudo_reflection && !scalar;

    let canonical = age_group >= one;
    let rho = 1u64;
    let (manin_alpha, manin_log_exponent) = if canonical {
        (one, Some(rho + gamma - 1))
    } else {
        // heuristic prediction in the non-canonical regime; the log power
        // is left open (the toric computation points the other way)
        (age_group.recip(), None)
    };

    Ok(SingularityInvariants {
        age_group,
        mld: age_group,
        upsilon,
        delta: upsilon,
        gamma,
        rho,
        etale_codim1,
        canonical,
        manin_alpha,
        manin_log_exponent,
        toric_alpha_bound: age_group.recip(),
        malle_alpha: age_group.recip(),
        malle_log_exponent: upsilon - 1,
        diagnostics,
    })
}

/// One row of the index-versus-age comparison.
#[derive(Debug, Clone, Serialize)]
pub struct IndAgeRow {
    pub element: String,
    pub index: u64,
    #[serde(with = "crate::ratio_serde")]
    pub age: Ratio<i64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndAgeReport {
    pub group_order: u64,
    pub degree: usize,
    pub rows: Vec<IndAgeRow>,
    pub all_pass: bool,
}

/// For every element of a transitive group, compare `ind(g)` with the age of
/// `g` in the doubled permutation representation. The two are expected to
/// agree exactly.
pub fn ind_eq_age_check(group: &PermGroup) -> Result<IndAgeReport> {
    if !group.is_transitive() {
        return Err(Error::domain("index-age comparison needs a transitive group".to_string()));
    }
    let rep = double(&permutation_rep(group));
    let mut rows = Vec::with_capacity(group.order());
    for g in group.elements() {
        let index = index_of_perm(group, g)?;
        let age = rep.age(g)?;
        rows.push(IndAgeRow {
            element: g.to_string(),
            index,
            age,
            pass: Ratio::from_integer(index as i64) == age,
        });
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(IndAgeReport {
        group_order: group.order() as u64,
        degree: group.degree(),
        rows,
        all_pass,
    })
}

// --- serialization -----------------------------------------------------

/// JSON shape for representations: the group by generators plus the
/// exponent table keyed by element image strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct EigenRepJson {
    pub degree: usize,
    pub generators: Vec<Vec<u8>>,
    pub root_order: u64,
    pub dim: usize,
    pub exponents: BTreeMap<String, Vec<u64>>,
}

pub fn rep_to_json(rep: &EigenRep) -> EigenRepJson {
    EigenRepJson {
        degree: rep.group().degree(),
        generators: rep.group().generators().iter().map(|g| g.images().to_vec()).collect(),
        root_order: rep.root_order(),
        dim: rep.dim(),
        exponents: rep
            .group()
            .elements()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.to_string(), rep.exponents_of_index(i).to_vec()))
            .collect(),
    }
}

pub fn rep_from_json(json: &EigenRepJson) -> Result<EigenRep> {
    let gens: Result<Vec<Perm>> = json.generators.iter().map(|im| Perm::new(im.clone())).collect();
    let group = PermGroup::from_generators(json.degree, gens?)?;
    let mut exponents = vec![Vec::new(); group.order()];
    for (key, exps) in &json.exponents {
        let images: std::result::Result<Vec<u8>, _> =
            key.split_whitespace().map(|t| t.parse()).collect();
        let perm = Perm::new(images.map_err(|e| Error::validation(format!("bad element key: {e}")))?)?;
        let idx = group
            .index_of(&perm)
            .ok_or_else(|| Error::validation(format!("element {key:?} not in generated group")))?;
        exponents[idx] = exps.clone();
    }
    EigenRep::new(group, json.root_order, json.dim, exponents)
}

/// Helper for reports: ages per conjugacy class.
pub fn class_age_table(rep: &EigenRep) -> Vec<(ConjClass, Ratio<i64>)> {
    rep.group()
        .conjugacy_classes()
        .into_iter()
        .map(|c| {
            let age = rep.age_of_index(c.representative());
            (c, age)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn permutation_rep_exponents() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let rep = permutation_rep(&s3);
        let id = Perm::identity(3);
        assert_eq!(rep.exponents_of(&id).unwrap(), &[0, 0, 0]);
        // 3-cycle in S_3 (N = 6): cycle of length 3 gives {0, 2, 4}
        let c = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(rep.exponents_of(&c).unwrap(), &[0, 2, 4]);

        // 3-cycle in C_3 (N = 3): all cube roots of unity
        let c3 = PermGroup::cyclic(3).unwrap();
        let rep3 = permutation_rep(&c3);
        let g = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(rep3.exponents_of(&g).unwrap(), &[0, 1, 2]);

        // transposition in S_2 (N = 2): eigenvalues 1, -1
        let s2 = PermGroup::symmetric(2).unwrap();
        let rep2 = permutation_rep(&s2);
        let t = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        assert_eq!(rep2.exponents_of(&t).unwrap(), &[0, 1]);
    }

    #[test]
    fn direct_sum_concatenates() {
        let s2 = PermGroup::symmetric(2).unwrap();
        let rep = permutation_rep(&s2);
        let dbl = double(&rep);
        let t = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        assert_eq!(dbl.exponents_of(&t).unwrap(), &[0, 0, 1, 1]);
        assert_eq!(dbl.dim(), 2 * rep.dim());
        // adding a trivial one-dimensional rep appends a zero per element
        let trivial = EigenRep::new(s2.clone(), 2, 1, vec![vec![0], vec![0]]).unwrap();
        let sum = direct_sum(&rep, &trivial).unwrap();
        assert_eq!(sum.exponents_of(&t).unwrap(), &[0, 0, 1]);
    }

    #[test]
    fn cyclic_weight_reps() {
        let r = cyclic_weight_rep(3, &[1, 1]).unwrap();
        let g = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(r.exponents_of(&g).unwrap(), &[1, 1]);
        assert_eq!(r.age(&g).unwrap(), ratio(2, 3));
        assert_eq!(r.age(&g.pow(2)).unwrap(), ratio(4, 3));

        let lab = cyclic_weight_rep(2, &[1, 1, 0]).unwrap();
        let t = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        assert_eq!(lab.exponents_of(&t).unwrap(), &[0, 1, 1]);

        let r4 = cyclic_weight_rep(4, &[1, 3]).unwrap();
        let g4 = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(r4.exponents_of(&g4.pow(2)).unwrap(), &[2, 2]);

        assert!(cyclic_weight_rep(1, &[0]).is_err());
    }

    #[test]
    fn age_examples() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let dbl = double(&permutation_rep(&s3));
        assert_eq!(dbl.age(&Perm::identity(3)).unwrap(), ratio(0, 1));
        // 3-cycle in the doubled permutation rep of S_3: age = 2
        let c = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(dbl.age(&c).unwrap(), ratio(2, 1));
    }

    #[test]
    fn age_plus_inverse_age_counts_nonzero_exponents() {
        for group in [
            PermGroup::symmetric(4).unwrap(),
            PermGroup::cyclic(6).unwrap(),
        ] {
            let rep = permutation_rep(&group);
            for g in group.elements() {
                let nonzero =
                    rep.exponents_of(g).unwrap().iter().filter(|&&a| a != 0).count() as i64;
                let total = rep.age(g).unwrap() + rep.age(&g.inverse()).unwrap();
                assert_eq!(total, Ratio::from_integer(nonzero));
            }
        }
    }

    #[test]
    fn doubling_doubles_age() {
        let g4 = PermGroup::symmetric(4).unwrap();
        let rep = permutation_rep(&g4);
        let dbl = double(&rep);
        for g in g4.elements() {
            assert_eq!(dbl.age(g).unwrap(), rep.age(g).unwrap() * 2);
        }
    }

    #[test]
    fn index_examples() {
        let s5 = PermGroup::symmetric(5).unwrap();
        assert_eq!(index_of_perm(&s5, &Perm::identity(5)).unwrap(), 0);
        let s2 = PermGroup::symmetric(2).unwrap();
        assert_eq!(
            index_of_perm(&s2, &Perm::from_cycles(2, &[vec![0, 1]]).unwrap()).unwrap(),
            1
        );
        let s3 = PermGroup::symmetric(3).unwrap();
        assert_eq!(
            index_of_perm(&s3, &Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()).unwrap(),
            2
        );
    }

    #[test]
    fn k_conjugacy_fusion() {
        let c3 = PermGroup::cyclic(3).unwrap();
        // units mod 3 fuse {g} and {g^2}
        let fused = k_conjugacy_classes(&c3, 3, &units_mod(3)).unwrap();
        assert_eq!(fused.len(), 2);
        // trivial H keeps ordinary classes
        let h1: BTreeSet<u64> = [1].into_iter().collect();
        assert_eq!(k_conjugacy_classes(&c3, 3, &h1).unwrap().len(), 3);
        // S_3 is rational: no fusion under units mod 6
        let s3 = PermGroup::symmetric(3).unwrap();
        assert_eq!(k_conjugacy_classes(&s3, 6, &units_mod(6)).unwrap().len(), 3);
        // a non-closed residue set is rejected
        let bad: BTreeSet<u64> = [1, 2].into_iter().collect();
        assert!(k_conjugacy_classes(&c3, 9, &bad).is_err());
    }

    #[test]
    fn fusion_is_monotone_coarsening() {
        let c5 = PermGroup::cyclic(5).unwrap();
        let h1: BTreeSet<u64> = [1].into_iter().collect();
        let h2: BTreeSet<u64> = [1, 4].into_iter().collect();
        let full = units_mod(5);
        let n1 = k_conjugacy_classes(&c5, 5, &h1).unwrap().len();
        let n2 = k_conjugacy_classes(&c5, 5, &h2).unwrap().len();
        let n3 = k_conjugacy_classes(&c5, 5, &full).unwrap().len();
        assert!(n1 >= n2 && n2 >= n3);
        assert_eq!((n1, n2, n3), (5, 3, 2));
    }

    #[test]
    fn invariants_lab_action() {
        // C_2 acting on A^3 by diag(-1, -1, 1)
        let rep = cyclic_weight_rep(2, &[1, 1, 0]).unwrap();
        let inv = singularity_invariants(&rep, &units_mod(2)).unwrap();
        assert_eq!(inv.age_group, ratio(1, 1));
        assert_eq!(inv.mld, ratio(1, 1));
        assert_eq!(inv.upsilon, 1);
        assert_eq!(inv.gamma, 1);
        assert!(inv.etale_codim1);
        assert!(inv.canonical);
        assert_eq!(inv.manin_alpha, ratio(1, 1));
        assert_eq!(inv.manin_log_exponent, Some(1));
        assert_eq!(inv.malle_alpha, ratio(1, 1));
        assert_eq!(inv.malle_log_exponent, 0);
        assert!(inv.diagnostics.is_empty());
    }

    #[test]
    fn invariants_non_canonical_cyclic() {
        let rep = cyclic_weight_rep(3, &[1, 1]).unwrap();
        let inv = singularity_invariants(&rep, &units_mod(3)).unwrap();
        assert_eq!(inv.age_group, ratio(2, 3));
        assert!(!inv.canonical);
        assert_eq!(inv.toric_alpha_bound, ratio(3, 2));
        assert_eq!(inv.malle_alpha, ratio(3, 2));
        assert_eq!(inv.malle_log_exponent, 0);
        assert_eq!(inv.upsilon, 1);
        // ages 2/3 and 4/3 fuse into one K-class: diagnostic expected
        assert_eq!(inv.diagnostics.len(), 1);
        assert!(inv.manin_log_exponent.is_none());
    }

    #[test]
    fn pseudo_reflection_detected() {
        let s2 = PermGroup::symmetric(2).unwrap();
        let rep = permutation_rep(&s2);
        let inv = singularity_invariants(&rep, &units_mod(2)).unwrap();
        assert!(!inv.etale_codim1);
        // scalar action is also rejected: C_2 by diag(-1, -1)
        let scalar = cyclic_weight_rep(2, &[1, 1]).unwrap();
        let inv2 = singularity_invariants(&scalar, &units_mod(2)).unwrap();
        assert!(!inv2.etale_codim1);
    }

    #[test]
    fn non_faithful_rejected() {
        let c2 = PermGroup::cyclic(2).unwrap();
        let rep = EigenRep::new(c2, 2, 1, vec![vec![0], vec![0]]).unwrap();
        assert!(singularity_invariants(&rep, &units_mod(2)).is_err());
    }

    #[test]
    fn ind_age_small_groups() {
        for group in [
            PermGroup::symmetric(2).unwrap(),
            PermGroup::symmetric(3).unwrap(),
            PermGroup::symmetric(4).unwrap(),
            PermGroup::cyclic(4).unwrap(),
            PermGroup::cyclic(6).unwrap(),
        ] {
            let report = ind_eq_age_check(&group).unwrap();
            assert!(report.all_pass, "failed for group of order {}", group.order());
        }
        // 4-cycle in S_4: index 3 equals age 3
        let s4 = PermGroup::symmetric(4).unwrap();
        let rep = double(&permutation_rep(&s4));
        let c4 = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(index_of_perm(&s4, &c4).unwrap(), 3);
        assert_eq!(rep.age(&c4).unwrap(), ratio(3, 1));
    }

    #[test]
    fn group_age_is_generator_choice_independent() {
        // replacing the generator by a power with gcd(a, n) = 1 permutes
        // element ages but leaves the minimum unchanged
        for (n, weights) in [(5usize, vec![1i64, 2]), (7, vec![1, 3, 5]), (8, vec![1, 1, 2])] {
            let base = cyclic_weight_rep(n, &weights).unwrap();
            let min_base = base.min_age().unwrap();
            for a in 2..n as i64 {
                if num_integer::gcd(a, n as i64) != 1 {
                    continue;
                }
                let twisted: Vec<i64> = weights.iter().map(|&w| w * a).collect();
                let alt = cyclic_weight_rep(n, &twisted).unwrap();
                assert_eq!(alt.min_age().unwrap(), min_base, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn rep_json_round_trip() {
        let rep = cyclic_weight_rep(4, &[1, 3]).unwrap();
        let json = rep_to_json(&rep);
        let text = serde_json::to_string(&json).unwrap();
        let back = rep_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.dim(), rep.dim());
        for g in rep.group().elements() {
            assert_eq!(back.exponents_of(g).unwrap(), rep.exponents_of(g).unwrap());
        }
    }
}
