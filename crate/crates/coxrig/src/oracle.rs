//! Brute-force rigidity verification for small finite Coxeter groups.
//!
//! The group is realized once by coset enumeration; every subset of its
//! involutions up to a size limit is then tested as a candidate Coxeter
//! generating set. A subset certifies when it generates, its matrix of
//! pairwise product orders is finite-type, and that matrix's group order
//! equals the realized order: the abstract group on the matrix surjects
//! onto the realized group, and a surjection between finite groups of
//! equal order is an isomorphism. Certified systems are bucketed into
//! diagram-isomorphism classes; one class means the group determines its
//! diagram within the search limits.
//!
//! On top of the sweep sits the structural machinery for comparing two
//! certified systems of the same realization: matching their maximal
//! spherical subsets through conjugacy witnesses, comparing abelianized
//! parabolic images through commutator cosets, and assembling a
//! label-preserving generator bijection from the matched families.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::class::{check_class_membership, is_strong_even, odd_partner_structure};
use crate::finite::{
    classify_finite_type, coxeter_order, maximal_independent_subsets, maximal_spherical_subsets,
    GroupOrder,
};
use crate::group::{todd_coxeter, ElementSet, EngineError, RegularRealization};
use crate::iso::{diagram_isomorphic, DiagramBijection};
use crate::matrix::{CoxeterMatrix, GeneratorSubset, Label};

/// Caps for the candidate sweep, all overridable from the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest realized group order the sweep will touch.
    pub max_order: usize,
    /// Largest candidate generating set size.
    pub max_gens: usize,
    /// Coset cap handed to the enumerator.
    pub max_cosets: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_order: 200, max_gens: 6, max_cosets: 100_000 }
    }
}

/// Hard cap on the number of involution subsets one sweep may visit.
/// Keeps a careless `--max-order` from exploding combinatorially; within
/// this cap the involution count stays below 64, which the sweep's
/// bitmask bookkeeping relies on.
pub const MAX_SUBSETS: u128 = 4_000_000;

/// A verdict-level contradiction with the structure theory of Coxeter
/// systems. That theory leaves no room for such an outcome, so it can
/// only arise from an implementation bug; the full offending state rides
/// along for triage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalInconsistency {
    pub context: &'static str,
    pub details: String,
}

impl fmt::Display for InternalInconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "internal inconsistency: {}\n{}", self.context, self.details)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search limits exceeded: {0}")]
    LimitExceeded(String),
    #[error("matrix is not finite-type; the realized sweep needs a finite group")]
    InfiniteGroup,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Inconsistency(Box<InternalInconsistency>),
}

impl std::error::Error for InternalInconsistency {}

fn inconsistency<T>(context: &'static str, details: String) -> Result<T, OracleError> {
    Err(OracleError::Inconsistency(Box::new(InternalInconsistency { context, details })))
}

/// A certified Coxeter generating set of a realization: the generators as
/// group elements plus their matrix of pairwise product orders. Built
/// only by [`certify_coxeter_system`], which is what makes the matrix
/// trustworthy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSystem {
    generators: ElementSet,
    matrix: CoxeterMatrix,
}

impl CandidateSystem {
    pub fn generators(&self) -> &ElementSet {
        &self.generators
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    /// Element playing generator `i` of the matrix (sorted element order).
    pub fn generator_element(&self, i: usize) -> u32 {
        self.generators.as_slice()[i]
    }

    fn elements_of(&self, subset: &GeneratorSubset) -> ElementSet {
        subset.iter().map(|i| self.generator_element(i)).collect()
    }
}

/// Certify a set of involutions as a Coxeter generating set.
///
/// Returns the certified system when `gens` generates the whole group and
/// the matrix of pairwise product orders is finite-type with group order
/// equal to the realized order; `None` otherwise. A matrix that is not
/// finite-type presents an infinite group, which cannot be isomorphic to
/// the finite realization, so those are rejected outright.
pub fn certify_coxeter_system(
    real: &RegularRealization,
    gens: &ElementSet,
) -> Option<CandidateSystem> {
    for x in gens.iter() {
        assert!(
            x != real.identity() && real.mult(x, x) == real.identity(),
            "certify_coxeter_system requires involutions, got element {x}"
        );
    }
    if gens.is_empty() || !real.is_generating(gens) {
        return None;
    }
    certify_generating(real, gens)
}

/// Certification minus the generation test, for callers that already know
/// the set generates.
fn certify_generating(real: &RegularRealization, gens: &ElementSet) -> Option<CandidateSystem> {
    let elems = gens.as_slice();
    let n = elems.len();
    let matrix = CoxeterMatrix::from_fn(n, |i, j| {
        let order = real.element_order(real.mult(elems[i], elems[j]));
        Label::Finite(order as u32)
    });
    classify_finite_type(&matrix)?;
    match coxeter_order(&matrix) {
        GroupOrder::Finite(order) if order == real.order().into() => {
            Some(CandidateSystem { generators: gens.clone(), matrix })
        }
        _ => None,
    }
}

/// All certified Coxeter generating sets over subsets of the involutions,
/// sizes `1..=max_gens`, in (size, lexicographic) order.
///
/// Supersets of generating sets are pruned: a Coxeter generating set is
/// minimal because a standard parabolic subgroup on a proper subset of
/// the generators intersects the generating set in exactly that subset,
/// so it is a proper subgroup. The pruning therefore loses no certified
/// candidates.
pub fn enumerate_coxeter_generating_sets(
    real: &RegularRealization,
    limits: &SearchLimits,
) -> Result<Vec<CandidateSystem>, OracleError> {
    if real.order() > limits.max_order {
        return Err(OracleError::LimitExceeded(format!(
            "group order {} exceeds max_order {}",
            real.order(),
            limits.max_order
        )));
    }
    let involutions = real.involutions();
    let inv: Vec<u32> = involutions.iter().collect();
    let max_k = limits.max_gens.min(inv.len());
    let mut total: u128 = 0;
    for k in 1..=max_k {
        total = total.saturating_add(binomial(inv.len() as u128, k as u128));
    }
    if total > MAX_SUBSETS {
        return Err(OracleError::LimitExceeded(format!(
            "sweep of {total} involution subsets exceeds the cap of {MAX_SUBSETS}"
        )));
    }

    // Right-multiplication permutations of every involution, computed once.
    let perms: Vec<Vec<u32>> = inv.iter().map(|&x| real.right_mult_perm(x)).collect();
    let order = real.order();

    // Bitmasks (over positions in `inv`) of subsets known to generate.
    // Any superset of a generating set generates, and certification can
    // never succeed on one, so those are recorded and skipped wholesale.
    // Certification already rejects non-minimal sets on its own, so with
    // more than 64 involutions the bookkeeping just switches off.
    let prune = inv.len() <= 64;
    let mut generating: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();

    let mut scratch = vec![false; order];
    for k in 1..=max_k {
        for combo in (0..inv.len()).combinations(k) {
            if prune {
                let mask: u64 = combo.iter().fold(0, |m, &p| m | 1u64 << p);
                if combo.iter().any(|&p| generating.contains(&(mask ^ (1u64 << p)))) {
                    generating.insert(mask);
                    continue;
                }
            }
            let closure = closure_size(&combo, &perms, &mut scratch);
            if closure != order {
                continue;
            }
            if prune {
                let mask: u64 = combo.iter().fold(0, |m, &p| m | 1u64 << p);
                generating.insert(mask);
            }
            let gens: ElementSet = combo.iter().map(|&p| inv[p]).collect();
            if let Some(candidate) = certify_generating(real, &gens) {
                out.push(candidate);
            }
        }
    }
    Ok(out)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Size of the subgroup generated by the chosen involutions, by
/// breadth-first closure over their precomputed permutations.
fn closure_size(combo: &[usize], perms: &[Vec<u32>], seen: &mut [bool]) -> usize {
    seen.fill(false);
    seen[0] = true;
    let mut frontier = vec![0u32];
    let mut count = 1;
    while let Some(x) = frontier.pop() {
        for &p in combo {
            let y = perms[p][x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                frontier.push(y);
            }
        }
    }
    count
}

/// One diagram-isomorphism class found by the sweep: the first certified
/// matrix of the class and the generating set that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRepresentative {
    pub matrix: CoxeterMatrix,
    pub generators: ElementSet,
}

/// Outcome of the rigidity sweep for one base matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub base_matrix: CoxeterMatrix,
    pub limits: SearchLimits,
    /// Pairwise non-isomorphic diagram classes, in sweep order.
    pub classes: Vec<ClassRepresentative>,
    /// Exactly one class was found. Only a claim of rigidity when
    /// `exhausted` also holds.
    pub rigid: bool,
    /// The sweep covered every size a Coxeter generating set of this
    /// group could have: a rank-r system forces order at least `2^r`, so
    /// `max_gens` suffices once `|W| < 2^(max_gens+1)`.
    pub exhausted: bool,
}

/// Realize the group, sweep the involution subsets, and bucket certified
/// systems by diagram isomorphism.
pub fn rigidity_verdict(
    matrix: &CoxeterMatrix,
    limits: &SearchLimits,
) -> Result<RigidityVerdict, OracleError> {
    let order = match coxeter_order(matrix) {
        GroupOrder::Finite(order) => order,
        GroupOrder::Infinite => return Err(OracleError::InfiniteGroup),
    };
    if order > limits.max_order.into() {
        return Err(OracleError::LimitExceeded(format!(
            "group order {order} exceeds max_order {}",
            limits.max_order
        )));
    }
    if limits.max_gens < matrix.rank() {
        return Err(OracleError::LimitExceeded(format!(
            "max_gens {} cannot even cover the base system of rank {}",
            limits.max_gens,
            matrix.rank()
        )));
    }
    let real = todd_coxeter(matrix, limits.max_cosets)?;
    let candidates = enumerate_coxeter_generating_sets(&real, limits)?;
    let mut classes: Vec<ClassRepresentative> = Vec::new();
    for candidate in candidates {
        let known =
            classes.iter().any(|c| diagram_isomorphic(candidate.matrix(), &c.matrix).is_some());
        if !known {
            classes.push(ClassRepresentative {
                matrix: candidate.matrix.clone(),
                generators: candidate.generators.clone(),
            });
        }
    }
    if !classes.iter().any(|c| diagram_isomorphic(matrix, &c.matrix).is_some()) {
        return inconsistency(
            "the base matrix's own class is missing from the sweep",
            format!("base {matrix:?}\nclasses {classes:?}"),
        );
    }
    let exhausted = (real.order() as u128) < (1u128 << (limits.max_gens + 1).min(127));
    let rigid = classes.len() == 1;
    Ok(RigidityVerdict { base_matrix: matrix.clone(), limits: *limits, classes, rigid, exhausted })
}

/// Matching between the maximal spherical families of two certified
/// systems of one realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalMatch {
    pub subset_a: GeneratorSubset,
    pub subset_b: GeneratorSubset,
    /// Element conjugating the realized parabolic of `subset_a` onto that
    /// of `subset_b`.
    pub conjugator: u32,
}

/// For each maximal spherical subset of the first system, find the unique
/// maximal spherical subset of the second whose realized parabolic
/// subgroup is conjugate, with an explicit conjugating element. Zero or
/// multiple matches contradict the uniqueness theorem for parabolic
/// conjugacy and abort with both element sets.
pub fn match_maximal_sphericals(
    real: &RegularRealization,
    sys_a: &CandidateSystem,
    sys_b: &CandidateSystem,
) -> Result<Vec<MaximalMatch>, OracleError> {
    let fam_a = maximal_spherical_subsets(sys_a.matrix());
    let fam_b = maximal_spherical_subsets(sys_b.matrix());
    let mut out = Vec::new();
    for subset_a in fam_a.iter() {
        let h = sys_a.elements_of(subset_a);
        let mut found: Vec<(GeneratorSubset, u32)> = Vec::new();
        for subset_b in fam_b.iter() {
            let k = sys_b.elements_of(subset_b);
            if let Some(w) = real.subgroup_conjugate_witness(&h, &k) {
                found.push((subset_b.clone(), w));
            }
        }
        match found.as_slice() {
            [(subset_b, w)] => out.push(MaximalMatch {
                subset_a: subset_a.clone(),
                subset_b: subset_b.clone(),
                conjugator: *w,
            }),
            _ => {
                return inconsistency(
                    "maximal spherical subset matched zero or several times",
                    format!(
                        "subset {subset_a} with parabolic {:?}\nmatches {found:?}\nfamily B {:?}",
                        real.subgroup_closure(&h),
                        fam_b.members(),
                    ),
                )
            }
        }
    }
    Ok(out)
}

/// The abelianization of the realized group, as canonical commutator
/// coset representatives. The image of any subgroup lives here as a set
/// of representatives.
#[derive(Debug, Clone)]
pub struct AbelianQuotient {
    commutator: ElementSet,
    rep_of: Vec<u32>,
}

impl AbelianQuotient {
    pub fn new(real: &RegularRealization) -> Self {
        let commutator = real.commutator_subgroup();
        let rep_of = (0..real.order() as u32)
            .map(|x| {
                commutator
                    .iter()
                    .map(|c| real.mult(x, c))
                    .min()
                    .expect("commutator subgroup contains the identity")
            })
            .collect();
        AbelianQuotient { commutator, rep_of }
    }

    pub fn commutator(&self) -> &ElementSet {
        &self.commutator
    }

    /// Canonical representative of the commutator coset of `x`; equal
    /// representatives mean equal abelianized images.
    pub fn rep(&self, x: u32) -> u32 {
        self.rep_of[x as usize]
    }

    /// Image of the subgroup generated by `elems`, as the sorted set of
    /// coset representatives it spans in the quotient.
    pub fn image_subgroup(
        &self,
        real: &RegularRealization,
        elems: impl IntoIterator<Item = u32>,
    ) -> ElementSet {
        let gens: Vec<u32> = elems.into_iter().map(|x| self.rep(x)).collect();
        let mut members = vec![self.rep(real.identity())];
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.rep(real.mult(x, g));
                if !members.contains(&y) {
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        ElementSet::new(members)
    }

    /// Whether two generator subsets of two systems have equal abelianized
    /// parabolic images.
    pub fn images_match(
        &self,
        real: &RegularRealization,
        sys_a: &CandidateSystem,
        subset_a: &GeneratorSubset,
        sys_b: &CandidateSystem,
        subset_b: &GeneratorSubset,
    ) -> bool {
        let img_a = self.image_subgroup(real, subset_a.iter().map(|i| sys_a.generator_element(i)));
        let img_b = self.image_subgroup(real, subset_b.iter().map(|i| sys_b.generator_element(i)));
        img_a == img_b
    }
}

/// Equality of abelianized parabolic images across two certified systems
/// of one realization, through concrete commutator cosets.
pub fn abelian_images_match(
    real: &RegularRealization,
    sys_a: &CandidateSystem,
    subset_a: &GeneratorSubset,
    sys_b: &CandidateSystem,
    subset_b: &GeneratorSubset,
) -> bool {
    AbelianQuotient::new(real).images_match(real, sys_a, subset_a, sys_b, subset_b)
}

/// Build a label-preserving generator bijection between two certified
/// systems of one realization, where the first system's matrix is in the
/// rigidity class (a precondition, asserted).
///
/// The bijection is assembled on the strong-even core from the incidence
/// pattern of the matched maximal-spherical and maximal-independent
/// families, pinned down by singleton abelianized images where those
/// exist, and extended outside the core along odd partners through the
/// matched pair for each. Every structural expectation along the way is
/// checked; a failure is reported as an internal inconsistency because
/// the structure theory leaves no room for one.
pub fn construct_bijection(
    real: &RegularRealization,
    sys_a: &CandidateSystem,
    sys_b: &CandidateSystem,
) -> Result<DiagramBijection, OracleError> {
    let report_a = check_class_membership(sys_a.matrix());
    assert!(report_a.in_class, "construct_bijection requires an in-class first system");
    let report_b = check_class_membership(sys_b.matrix());
    if !report_b.in_class {
        return inconsistency(
            "second system of an in-class group fell outside the class",
            format!("matrix {:?}\nreport {report_b:?}", sys_b.matrix()),
        );
    }
    let rank = sys_a.matrix().rank();
    if rank != sys_b.matrix().rank() {
        return inconsistency(
            "certified systems of one group differ in rank",
            format!("{} vs {}", rank, sys_b.matrix().rank()),
        );
    }
    let core_a = &report_a.s_bar;
    let core_b = &report_b.s_bar;
    if core_a.len() != core_b.len() {
        return inconsistency("strong-even cores differ in size", format!("{core_a} vs {core_b}"));
    }

    let matches = match_maximal_sphericals(real, sys_a, sys_b)?;
    let quotient = AbelianQuotient::new(real);

    // Matched family pairs over the cores: strong-even maximal spherical
    // members first, then maximal independent subsets matched by their
    // abelianized images.
    let mut family_pairs: Vec<(GeneratorSubset, GeneratorSubset)> = Vec::new();
    for m in &matches {
        let se_a = is_strong_even(sys_a.matrix(), &m.subset_a);
        let se_b = is_strong_even(sys_b.matrix(), &m.subset_b);
        if se_a != se_b {
            return inconsistency(
                "conjugate maximal spherical subsets disagree on strong evenness",
                format!("{} vs {}", m.subset_a, m.subset_b),
            );
        }
        if se_a {
            family_pairs.push((m.subset_a.clone(), m.subset_b.clone()));
        }
    }
    let ind_a = maximal_independent_subsets(sys_a.matrix(), core_a);
    let ind_b = maximal_independent_subsets(sys_b.matrix(), core_b);
    for t in ind_a.iter() {
        let img = quotient.image_subgroup(real, t.iter().map(|i| sys_a.generator_element(i)));
        let hits: Vec<&GeneratorSubset> = ind_b
            .iter()
            .filter(|u| {
                quotient.image_subgroup(real, u.iter().map(|i| sys_b.generator_element(i))) == img
            })
            .collect();
        match hits.as_slice() {
            [u] => family_pairs.push((t.clone(), (*u).clone())),
            _ => {
                return inconsistency(
                    "maximal independent subset matched zero or several times by image",
                    format!("subset {t}\nimage {img:?}\nhits {hits:?}"),
                )
            }
        }
    }

    // Membership signature of each core generator across the matched
    // families; the matched intersection cardinalities force cells of
    // equal size on both sides.
    let signature = |s: usize, side_a: bool| -> Vec<usize> {
        family_pairs
            .iter()
            .enumerate()
            .filter(|(_, (t, u))| if side_a { t.contains(s) } else { u.contains(s) })
            .map(|(i, _)| i)
            .collect()
    };
    let mut cells: BTreeMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for s in core_a.iter() {
        cells.entry(signature(s, true)).or_default().0.push(s);
    }
    for s in core_b.iter() {
        cells.entry(signature(s, false)).or_default().1.push(s);
    }

    let mut image: Vec<Option<usize>> = vec![None; rank];
    let mut used = vec![false; rank];
    for (sig, (xs, ys)) in &cells {
        if xs.len() != ys.len() {
            return inconsistency(
                "family incidence cells differ in cardinality",
                format!("signature {sig:?}: {xs:?} vs {ys:?}"),
            );
        }
        // Pin generators with a matching singleton image first; evenness
        // of the cores makes such a partner unique when it exists.
        let mut remaining_y: Vec<usize> = ys.clone();
        let mut remaining_x: Vec<usize> = Vec::new();
        for &x in xs {
            let rep_x = quotient.rep(sys_a.generator_element(x));
            let partners: Vec<usize> = core_b
                .iter()
                .filter(|&y| quotient.rep(sys_b.generator_element(y)) == rep_x)
                .collect();
            match partners.as_slice() {
                [] => remaining_x.push(x),
                [y] => {
                    let y = *y;
                    if !remaining_y.contains(&y) {
                        return inconsistency(
                            "singleton image partner escaped its incidence cell",
                            format!("generator {x} -> {y}, cell {ys:?}"),
                        );
                    }
                    image[x] = Some(y);
                    used[y] = true;
                    remaining_y.retain(|&v| v != y);
                }
                _ => {
                    return inconsistency(
                        "singleton image matched by several core generators",
                        format!("generator {x} partners {partners:?}"),
                    )
                }
            }
        }
        for (x, y) in remaining_x.into_iter().zip(remaining_y) {
            image[x] = Some(y);
            used[y] = true;
        }
    }

    // Extension outside the core: every such generator has a unique odd
    // partner, and the matched pair of that odd edge dictates the images.
    let partners = match odd_partner_structure(sys_a.matrix(), &report_a) {
        Ok(p) => p,
        Err(violation) => {
            return inconsistency(
                "odd partner structure failed on an in-class matrix",
                violation.to_string(),
            )
        }
    };
    for s in 0..rank {
        if core_a.contains(s) || image[s].is_some() {
            continue;
        }
        let t = partners[&s];
        let pair = GeneratorSubset::new(vec![s, t]);
        let Some(m) = matches.iter().find(|m| m.subset_a == pair) else {
            return inconsistency(
                "odd pair missing from the matched maximal family",
                format!("pair {pair}"),
            );
        };
        let [x, y] = m.subset_b.as_slice() else {
            return inconsistency(
                "odd pair matched to a subset of the wrong size",
                format!("pair {pair} -> {}", m.subset_b),
            );
        };
        let (x, y) = (*x, *y);
        if !core_a.contains(t) {
            // Both ends outside the core; their images must be too, and
            // all labels beyond the pair are infinite on both sides, so
            // order the assignment by index.
            if core_b.contains(x) || core_b.contains(y) {
                return inconsistency(
                    "pair outside the core matched into the core",
                    format!("pair {pair} -> {}", m.subset_b),
                );
            }
            let (lo, hi) = (s.min(t), s.max(t));
            for (from, to) in [(lo, x.min(y)), (hi, x.max(y))] {
                if image[from].is_some() || used[to] {
                    return inconsistency(
                        "conflicting assignment outside the core",
                        format!("{from} -> {to}"),
                    );
                }
                image[from] = Some(to);
                used[to] = true;
            }
        } else {
            // The partner sits in the core, so its image is already fixed;
            // the other end of the matched pair is the image of `s`. The
            // core member containing the partner arbitrates which end
            // that is, with element conjugacy as a cross-check.
            let core_member: Vec<&MaximalMatch> = matches
                .iter()
                .filter(|mm| {
                    is_strong_even(sys_a.matrix(), &mm.subset_a) && mm.subset_a.contains(t)
                })
                .collect();
            let [core_match] = core_member.as_slice() else {
                return inconsistency(
                    "core partner lies in zero or several strong-even members",
                    format!("partner {t}, members {core_member:?}"),
                );
            };
            let elem_t = sys_a.generator_element(t);
            let conj_x =
                real.element_conjugate_witness(elem_t, sys_b.generator_element(x)).is_some();
            let conj_y =
                real.element_conjugate_witness(elem_t, sys_b.generator_element(y)).is_some();
            let in_core_member = |v: usize| core_match.subset_b.contains(v);
            let partner_image = match (conj_x, conj_y) {
                (true, false) => x,
                (false, true) => y,
                (true, true) => match (in_core_member(x), in_core_member(y)) {
                    (true, false) => x,
                    (false, true) => y,
                    (true, true) => x.min(y),
                    (false, false) => {
                        return inconsistency(
                            "matched pair misses the matched core member",
                            format!(
                                "pair {pair} -> {}, member {}",
                                m.subset_b, core_match.subset_b
                            ),
                        )
                    }
                },
                (false, false) => {
                    return inconsistency(
                        "core partner conjugate to neither end of the matched pair",
                        format!("partner element {elem_t}, pair {}", m.subset_b),
                    )
                }
            };
            if image[t] != Some(partner_image) {
                return inconsistency(
                    "core bijection disagrees with the matched pair",
                    format!(
                        "partner {t} mapped to {:?}, matched pair wants {partner_image}",
                        image[t]
                    ),
                );
            }
            let other = if partner_image == x { y } else { x };
            if image[s].is_some() || used[other] {
                return inconsistency(
                    "conflicting assignment for an outside generator",
                    format!("{s} -> {other}"),
                );
            }
            image[s] = Some(other);
            used[other] = true;
        }
    }

    let flat: Option<Vec<usize>> = image.into_iter().collect();
    let bijection = flat
        .and_then(DiagramBijection::from_map)
        .filter(|b| b.preserves_labels(sys_a.matrix(), sys_b.matrix()));
    match bijection {
        Some(b) => Ok(b),
        None => inconsistency(
            "assembled correspondence failed the entrywise label check",
            format!(
                "system A {:?}\ngenerators {:?}\nsystem B {:?}\ngenerators {:?}",
                sys_a.matrix(),
                sys_a.generators(),
                sys_b.matrix(),
                sys_b.generators()
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset::preset;

    fn realize(name: &str) -> RegularRealization {
        todd_coxeter(&preset(name).unwrap(), 100_000).unwrap()
    }

    fn standard_system(real: &RegularRealization) -> CandidateSystem {
        let gens: ElementSet = (0..real.rank()).map(|g| real.generator_element(g)).collect();
        certify_coxeter_system(real, &gens).expect("standard generators certify")
    }

    #[test]
    fn standard_generators_certify_to_base() {
        for name in ["A2", "B2", "I2(7)", "A3", "B3"] {
            let m = preset(name).unwrap();
            let real = todd_coxeter(&m, 100_000).unwrap();
            let sys = standard_system(&real);
            let bij = diagram_isomorphic(sys.matrix(), &m).expect("same diagram class");
            assert!(bij.preserves_labels(sys.matrix(), &m), "{name}");
        }
    }

    #[test]
    fn dihedral_twelve_has_split_candidate() {
        // In the order-12 dihedral group, {s, tst, (st)^3} has pairwise
        // product orders 3, 2, 2: a rank-3 system of the same group.
        let real = realize("I2(6)");
        let s = real.generator_element(0);
        let tst = real.element_from_word(&[1, 0, 1]);
        let center = real.element_from_word(&[0, 1, 0, 1, 0, 1]);
        let gens: ElementSet = [s, tst, center].into_iter().collect();
        let sys = certify_coxeter_system(&real, &gens).expect("certifies");
        let split = preset("A1").unwrap().direct_sum(&preset("A2").unwrap());
        assert!(diagram_isomorphic(sys.matrix(), &split).is_some());

        // Dropping the middle reflection leaves a proper subgroup.
        let partial: ElementSet = [s, center].into_iter().collect();
        assert_eq!(real.subgroup_closure(&partial).len(), 4);
        assert!(certify_coxeter_system(&real, &partial).is_none());
    }

    #[test]
    fn enumeration_is_deterministic_and_complete() {
        let real = realize("I2(6)");
        let limits = SearchLimits::default();
        let first = enumerate_coxeter_generating_sets(&real, &limits).unwrap();
        let second = enumerate_coxeter_generating_sets(&real, &limits).unwrap();
        assert_eq!(first, second);
        let split = preset("A1").unwrap().direct_sum(&preset("A2").unwrap());
        assert!(first.iter().any(|c| diagram_isomorphic(c.matrix(), &split).is_some()));
        assert!(first
            .iter()
            .any(|c| diagram_isomorphic(c.matrix(), &preset("I2(6)").unwrap()).is_some()));
    }

    #[test]
    fn single_involution_group() {
        let real = realize("A1");
        let limits = SearchLimits::default();
        let candidates = enumerate_coxeter_generating_sets(&real, &limits).unwrap();
        assert_eq!(candidates.len(), 1);
        assert_eq!(candidates[0].generators().len(), 1);
    }

    #[test]
    fn a2_candidates_are_its_reflection_pairs() {
        // All three transposition pairs of the order-6 group certify, and
        // nothing else does.
        let real = realize("A2");
        let limits = SearchLimits::default();
        let candidates = enumerate_coxeter_generating_sets(&real, &limits).unwrap();
        assert_eq!(candidates.len(), 3);
        let a2 = preset("A2").unwrap();
        for c in &candidates {
            assert_eq!(c.matrix(), &a2);
        }
    }

    #[test]
    fn maximal_matching_across_the_dihedral_split() {
        // Both systems of the order-12 group are finite, so each family
        // is the full generator set and the parabolics are the whole
        // group, matched by the identity.
        let real = realize("I2(6)");
        let std_sys = standard_system(&real);
        let s = real.generator_element(0);
        let tst = real.element_from_word(&[1, 0, 1]);
        let center = real.element_from_word(&[0, 1, 0, 1, 0, 1]);
        let split = certify_coxeter_system(&real, &[s, tst, center].into_iter().collect())
            .expect("certifies");
        let matches = match_maximal_sphericals(&real, &std_sys, &split).unwrap();
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].subset_a, GeneratorSubset::full(2));
        assert_eq!(matches[0].subset_b, GeneratorSubset::full(3));
        assert_eq!(matches[0].conjugator, 0);
    }

    #[test]
    fn verdicts_for_dihedral_groups() {
        let limits = SearchLimits::default();
        let v = rigidity_verdict(&preset("I2(6)").unwrap(), &limits).unwrap();
        assert!(!v.rigid);
        assert!(v.exhausted);
        assert_eq!(v.classes.len(), 2);

        let v = rigidity_verdict(&preset("A2").unwrap(), &limits).unwrap();
        assert!(v.rigid);
        assert!(v.exhausted);

        let v = rigidity_verdict(&preset("B2").unwrap(), &limits).unwrap();
        assert!(v.rigid && v.exhausted);
    }

    #[test]
    fn infinite_and_oversized_inputs_error() {
        let limits = SearchLimits::default();
        let inf = CoxeterMatrix::all_infinite(2);
        assert!(matches!(rigidity_verdict(&inf, &limits), Err(OracleError::InfiniteGroup)));
        let big = preset("F4").unwrap();
        assert!(matches!(rigidity_verdict(&big, &limits), Err(OracleError::LimitExceeded(_))));
    }

    #[test]
    fn maximal_matching_on_identical_systems() {
        let real = realize("B2");
        let sys = standard_system(&real);
        let matches = match_maximal_sphericals(&real, &sys, &sys).unwrap();
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].subset_a, GeneratorSubset::full(2));
        assert_eq!(matches[0].conjugator, 0);
    }

    #[test]
    fn abelian_images() {
        let real = realize("A2");
        let sys = standard_system(&real);
        let q = AbelianQuotient::new(&real);
        // Both generators are conjugate reflections, so their images agree.
        assert!(q.images_match(
            &real,
            &sys,
            &GeneratorSubset::singleton(0),
            &sys,
            &GeneratorSubset::singleton(1)
        ));
        assert!(abelian_images_match(
            &real,
            &sys,
            &GeneratorSubset::empty(),
            &sys,
            &GeneratorSubset::empty()
        ));

        let real = realize("B2");
        let sys = standard_system(&real);
        // The two reflection classes of the even dihedral group abelianize
        // to different coordinates.
        assert!(!abelian_images_match(
            &real,
            &sys,
            &GeneratorSubset::singleton(0),
            &sys,
            &GeneratorSubset::singleton(1)
        ));
    }

    #[test]
    fn bijection_between_conjugate_dihedral_systems() {
        let real = realize("I2(5)");
        let sys = standard_system(&real);
        // Conjugate the whole generating set by some element.
        let w = 3u32;
        let gens: ElementSet = sys.generators().iter().map(|x| real.conjugate(w, x)).collect();
        let other = certify_coxeter_system(&real, &gens).expect("conjugate set certifies");
        let bij = construct_bijection(&real, &sys, &other).unwrap();
        assert!(bij.preserves_labels(sys.matrix(), other.matrix()));
    }

    #[test]
    fn bijection_on_strong_even_cube() {
        let m = preset("A1")
            .unwrap()
            .direct_sum(&preset("A1").unwrap())
            .direct_sum(&preset("A1").unwrap());
        let real = todd_coxeter(&m, 1000).unwrap();
        let limits = SearchLimits::default();
        let candidates = enumerate_coxeter_generating_sets(&real, &limits).unwrap();
        assert!(candidates.len() > 1);
        let base = &candidates[0];
        for other in &candidates {
            let bij = construct_bijection(&real, base, other).unwrap();
            assert!(bij.preserves_labels(base.matrix(), other.matrix()));
        }
    }
}
