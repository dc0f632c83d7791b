//! Concrete realization of finite Coxeter groups by coset enumeration over
//! the trivial subgroup, and the element-level toolkit built on top of it.
//!
//! The enumerator is systematic HLT-style: cosets are processed in index
//! order, every relator row is scanned and filled to completion before
//! moving on, deductions propagate immediately, and coincidences are
//! merged through a union-find with the smaller index surviving. No
//! randomization anywhere, so tables are reproducible across runs and
//! platforms. Generators are involutions, which the table encodes
//! structurally: defining `c·s = d` always defines `d·s = c` as well, and
//! the `s^2` relators never need scanning.
//!
//! Over the trivial subgroup the completed table is the right regular
//! action, so cosets are the group elements, index 0 is the identity, and
//! multiplication walks a stored generator word of the right factor.

use std::collections::VecDeque;

use thiserror::Error;

use crate::matrix::CoxeterMatrix;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// Enumeration overflowed the coset cap; the group may be infinite or
    /// the cap too small. No partial table is ever returned.
    #[error("coset enumeration exceeded the cap of {max_cosets} cosets")]
    CapExceeded { max_cosets: usize },
    #[error("rank {rank} exceeds the enumerator limit of 255 generators")]
    RankTooLarge { rank: usize },
}

/// Sorted, duplicate-free set of element indices of a realization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ElementSet {
    indices: Vec<u32>,
}

impl ElementSet {
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        ElementSet { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.indices.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.indices
    }
}

impl FromIterator<u32> for ElementSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

/// A finite Coxeter group realized on its own elements: one involution
/// permutation per generator (the right multiplication action), identity
/// at index 0. Immutable once built.
#[derive(Debug, Clone)]
pub struct RegularRealization {
    order: usize,
    /// `gen_perms[g][x]` is the element `x · s_g`.
    gen_perms: Vec<Vec<u32>>,
    /// A fixed reduced word over the generators for every element,
    /// breadth-first from the identity.
    words: Vec<Vec<u8>>,
}

struct Enumerator {
    rank: usize,
    /// Row-major `cosets x rank`; `UNDEF` marks an open slot. Entries may
    /// hold dead cosets; readers resolve through `find`.
    table: Vec<u32>,
    /// Union-find over cosets; `rep[c] == c` for live cosets.
    rep: Vec<u32>,
    live: usize,
    queue: VecDeque<(u32, u32)>,
    max_cosets: usize,
}

impl Enumerator {
    fn new(rank: usize, max_cosets: usize) -> Self {
        Enumerator {
            rank,
            table: vec![UNDEF; rank],
            rep: vec![0],
            live: 1,
            queue: VecDeque::new(),
            max_cosets,
        }
    }

    fn ncosets(&self) -> usize {
        self.rep.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.rep[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.rep[c as usize] != c {
            let up = self.rep[c as usize];
            self.rep[c as usize] = self.rep[up as usize];
            c = self.rep[c as usize];
        }
        c
    }

    fn entry(&mut self, c: u32, g: usize) -> u32 {
        let raw = self.table[c as usize * self.rank + g];
        if raw == UNDEF {
            UNDEF
        } else {
            self.find(raw)
        }
    }

    fn set(&mut self, c: u32, g: usize, d: u32) {
        self.table[c as usize * self.rank + g] = d;
        self.table[d as usize * self.rank + g] = c;
    }

    /// New coset `d = c·g`, with the involution edge back.
    fn define(&mut self, c: u32, g: usize) -> Result<u32, EngineError> {
        if self.ncosets() >= self.max_cosets {
            return Err(EngineError::CapExceeded { max_cosets: self.max_cosets });
        }
        let d = self.ncosets() as u32;
        self.rep.push(d);
        self.live += 1;
        self.table.extend(std::iter::repeat_n(UNDEF, self.rank));
        self.set(c, g, d);
        Ok(d)
    }

    /// Record `a·g = b`, queueing a coincidence on conflict. On the
    /// consistent paths the pairing is rewritten fresh, which also repairs
    /// slots whose raw values went stale through earlier merges.
    fn deduce(&mut self, a: u32, g: usize, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        let ea = self.entry(a, g);
        if ea != UNDEF && ea != b {
            self.queue.push_back((ea, b));
            return;
        }
        let eb = self.entry(b, g);
        if eb != UNDEF && eb != a {
            self.queue.push_back((eb, a));
            return;
        }
        self.set(a, g, b);
    }

    /// Drain the coincidence queue, merging the larger coset of each pair
    /// into the smaller and replaying its row as deductions.
    fn process_coincidences(&mut self) {
        while let Some((x, y)) = self.queue.pop_front() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (keep, drop) = (x.min(y), x.max(y));
            self.rep[drop as usize] = keep;
            self.live -= 1;
            for g in 0..self.rank {
                let raw = self.table[drop as usize * self.rank + g];
                if raw == UNDEF {
                    continue;
                }
                self.table[drop as usize * self.rank + g] = UNDEF;
                let d = self.find(raw);
                self.deduce(keep, g, d);
            }
        }
    }

    /// Scan one relator from `alpha`, filling the gap with new cosets and
    /// closing with a deduction; the textbook scan-and-fill step.
    fn scan_and_fill(&mut self, alpha: u32, word: &[u8]) -> Result<(), EngineError> {
        let n = word.len();
        let mut f = alpha;
        let mut fi = 0;
        while fi < n {
            let e = self.entry(f, word[fi] as usize);
            if e == UNDEF {
                break;
            }
            f = e;
            fi += 1;
        }
        if fi == n {
            if f != alpha {
                self.queue.push_back((f, alpha));
                self.process_coincidences();
            }
            return Ok(());
        }
        let mut b = alpha;
        let mut bi = n;
        while bi > fi + 1 {
            // Generators invert themselves, so scanning backwards applies
            // the same action.
            let e = self.entry(b, word[bi - 1] as usize);
            if e == UNDEF {
                break;
            }
            b = e;
            bi -= 1;
        }
        while bi > fi + 1 {
            f = self.define(f, word[fi] as usize)?;
            fi += 1;
        }
        self.deduce(f, word[fi] as usize, b);
        self.process_coincidences();
        Ok(())
    }
}

/// Complete the coset table of the Coxeter presentation over the trivial
/// subgroup. Relators are `(s_i s_j)^{m(i,j)}` for each finite entry;
/// infinite entries contribute none. Fails with `CapExceeded` when more
/// than `max_cosets` cosets would be defined.
pub fn todd_coxeter(
    matrix: &CoxeterMatrix,
    max_cosets: usize,
) -> Result<RegularRealization, EngineError> {
    let rank = matrix.rank();
    if rank > 255 {
        return Err(EngineError::RankTooLarge { rank });
    }
    assert!(max_cosets >= 1, "max_cosets must be at least 1");
    // A finite entry m embeds a dihedral subgroup of order 2m, so any
    // completed table has at least 2m cosets; refuse early rather than
    // materialize an enormous relator word first.
    for (_, _, m) in matrix.finite_pairs() {
        if 2 * m as u64 > max_cosets as u64 {
            return Err(EngineError::CapExceeded { max_cosets });
        }
    }
    let relators: Vec<Vec<u8>> = matrix
        .finite_pairs()
        .map(|(i, j, m)| {
            let mut word = Vec::with_capacity(2 * m as usize);
            for _ in 0..m {
                word.push(i as u8);
                word.push(j as u8);
            }
            word
        })
        .collect();

    let mut e = Enumerator::new(rank, max_cosets);
    let mut alpha = 0u32;
    while (alpha as usize) < e.ncosets() {
        if !e.is_live(alpha) {
            alpha += 1;
            continue;
        }
        for word in &relators {
            e.scan_and_fill(alpha, word)?;
            if !e.is_live(alpha) {
                break;
            }
        }
        if e.is_live(alpha) {
            for g in 0..rank {
                if e.entry(alpha, g) == UNDEF {
                    e.define(alpha, g)?;
                }
            }
        }
        alpha += 1;
    }

    // Renumber live cosets in index order.
    let total = e.ncosets();
    let mut new_id = vec![UNDEF; total];
    let mut order = 0u32;
    for c in 0..total as u32 {
        if e.is_live(c) {
            new_id[c as usize] = order;
            order += 1;
        }
    }
    let order = order as usize;
    debug_assert_eq!(order, e.live);
    let mut gen_perms = vec![vec![UNDEF; order]; rank];
    for c in 0..total as u32 {
        if !e.is_live(c) {
            continue;
        }
        for (g, perm) in gen_perms.iter_mut().enumerate() {
            let d = e.entry(c, g);
            debug_assert_ne!(d, UNDEF, "completed table has no open slots");
            perm[new_id[c as usize] as usize] = new_id[d as usize];
        }
    }

    Ok(RegularRealization::from_perms(order, gen_perms))
}

impl RegularRealization {
    fn from_perms(order: usize, gen_perms: Vec<Vec<u32>>) -> Self {
        // Breadth-first generator words from the identity, generators in
        // index order; doubles as a transitivity check.
        let mut words: Vec<Option<Vec<u8>>> = vec![None; order];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (g, perm) in gen_perms.iter().enumerate() {
                let y = perm[x as usize];
                if words[y as usize].is_none() {
                    let mut w = words[x as usize].clone().expect("visited");
                    w.push(g as u8);
                    words[y as usize] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let words: Vec<Vec<u8>> =
            words.into_iter().map(|w| w.expect("generator action is transitive")).collect();
        RegularRealization { order, gen_perms, words }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.gen_perms.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Right multiplication action of one generator.
    pub fn gen_perm(&self, g: usize) -> &[u32] {
        &self.gen_perms[g]
    }

    /// The element a generator maps to.
    pub fn generator_element(&self, g: usize) -> u32 {
        self.gen_perms[g][0]
    }

    /// A fixed geodesic word for an element.
    pub fn word_of(&self, x: u32) -> &[u8] {
        &self.words[x as usize]
    }

    /// Element of a generator word, read left to right from the identity.
    pub fn element_from_word(&self, word: &[u8]) -> u32 {
        word.iter().fold(0u32, |acc, &g| self.gen_perms[g as usize][acc as usize])
    }

    /// Product `x · y`.
    pub fn mult(&self, x: u32, y: u32) -> u32 {
        self.words[y as usize].iter().fold(x, |acc, &g| self.gen_perms[g as usize][acc as usize])
    }

    /// Inverse, via the reversed word (generators are involutions).
    pub fn inverse(&self, x: u32) -> u32 {
        self.words[x as usize]
            .iter()
            .rev()
            .fold(0u32, |acc, &g| self.gen_perms[g as usize][acc as usize])
    }

    /// Least `n >= 1` with `x^n = 1`.
    pub fn element_order(&self, x: u32) -> usize {
        let mut acc = x;
        let mut n = 1;
        while acc != 0 {
            acc = self.mult(acc, x);
            n += 1;
        }
        n
    }

    /// All elements of order exactly 2.
    pub fn involutions(&self) -> ElementSet {
        (1..self.order as u32).filter(|&x| self.mult(x, x) == 0).collect()
    }

    /// Right multiplication permutation of an arbitrary element.
    pub fn right_mult_perm(&self, x: u32) -> Vec<u32> {
        let mut perm: Vec<u32> = (0..self.order as u32).collect();
        for &g in &self.words[x as usize] {
            for slot in perm.iter_mut() {
                *slot = self.gen_perms[g as usize][*slot as usize];
            }
        }
        perm
    }

    /// Subgroup generated by a set of elements: breadth-first closure of
    /// the identity under right multiplication.
    pub fn subgroup_closure(&self, gens: &ElementSet) -> ElementSet {
        let perms: Vec<Vec<u32>> = gens.iter().map(|x| self.right_mult_perm(x)).collect();
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let mut members = vec![0u32];
        while let Some(x) = queue.pop_front() {
            for perm in &perms {
                let y = perm[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        ElementSet::new(members)
    }

    pub fn is_generating(&self, gens: &ElementSet) -> bool {
        self.subgroup_closure(gens).len() == self.order
    }

    /// Conjugate `w · x · w^{-1}`.
    pub fn conjugate(&self, w: u32, x: u32) -> u32 {
        self.mult(self.mult(w, x), self.inverse(w))
    }

    /// Smallest element conjugating one generated subgroup onto the
    /// other, if any. The subgroup generated by the conjugated generators
    /// of `h_gens` equals the conjugate subgroup, so it suffices to check
    /// generator images against the closure of `k_gens` plus equal sizes.
    pub fn subgroup_conjugate_witness(
        &self,
        h_gens: &ElementSet,
        k_gens: &ElementSet,
    ) -> Option<u32> {
        let h = self.subgroup_closure(h_gens);
        let k = self.subgroup_closure(k_gens);
        if h.len() != k.len() {
            return None;
        }
        (0..self.order as u32).find(|&w| h_gens.iter().all(|x| k.contains(self.conjugate(w, x))))
    }

    /// Smallest element conjugating `x` to `y`, if any.
    pub fn element_conjugate_witness(&self, x: u32, y: u32) -> Option<u32> {
        (0..self.order as u32).find(|&w| self.conjugate(w, x) == y)
    }

    /// Commutator subgroup: the subgroup generated by all conjugates of
    /// the pairwise generator commutators.
    pub fn commutator_subgroup(&self) -> ElementSet {
        let rank = self.rank();
        let mut commutators = Vec::new();
        for i in 0..rank {
            for j in (i + 1)..rank {
                // [s_i, s_j] = s_i s_j s_i s_j for involutions.
                let word = [i as u8, j as u8, i as u8, j as u8];
                commutators.push(self.element_from_word(&word));
            }
        }
        let mut gens = Vec::new();
        for w in 0..self.order as u32 {
            for &c in &commutators {
                gens.push(self.conjugate(w, c));
            }
        }
        self.subgroup_closure(&ElementSet::new(gens))
    }

    /// Every defining relator of the matrix evaluates to the identity
    /// permutation; construction guarantees this, tests assert it.
    pub fn satisfies_relators(&self, matrix: &CoxeterMatrix) -> bool {
        if matrix.rank() != self.rank() {
            return false;
        }
        let involutive = (0..self.rank()).all(|g| {
            let p = &self.gen_perms[g];
            (0..self.order).all(|x| p[p[x] as usize] == x as u32 && p[x] != x as u32)
        });
        if !involutive {
            return false;
        }
        matrix.finite_pairs().all(|(i, j, m)| {
            (0..self.order as u32).all(|x| {
                let mut acc = x;
                for _ in 0..m {
                    acc = self.gen_perms[i][acc as usize];
                    acc = self.gen_perms[j][acc as usize];
                }
                acc == x
            })
        })
    }
}
