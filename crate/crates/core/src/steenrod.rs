//! The mod-2 Steenrod algebra in a degree range.
//!
//! Elements are kept in the admissible (Serre-Cartan) basis: a monomial
//! `Sq[i1,...,ik]` is admissible when `i_j >= 2 i_{j+1}` for all `j`, and
//! arbitrary words normalize into this basis by the Adem relations
//!
//! `Sq^a Sq^b = Σ_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c`  (a < 2b, mod 2).
//!
//! Right actions on graded spaces lower homological degree; a module is
//! unstable when `x · Sq^n = 0` for `|x| < 2n`. Only p = 2 is implemented;
//! rationally the algebra acts trivially, and odd primes are rejected
//! upstream with a diagnostic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Violation;
use crate::linalg::graded::{GradedLinearMap, GradedVectorSpace};
use crate::linalg::{Field, Matrix};

/// Is `binom(n, k)` odd? Lucas at p = 2: true iff the bits of `k` are a
/// subset of the bits of `n`.
pub fn binom_mod2(n: i64, k: i64) -> bool {
    if k < 0 || n < 0 || k > n {
        return false;
    }
    (k & (n - k)) == 0
}

/// An admissible monomial `Sq[i1,...,ik]`; the empty sequence is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleMonomial(Vec<u32>);

impl AdmissibleMonomial {
    pub fn unit() -> Self {
        AdmissibleMonomial(Vec::new())
    }

    /// Construct from an admissible sequence; panics if not admissible.
    pub fn new(seq: Vec<u32>) -> Self {
        assert!(is_admissible(&seq), "sequence is not admissible");
        AdmissibleMonomial(seq)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&i| i as usize).sum()
    }

    /// Excess `i1 - (i2 + ... + ik)`; zero for the unit.
    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&head, rest)) => head as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
        }
    }

    /// Text syntax `Sq[i1,i2,...]`, unit `1`.
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            let inner: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            format!("Sq[{}]", inner.join(","))
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if text == "1" {
            return Some(Self::unit());
        }
        let rest = text.strip_prefix("Sq[")?.strip_suffix(']')?;
        let mut seq = Vec::new();
        for part in rest.split(',') {
            let v: u32 = part.trim().parse().ok()?;
            if v == 0 {
                return None;
            }
            seq.push(v);
        }
        is_admissible(&seq).then(|| AdmissibleMonomial(seq))
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub fn is_admissible(seq: &[u32]) -> bool {
    seq.iter().all(|&i| i >= 1) && seq.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// An F2 sum of admissible monomials of one degree, in canonical sorted
/// form. The zero element carries its degree alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteenrodElement {
    degree: usize,
    terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElement {
    pub fn zero(degree: usize) -> Self {
        SteenrodElement {
            degree,
            terms: BTreeSet::new(),
        }
    }

    pub fn monomial(m: AdmissibleMonomial) -> Self {
        let degree = m.degree();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        SteenrodElement { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = &AdmissibleMonomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn toggle(&mut self, m: AdmissibleMonomial) {
        debug_assert_eq!(m.degree(), self.degree);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.render()).collect();
        parts.join(" + ")
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// One Adem rewrite of the inadmissible pair `Sq^a Sq^b` (requires a < 2b),
/// as the list of words it expands to, mod 2.
fn adem_expand(a: u32, b: u32) -> Vec<Vec<u32>> {
    debug_assert!(a < 2 * b);
    let mut out = Vec::new();
    for c in 0..=(a / 2) {
        if binom_mod2(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
            if c == 0 {
                out.push(vec![a + b]);
            } else {
                out.push(vec![a + b - c, c]);
            }
        }
    }
    out
}

/// Normalize an arbitrary word of squares into the admissible basis.
/// `Sq^0` factors are dropped (the unit); rewriting terminates because each
/// Adem application strictly decreases the standard well-order on words.
pub fn adem_normalize(word: &[u32]) -> SteenrodElement {
    let degree: usize = word.iter().map(|&i| i as usize).sum();
    let start: Vec<u32> = word.iter().copied().filter(|&i| i > 0).collect();
    let mut result = SteenrodElement::zero(degree);
    // Worklist with mod-2 multiplicities.
    let mut work: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    work.insert(start, true);
    while let Some((w, odd)) = work.pop_first() {
        if !odd {
            continue;
        }
        // Leftmost inadmissible adjacent pair.
        let pos = w.windows(2).position(|p| p[0] < 2 * p[1]);
        match pos {
            None => result.toggle(AdmissibleMonomial(w)),
            Some(i) => {
                for repl in adem_expand(w[i], w[i + 1]) {
                    let mut nw = Vec::with_capacity(w.len() + repl.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(&repl);
                    nw.extend_from_slice(&w[i + 2..]);
                    let e = work.entry(nw).or_insert(false);
                    *e = !*e;
                }
            }
        }
    }
    result
}

/// Product of two admissible-basis elements via Adem normalization.
pub fn multiply(x: &SteenrodElement, y: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero(x.degree() + y.degree());
    for m in x.terms() {
        for n in y.terms() {
            let mut word = m.entries().to_vec();
            word.extend_from_slice(n.entries());
            for t in adem_normalize(&word).terms {
                out.toggle(t);
            }
        }
    }
    out
}

/// All admissible monomials of total degree `0..=n`, each list sorted
/// lexicographically. Entry `m` is the basis of `A_2` in degree `m`.
pub fn admissible_basis_table(n: usize) -> Vec<Vec<AdmissibleMonomial>> {
    // Bottom-up by the leading entry: a sequence of degree m is `a` followed
    // by an admissible sequence of degree m - a with leading entry <= a/2.
    let mut table: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n + 1];
    table[0].push(Vec::new());
    for m in 1..=n {
        let mut found = Vec::new();
        for a in 1..=m as u32 {
            for rest in &table[m - a as usize] {
                if rest.first().is_none_or(|&f| a >= 2 * f) {
                    let mut seq = vec![a];
                    seq.extend_from_slice(rest);
                    found.push(seq);
                }
            }
        }
        found.sort();
        table[m] = found;
    }
    table
        .into_iter()
        .map(|seqs| seqs.into_iter().map(AdmissibleMonomial).collect())
        .collect()
}

/// Admissible basis in a single degree, lexicographically sorted.
pub fn admissible_basis(n: usize) -> Vec<AdmissibleMonomial> {
    admissible_basis_table(n).pop().unwrap()
}

/// The polynomial generators of the free unstable algebra on one class of
/// degree `n >= 1`: pairs `(I, n + deg I)` over admissible `I` with
/// `excess(I) < n` and total degree within the cap, in deterministic order.
pub fn free_unstable_algebra_generators(
    n: usize,
    cap: usize,
) -> Vec<(AdmissibleMonomial, usize)> {
    assert!(n >= 1, "degree-0 classes are handled by the set-like factor");
    let mut out = Vec::new();
    if n > cap {
        return out;
    }
    let table = admissible_basis_table(cap - n);
    for (extra, monos) in table.iter().enumerate() {
        for m in monos {
            if m.excess() < n as i64 {
                out.push((m.clone(), n + extra));
            }
        }
    }
    out
}

/// Express `Sq^k` as a mod-2 sum of products of the generators `Sq^{2^j}`,
/// as words (leftmost factor acts first under a right action).
pub fn generator_decomposition(k: u32) -> Vec<Vec<u32>> {
    fn product_into(
        left: u32,
        right: u32,
        terms: &mut BTreeMap<Vec<u32>, bool>,
        memo: &mut BTreeMap<u32, Vec<Vec<u32>>>,
    ) {
        for wl in go(left, memo) {
            for wr in go(right, memo) {
                let mut w = wl.clone();
                w.extend_from_slice(&wr);
                let e = terms.entry(w).or_insert(false);
                *e = !*e;
            }
        }
    }
    fn go(k: u32, memo: &mut BTreeMap<u32, Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
        if k.is_power_of_two() {
            return vec![vec![k]];
        }
        if let Some(hit) = memo.get(&k) {
            return hit.clone();
        }
        let j = 31 - k.leading_zeros(); // exponent of the top bit
        let p = 1u32 << j;
        let a = k - p;
        // Sq^k = Sq^a Sq^p + Σ_{c>=1} binom(p-c-1, a-2c) Sq^{k-c} Sq^c,
        // and binom(p-1, a) is odd because p-1 is all ones.
        let mut terms: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
        product_into(a, p, &mut terms, memo);
        for c in 1..=(a / 2) {
            if binom_mod2(p as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
                product_into(k - c, c, &mut terms, memo);
            }
        }
        let out: Vec<Vec<u32>> = terms
            .into_iter()
            .filter_map(|(w, odd)| odd.then_some(w))
            .collect();
        memo.insert(k, out.clone());
        out
    }
    go(k, &mut BTreeMap::new())
}

/// A right action of the squares on a graded F2 space:
/// `act_k: M_n -> M_{n-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteenrodAction {
    space: GradedVectorSpace,
    blocks: BTreeMap<(u32, usize), Matrix>,
}

impl SteenrodAction {
    pub fn trivial(space: GradedVectorSpace) -> Self {
        assert_eq!(space.field(), Field::F2, "Steenrod actions live over F2");
        SteenrodAction {
            space,
            blocks: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn set_block(&mut self, k: u32, n: usize, m: Matrix) {
        assert!(k >= 1);
        let tdim = if n >= k as usize {
            self.space.dim(n - k as usize)
        } else {
            0
        };
        assert_eq!(m.rows(), tdim, "action block rows");
        assert_eq!(m.cols(), self.space.dim(n), "action block cols");
        if m.is_zero() {
            self.blocks.remove(&(k, n));
        } else {
            self.blocks.insert((k, n), m);
        }
    }

    /// The matrix of `· Sq^k : M_n -> M_{n-k}` (zero when absent or out of
    /// range).
    pub fn act(&self, k: u32, n: usize) -> Matrix {
        if let Some(b) = self.blocks.get(&(k, n)) {
            return b.clone();
        }
        let tdim = if n >= k as usize {
            self.space.dim(n - k as usize)
        } else {
            0
        };
        Matrix::zero(Field::F2, tdim, self.space.dim(n))
    }

    /// Action of the word `Sq^{i1}...Sq^{ik}` starting in degree `n`; as a
    /// right action the leftmost factor acts first.
    pub fn act_word(&self, word: &[u32], n: usize) -> Matrix {
        let mut deg = n;
        let mut m = Matrix::identity(Field::F2, self.space.dim(n));
        for &k in word {
            if deg < k as usize {
                return Matrix::zero(Field::F2, 0, self.space.dim(n));
            }
            m = self.act(k, deg).mul(&m);
            deg -= k as usize;
        }
        m
    }

    pub fn act_element(&self, e: &SteenrodElement, n: usize) -> Matrix {
        let tdim = if n >= e.degree() {
            self.space.dim(n - e.degree())
        } else {
            0
        };
        let mut out = Matrix::zero(Field::F2, tdim, self.space.dim(n));
        for m in e.terms() {
            let b = self.act_word(m.entries(), n);
            if b.rows() == out.rows() {
                out = out.add(&b);
            }
        }
        out
    }

    /// Synthesize all `Sq^k` blocks from the generator blocks `Sq^{2^j}`
    /// via Adem products.
    pub fn saturate_from_generators(&mut self) {
        let cap = self.space.cap();
        for k in 1..=cap as u32 {
            if k.is_power_of_two() {
                continue;
            }
            for n in k as usize..=cap {
                if self.space.dim(n) == 0 || self.space.dim(n - k as usize) == 0 {
                    continue;
                }
                let mut acc =
                    Matrix::zero(Field::F2, self.space.dim(n - k as usize), self.space.dim(n));
                for word in generator_decomposition(k) {
                    acc = acc.add(&self.act_word(&word, n));
                }
                self.set_block(k, n, acc);
            }
        }
    }

    /// Cartan-formula right action on a tensor product:
    /// `(x⊗y)·Sq^k = Σ_{i+j=k} (x·Sq^i)⊗(y·Sq^j)`.
    pub fn cartan_tensor(a: &SteenrodAction, b: &SteenrodAction) -> SteenrodAction {
        use crate::linalg::graded::{tensor, TensorLayout};
        let space = tensor(&a.space, &b.space);
        let layout = TensorLayout::new(&a.space, &b.space);
        let cap = space.cap();
        let mut out = SteenrodAction::trivial(space.clone());
        for k in 1u32..=cap as u32 {
            for n in k as usize..=cap {
                let t = n - k as usize;
                if space.dim(n) == 0 || space.dim(t) == 0 {
                    continue;
                }
                let mut block = Matrix::zero(Field::F2, space.dim(t), space.dim(n));
                for &(ka, kb, da, db, _) in layout.segments(n) {
                    for i in 0..=k {
                        let j = k - i;
                        if ka < i as usize || kb < j as usize {
                            continue;
                        }
                        let (ta, _tb) = (ka - i as usize, kb - j as usize);
                        let ma = if i == 0 {
                            Matrix::identity(Field::F2, a.space.dim(ka))
                        } else {
                            a.act(i, ka)
                        };
                        let mb = if j == 0 {
                            Matrix::identity(Field::F2, b.space.dim(kb))
                        } else {
                            b.act(j, kb)
                        };
                        if ma.is_zero() || mb.is_zero() {
                            continue;
                        }
                        for c1 in 0..da {
                            for c2 in 0..db {
                                let col = layout.index(n, ka, c1, c2);
                                for r1 in 0..ma.rows() {
                                    if ma.get(r1, c1).is_zero() {
                                        continue;
                                    }
                                    for r2 in 0..mb.rows() {
                                        if mb.get(r2, c2).is_zero() {
                                            continue;
                                        }
                                        let row = layout.index(t, ta, r1, r2);
                                        block.add_assign_entry(
                                            row,
                                            col,
                                            &crate::linalg::Scalar::F2(true),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
                out.set_block(k, n, block);
            }
        }
        out
    }

    /// Restrict along a degree-0 inclusion whose image is action-closed.
    pub fn restrict(
        &self,
        incl: &GradedLinearMap,
        sub: &GradedVectorSpace,
    ) -> crate::error::Result<SteenrodAction> {
        let mut out = SteenrodAction::trivial(sub.clone());
        for &(k, n) in self.blocks.keys() {
            if sub.dim(n) == 0 {
                continue;
            }
            let carried = self.act(k, n).mul(&incl.block(n));
            if carried.is_zero() {
                continue;
            }
            let t = n - k as usize;
            match incl.block(t).solve(&carried) {
                Some(x) => out.set_block(k, n, x),
                None => {
                    return Err(crate::error::Error::Unsolvable(format!(
                        "subspace is not closed under Sq^{k} at degree {n}"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Induced action on a quotient along a degree-0 surjection.
    pub fn quotient(&self, proj: &GradedLinearMap, quot: &GradedVectorSpace) -> SteenrodAction {
        let mut out = SteenrodAction::trivial(quot.clone());
        for &(k, n) in self.blocks.keys() {
            if quot.dim(n) == 0 {
                continue;
            }
            let t = n - k as usize;
            // act_Q ∘ proj = proj ∘ act; proj is surjective so the system
            // X · proj = rhs is solvable via transposes.
            let rhs = proj.block(t).mul(&self.act(k, n));
            let x = proj
                .block(n)
                .transpose()
                .solve(&rhs.transpose())
                .expect("projection is surjective");
            out.set_block(k, n, x.transpose());
        }
        out
    }

    /// Assemble the action on a direct sum from the parts, via inclusions
    /// and projections.
    pub fn direct_sum(
        parts: &[(&SteenrodAction, &GradedLinearMap, &GradedLinearMap)],
        total: &GradedVectorSpace,
    ) -> SteenrodAction {
        let mut out = SteenrodAction::trivial(total.clone());
        let cap = total.cap();
        for k in 1..=cap as u32 {
            for n in k as usize..=cap {
                let t = n - k as usize;
                if total.dim(n) == 0 || total.dim(t) == 0 {
                    continue;
                }
                let mut block = Matrix::zero(Field::F2, total.dim(t), total.dim(n));
                for (act, incl, proj) in parts {
                    let b = incl.block(t).mul(&act.act(k, n)).mul(&proj.block(n));
                    block = block.add(&b);
                }
                out.set_block(k, n, block);
            }
        }
        out
    }
}

/// An unstable right module: carrier plus action, with machine-checkable
/// axioms.
#[derive(Debug, Clone)]
pub struct UnstableRightModule {
    pub carrier: GradedVectorSpace,
    pub action: SteenrodAction,
}

impl UnstableRightModule {
    pub fn new(carrier: GradedVectorSpace, action: SteenrodAction) -> Self {
        assert!(action.space().same_dims(&carrier));
        UnstableRightModule { carrier, action }
    }

    pub fn trivial(carrier: GradedVectorSpace) -> Self {
        let action = SteenrodAction::trivial(carrier.clone());
        UnstableRightModule { carrier, action }
    }
}

/// Validate the module axioms and the instability condition; an empty
/// report means valid. With `strict` the coabelian bound
/// `x·Sq^n = 0 for |x| <= 2n` is enforced instead.
pub fn verify_unstable_module(m: &UnstableRightModule, strict: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    let cap = m.carrier.cap();
    for k in 1..=cap as u32 {
        for n in 0..=cap {
            let bound = if strict {
                n <= 2 * k as usize
            } else {
                n < 2 * k as usize
            };
            if !bound {
                continue;
            }
            let b = m.action.act(k, n);
            if !b.is_zero() {
                let col = (0..b.cols())
                    .find(|&c| (0..b.rows()).any(|r| !b.get(r, c).is_zero()))
                    .unwrap();
                out.push(Violation {
                    axiom: if n >= 2 * k as usize {
                        "coabelian instability".to_string()
                    } else {
                        "instability".to_string()
                    },
                    witness: format!("{}·Sq[{k}]", m.carrier.labels(n)[col]),
                });
            }
        }
    }
    // Module axiom: acting by Sq^a then Sq^b equals acting by the
    // Adem-normalized product, for all degrees within the cap.
    for a in 1..=cap as u32 {
        for b in 1..=cap as u32 {
            if a as usize + b as usize > cap || a >= 2 * b {
                continue;
            }
            let prod = adem_normalize(&[a, b]);
            for n in (a + b) as usize..=cap {
                if m.carrier.dim(n) == 0 {
                    continue;
                }
                let lhs = m.action.act_word(&[a, b], n);
                let rhs = m.action.act_element(&prod, n);
                if lhs != rhs {
                    out.push(Violation {
                        axiom: "module axiom (Adem)".to_string(),
                        witness: format!("Sq[{a}]·Sq[{b}] at degree {n}"),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sq(seq: &[u32]) -> SteenrodElement {
        adem_normalize(seq)
    }

    // Independent oracle: evaluate the Adem formula directly for one pair.
    fn adem_pair_oracle(a: u32, b: u32) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for c in 0..=(a / 2) {
            if binom_mod2(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
                if c == 0 {
                    out.insert(vec![a + b]);
                } else {
                    out.insert(vec![a + b - c, c]);
                }
            }
        }
        out
    }

    #[test]
    fn adem_small_cases_match_the_formula() {
        assert!(sq(&[1, 1]).is_zero());
        assert!(adem_pair_oracle(1, 1).is_empty());

        let e = sq(&[1, 2]);
        assert_eq!(e.render(), "Sq[3]");
        assert_eq!(adem_pair_oracle(1, 2), BTreeSet::from([vec![3]]));

        let e = sq(&[2, 2]);
        assert_eq!(e.render(), "Sq[3,1]");
        assert_eq!(adem_pair_oracle(2, 2), BTreeSet::from([vec![3, 1]]));
    }

    #[test]
    fn normalization_is_idempotent_on_admissibles() {
        for n in 0..=10usize {
            for m in admissible_basis(n) {
                let e = adem_normalize(m.entries());
                assert_eq!(e, SteenrodElement::monomial(m));
            }
        }
    }

    #[test]
    fn unit_basis_in_degree_zero() {
        assert_eq!(admissible_basis(0), alloc::vec![AdmissibleMonomial::unit()]);
    }

    #[test]
    fn degree_three_basis_matches_exhaustive_enumeration() {
        fn compositions(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return alloc::vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for rest in compositions(n - first) {
                    let mut c = alloc::vec![first];
                    c.extend(rest);
                    out.push(c);
                }
            }
            out
        }
        let mut oracle: Vec<Vec<u32>> = compositions(3)
            .into_iter()
            .filter(|c| is_admissible(c))
            .collect();
        oracle.sort();
        let basis: Vec<Vec<u32>> = admissible_basis(3)
            .into_iter()
            .map(|m| m.entries().to_vec())
            .collect();
        assert_eq!(basis, oracle);
        assert_eq!(basis, alloc::vec![alloc::vec![2, 1], alloc::vec![3]]);
    }

    #[test]
    fn basis_counts_match_second_enumerator() {
        // Second enumerator, different recursion: sequences of degree m
        // with leading entry at most `bound`.
        fn h(m: u32, bound: u32) -> usize {
            if m == 0 {
                return 1;
            }
            let mut total = 0;
            for a in 1..=m.min(bound) {
                total += h(m - a, a / 2);
            }
            total
        }
        for n in 0..=10u32 {
            assert_eq!(admissible_basis(n as usize).len(), h(n, n));
        }
    }

    #[test]
    fn multiplication_is_associative_up_to_degree_12() {
        for a in 1..=10u32 {
            for b in 1..=10u32 {
                for c in 1..=10u32 {
                    if a + b + c > 12 {
                        continue;
                    }
                    let ab_c = multiply(&multiply(&sq(&[a]), &sq(&[b])), &sq(&[c]));
                    let a_bc = multiply(&sq(&[a]), &multiply(&sq(&[b]), &sq(&[c])));
                    assert_eq!(ab_c, a_bc, "Sq[{a}]Sq[{b}]Sq[{c}]");
                }
            }
        }
    }

    #[test]
    fn generator_decomposition_recovers_sq_k() {
        for k in 1..=12u32 {
            let mut acc = SteenrodElement::zero(k as usize);
            for word in generator_decomposition(k) {
                for t in adem_normalize(&word).terms() {
                    acc.toggle(t.clone());
                }
            }
            assert_eq!(
                acc,
                SteenrodElement::monomial(AdmissibleMonomial::new(alloc::vec![k]))
            );
        }
    }

    #[test]
    fn free_algebra_generator_degrees() {
        // n = 2, cap 5: admissible I with excess < 2 give degrees {2, 3, 5}.
        let gens = free_unstable_algebra_generators(2, 5);
        let degrees: Vec<usize> = gens.iter().map(|(_, d)| *d).collect();
        assert_eq!(degrees, alloc::vec![2, 3, 5]);
        // Cap below n: empty.
        assert!(free_unstable_algebra_generators(4, 3).is_empty());
        // n = 1: only the unit has excess < 1, so the single polynomial
        // generator is the fundamental class itself.
        let gens = free_unstable_algebra_generators(1, 8);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].1, 1);
    }

    #[test]
    fn monomial_text_round_trip() {
        for text in ["1", "Sq[3]", "Sq[4,2,1]"] {
            let m = AdmissibleMonomial::parse(text).unwrap();
            assert_eq!(m.render(), text);
        }
        assert!(AdmissibleMonomial::parse("Sq[1,2]").is_none());
        assert!(AdmissibleMonomial::parse("Sq[0]").is_none());
    }

    fn point_module(degree: usize, cap: usize) -> UnstableRightModule {
        let mut v = GradedVectorSpace::new(Field::F2, cap);
        v.push_label(degree, "x".to_string());
        UnstableRightModule::trivial(v)
    }

    #[test]
    fn trivial_actions_are_valid() {
        assert!(verify_unstable_module(&point_module(3, 6), false).is_empty());
        assert!(verify_unstable_module(&point_module(0, 2), false).is_empty());
    }

    #[test]
    fn instability_violation_is_reported() {
        // x in degree 1 with x·Sq^1 nonzero into degree 0: |x| < 2.
        let mut v = GradedVectorSpace::new(Field::F2, 2);
        v.push_label(0usize, "y".to_string());
        v.push_label(1usize, "x".to_string());
        let mut act = SteenrodAction::trivial(v.clone());
        act.set_block(1, 1, Matrix::identity(Field::F2, 1));
        let m = UnstableRightModule::new(v, act);
        let report = verify_unstable_module(&m, false);
        assert!(report
            .iter()
            .any(|v| v.axiom == "instability" && v.witness.contains('x')));
    }

    #[test]
    fn dual_action_satisfies_the_dual_instability_bound() {
        let mut v = GradedVectorSpace::new(Field::F2, 4);
        v.push_label(2usize, "a".to_string());
        v.push_label(4usize, "b".to_string());
        let mut act = SteenrodAction::trivial(v.clone());
        act.set_block(2, 4, Matrix::identity(Field::F2, 1));
        let m = UnstableRightModule::new(v, act);
        assert!(verify_unstable_module(&m, false).is_empty());
        for k in 1..=4u32 {
            for n in 0..=4usize {
                let dual_block = m.action.act(k, n).transpose();
                // The dual left action raises degree; the left instability
                // bound demands Sq^k λ = 0 for k > |λ| = n - k.
                if n >= k as usize && k as usize > n - k as usize {
                    assert!(dual_block.is_zero(), "dual instability at k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn saturation_reproduces_generator_word_sums() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..10 {
            let mut v = GradedVectorSpace::new(Field::F2, 6);
            for d in 0..=6usize {
                for i in 0..2 {
                    v.push_label(d, alloc::format!("e{d}_{i}"));
                }
            }
            let mut act = SteenrodAction::trivial(v.clone());
            for &k in &[1u32, 2, 4] {
                for n in (2 * k as usize)..=6 {
                    act.set_block(
                        k,
                        n,
                        Matrix::from_fn(Field::F2, v.dim(n - k as usize), v.dim(n), |_, _| {
                            crate::linalg::Scalar::F2(rng.gen_bool(0.3))
                        }),
                    );
                }
            }
            act.saturate_from_generators();
            for k in [3u32, 5, 6] {
                for n in k as usize..=6 {
                    let mut acc =
                        Matrix::zero(Field::F2, v.dim(n - k as usize), v.dim(n));
                    for word in generator_decomposition(k) {
                        acc = acc.add(&act.act_word(&word, n));
                    }
                    assert_eq!(acc, act.act(k, n));
                }
            }
        }
    }
}
