//! k-ary trees, their completion to complete k-ary plane trees, and the
//! bijection from marked k-ary trees to pairs of subsets.
//!
//! A k-ary tree keeps all `k` child slots explicitly; which slots are
//! occupied is part of the tree's identity. Preorder visits only present
//! vertices, slot by slot, and marks are 1-based preorder indices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compositions::{Alphabet, Composition, FundamentalDecomposition, UnitWords};
use crate::error::{Error, Result};
use crate::exact_math::BigCount;
use crate::guard::Guards;
use crate::plane_trees::{MarkedPlaneTree, PlaneTree};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KaryTree {
    slots: Vec<Option<KaryTree>>,
}

impl KaryTree {
    /// The single-vertex tree of arity `k`.
    pub fn vertex(k: usize) -> Result<KaryTree> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(KaryTree {
            slots: vec![None; k],
        })
    }

    /// A vertex with the given slots; every present subtree must share the
    /// arity `slots.len()`.
    pub fn node(slots: Vec<Option<KaryTree>>) -> Result<KaryTree> {
        let k = slots.len();
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        if let Some(bad) = slots.iter().flatten().find(|t| t.arity() != k) {
            return Err(Error::Parse(format!(
                "subtree of arity {} under a vertex of arity {k}",
                bad.arity()
            )));
        }
        Ok(KaryTree { slots })
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<KaryTree>] {
        &self.slots
    }

    /// Number of nonempty slots.
    pub fn outdegree(&self) -> usize {
        self.slots.iter().flatten().count()
    }

    pub fn preorder(&self) -> impl Iterator<Item = &KaryTree> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let v = stack.pop()?;
            stack.extend(v.slots.iter().rev().flatten());
            Some(v)
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.preorder().count()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() - 1
    }

    pub fn vertex_at(&self, mark: usize) -> Option<&KaryTree> {
        mark.checked_sub(1).and_then(|j| self.preorder().nth(j))
    }

    /// Preorder outdegree word of the completion: `k` for every vertex of
    /// this tree and `0` for every empty slot.
    fn completed_word(&self) -> Vec<u64> {
        let k = self.arity() as u64;
        let mut word = Vec::new();
        let mut stack: Vec<Option<&KaryTree>> = vec![Some(self)];
        while let Some(entry) = stack.pop() {
            match entry {
                Some(v) => {
                    word.push(k);
                    stack.extend(v.slots.iter().rev().map(Option::as_ref));
                }
                None => word.push(0),
            }
        }
        word
    }

    /// Decodes a completed preorder word over `{0, k}` back into slots.
    fn from_completed_word(word: &[u64], k: usize) -> Option<KaryTree> {
        let mut stack: Vec<Option<KaryTree>> = Vec::with_capacity(word.len());
        for &d in word.iter().rev() {
            if d == 0 {
                stack.push(None);
            } else {
                let at = stack.len() - k;
                let mut slots = stack.split_off(at);
                slots.reverse();
                stack.push(Some(KaryTree { slots }));
            }
        }
        stack.pop().flatten()
    }

    /// The complete k-ary plane tree obtained by turning every empty slot
    /// into a leaf, with the map from this tree's preorder labels to the
    /// labels of the same vertices in the completion (both 1-based;
    /// `map[j - 1]` is the image of label `j`).
    pub fn complete(&self) -> (PlaneTree, Vec<usize>) {
        let word = self.completed_word();
        let map = internal_labels(&word);
        (PlaneTree::from_unit_word(&word), map)
    }

    /// Inverse of [`KaryTree::complete`]: leaves become empty slots. Also
    /// returns the label map in the same direction as `complete`.
    pub fn uncomplete(tree: &PlaneTree, k: usize) -> Result<(KaryTree, Vec<usize>)> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        let word = tree.preorder_outdegrees().into_parts();
        if let Some(pos) = word.iter().position(|&d| d != 0 && d != k as u64) {
            return Err(Error::NotComplete {
                arity: k,
                reason: format!("vertex {} has outdegree {}", pos + 1, word[pos]),
            });
        }
        let Some(t) = KaryTree::from_completed_word(&word, k) else {
            return Err(Error::NotComplete {
                arity: k,
                reason: "a single vertex has no internal vertex".into(),
            });
        };
        Ok((t, internal_labels(&word)))
    }
}

fn internal_labels(word: &[u64]) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(j, _)| j + 1)
        .collect()
}

/// Tokens `(`, `.` and `)` separated by single spaces, except that
/// consecutive opening parentheses are written together:
/// `((( . . ) . ) . )` is the binary left-left path.
impl fmt::Display for KaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut stack: Vec<Option<Option<&KaryTree>>> = vec![Some(Some(self))];
        let mut previous_open = false;
        let mut first = true;
        while let Some(entry) = stack.pop() {
            let token = match entry {
                Some(Some(v)) => {
                    stack.push(None);
                    stack.extend(v.slots.iter().rev().map(|s| Some(s.as_ref())));
                    "("
                }
                Some(None) => ".",
                None => ")",
            };
            if !first && !(previous_open && token == "(") {
                f.write_str(" ")?;
            }
            f.write_str(token)?;
            previous_open = token == "(";
            first = false;
        }
        Ok(())
    }
}

impl FromStr for KaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut open: Vec<Vec<Option<KaryTree>>> = Vec::new();
        let mut done: Option<KaryTree> = None;
        let mut arity: Option<usize> = None;
        for ch in s.chars() {
            if done.is_some() && !ch.is_whitespace() {
                return Err(Error::Parse(format!("trailing input after k-ary tree in {s:?}")));
            }
            match ch {
                '(' => open.push(Vec::new()),
                '.' => open
                    .last_mut()
                    .ok_or_else(|| Error::Parse(format!("'.' outside a vertex in {s:?}")))?
                    .push(None),
                ')' => {
                    let slots = open
                        .pop()
                        .ok_or_else(|| Error::Parse(format!("unmatched ')' in {s:?}")))?;
                    match arity {
                        None if slots.is_empty() => return Err(Error::ZeroArity),
                        None => arity = Some(slots.len()),
                        Some(k) if k != slots.len() => {
                            return Err(Error::Parse(format!(
                                "vertex with {} slots in a {k}-ary tree {s:?}",
                                slots.len()
                            )))
                        }
                        Some(_) => {}
                    }
                    let node = KaryTree { slots };
                    match open.last_mut() {
                        Some(parent) => parent.push(Some(node)),
                        None => done = Some(node),
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("unexpected {c:?} in k-ary tree {s:?}"))),
            }
        }
        done.ok_or_else(|| Error::Parse(format!("incomplete k-ary tree {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedKaryTree {
    tree: KaryTree,
    mark: usize,
}

impl MarkedKaryTree {
    pub fn new(tree: KaryTree, mark: usize) -> Result<MarkedKaryTree> {
        let vertices = tree.vertex_count();
        if mark == 0 || mark > vertices {
            return Err(Error::MarkOutOfRange { mark, vertices });
        }
        Ok(MarkedKaryTree { tree, mark })
    }

    pub fn tree(&self) -> &KaryTree {
        &self.tree
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn marked_outdegree(&self) -> u64 {
        self.tree.vertex_at(self.mark).expect("mark in range").outdegree() as u64
    }

    /// Composition of the completed tree marked at the image of the mark.
    pub fn to_composition(&self) -> Composition {
        let (completed, map) = self.tree.complete();
        let marked = MarkedPlaneTree::new(completed, map[self.mark - 1])
            .expect("image of a vertex lies in the completion");
        let word = marked.bar_delta_encode();
        let k = self.tree.arity();
        let n = self.tree.edge_count() as u64;
        debug_assert!(
            check_conditions(&word, k, n, Some(self.marked_outdegree())).is_ok(),
            "encoded word {word} violates the k-ary conditions"
        );
        word
    }

    /// Inverse of [`MarkedKaryTree::to_composition`] for a word meeting the
    /// counting and unit conditions for `(k, n, i)`.
    pub fn from_composition(word: &Composition, k: usize, n: u64, i: u64) -> Result<MarkedKaryTree> {
        check_conditions(word, k, n, Some(i))?;
        let (completed, mark) = MarkedPlaneTree::bar_delta_decode(word, k as u64)?.into_parts();
        let (tree, map) = KaryTree::uncomplete(&completed, k)?;
        let mark = map
            .iter()
            .position(|&label| label == mark)
            .map(|j| j + 1)
            .ok_or_else(|| Error::Inconsistency(format!("decoded mark {mark} is a leaf")))?;
        MarkedKaryTree::new(tree, mark)
    }
}

impl fmt::Display for MarkedKaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.tree, self.mark)
    }
}

impl FromStr for MarkedKaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tree, mark) = s
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse(format!("marked tree needs '@<mark>': {s:?}")))?;
        let mark = mark
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad mark {mark:?}")))?;
        MarkedKaryTree::new(tree.parse()?, mark)
    }
}

/// Checks that `word` has length `k(n+1)`, consists of `n` parts equal to
/// `k` and zeros otherwise (condition (i)), and that its fundamental
/// decomposition has at least `k` units, of which exactly `i` among the
/// first `k` begin with `k` (condition (ii), `i` checked when given).
pub fn check_conditions(
    word: &Composition,
    k: usize,
    n: u64,
    i: Option<u64>,
) -> Result<FundamentalDecomposition> {
    let counts = |reason: String| Error::ConditionCounts { k, n, reason };
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let kk = k as u64;
    let expected_len = kk * (n + 1);
    if word.len() as u64 != expected_len {
        return Err(counts(format!("length {} instead of {expected_len}", word.len())));
    }
    if let Some(bad) = word.parts().iter().find(|&&a| a != 0 && a != kk) {
        return Err(counts(format!("part {bad} is neither 0 nor {k}")));
    }
    let big = word.parts().iter().filter(|&&a| a == kk).count() as u64;
    if big != n {
        return Err(counts(format!("{big} parts equal {k} instead of {n}")));
    }
    let decomposition = word.fundamental_decomposition();
    // f(word) = -k forces s = k + f(tail) >= k once (i) holds; kept as a check.
    if decomposition.unit_count() < k {
        return Err(Error::ConditionUnits {
            k,
            i: i.unwrap_or(0),
            reason: format!("only {} unit compositions", decomposition.unit_count()),
        });
    }
    if let Some(i) = i {
        let leading = leading_units(&decomposition, k);
        if leading.len() as u64 != i {
            return Err(Error::ConditionUnits {
                k,
                i,
                reason: format!("{} of the first {k} units begin with {k}", leading.len()),
            });
        }
    }
    Ok(decomposition)
}

/// 1-based indices of the first `k` units that begin with `k`.
fn leading_units(decomposition: &FundamentalDecomposition, k: usize) -> Vec<u64> {
    decomposition.units[..k]
        .iter()
        .enumerate()
        .filter(|(_, u)| u.parts()[0] == k as u64)
        .map(|(j, _)| j as u64 + 1)
        .collect()
}

/// `X` is a subset of `{1..k}`, `Y` a subset of `{1..kn}`, with
/// `|X| + |Y| = n`. Serialised as `{"k":3,"n":8,"X":[1,3],"Y":[8,...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSubsetPair")]
pub struct SubsetPair {
    k: usize,
    n: u64,
    #[serde(rename = "X")]
    x: Vec<u64>,
    #[serde(rename = "Y")]
    y: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSubsetPair {
    k: usize,
    n: u64,
    #[serde(rename = "X")]
    x: Vec<u64>,
    #[serde(rename = "Y")]
    y: Vec<u64>,
}

impl TryFrom<RawSubsetPair> for SubsetPair {
    type Error = Error;

    fn try_from(raw: RawSubsetPair) -> Result<Self> {
        SubsetPair::new(raw.k, raw.n, raw.x, raw.y)
    }
}

impl SubsetPair {
    /// Sorts both sets; rejects repeats and out-of-range elements.
    pub fn new(k: usize, n: u64, mut x: Vec<u64>, mut y: Vec<u64>) -> Result<SubsetPair> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        let check = |set: &mut Vec<u64>, name: &str, bound: u64| -> Result<()> {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::SubsetOutOfRange(format!("{name} has a repeated element")));
            }
            if let Some(bad) = set.iter().find(|&&e| e == 0 || e > bound) {
                return Err(Error::SubsetOutOfRange(format!(
                    "{name} element {bad} outside 1..={bound}"
                )));
            }
            Ok(())
        };
        check(&mut x, "X", k as u64)?;
        check(&mut y, "Y", k as u64 * n)?;
        if (x.len() + y.len()) as u64 != n {
            return Err(Error::SubsetOutOfRange(format!(
                "|X| + |Y| = {} but n = {n}",
                x.len() + y.len()
            )));
        }
        Ok(SubsetPair { k, n, x, y })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn y(&self) -> &[u64] {
        &self.y
    }

    /// The outdegree `i = |X|`.
    pub fn outdegree(&self) -> u64 {
        self.x.len() as u64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("subset pairs serialise")
    }

    pub fn from_json(s: &str) -> Result<SubsetPair> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("subset pair JSON: {e}")))
    }

    /// Reads off `X` from the units that start with `k` among the first `k`,
    /// and `Y` from the positions of `k` once those first letters are removed.
    pub fn from_composition(word: &Composition, k: usize, n: u64) -> Result<SubsetPair> {
        let decomposition = check_conditions(word, k, n, None)?;
        let x = leading_units(&decomposition, k);
        let kk = k as u64;
        let mut beta: Vec<u64> = Vec::with_capacity(word.len() - k);
        for unit in &decomposition.units[..k] {
            beta.extend_from_slice(&unit.parts()[1..]);
        }
        for unit in &decomposition.units[k..] {
            beta.extend_from_slice(unit.parts());
        }
        beta.extend_from_slice(decomposition.tail.parts());
        let y = beta
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == kk)
            .map(|(j, _)| j as u64 + 1)
            .collect();
        SubsetPair::new(k, n, x, y)
    }

    /// Inserts the letters `c_j` (`k` if `j` is in `X`, else `0`) into
    /// `beta` so that `c_j` starts the `j`-th unit: after writing `c_j`,
    /// letters of `beta` are copied until the running f-value of the unit
    /// reaches `-1`. What remains of `beta` is appended unchanged.
    pub fn to_composition(&self) -> Result<Composition> {
        let kk = self.k as u64;
        let len = (kk * self.n) as usize;
        let mut beta = vec![0u64; len];
        for &l in &self.y {
            beta[l as usize - 1] = kk;
        }
        let mut beta = beta.into_iter();
        let mut alpha = Vec::with_capacity(len + self.k);
        for j in 1..=kk {
            let c = if self.x.binary_search(&j).is_ok() { kk } else { 0 };
            alpha.push(c);
            let mut f = c as i64 - 1;
            while f >= 0 {
                let b = beta.next().ok_or_else(|| {
                    Error::Inconsistency(format!("ran out of letters while building unit {j}"))
                })?;
                alpha.push(b);
                f += b as i64 - 1;
            }
        }
        alpha.extend(beta);
        Ok(Composition::new(alpha))
    }

    /// Every pair for `(k, n, i)`, ordered by `X` then `Y`.
    pub fn all(k: usize, n: u64, i: u64) -> Vec<SubsetPair> {
        if k == 0 || i > k as u64 || i > n {
            return Vec::new();
        }
        let xs = subsets(k as u64, i as usize);
        let ys = subsets(k as u64 * n, (n - i) as usize);
        xs.iter()
            .flat_map(|x| {
                ys.iter().map(move |y| SubsetPair {
                    k,
                    n,
                    x: x.clone(),
                    y: y.clone(),
                })
            })
            .collect()
    }
}

/// `size`-element subsets of `{1..=m}` in lexicographic order.
fn subsets(m: u64, size: usize) -> Vec<Vec<u64>> {
    fn go(next: u64, m: u64, size: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = (size - cur.len()) as u64;
        for e in next..=m {
            if m - e + 1 < need {
                break;
            }
            cur.push(e);
            go(e + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, size, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for SubsetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

pub fn complete(t: &KaryTree) -> (PlaneTree, Vec<usize>) {
    t.complete()
}

pub fn uncomplete(p: &PlaneTree, k: usize) -> Result<KaryTree> {
    KaryTree::uncomplete(p, k).map(|(t, _)| t)
}

pub fn kary_pair_to_composition(m: &MarkedKaryTree) -> Composition {
    m.to_composition()
}

pub fn composition_to_kary_pair(c: &Composition, k: usize, n: u64, i: u64) -> Result<MarkedKaryTree> {
    MarkedKaryTree::from_composition(c, k, n, i)
}

pub fn phi(c: &Composition, k: usize, n: u64) -> Result<SubsetPair> {
    SubsetPair::from_composition(c, k, n)
}

pub fn phi_inverse(p: &SubsetPair) -> Result<Composition> {
    p.to_composition()
}

/// All k-ary trees with `n` edges, in lexicographic order of the preorder
/// words of their completions.
pub struct KaryTrees {
    k: usize,
    words: UnitWords,
}

impl Iterator for KaryTrees {
    type Item = KaryTree;

    fn next(&mut self) -> Option<KaryTree> {
        let word = self.words.next()?;
        Some(KaryTree::from_completed_word(word.parts(), self.k).expect("word has an internal vertex"))
    }
}

pub fn enumerate_kary_trees(k: usize, n: u64) -> Result<KaryTrees> {
    enumerate_kary_trees_with_guard(k, n, &Guards::from_env())
}

pub fn enumerate_kary_trees_with_guard(k: usize, n: u64, guards: &Guards) -> Result<KaryTrees> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    guards.check_kary(k, n)?;
    let len = k * (n as usize + 1) + 1;
    Ok(KaryTrees {
        k,
        words: UnitWords::new(len, Alphabet::ZeroOr(k as u64)),
    })
}

pub fn count_kary_outdegree_bruteforce(k: usize, n: u64, i: u64) -> Result<BigCount> {
    count_kary_outdegree_bruteforce_with_guard(k, n, i, &Guards::from_env())
}

pub fn count_kary_outdegree_bruteforce_with_guard(
    k: usize,
    n: u64,
    i: u64,
    guards: &Guards,
) -> Result<BigCount> {
    let total: u64 = enumerate_kary_trees_with_guard(k, n, guards)?
        .map(|t| t.preorder().filter(|v| v.outdegree() as u64 == i).count() as u64)
        .sum();
    Ok(BigCount::from(total))
}

/// Marked k-ary trees with `n` edges whose mark has outdegree `i`, in
/// enumeration order.
pub fn marked_kary_trees(k: usize, n: u64, i: u64, guards: &Guards) -> Result<Vec<MarkedKaryTree>> {
    let mut out = Vec::new();
    for t in enumerate_kary_trees_with_guard(k, n, guards)? {
        let marks: Vec<usize> = t
            .preorder()
            .enumerate()
            .filter(|(_, v)| v.outdegree() as u64 == i)
            .map(|(j, _)| j + 1)
            .collect();
        for mark in marks {
            out.push(MarkedKaryTree {
                tree: t.clone(),
                mark,
            });
        }
    }
    Ok(out)
}

/// Images of all marked trees for `(k, n, i)` under the subset-pair map;
/// fails if two marked trees share an image.
pub fn subset_pair_images(k: usize, n: u64, i: u64, guards: &Guards) -> Result<BTreeSet<SubsetPair>> {
    let mut images = BTreeSet::new();
    for m in marked_kary_trees(k, n, i, guards)? {
        let pair = SubsetPair::from_composition(&m.to_composition(), k, n)?;
        if !images.insert(pair.clone()) {
            return Err(Error::Inconsistency(format!("{pair} reached twice")));
        }
    }
    Ok(images)
}
