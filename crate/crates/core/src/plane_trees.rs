//! Plane trees, their preorder outdegree words, and the marked-tree
//! bijection onto compositions.
//!
//! Vertices are never stored with labels. Preorder indices are 1-based and
//! computed on demand, so a mark is just an index into the preorder walk.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::compositions::{Alphabet, Composition, UnitWords};
use crate::error::{Error, Result};
use crate::exact_math::BigCount;
use crate::guard::Guards;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> PlaneTree {
        PlaneTree::default()
    }

    pub fn node(children: Vec<PlaneTree>) -> PlaneTree {
        PlaneTree { children }
    }

    /// Path with `n` edges hanging from the root.
    pub fn path(n: usize) -> PlaneTree {
        (0..n).fold(PlaneTree::leaf(), |t, _| PlaneTree::node(vec![t]))
    }

    /// Root with `n` leaf children.
    pub fn star(n: usize) -> PlaneTree {
        PlaneTree::node(vec![PlaneTree::leaf(); n])
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn outdegree(&self) -> usize {
        self.children.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.preorder().count()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() - 1
    }

    /// Vertices in depth-first order, root first, subtrees left to right.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }

    /// Outdegrees in preorder: `(d_1, ..., d_{n+1})`.
    pub fn preorder_outdegrees(&self) -> Composition {
        Composition::new(self.preorder().map(|v| v.outdegree() as u64).collect())
    }

    /// Rebuilds the tree whose preorder outdegree word is `word`.
    pub fn from_outdegrees(word: &Composition) -> Result<PlaneTree> {
        if !word.is_unit() {
            return Err(Error::NotUnit(word.clone()));
        }
        Ok(Self::from_unit_word(word.parts()))
    }

    /// Right-to-left stack decoding; the caller guarantees `word` is a unit.
    pub(crate) fn from_unit_word(word: &[u64]) -> PlaneTree {
        let mut stack: Vec<PlaneTree> = Vec::with_capacity(word.len());
        for &d in word.iter().rev() {
            let at = stack.len() - d as usize;
            let mut children = stack.split_off(at);
            children.reverse();
            stack.push(PlaneTree { children });
        }
        debug_assert_eq!(stack.len(), 1);
        stack.pop().expect("unit word decodes to one tree")
    }

    pub fn outdegree_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for v in self.preorder() {
            *hist.entry(v.outdegree() as u64).or_insert(0) += 1;
        }
        hist
    }

    /// Degree is the number of neighbours: the outdegree at the root, one
    /// more than the outdegree elsewhere.
    pub fn degree_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for (j, v) in self.preorder().enumerate() {
            let degree = v.outdegree() as u64 + u64::from(j > 0);
            *hist.entry(degree).or_insert(0) += 1;
        }
        hist
    }

    /// The subtree rooted at preorder index `mark` (1-based).
    pub fn vertex(&self, mark: usize) -> Option<&PlaneTree> {
        mark.checked_sub(1).and_then(|j| self.preorder().nth(j))
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a PlaneTree>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a PlaneTree;

    fn next(&mut self) -> Option<&'a PlaneTree> {
        let v = self.stack.pop()?;
        self.stack.extend(v.children.iter().rev());
        Some(v)
    }
}

/// Balanced parentheses, one pair per non-root vertex in preorder. The
/// single vertex is the empty string and the cherry is `()()`.
impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for child in &self.children {
            write!(f, "({child})")?;
        }
        Ok(())
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut open: Vec<Vec<PlaneTree>> = vec![Vec::new()];
        for (pos, ch) in s.char_indices() {
            match ch {
                '(' => open.push(Vec::new()),
                ')' => {
                    if open.len() < 2 {
                        return Err(Error::Parse(format!("unmatched ')' at byte {pos} in {s:?}")));
                    }
                    let children = open.pop().unwrap();
                    open.last_mut().unwrap().push(PlaneTree { children });
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse(format!("unexpected {c:?} in plane tree {s:?}")));
                }
            }
        }
        if open.len() != 1 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
        Ok(PlaneTree {
            children: open.pop().unwrap(),
        })
    }
}

/// A plane tree with one vertex singled out by its 1-based preorder index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPlaneTree {
    tree: PlaneTree,
    mark: usize,
}

impl MarkedPlaneTree {
    pub fn new(tree: PlaneTree, mark: usize) -> Result<MarkedPlaneTree> {
        let vertices = tree.vertex_count();
        if mark == 0 || mark > vertices {
            return Err(Error::MarkOutOfRange { mark, vertices });
        }
        Ok(MarkedPlaneTree { tree, mark })
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn into_parts(self) -> (PlaneTree, usize) {
        (self.tree, self.mark)
    }

    pub fn marked_outdegree(&self) -> u64 {
        self.tree.vertex(self.mark).expect("mark is in range").outdegree() as u64
    }

    /// The cyclic preorder word read from just after the mark, with the
    /// mark's own outdegree dropped: `(d_{j+1}, ..., d_{n+1}, d_1, ..., d_{j-1})`.
    pub fn bar_delta_encode(&self) -> Composition {
        let word = self.tree.preorder_outdegrees().into_parts();
        let j = self.mark - 1;
        let mut out = Vec::with_capacity(word.len() - 1);
        out.extend_from_slice(&word[j + 1..]);
        out.extend_from_slice(&word[..j]);
        Composition::new(out)
    }

    /// Inverse of [`MarkedPlaneTree::bar_delta_encode`] for a mark of
    /// outdegree `outdegree`.
    ///
    /// With `word = u_1 ... u_s t` its fundamental decomposition, the tree is
    /// decoded from `t, outdegree, u_1, ..., u_s` and the mark sits right
    /// after `t`.
    pub fn bar_delta_decode(word: &Composition, outdegree: u64) -> Result<MarkedPlaneTree> {
        let n = word.len() as u64;
        let sum = word.sum();
        let mismatch = || Error::OutdegreeMismatch {
            word: word.clone(),
            len: word.len(),
            sum,
            outdegree,
        };
        if n == 0 || outdegree > n || sum != n - outdegree {
            return Err(mismatch());
        }
        let decomposition = word.fundamental_decomposition();
        let s = decomposition.unit_count() as i64;
        if decomposition.tail.f_statistic() != s - outdegree as i64 {
            return Err(Error::Inconsistency(format!(
                "tail of {word} has f = {} but s - i = {}",
                decomposition.tail.f_statistic(),
                s - outdegree as i64
            )));
        }
        let mut rotated = decomposition.tail.parts().to_vec();
        rotated.push(outdegree);
        for unit in &decomposition.units {
            rotated.extend_from_slice(unit.parts());
        }
        let rotated = Composition::new(rotated);
        if !rotated.is_unit() {
            return Err(Error::Inconsistency(format!(
                "rotated word {rotated} is not a unit composition"
            )));
        }
        let tree = PlaneTree::from_unit_word(rotated.parts());
        Ok(MarkedPlaneTree {
            tree,
            mark: decomposition.tail.len() + 1,
        })
    }
}

/// `<tree>@<mark>`, e.g. `()()@1`.
impl fmt::Display for MarkedPlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.tree, self.mark)
    }
}

impl FromStr for MarkedPlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tree, mark) = s
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse(format!("marked tree needs '@<mark>': {s:?}")))?;
        let mark = mark
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad mark {mark:?}")))?;
        MarkedPlaneTree::new(tree.parse()?, mark)
    }
}

pub fn preorder_outdegrees(t: &PlaneTree) -> Composition {
    t.preorder_outdegrees()
}

pub fn delta_decode(c: &Composition) -> Result<PlaneTree> {
    PlaneTree::from_outdegrees(c)
}

pub fn outdegree_histogram(t: &PlaneTree) -> BTreeMap<u64, u64> {
    t.outdegree_histogram()
}

pub fn degree_histogram(t: &PlaneTree) -> BTreeMap<u64, u64> {
    t.degree_histogram()
}

pub fn bar_delta_encode(m: &MarkedPlaneTree) -> Composition {
    m.bar_delta_encode()
}

pub fn bar_delta_decode(c: &Composition, i: u64) -> Result<MarkedPlaneTree> {
    MarkedPlaneTree::bar_delta_decode(c, i)
}

/// All plane trees with `n` edges, in lexicographic order of their preorder
/// outdegree words.
pub struct PlaneTrees {
    words: UnitWords,
}

impl Iterator for PlaneTrees {
    type Item = PlaneTree;

    fn next(&mut self) -> Option<PlaneTree> {
        self.words.next().map(|w| PlaneTree::from_unit_word(w.parts()))
    }
}

pub fn enumerate_plane_trees(n: u64) -> Result<PlaneTrees> {
    enumerate_plane_trees_with_guard(n, &Guards::from_env())
}

pub fn enumerate_plane_trees_with_guard(n: u64, guards: &Guards) -> Result<PlaneTrees> {
    guards.check_plane(n)?;
    Ok(PlaneTrees {
        words: UnitWords::new(n as usize + 1, Alphabet::Any),
    })
}

/// Outdegree-`i` vertices over all enumerated `n`-edge plane trees.
pub fn count_outdegree_bruteforce(n: u64, i: u64) -> Result<BigCount> {
    count_outdegree_bruteforce_with_guard(n, i, &Guards::from_env())
}

pub fn count_outdegree_bruteforce_with_guard(n: u64, i: u64, guards: &Guards) -> Result<BigCount> {
    let total: u64 = enumerate_plane_trees_with_guard(n, guards)?
        .map(|t| t.outdegree_histogram().get(&i).copied().unwrap_or(0))
        .sum();
    Ok(BigCount::from(total))
}

/// Summed outdegree and degree histograms over all `n`-edge plane trees.
pub fn histogram_totals(n: u64, guards: &Guards) -> Result<(BTreeMap<u64, u64>, BTreeMap<u64, u64>)> {
    let mut outdeg = BTreeMap::new();
    let mut deg = BTreeMap::new();
    for t in enumerate_plane_trees_with_guard(n, guards)? {
        for (d, c) in t.outdegree_histogram() {
            *outdeg.entry(d).or_insert(0) += c;
        }
        for (d, c) in t.degree_histogram() {
            *deg.entry(d).or_insert(0) += c;
        }
    }
    Ok((outdeg, deg))
}
