//! Compositions, the f-statistic, and the fundamental decomposition.
//!
//! A composition here is any finite sequence of nonnegative integers,
//! including the empty one. Its f-statistic is `sum(a_j - 1)`; it behaves
//! like the height of a ballot path that steps by `a_j - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn new(parts: Vec<u64>) -> Composition {
        Composition(parts)
    }

    pub fn empty() -> Composition {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `sum(a_j - 1)`, i.e. sum of parts minus length.
    pub fn f_statistic(&self) -> i64 {
        self.sum() as i64 - self.len() as i64
    }

    /// f-values of the prefixes of length `1..=len`.
    pub fn prefix_f(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().scan(0i64, |f, &a| {
            *f += a as i64 - 1;
            Some(*f)
        })
    }

    /// Every proper prefix has `f >= 0` and the whole has `f = -1`.
    pub fn is_unit(&self) -> bool {
        let len = self.len();
        if len == 0 {
            return false;
        }
        for (j, f) in self.prefix_f().enumerate() {
            if j + 1 < len && f < 0 {
                return false;
            }
            if j + 1 == len {
                return f == -1;
            }
        }
        unreachable!()
    }

    /// Every prefix, including the whole, has `f >= 0`.
    pub fn is_positive(&self) -> bool {
        self.prefix_f().all(|f| f >= 0)
    }

    /// Splits off unit compositions greedily from the left; whatever is left
    /// once no prefix reaches `f = -1` is the positive tail.
    pub fn fundamental_decomposition(&self) -> FundamentalDecomposition {
        let mut units = Vec::new();
        let mut start = 0;
        let mut f = 0i64;
        for (j, &a) in self.0.iter().enumerate() {
            f += a as i64 - 1;
            if f == -1 {
                units.push(Composition(self.0[start..=j].to_vec()));
                start = j + 1;
                f = 0;
            }
        }
        let decomposition = FundamentalDecomposition {
            units,
            tail: Composition(self.0[start..].to_vec()),
        };
        debug_assert_eq!(&decomposition.concat(), self);
        decomposition
    }

    pub fn concat<'a>(pieces: impl IntoIterator<Item = &'a Composition>) -> Composition {
        Composition(pieces.into_iter().flat_map(|c| c.0.iter().copied()).collect())
    }
}

impl From<Vec<u64>> for Composition {
    fn from(parts: Vec<u64>) -> Self {
        Composition(parts)
    }
}

impl<const N: usize> From<[u64; N]> for Composition {
    fn from(parts: [u64; N]) -> Self {
        Composition(parts.to_vec())
    }
}

/// `(3,2,0)`; the empty composition prints as `()`.
impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, a) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("composition must be parenthesised: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad composition part {:?} in {s:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }
}

/// `units[0] units[1] ... tail`, each unit a unit composition and the tail
/// positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDecomposition {
    pub units: Vec<Composition>,
    pub tail: Composition,
}

impl FundamentalDecomposition {
    pub fn concat(&self) -> Composition {
        Composition::concat(self.units.iter().chain(std::iter::once(&self.tail)))
    }

    /// Number of unit compositions (`s`).
    pub fn unit_count(&self) -> usize {
        self.units.len()
    }
}

/// Pieces written side by side, e.g. `(0)(2,0,0)(3,2,0)`; an empty tail is
/// omitted.
impl fmt::Display for FundamentalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in &self.units {
            write!(f, "{u}")?;
        }
        if !self.tail.is_empty() {
            write!(f, "{}", self.tail)?;
        }
        Ok(())
    }
}

/// Which part values a word enumeration may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    /// Any nonnegative part.
    Any,
    /// Parts equal to `0` or to the given value; used for the preorder words
    /// of complete k-ary trees.
    ZeroOr(u64),
}

impl Alphabet {
    fn choices(self, budget: u64) -> impl Iterator<Item = u64> {
        let (all, k) = match self {
            Alphabet::Any => (true, 0),
            Alphabet::ZeroOr(k) => (false, k),
        };
        (0..=budget).filter(move |&d| all || d == 0 || d == k)
    }

    /// Whether `rest` can be written as a sum of at most `slots` letters.
    fn reachable(self, rest: u64, slots: u64) -> bool {
        match self {
            Alphabet::Any => slots > 0 || rest == 0,
            Alphabet::ZeroOr(k) => {
                rest == 0 || (k > 0 && rest.is_multiple_of(k) && rest / k <= slots)
            }
        }
    }
}

/// Lexicographic enumeration of the unit compositions of length `len` (and
/// hence sum `len - 1`) over an alphabet.
///
/// Depth-first with pruning: a prefix is extended only if its f-value stays
/// nonnegative and the remaining sum is reachable, and every such prefix
/// has at least one completion, so the search never dead-ends.
#[derive(Debug, Clone)]
pub struct UnitWords {
    len: usize,
    total: u64,
    alphabet: Alphabet,
    word: Vec<u64>,
    sum: u64,
    started: bool,
    done: bool,
}

impl UnitWords {
    pub fn new(len: usize, alphabet: Alphabet) -> UnitWords {
        UnitWords {
            len,
            total: len.saturating_sub(1) as u64,
            alphabet,
            word: Vec::with_capacity(len),
            sum: 0,
            started: false,
            done: len == 0,
        }
    }

    fn accepts(&self, d: u64) -> bool {
        let p = self.word.len();
        let sum = self.sum + d;
        if sum > self.total {
            return false;
        }
        let f = sum as i64 - (p as i64 + 1);
        let slots = (self.len - p - 1) as u64;
        if slots == 0 {
            return f == -1;
        }
        f >= 0 && self.alphabet.reachable(self.total - sum, slots)
    }

    /// Smallest admissible letter `>= from` at the next position.
    fn next_letter(&self, from: u64) -> Option<u64> {
        let budget = self.total - self.sum;
        self.alphabet
            .choices(budget)
            .filter(|&d| d >= from)
            .find(|&d| self.accepts(d))
    }

    fn push(&mut self, d: u64) {
        self.word.push(d);
        self.sum += d;
    }

    fn descend(&mut self) -> bool {
        while self.word.len() < self.len {
            match self.next_letter(0) {
                Some(d) => self.push(d),
                None => return false,
            }
        }
        true
    }
}

impl Iterator for UnitWords {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(Composition(self.word.clone()));
            }
            self.done = true;
            return None;
        }
        while let Some(last) = self.word.pop() {
            self.sum -= last;
            if let Some(d) = self.next_letter(last + 1) {
                self.push(d);
                if self.descend() {
                    return Some(Composition(self.word.clone()));
                }
            }
        }
        self.done = true;
        None
    }
}

pub fn f_statistic(c: &Composition) -> i64 {
    c.f_statistic()
}

pub fn is_unit(c: &Composition) -> bool {
    c.is_unit()
}

pub fn is_positive(c: &Composition) -> bool {
    c.is_positive()
}

pub fn fundamental_decomposition(c: &Composition) -> FundamentalDecomposition {
    c.fundamental_decomposition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c<const N: usize>(parts: [u64; N]) -> Composition {
        Composition::from(parts)
    }

    #[test]
    fn f_statistic_values() {
        assert_eq!(c([2, 0, 0]).f_statistic(), -1);
        assert_eq!(Composition::empty().f_statistic(), 0);
        assert_eq!(c([3, 2, 0]).f_statistic(), 2);
    }

    #[test]
    fn unit_and_positive() {
        assert!(c([0]).is_unit());
        assert!(c([3, 0, 0, 2, 0, 0]).is_unit());
        assert!(!c([0, 2, 0]).is_unit());
        assert!(!Composition::empty().is_unit());
        assert!(c([3, 2, 0]).is_positive());
        assert!(!c([0]).is_positive());
        assert!(Composition::empty().is_positive());
    }

    #[test]
    fn decomposition_of_worked_example() {
        let alpha = c([0, 2, 0, 0, 0, 3, 0, 0, 2, 0, 0, 3, 2, 0]);
        let d = alpha.fundamental_decomposition();
        assert_eq!(
            d.units,
            vec![c([0]), c([2, 0, 0]), c([0]), c([3, 0, 0, 2, 0, 0])]
        );
        assert_eq!(d.tail, c([3, 2, 0]));
        assert_eq!(d.to_string(), "(0)(2,0,0)(0)(3,0,0,2,0,0)(3,2,0)");
        // f(tail) = s - i with s = 4 and i = 2
        assert_eq!(d.tail.f_statistic(), 2);
    }

    #[test]
    fn decomposition_of_ternary_example() {
        let alpha = c([
            3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 3, 3, 0, 0, 0, 3, 0, 0, 0, 0, 3, 3, 0, 0,
        ]);
        let d = alpha.fundamental_decomposition();
        assert_eq!(
            d.units,
            vec![
                c([3, 0, 0, 0]),
                c([0]),
                c([3, 0, 0, 0]),
                c([0]),
                c([3, 0, 0, 3, 3, 0, 0, 0, 3, 0, 0, 0, 0]),
            ]
        );
        assert_eq!(d.tail, c([3, 3, 0, 0]));
    }

    #[test]
    fn decomposition_edge_cases() {
        let d = c([0, 0]).fundamental_decomposition();
        assert_eq!(d.units, vec![c([0]), c([0])]);
        assert!(d.tail.is_empty());
        let d = Composition::empty().fundamental_decomposition();
        assert!(d.units.is_empty() && d.tail.is_empty());
        let d = c([1, 1, 1]).fundamental_decomposition();
        assert!(d.units.is_empty());
        assert_eq!(d.tail, c([1, 1, 1]));
    }

    #[test]
    fn text_form() {
        assert_eq!(c([3, 2, 0]).to_string(), "(3,2,0)");
        assert_eq!(Composition::empty().to_string(), "()");
        assert_eq!("(3,2,0)".parse::<Composition>().unwrap(), c([3, 2, 0]));
        assert_eq!(" ( 3, 2 ,0 ) ".parse::<Composition>().unwrap(), c([3, 2, 0]));
        assert_eq!("()".parse::<Composition>().unwrap(), Composition::empty());
        assert!("3,2,0".parse::<Composition>().is_err());
        assert!("(3,-2)".parse::<Composition>().is_err());
        assert!("(3,,2)".parse::<Composition>().is_err());
    }

    #[test]
    fn unit_words_in_lex_order() {
        let words: Vec<_> = UnitWords::new(3, Alphabet::Any).collect();
        assert_eq!(words, vec![c([1, 1, 0]), c([2, 0, 0])]);
        let words: Vec<_> = UnitWords::new(1, Alphabet::Any).collect();
        assert_eq!(words, vec![c([0])]);
        assert_eq!(UnitWords::new(0, Alphabet::Any).count(), 0);
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &count) in catalan.iter().enumerate() {
            let words: Vec<_> = UnitWords::new(n + 1, Alphabet::Any).collect();
            assert_eq!(words.len(), count);
            assert!(words.windows(2).all(|w| w[0] < w[1]));
            assert!(words.iter().all(Composition::is_unit));
        }
    }

    #[test]
    fn unit_words_over_zero_or_k() {
        // complete binary trees with 3 internal vertices: 5 of them
        let words: Vec<_> = UnitWords::new(7, Alphabet::ZeroOr(2)).collect();
        assert_eq!(words.len(), 5);
        assert!(words.iter().all(|w| w.is_unit() && w.parts().iter().all(|&a| a == 0 || a == 2)));
        // complete ternary trees with 3 internal vertices: 12
        assert_eq!(UnitWords::new(10, Alphabet::ZeroOr(3)).count(), 12);
        // no complete binary tree has an even number of vertices
        assert_eq!(UnitWords::new(4, Alphabet::ZeroOr(2)).count(), 0);
    }

    /// Number of ways to write `word` as units followed by a positive tail,
    /// trying every split point.
    fn count_decompositions(word: &[u64]) -> usize {
        let mut count = usize::from(Composition::from(word.to_vec()).is_positive());
        for cut in 1..=word.len() {
            if Composition::from(word[..cut].to_vec()).is_unit() {
                count += count_decompositions(&word[cut..]);
            }
        }
        count
    }

    fn compositions_of(m: u64, parts: usize, out: &mut Vec<Vec<u64>>, current: &mut Vec<u64>) {
        if current.len() == parts {
            if m == 0 {
                out.push(current.clone());
            }
            return;
        }
        for a in 0..=m {
            current.push(a);
            compositions_of(m - a, parts, out, current);
            current.pop();
        }
    }

    #[test]
    fn decomposition_is_unique_exhaustively() {
        let mut checked = 0;
        for m in 0..=10 {
            for parts in 0..=10 {
                let mut all = Vec::new();
                compositions_of(m, parts, &mut all, &mut Vec::new());
                for word in all {
                    assert_eq!(count_decompositions(&word), 1, "{word:?}");
                    let comp = Composition::from(word);
                    let d = comp.fundamental_decomposition();
                    assert!(d.units.iter().all(Composition::is_unit));
                    assert!(d.tail.is_positive());
                    assert_eq!(d.concat(), comp);
                    checked += 1;
                }
            }
        }
        assert!(checked > 300_000);
    }

    proptest! {
        #[test]
        fn decomposition_concatenates_back(parts in proptest::collection::vec(0u64..5, 0..40)) {
            let comp = Composition::from(parts);
            let d = comp.fundamental_decomposition();
            prop_assert_eq!(d.concat(), comp.clone());
            prop_assert!(d.units.iter().all(Composition::is_unit));
            prop_assert!(d.tail.is_positive());
            prop_assert_eq!(comp.f_statistic(), d.tail.f_statistic() - d.unit_count() as i64);
        }

        #[test]
        fn unit_decomposes_to_itself(parts in proptest::collection::vec(0u64..4, 1..40)) {
            for unit in Composition::from(parts).fundamental_decomposition().units {
                prop_assert_eq!(unit.f_statistic(), -1);
                let d = unit.fundamental_decomposition();
                prop_assert_eq!(d.units, vec![unit]);
                prop_assert!(d.tail.is_empty());
            }
        }

        #[test]
        fn text_round_trip(parts in proptest::collection::vec(0u64..1000, 0..20)) {
            let comp = Composition::from(parts);
            prop_assert_eq!(comp.to_string().parse::<Composition>().unwrap(), comp);
        }
    }
}
