//! Arbitrary-precision binomials and the closed-form vertex counts.
//!
//! Every count is a [`BigCount`]; out-of-range binomials are zero, which lets
//! the alternating and telescoping sums below run off the end of their
//! support without special cases. Divisions that are exact by theory are
//! checked and reported as [`Error::Inconsistency`] when the remainder is not
//! zero.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Largest edge count accepted by [`Formulas::verify_outdegree_sequence_identity`].
pub const SEQUENCE_IDENTITY_GUARD: u64 = 30;

/// Closed-form counts parameterised by the binomial routine they are built on.
///
/// [`Formulas::STANDARD`] is the real thing. Swapping the binomial lets the
/// verification sweeps be exercised against a deliberately broken formula.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub binomial: fn(i64, i64) -> BigCount,
}

impl std::fmt::Debug for Formulas {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Formulas").finish_non_exhaustive()
    }
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas::STANDARD
    }
}

/// `C(n, m)`, or zero when `m < 0`, `n < 0` or `m > n`.
pub fn binomial(n: i64, m: i64) -> BigCount {
    if n < 0 || m < 0 || m > n {
        return BigCount::zero();
    }
    let m = m.min(n - m) as u64;
    let n = n as u64;
    let mut acc = BigCount::one();
    for j in 0..m {
        // acc = C(n, j) here, so acc * (n - j) is divisible by j + 1.
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `n! / (p_1! p_2! ...)` when the parts sum to `n`, zero otherwise.
pub fn multinomial(n: u64, parts: &[i64]) -> Result<BigCount> {
    if let Some(&bad) = parts.iter().find(|&&p| p < 0) {
        return Err(Error::NegativePart(bad));
    }
    let total: u64 = parts.iter().map(|&p| p as u64).sum();
    if total != n {
        return Ok(BigCount::zero());
    }
    let mut acc = BigCount::one();
    let mut left = n as i64;
    for &p in parts {
        acc *= binomial(left, p);
        left -= p;
    }
    Ok(acc)
}

/// All outdegree sequences `(r_0, ..., r_n)` of plane trees with `n` edges:
/// nonnegative, `sum r_j = n + 1` and `sum j * r_j = n`.
///
/// Sequences come out in lexicographic order of `(r_n, r_{n-1}, ..., r_1)`
/// descending from the star.
pub fn outdegree_sequences(n: u64) -> Vec<Vec<u64>> {
    fn fill(j: u64, edges_left: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j == 0 {
            if edges_left == 0 {
                let internal: u64 = current[1..].iter().sum();
                let mut seq = current.clone();
                seq[0] = current.len() as u64 - internal;
                out.push(seq);
            }
            return;
        }
        for r in (0..=edges_left / j).rev() {
            current[j as usize] = r;
            fill(j - 1, edges_left - r * j, current, out);
        }
        current[j as usize] = 0;
    }

    let mut out = Vec::new();
    let mut current = vec![0; n as usize + 1];
    fill(n, n, &mut current, &mut out);
    out
}

fn exact_div(num: BigCount, den: &BigCount, context: impl FnOnce() -> String) -> Result<BigCount> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!("{} is not exact", context())));
    }
    Ok(q)
}

impl Formulas {
    pub const STANDARD: Formulas = Formulas { binomial };

    pub fn binomial(&self, n: i64, m: i64) -> BigCount {
        (self.binomial)(n, m)
    }

    /// `C(2n, n) / (n + 1)`.
    pub fn catalan(&self, n: u64) -> Result<BigCount> {
        let n = n as i64;
        exact_div(
            self.binomial(2 * n, n),
            &BigCount::from((n + 1) as u64),
            || format!("catalan({n})"),
        )
    }

    /// Vertices of outdegree `i` summed over all plane trees with `n` edges:
    /// `C(2n - i - 1, n - 1)`, zero for `i > n`.
    pub fn count_plane_outdegree(&self, n: u64, i: u64) -> BigCount {
        if i > n {
            return BigCount::zero();
        }
        let (n, i) = (n as i64, i as i64);
        self.binomial(2 * n - i - 1, n - 1)
    }

    /// Vertices with exactly `i` nonempty slots summed over all k-ary trees
    /// with `n` edges: `C(k, i) * C(kn, n - i)`.
    pub fn count_kary_outdegree(&self, n: u64, k: u64, i: u64) -> BigCount {
        if i > k || i > n {
            return BigCount::zero();
        }
        let (n, k, i) = (n as i64, k as i64, i as i64);
        self.binomial(k, i) * self.binomial(k * n, n - i)
    }

    /// Vertices of degree `i` (outdegree, plus one away from the root) over
    /// all plane trees with `n` edges: `2 * C(2n - i - 1, n - 1)`.
    pub fn count_plane_degree(&self, n: u64, i: u64) -> BigCount {
        self.count_plane_outdegree(n, i) * 2u32
    }

    /// Fine number in the indexing that pairs `F_{n-1}` with `n`-edge trees:
    /// `F_0 = 1, F_1 = 0, F_2 = 1, F_3 = 2, F_4 = 6`. This is OEIS A000957
    /// shifted by one, i.e. `fine_number(n) = A000957(n + 1)`.
    pub fn fine_number(&self, n: u64) -> BigCount {
        let n = n as i64;
        let mut three_sum = BigCount::zero();
        // C(2n - 2j, n) vanishes once 2n - 2j < n.
        let mut j = 0;
        while 2 * n - 2 * j >= n {
            three_sum += self.binomial(2 * n - 2 * j, n);
            j += 1;
        }
        three_sum *= 3u32;
        let twice = self.binomial(2 * n + 1, n) * 2u32;
        // The difference is nonnegative for the true binomial; a broken one
        // must not panic here.
        if three_sum < twice {
            return BigCount::zero();
        }
        three_sum - twice
    }

    /// Odd-outdegree vertices over all plane trees with `n` edges, checked
    /// against `(2 C(2n-1, n) + F_{n-1}) / 3`.
    pub fn count_odd_outdegree(&self, n: u64) -> Result<BigCount> {
        let direct: BigCount = (1..=n)
            .step_by(2)
            .map(|i| self.count_plane_outdegree(n, i))
            .sum();
        let fine_side = self.binomial(2 * n as i64 - 1, n as i64) * 2u32
            + self.fine_number(n.saturating_sub(1));
        let relation = exact_div(fine_side, &BigCount::from(3u32), || {
            format!("odd-outdegree relation at n={n}")
        })?;
        if relation != direct {
            return Err(Error::Inconsistency(format!(
                "odd-outdegree count at n={n}: direct sum {direct} but Fine relation gives {relation}"
            )));
        }
        Ok(direct)
    }

    /// Returns `(lhs, rhs)` where `lhs` sums `r_i / (n+1) * multinomial(n+1; r)`
    /// over all outdegree sequences and `rhs` is the closed-form count.
    pub fn verify_outdegree_sequence_identity(&self, n: u64, i: u64) -> Result<(BigCount, BigCount)> {
        if n > SEQUENCE_IDENTITY_GUARD {
            return Err(Error::GuardExceeded {
                what: "outdegree-sequence enumeration",
                value: n,
                guard: SEQUENCE_IDENTITY_GUARD,
            });
        }
        let vertices = BigCount::from(n + 1);
        let mut lhs = BigCount::zero();
        for seq in outdegree_sequences(n) {
            let Some(&r_i) = seq.get(i as usize) else {
                continue;
            };
            if r_i == 0 {
                continue;
            }
            let parts: Vec<i64> = seq.iter().map(|&r| r as i64).collect();
            let term = multinomial(n + 1, &parts)? * r_i;
            lhs += exact_div(term, &vertices, || format!("sequence term {seq:?}"))?;
        }
        Ok((lhs, self.count_plane_outdegree(n, i)))
    }
}

pub fn catalan(n: u64) -> BigCount {
    Formulas::STANDARD
        .catalan(n)
        .expect("C(2n, n) is divisible by n + 1")
}

pub fn count_plane_outdegree(n: u64, i: u64) -> BigCount {
    Formulas::STANDARD.count_plane_outdegree(n, i)
}

pub fn count_kary_outdegree(n: u64, k: u64, i: u64) -> BigCount {
    Formulas::STANDARD.count_kary_outdegree(n, k, i)
}

pub fn count_plane_degree(n: u64, i: u64) -> BigCount {
    Formulas::STANDARD.count_plane_degree(n, i)
}

pub fn fine_number(n: u64) -> BigCount {
    Formulas::STANDARD.fine_number(n)
}

pub fn count_odd_outdegree(n: u64) -> Result<BigCount> {
    Formulas::STANDARD.count_odd_outdegree(n)
}

pub fn verify_outdegree_sequence_identity(n: u64, i: u64) -> Result<(BigCount, BigCount)> {
    Formulas::STANDARD.verify_outdegree_sequence_identity(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    fn pascal(rows: usize) -> Vec<Vec<BigCount>> {
        let mut tri: Vec<Vec<BigCount>> = vec![vec![big(1)]];
        for r in 1..=rows {
            let prev = &tri[r - 1];
            let mut row = vec![big(1); r + 1];
            for m in 1..r {
                row[m] = &prev[m - 1] + &prev[m];
            }
            tri.push(row);
        }
        tri
    }

    fn factorial(n: u64) -> BigCount {
        (1..=n).fold(big(1), |acc, j| acc * j)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal(60);
        assert_eq!(tri[24][6], big(134596));
        assert_eq!(binomial(24, 6), big(134596));
        for (n, row) in tri.iter().enumerate() {
            for (m, value) in row.iter().enumerate() {
                assert_eq!(&binomial(n as i64, m as i64), value, "C({n},{m})");
            }
        }
    }

    #[test]
    fn multinomial_matches_factorials() {
        let expected = factorial(4) / (factorial(2) * factorial(1) * factorial(1));
        assert_eq!(expected, big(12));
        assert_eq!(multinomial(4, &[2, 1, 1, 0]).unwrap(), expected);
        assert_eq!(multinomial(4, &[4]).unwrap(), big(1));
        assert_eq!(multinomial(4, &[1, 3]).unwrap(), factorial(4) / factorial(3));
        assert_eq!(multinomial(4, &[1, 1]).unwrap(), big(0));
        assert_eq!(multinomial(4, &[5, -1]), Err(Error::NegativePart(-1)));
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan(10), big(16796));
    }

    #[test]
    fn plane_counts() {
        assert_eq!(count_plane_outdegree(2, 0), big(3));
        assert_eq!(count_plane_outdegree(2, 2), big(1));
        assert_eq!(count_plane_outdegree(14, 2), binomial(25, 13));
        assert_eq!(count_plane_outdegree(3, 4), big(0));
    }

    #[test]
    fn kary_counts() {
        assert_eq!(count_kary_outdegree(2, 2, 1), big(8));
        assert_eq!(count_kary_outdegree(3, 2, 1), big(30));
        for k in 1..8 {
            assert_eq!(count_kary_outdegree(1, k, 1), big(k));
        }
        assert_eq!(count_kary_outdegree(2, 2, 3), big(0));
        assert_eq!(count_kary_outdegree(1, 3, 2), big(0));
    }

    #[test]
    fn degree_counts() {
        // path (1,1,0): root and leaf; cherry (2,0,0): two leaves
        assert_eq!(count_plane_degree(2, 1), big(4));
        assert_eq!(count_plane_degree(2, 3), big(0));
        // degree-2 vertices over the five 3-edge trees: 2 + 0 + 2 + 2 + 0
        assert_eq!(count_plane_degree(3, 2), big(6));
    }

    #[test]
    fn fine_numbers() {
        let expected = [1u64, 0, 1, 2, 6, 18, 57, 186, 622, 2120];
        for (n, &f) in expected.iter().enumerate() {
            assert_eq!(fine_number(n as u64), big(f), "F_{n}");
        }
        // 3 (C(4,2) + C(2,2)) - 2 C(5,2)
        assert_eq!(fine_number(2), big(21 - 20));
        assert_eq!(fine_number(3), big(72 - 70));
    }

    #[test]
    fn odd_outdegree_counts() {
        assert_eq!(count_odd_outdegree(1).unwrap(), big(1));
        assert_eq!(count_odd_outdegree(2).unwrap(), big(2));
        assert_eq!(count_odd_outdegree(3).unwrap(), big(7));
        for n in 1..=14 {
            count_odd_outdegree(n).unwrap();
        }
    }

    #[test]
    fn outdegree_sequences_small() {
        assert_eq!(outdegree_sequences(1), vec![vec![1, 1]]);
        let three = outdegree_sequences(3);
        assert_eq!(three.len(), 3);
        for s in [[3, 0, 0, 1], [2, 1, 1, 0], [1, 3, 0, 0]] {
            assert!(three.contains(&s.to_vec()), "{s:?}");
        }
        assert_eq!(outdegree_sequences(4).len(), 5);
    }

    #[test]
    fn sequence_identity_examples() {
        assert_eq!(verify_outdegree_sequence_identity(3, 1).unwrap(), (big(6), big(6)));
        assert_eq!(verify_outdegree_sequence_identity(1, 1).unwrap(), (big(1), big(1)));
        assert_eq!(verify_outdegree_sequence_identity(4, 0).unwrap(), (big(35), big(35)));
        assert_eq!(verify_outdegree_sequence_identity(4, 9).unwrap(), (big(0), big(0)));
        assert!(matches!(
            verify_outdegree_sequence_identity(31, 0),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn row_and_edge_sums() {
        for n in 1..=20u64 {
            let row: BigCount = (0..=n).map(|i| count_plane_outdegree(n, i)).sum();
            assert_eq!(row, catalan(n) * (n + 1));
            assert_eq!(row, binomial(2 * n as i64, n as i64));
            let edges: BigCount = (0..=n).map(|i| count_plane_outdegree(n, i) * i).sum();
            assert_eq!(edges, catalan(n) * n);
            for i in 1..=n + 2 {
                assert_eq!(count_plane_degree(n, i), count_plane_outdegree(n, i) * 2u32);
            }
        }
        for k in 1..=6u64 {
            for n in 1..=10u64 {
                let trees = binomial((k * (n + 1)) as i64, n as i64) / (n + 1);
                let row: BigCount = (0..=k).map(|i| count_kary_outdegree(n, k, i)).sum();
                assert_eq!(row, binomial((k * n + k) as i64, n as i64));
                assert_eq!(row, &trees * (n + 1));
                let edges: BigCount = (0..=k).map(|i| count_kary_outdegree(n, k, i) * i).sum();
                assert_eq!(edges, trees * n);
            }
        }
    }

    #[test]
    fn large_inputs_do_not_overflow() {
        let c = catalan(200);
        assert!(c.bits() > 380);
        assert_eq!(count_plane_outdegree(200, 0), binomial(399, 199));
    }

    proptest! {
        #[test]
        fn pascal_recurrence(n in 1i64..200, m in -3i64..205) {
            prop_assert_eq!(binomial(n, m), binomial(n - 1, m) + binomial(n - 1, m - 1));
        }

        #[test]
        fn binomial_symmetry(n in 0i64..300, m in 0i64..300) {
            prop_assume!(m <= n);
            prop_assert_eq!(binomial(n, m), binomial(n, n - m));
        }
    }
}
