//! Wiring diagrams of reduced words in `S_m` and their chamber sets.
//!
//! Lines are labeled `1..m` from the bottom on the left; the letter `i`
//! (1-based) crosses the lines at levels `i` and `i + 1`.  The chamber
//! between levels `p` and `p + 1` is recorded by the labels below it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChamberSet {
    pub j: BTreeSet<usize>,
}

impl ChamberSet {
    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    /// `J = {1, ..., k}`; the corresponding minor of a unipotent element is 1.
    pub fn is_initial(&self) -> bool {
        self.j.iter().copied().eq(1..=self.j.len())
    }

    /// Some `a` in `J` has its mirror `m + 1 - a` outside `J`.
    pub fn is_asymmetric(&self, m: usize) -> bool {
        self.j.iter().any(|&a| !self.j.contains(&(m + 1 - a)))
    }

    pub fn rows0(&self) -> Vec<usize> {
        self.j.iter().map(|a| a - 1).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Level (1-based, from the bottom) of the lower strand.
    pub level: usize,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PseudolineArrangement {
    pub m: usize,
    pub word: Vec<usize>,
    pub crossings: Vec<Crossing>,
    /// Left-boundary chambers first, then one chamber per crossing.
    pub chambers: Vec<ChamberSet>,
}

impl PseudolineArrangement {
    pub fn new(word: &[usize], m: usize) -> Result<Self> {
        let mut levels: Vec<usize> = (1..=m).collect();
        let mut chambers: Vec<ChamberSet> = (1..m).map(|p| ChamberSet { j: (1..=p).collect() }).collect();
        let mut crossings = Vec::with_capacity(word.len());
        for &i in word {
            if i == 0 || i >= m {
                return Err(Error::IndexOutOfRange { index: i, bound: m - 1 });
            }
            let (lo, hi) = (levels[i - 1], levels[i]);
            if lo > hi {
                return Err(Error::NonReduced(format!("lines {hi} and {lo} cross twice in {word:?}")));
            }
            levels.swap(i - 1, i);
            crossings.push(Crossing { level: i, lower: lo, upper: hi });
            chambers.push(ChamberSet { j: levels[..i].iter().copied().collect() });
        }
        Ok(PseudolineArrangement { m, word: word.to_vec(), crossings, chambers })
    }

    /// Labels by level (bottom first) at the right end.
    pub fn final_levels(&self) -> Vec<usize> {
        let mut levels: Vec<usize> = (1..=self.m).collect();
        for &i in &self.word {
            levels.swap(i - 1, i);
        }
        levels
    }

    pub fn is_longest(&self) -> bool {
        self.word.len() == self.m * (self.m - 1) / 2
    }

    /// Chambers whose minor is not identically 1.
    pub fn nontrivial_chambers(&self) -> Vec<ChamberSet> {
        self.chambers.iter().filter(|c| !c.is_initial()).cloned().collect()
    }
}

/// Chamber sets of the wiring diagram of a reduced word.
pub fn chamber_sets(word: &[usize], m: usize) -> Result<Vec<ChamberSet>> {
    Ok(PseudolineArrangement::new(word, m)?.chambers)
}

/// Inversion count of the permutation of a word, `None` if the word is not reduced.
pub fn reduced_length(word: &[usize], m: usize) -> Option<usize> {
    PseudolineArrangement::new(word, m).ok().map(|a| a.word.len())
}

/// `1, 21, 321, ...`: a reduced word of the longest element of `S_m`.
pub fn longest_word(m: usize) -> Vec<usize> {
    (1..m).flat_map(|j| (1..=j).rev()).collect()
}

/// `w = (s_1 s_{2n})(s_2 s_{2n-1}) ... (s_n s_{n+1}) s_n`.
pub fn bn_word(n: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..=n).flat_map(|k| [k, 2 * n + 1 - k]).collect();
    w.push(n);
    w
}

pub fn bn_word_power(n: usize) -> Vec<usize> {
    bn_word(n).repeat(n)
}

/// Every chamber of the diagram of `w^n` in `S_{2n+1}` is asymmetric.
pub fn claim_check(n: usize) -> Result<bool> {
    if !(2..=6).contains(&n) {
        return Err(Error::Precondition(format!("n = {n} outside 2..=6")));
    }
    let m = 2 * n + 1;
    let arr = PseudolineArrangement::new(&bn_word_power(n), m)?;
    Ok(arr.is_longest() && arr.chambers.iter().all(|c| c.is_asymmetric(m)))
}

/// Restriction of `eps~_{j_1} + ... + eps~_{j_k}` to the torus of `SO_{2n+1}`.
pub fn restricted_weight(j: &ChamberSet, n: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for &a in &j.j {
        if a <= n {
            w[a - 1] += 1;
        } else if a >= n + 2 {
            w[2 * n + 1 - a] -= 1;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[usize]]) -> Vec<ChamberSet> {
        v.iter().map(|s| ChamberSet { j: s.iter().copied().collect() }).collect()
    }

    #[test]
    fn small_diagrams() {
        assert_eq!(chamber_sets(&[1], 2).unwrap(), sets(&[&[1], &[2]]));
        let got = chamber_sets(&[1, 2, 1], 3).unwrap();
        assert_eq!(got, sets(&[&[1], &[1, 2], &[2], &[2, 3], &[3]]));
        let arr = PseudolineArrangement::new(&[1, 2, 1], 3).unwrap();
        assert_eq!(arr.chambers.len(), 2 + 3);
        assert_eq!(arr.final_levels(), vec![3, 2, 1]);
        assert!(chamber_sets(&[1, 1], 3).is_err());
        assert!(chamber_sets(&[3], 3).is_err());
    }

    #[test]
    fn bn_words() {
        assert_eq!(bn_word(2), vec![1, 4, 2, 3, 2]);
        for n in 2..=6 {
            let w = bn_word_power(n);
            assert_eq!(reduced_length(&w, 2 * n + 1), Some(n * (2 * n + 1)), "n={n}");
            assert!(claim_check(n).unwrap(), "n={n}");
        }
        assert_eq!(bn_word_power(3).len(), 21);
    }

    #[test]
    fn asymmetry_matches_restricted_weight() {
        for n in 2..=5 {
            let m = 2 * n + 1;
            for mask in 1u32..(1 << m) - 1 {
                let c = ChamberSet { j: (1..=m).filter(|a| mask & (1 << (a - 1)) != 0).collect() };
                let nonzero = restricted_weight(&c, n).iter().any(|&x| x != 0);
                assert_eq!(c.is_asymmetric(m), nonzero);
            }
        }
    }

    #[test]
    fn longest_words_are_reduced() {
        for m in 2..=9 {
            let w = longest_word(m);
            let arr = PseudolineArrangement::new(&w, m).unwrap();
            assert!(arr.is_longest());
            assert_eq!(arr.chambers.len(), m - 1 + w.len());
        }
    }
}
