//! Finite Weyl groups acting on the root lattice.
//!
//! An element is stored with its action matrix (column `j` is the image of
//! `alpha_j` in simple-root coordinates) and the lexicographically smallest
//! reduced word.  Equality and hashing look at the action only.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::rootsys::{ParabolicData, RootSystem};
use crate::{Error, Result};

#[derive(Clone)]
pub struct WeylElement {
    rank: usize,
    word: Vec<usize>,
    action: Vec<i64>,
    inverse: Vec<i64>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{}]", self.word_string())
    }
}

fn matmul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn column_negative(n: usize, m: &[i64], j: usize) -> bool {
    (0..n).map(|i| m[i * n + j]).sum::<i64>() < 0
}

impl WeylElement {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduced word (0-based indices), leftmost factor first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Row-major action matrix.
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn action_rows(&self) -> Vec<Vec<i64>> {
        self.action.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.action[i * n + j] * v[j]).sum()).collect()
    }

    pub fn apply_inverse(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.inverse[i * n + j] * v[j]).sum()).collect()
    }

    /// `w alpha_i < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        column_negative(self.rank, &self.action, i)
    }

    /// `w^{-1} alpha_i < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        column_negative(self.rank, &self.inverse, i)
    }

    /// Space-separated 1-based word; the identity prints as the empty string.
    pub fn word_string(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|i| (i + 1).to_string()).collect();
        parts.join(" ")
    }

    /// Label used in reports: the word, or `e` for the identity.
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word_string()
        }
    }
}

/// Parses a 1-based word such as `"1 2 1"`, `"1,2,1"` or `"e"` into 0-based indices.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let k: usize = t.parse().map_err(|_| Error::Parse(format!("bad word letter {t:?}")))?;
            if k == 0 || k > rank {
                return Err(Error::IndexOutOfRange { index: k, bound: rank });
            }
            Ok(k - 1)
        })
        .collect()
}

/// Cosets `W / W_P`: minimal representatives and the PD involution.
#[derive(Debug)]
pub struct CosetData {
    pub parabolic: ParabolicData,
    /// Sorted by length, then word.
    pub min_reps: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
    pub w_p: WeylElement,
    pub w0_p: WeylElement,
    pub pd_table: Vec<usize>,
}

impl CosetData {
    pub fn len(&self) -> usize {
        self.min_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.min_reps.is_empty()
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn position(&self, w: &WeylElement) -> Result<usize> {
        self.index_of(w).ok_or_else(|| Error::NotMinimalRepresentative(w.label()))
    }
}

pub struct WeylGroup {
    rs: Arc<RootSystem>,
    simple: Vec<Vec<i64>>,
    elements: OnceLock<Vec<WeylElement>>,
    cosets: Mutex<HashMap<BTreeSet<usize>, Arc<CosetData>>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup({})", self.rs.name())
    }
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = rs.rank();
        let simple = (0..n)
            .map(|i| {
                let mut m = vec![0; n * n];
                for j in 0..n {
                    let img = rs.reflect_root(i, &rs.simple_root(j));
                    for (r, x) in img.into_iter().enumerate() {
                        m[r * n + j] = x;
                    }
                }
                m
            })
            .collect();
        WeylGroup { rs, simple, elements: OnceLock::new(), cosets: Mutex::new(HashMap::new()) }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn from_matrices(&self, action: Vec<i64>, inverse: Vec<i64>) -> WeylElement {
        let n = self.rank();
        let mut word = Vec::new();
        let (mut a, mut inv) = (action.clone(), inverse.clone());
        // strip the smallest left descent each round
        while let Some(i) = (0..n).find(|&i| column_negative(n, &inv, i)) {
            word.push(i);
            a = matmul(n, &self.simple[i], &a);
            inv = matmul(n, &inv, &self.simple[i]);
        }
        debug_assert!(a.iter().enumerate().all(|(k, &x)| x == i64::from(k / n == k % n)));
        WeylElement { rank: n, word, action, inverse }
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        let id: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        WeylElement { rank: n, word: Vec::new(), action: id.clone(), inverse: id }
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        WeylElement { rank: self.rank(), word: vec![i], action: self.simple[i].clone(), inverse: self.simple[i].clone() }
    }

    /// Product of the simple reflections in `word` (need not be reduced).
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let n = self.rank();
        let mut w = self.identity();
        for &i in word {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
            w = self.mult(&w, &self.simple(i));
        }
        Ok(w)
    }

    /// Like [`from_word`](Self::from_word) but rejects non-reduced words.
    pub fn from_reduced_word(&self, word: &[usize]) -> Result<WeylElement> {
        let w = self.from_word(word)?;
        if w.length() != word.len() {
            return Err(Error::NonReduced(format!("{word:?} has length {}", w.length())));
        }
        Ok(w)
    }

    pub fn parse(&self, s: &str) -> Result<WeylElement> {
        self.from_word(&parse_word(s, self.rank())?)
    }

    pub fn mult(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let n = self.rank();
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        self.from_matrices(matmul(n, &a.action, &b.action), matmul(n, &b.inverse, &a.inverse))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        self.from_matrices(w.inverse.clone(), w.action.clone())
    }

    /// `r_alpha` for the positive root with index `k`.
    pub fn reflection(&self, k: usize) -> WeylElement {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for j in 0..n {
            let img = self.rs.reflect_by_root(k, &self.rs.simple_root(j));
            for (r, x) in img.into_iter().enumerate() {
                m[r * n + j] = x;
            }
        }
        self.from_matrices(m.clone(), m)
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.rs.positive_roots().iter().filter(|b| w.apply(b).iter().sum::<i64>() < 0).count()
    }

    /// All of `W`, sorted by length then word.
    pub fn elements(&self) -> &[WeylElement] {
        self.elements.get_or_init(|| {
            let n = self.rank();
            let mut seen: HashSet<WeylElement> = HashSet::new();
            let mut queue = VecDeque::from([self.identity()]);
            seen.insert(self.identity());
            while let Some(w) = queue.pop_front() {
                for i in 0..n {
                    let v = self.mult(&self.simple(i), &w);
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
            let mut all: Vec<WeylElement> = seen.into_iter().collect();
            all.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word.cmp(&b.word)));
            all
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    fn longest_in(&self, nodes: &[usize]) -> WeylElement {
        let mut w = self.identity();
        while let Some(&i) = nodes.iter().find(|&&i| !w.has_right_descent(i)) {
            w = self.mult(&w, &self.simple(i));
        }
        w
    }

    pub fn longest(&self) -> WeylElement {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.longest_in(&all)
    }

    /// Longest element `w_P` of the parabolic subgroup `W_P`.
    pub fn longest_parabolic(&self, p: &ParabolicData) -> WeylElement {
        let nodes: Vec<usize> = p.i_p().iter().copied().collect();
        self.longest_in(&nodes)
    }

    /// `w alpha_i > 0` for every `i` in `I_P`.
    pub fn is_min_rep(&self, w: &WeylElement, p: &ParabolicData) -> bool {
        p.i_p().iter().all(|&i| !w.has_right_descent(i))
    }

    /// The `W^P` factor in `w = pi_P(w) u` with `u` in `W_P`.
    pub fn pi_p(&self, w: &WeylElement, p: &ParabolicData) -> WeylElement {
        let mut w = w.clone();
        while let Some(&i) = p.i_p().iter().find(|&&i| w.has_right_descent(i)) {
            w = self.mult(&w, &self.simple(i));
        }
        w
    }

    /// Minimal representative of `w_0 w W_P`.
    pub fn pd(&self, w: &WeylElement, p: &ParabolicData) -> Result<WeylElement> {
        if !self.is_min_rep(w, p) {
            return Err(Error::NotMinimalRepresentative(w.label()));
        }
        Ok(self.pi_p(&self.mult(&self.longest(), w), p))
    }

    /// Pairs `(k, w r_alpha)` with `alpha = positive_roots[k]` in `Delta_+^P`,
    /// `w r_alpha` covering `w` and lying in `W^P`.
    pub fn bruhat_covers_up(&self, w: &WeylElement, p: &ParabolicData) -> Result<Vec<(usize, WeylElement)>> {
        if !self.is_min_rep(w, p) {
            return Err(Error::NotMinimalRepresentative(w.label()));
        }
        let mut out = Vec::new();
        for &k in p.delta_plus_p() {
            // w r_a > w iff w(alpha) > 0
            if w.apply(&self.rs.positive_roots()[k]).iter().sum::<i64>() < 0 {
                continue;
            }
            let v = self.mult(w, &self.reflection(k));
            if v.length() == w.length() + 1 && self.is_min_rep(&v, p) {
                out.push((k, v));
            }
        }
        Ok(out)
    }

    /// `W^P` with its PD table; memoized per parabolic.
    pub fn cosets(&self, p: &ParabolicData) -> Arc<CosetData> {
        let key = p.i_p().clone();
        if let Some(c) = self.cosets.lock().unwrap().get(&key) {
            return c.clone();
        }
        let c = Arc::new(self.build_cosets(p));
        self.cosets.lock().unwrap().entry(key).or_insert(c).clone()
    }

    fn build_cosets(&self, p: &ParabolicData) -> CosetData {
        let n = self.rank();
        let mut seen: HashSet<WeylElement> = HashSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..n {
                if w.has_left_descent(i) {
                    continue;
                }
                let v = self.mult(&self.simple(i), &w);
                if self.is_min_rep(&v, p) && seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let mut min_reps: Vec<WeylElement> = seen.into_iter().collect();
        min_reps.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word.cmp(&b.word)));
        let index: HashMap<WeylElement, usize> = min_reps.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let w0 = self.longest();
        let pd_table = min_reps
            .iter()
            .map(|w| index[&self.pi_p(&self.mult(&w0, w), p)])
            .collect();
        CosetData {
            parabolic: p.clone(),
            w_p: self.longest_parabolic(p),
            w0_p: self.pi_p(&w0, p),
            min_reps,
            index,
            pd_table,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLetter;

    fn group(t: TypeLetter, n: usize) -> WeylGroup {
        WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap()))
    }

    #[test]
    fn group_orders() {
        for (t, n, order) in [
            (TypeLetter::A, 1, 2),
            (TypeLetter::A, 3, 24),
            (TypeLetter::B, 3, 48),
            (TypeLetter::C, 3, 48),
            (TypeLetter::D, 4, 192),
            (TypeLetter::G, 2, 12),
            (TypeLetter::F, 4, 1152),
        ] {
            let w = group(t, n);
            assert_eq!(w.order(), order, "{t}{n}");
            assert_eq!(w.longest().length(), w.root_system().num_positive_roots());
        }
    }

    #[test]
    fn mult_basics() {
        let w = group(TypeLetter::A, 2);
        let s1 = w.simple(0);
        let s2 = w.simple(1);
        let e = w.identity();
        assert_eq!(w.mult(&e, &s2), s2);
        assert_eq!(w.mult(&s1, &s1), e);
        let s12 = w.mult(&s1, &s2);
        assert_eq!(s12.length(), 2);
        assert_eq!(w.inversion_count(&s12), 2);
        assert_eq!(s12.word(), &[0, 1]);
        // braid relation and canonical word
        let a = w.from_word(&[0, 1, 0]).unwrap();
        let b = w.from_word(&[1, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.word(), &[0, 1, 0]);
        assert!(w.from_reduced_word(&[0, 0]).is_err());
    }

    #[test]
    fn lengths_match_inversions() {
        let w = group(TypeLetter::B, 3);
        for x in w.elements() {
            assert_eq!(x.length(), w.inversion_count(x));
            assert_eq!(w.mult(x, &w.inverse(x)), w.identity());
        }
    }

    #[test]
    fn covers_of_identity_and_top() {
        let w = group(TypeLetter::A, 2);
        let rs = w.root_system().clone();
        let b = ParabolicData::borel(rs.clone());
        let covers = w.bruhat_covers_up(&w.identity(), &b).unwrap();
        let got: Vec<(Vec<i64>, WeylElement)> =
            covers.into_iter().map(|(k, v)| (rs.positive_roots()[k].clone(), v)).collect();
        assert_eq!(got, vec![(vec![1, 0], w.simple(0)), (vec![0, 1], w.simple(1))]);
        assert!(w.bruhat_covers_up(&w.longest(), &b).unwrap().is_empty());
        let p = rs.parabolic(&[1]).unwrap();
        assert!(w.bruhat_covers_up(&w.simple(1), &p).is_err());
        let covers = w.bruhat_covers_up(&w.simple(0), &p).unwrap();
        // brute force: elements of length 2 in W^P of the form s_1 r_alpha
        let expect: Vec<WeylElement> = w
            .elements()
            .iter()
            .filter(|v| v.length() == 2 && w.is_min_rep(v, &p))
            .filter(|v| (0..rs.num_positive_roots()).any(|k| w.mult(&w.simple(0), &w.reflection(k)) == **v))
            .cloned()
            .collect();
        assert_eq!(covers.into_iter().map(|(_, v)| v).collect::<Vec<_>>(), expect);
    }

    #[test]
    fn pi_and_pd() {
        let w = group(TypeLetter::C, 3);
        let rs = w.root_system().clone();
        for p in ParabolicData::all(&rs) {
            let cos = w.cosets(&p);
            let wp_size = w.elements().iter().filter(|x| x.word().iter().all(|i| p.i_p().contains(i))).count();
            assert_eq!(cos.len() * wp_size, w.order());
            assert_eq!(w.pi_p(&w.longest(), &p), cos.w0_p);
            assert_eq!(w.pi_p(&cos.w_p, &p), w.identity());
            let e = cos.index_of(&w.identity()).unwrap();
            assert_eq!(cos.min_reps[cos.pd_table[e]], cos.w0_p);
            for (k, x) in cos.min_reps.iter().enumerate() {
                assert_eq!(w.pi_p(x, &p), *x);
                assert_eq!(cos.pd_table[cos.pd_table[k]], k);
                let d = &cos.min_reps[cos.pd_table[k]];
                assert_eq!(d.length(), w.longest().length() - cos.w_p.length() - x.length());
            }
            for x in w.elements() {
                let head = w.pi_p(x, &p);
                let tail = w.mult(&w.inverse(&head), x);
                assert!(tail.word().iter().all(|i| p.i_p().contains(i)));
                assert_eq!(head.length() + tail.length(), x.length());
            }
        }
        let a1 = group(TypeLetter::A, 1);
        let b = ParabolicData::borel(a1.root_system().clone());
        assert_eq!(a1.pd(&a1.simple(0), &b).unwrap(), a1.identity());
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_word("1 2 1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("e", 2).unwrap(), Vec::<usize>::new());
        assert!(parse_word("3", 2).is_err());
        assert!(parse_word("x", 2).is_err());
    }
}
