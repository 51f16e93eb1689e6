//! Root data for the finite crystallographic types.
//!
//! Roots are stored in the simple-root basis and coroots in the simple-coroot
//! basis; `cartan[i][j] = <alpha_i^vee, alpha_j>`.  Internal labeling is
//! Bourbaki.  [`RootSystem::reversed_labeling`] reverses the node order for types
//! C and D, which puts the long simple root of `C_n` at index 1.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::ExactMatrix;
use crate::rat::{self, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for TypeLetter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLetter::A),
            "B" => Ok(TypeLetter::B),
            "C" => Ok(TypeLetter::C),
            "D" => Ok(TypeLetter::D),
            "E" => Ok(TypeLetter::E),
            "F" => Ok(TypeLetter::F),
            "G" => Ok(TypeLetter::G),
            other => Err(Error::InvalidType(format!("unknown type letter {other:?}"))),
        }
    }
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Labeling {
    Bourbaki,
    /// Node order reversed (types C and D only).
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    type_letter: TypeLetter,
    rank: usize,
    labeling: Labeling,
    cartan: Vec<Vec<i64>>,
    /// `d_i = |alpha_i|^2 / 2`, normalised so the short roots have `d = 1`.
    sym: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    theta: usize,
    /// Simple roots in an orthonormal `epsilon` basis, when one is standard.
    epsilon: Option<Vec<Vec<i64>>>,
}

fn supported(t: TypeLetter, n: usize) -> bool {
    match t {
        TypeLetter::A => (1..=8).contains(&n),
        TypeLetter::B | TypeLetter::C => (2..=6).contains(&n),
        TypeLetter::D => (4..=6).contains(&n),
        TypeLetter::E => n == 6 || n == 7,
        TypeLetter::F => n == 4,
        TypeLetter::G => n == 2,
    }
}

fn bourbaki_cartan(t: TypeLetter, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t {
        TypeLetter::A | TypeLetter::B | TypeLetter::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        TypeLetter::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        TypeLetter::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        TypeLetter::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        TypeLetter::G => link(0, 1),
    }
    match t {
        // alpha_n short
        TypeLetter::B => a[n - 1][n - 2] = -2,
        // alpha_n long
        TypeLetter::C => a[n - 2][n - 1] = -2,
        // alpha_1, alpha_2 long, alpha_3, alpha_4 short
        TypeLetter::F => a[2][1] = -2,
        // alpha_1 short, alpha_2 long
        TypeLetter::G => a[0][1] = -3,
        _ => {}
    }
    a
}

fn bourbaki_epsilon(t: TypeLetter, n: usize) -> Option<Vec<Vec<i64>>> {
    let dim = if t == TypeLetter::A { n + 1 } else { n };
    let unit = |i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let diff = |i: usize, j: usize| {
        let mut v = vec![0i64; dim];
        v[i] += 1;
        v[j] -= 1;
        v
    };
    let mut roots: Vec<Vec<i64>> = (0..n.min(dim - 1)).map(|i| diff(i, i + 1)).collect();
    match t {
        TypeLetter::A => {}
        TypeLetter::B => {
            roots.truncate(n - 1);
            roots.push(unit(n - 1));
        }
        TypeLetter::C => {
            roots.truncate(n - 1);
            let mut v = unit(n - 1);
            v[n - 1] = 2;
            roots.push(v);
        }
        TypeLetter::D => {
            roots.truncate(n - 1);
            let mut v = unit(n - 2);
            v[n - 1] = 1;
            roots.push(v);
        }
        _ => return None,
    }
    Some(roots)
}

/// Solves `d_i a_ij = d_j a_ji` on the connected Dynkin diagram.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[0] = Some(Rat::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * rat::int(a[i][j]) / rat::int(a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().map(|x| x.expect("disconnected Dynkin diagram")).collect();
    let min = d.iter().min().unwrap().clone();
    d.iter()
        .map(|x| {
            let r = x / &min;
            assert!(r.is_integer());
            r.to_integer().try_into().unwrap()
        })
        .collect()
}

impl RootSystem {
    /// Builds the root system of type `t` and rank `n` (Bourbaki labeling).
    pub fn new(t: TypeLetter, n: usize) -> Result<Self> {
        if !supported(t, n) {
            return Err(Error::InvalidType(format!(
                "{t}{n} (supported: A1-A8, B2-B6, C2-C6, D4-D6, E6, E7, F4, G2)"
            )));
        }
        let cartan = bourbaki_cartan(t, n);
        let epsilon = bourbaki_epsilon(t, n);
        Ok(Self::from_cartan(t, Labeling::Bourbaki, cartan, epsilon))
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        let t: TypeLetter = name.get(..1).unwrap_or("").parse()?;
        let n: usize = name[1..]
            .parse()
            .map_err(|_| Error::InvalidType(format!("bad rank in {name:?}")))?;
        Self::new(t, n)
    }

    fn from_cartan(
        t: TypeLetter,
        labeling: Labeling,
        cartan: Vec<Vec<i64>>,
        epsilon: Option<Vec<Vec<i64>>>,
    ) -> Self {
        let n = cartan.len();
        let sym = symmetrizer(&cartan);
        let positive_roots = enumerate_positive_roots(&cartan);
        let mut rs = RootSystem {
            type_letter: t,
            rank: n,
            labeling,
            cartan,
            sym,
            positive_roots,
            positive_coroots: Vec::new(),
            theta: 0,
            epsilon,
        };
        rs.positive_coroots = rs.positive_roots.iter().map(|r| rs.coroot_of(r)).collect();
        rs.theta = (0..rs.positive_roots.len())
            .max_by_key(|&k| rs.positive_roots[k].iter().sum::<i64>())
            .unwrap();
        rs
    }

    /// Reverses the node order.  For `C_n` this gives `alpha_1 = 2 eps_1`
    /// long and `alpha_k = eps_k - eps_{k-1}` short; for `D_n` it gives
    /// `alpha_1 = eps_1 + eps_2`, `alpha_k = eps_k - eps_{k-1}`.
    pub fn reversed_labeling(&self) -> Result<Self> {
        if !matches!(self.type_letter, TypeLetter::C | TypeLetter::D) {
            return Err(Error::InvalidType(format!(
                "reversed labeling is only defined for types C and D, not {}",
                self.type_letter
            )));
        }
        let n = self.rank;
        let order: Vec<usize> = (0..n).rev().collect();
        let cartan = (0..n).map(|i| (0..n).map(|j| self.cartan[order[i]][order[j]]).collect()).collect();
        let epsilon = self.epsilon.as_ref().map(|eps| {
            order.iter().map(|&i| eps[i].iter().rev().copied().collect()).collect()
        });
        let labeling = match self.labeling {
            Labeling::Bourbaki => Labeling::Reversed,
            Labeling::Reversed => Labeling::Bourbaki,
        };
        Ok(Self::from_cartan(self.type_letter, labeling, cartan, epsilon))
    }

    pub fn type_letter(&self) -> TypeLetter {
        self.type_letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_letter, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn theta(&self) -> &[i64] {
        &self.positive_roots[self.theta]
    }

    pub fn theta_coroot(&self) -> &[i64] {
        &self.positive_coroots[self.theta]
    }

    /// `rho` in fundamental-weight coordinates.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    pub fn coroot_index(&self, coroot: &[i64]) -> Option<usize> {
        self.positive_coroots.iter().position(|r| r == coroot)
    }

    /// `(alpha, beta)` for roots in simple-root coordinates.
    pub fn inner_roots(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (k, &bk) in b.iter().enumerate() {
                s += aj * bk * self.sym[j] * self.cartan[j][k];
            }
        }
        s
    }

    /// Coroot of a root: `alpha^vee = 2 alpha / (alpha, alpha)`.
    pub fn coroot_of(&self, root: &[i64]) -> Vec<i64> {
        let half_norm = self.inner_roots(root, root) / 2;
        root.iter()
            .zip(&self.sym)
            .map(|(&b, &d)| {
                let (q, r) = (b * d).div_rem(&half_norm);
                debug_assert_eq!(r, 0);
                q
            })
            .collect()
    }

    /// `<coroot, root>` for a coroot in coroot coordinates and a root in root coordinates.
    pub fn pair_coroot_root(&self, coroot: &[i64], root: &[i64]) -> i64 {
        let mut s = 0;
        for (j, &c) in coroot.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &b) in root.iter().enumerate() {
                s += c * b * self.cartan[j][k];
            }
        }
        s
    }

    /// `<coroot, weight>` for a weight in fundamental-weight coordinates.
    pub fn pair_coroot_weight(&self, coroot: &[i64], weight: &[i64]) -> Result<i64> {
        if coroot.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: coroot.len() });
        }
        if weight.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: weight.len() });
        }
        Ok(coroot.iter().zip(weight).map(|(a, b)| a * b).sum())
    }

    /// `<coroot, omega_i>`, i.e. the `alpha_i^vee` coefficient.
    pub fn pairing(&self, coroot: &[i64], weight_index: usize) -> Result<i64> {
        if coroot.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: coroot.len() });
        }
        coroot
            .get(weight_index)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: weight_index, bound: self.rank })
    }

    /// Action of `s_i` on a root-lattice vector.
    pub fn reflect_root(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let c: i64 = (0..self.rank).map(|k| self.cartan[i][k] * v[k]).sum();
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// Action of `s_i` on a coroot-lattice vector.
    pub fn reflect_coroot(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let c: i64 = (0..self.rank).map(|k| v[k] * self.cartan[k][i]).sum();
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// Action of `r_alpha` (alpha = positive root `k`) on a root-lattice vector.
    pub fn reflect_by_root(&self, k: usize, v: &[i64]) -> Vec<i64> {
        let c = self.pair_coroot_root(&self.positive_coroots[k], v);
        v.iter().zip(&self.positive_roots[k]).map(|(x, a)| x - c * a).collect()
    }

    /// The simple root `alpha_j` in fundamental-weight coordinates.
    pub fn root_in_weight_coords(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.cartan[i][j] * root[j]).sum()).collect()
    }

    /// Inverse of the Cartan matrix, exact.
    pub fn inverse_cartan(&self) -> ExactMatrix {
        let n = self.rank;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = rat::int(self.cartan[i][j]);
            }
            aug[(i, n + i)] = Rat::one();
        }
        aug.rref();
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        inv
    }

    /// Weight (fundamental-weight coordinates) expressed in the simple-root basis.
    pub fn weight_in_root_coords(&self, weight: &[i64]) -> Vec<Rat> {
        // <alpha_j^vee, mu> = sum_k a_jk c_k
        let inv = self.inverse_cartan();
        let w: Vec<Rat> = weight.iter().map(|&x| rat::int(x)).collect();
        inv.mul_vec(&w)
    }

    /// `(mu, nu)` for weights in fundamental-weight coordinates.
    pub fn inner_weights(&self, mu: &[i64], nu: &[i64]) -> Rat {
        let c = self.weight_in_root_coords(mu);
        c.iter()
            .zip(&self.sym)
            .zip(nu)
            .map(|((ck, &dk), &nk)| ck * rat::int(dk * nk))
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Weight in `epsilon` coordinates (classical types only).
    pub fn weight_in_epsilon(&self, weight: &[i64]) -> Option<Vec<Rat>> {
        let eps = self.epsilon.as_ref()?;
        let c = self.weight_in_root_coords(weight);
        let dim = eps[0].len();
        Some(
            (0..dim)
                .map(|e| {
                    c.iter().zip(eps).map(|(ck, row)| ck * rat::int(row[e])).fold(Rat::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    pub fn simple_roots_epsilon(&self) -> Option<&[Vec<i64>]> {
        self.epsilon.as_deref()
    }

    /// `ht(coroot) = <rho, coroot>`.
    pub fn height(coroot: &[i64]) -> i64 {
        coroot.iter().sum()
    }

    pub fn is_long_simple(&self, i: usize) -> bool {
        self.sym[i] == *self.sym.iter().max().unwrap()
    }

    /// Whether `a - b` is a nonzero nonnegative combination of simple roots.
    pub fn dominates(a: &[i64], b: &[i64]) -> bool {
        a != b && a.iter().zip(b).all(|(x, y)| x >= y)
    }

    /// `l(r_alpha)` for positive root `k`, by counting inversions.
    pub fn reflection_length(&self, k: usize) -> usize {
        self.positive_roots
            .iter()
            .filter(|b| self.reflect_by_root(k, b).iter().sum::<i64>() < 0)
            .count()
    }

    /// Positive coroots with `l(r_alpha) = <alpha^vee, 2 rho> - 1`.
    pub fn short_coroot_chain_set(&self) -> Vec<Vec<i64>> {
        (0..self.num_positive_roots())
            .filter(|&k| self.reflection_length(k) as i64 == 2 * Self::height(&self.positive_coroots[k]) - 1)
            .map(|k| self.positive_coroots[k].clone())
            .collect()
    }

    pub fn short_chain_indices(&self) -> Vec<usize> {
        (0..self.num_positive_roots())
            .filter(|&k| self.reflection_length(k) as i64 == 2 * Self::height(&self.positive_coroots[k]) - 1)
            .collect()
    }

    /// Parabolic data for `I_P` given as 0-based node indices.
    pub fn parabolic(self: &Arc<Self>, i_p: &[usize]) -> Result<ParabolicData> {
        ParabolicData::new(self.clone(), i_p)
    }
}

fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let c: i64 = (0..n).map(|k| cartan[i][k] * b[k]).sum();
            if c >= 0 {
                continue;
            }
            let mut g = b.clone();
            g[i] -= c;
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));
    roots
}

/// Parabolic subsystem data for `P` determined by `I_P`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    parent: Arc<RootSystem>,
    i_p: BTreeSet<usize>,
    i_up: Vec<usize>,
    /// Indices into the parent's positive roots.
    delta_p_plus: Vec<usize>,
    delta_plus_p: Vec<usize>,
    two_rho_p: Vec<i64>,
}

impl ParabolicData {
    pub fn new(parent: Arc<RootSystem>, i_p: &[usize]) -> Result<Self> {
        let n = parent.rank();
        for &i in i_p {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
        }
        let i_p: BTreeSet<usize> = i_p.iter().copied().collect();
        let i_up: Vec<usize> = (0..n).filter(|i| !i_p.contains(i)).collect();
        let (delta_p_plus, delta_plus_p): (Vec<usize>, Vec<usize>) = (0..parent.num_positive_roots())
            .partition(|&k| i_up.iter().all(|&i| parent.positive_roots()[k][i] == 0));
        let mut two_rho_p = vec![0; n];
        for &k in &delta_p_plus {
            for (t, x) in two_rho_p.iter_mut().zip(&parent.positive_roots()[k]) {
                *t += x;
            }
        }
        Ok(ParabolicData { parent, i_p, i_up, delta_p_plus, delta_plus_p, two_rho_p })
    }

    pub fn borel(parent: Arc<RootSystem>) -> Self {
        Self::new(parent, &[]).unwrap()
    }

    pub fn parent(&self) -> &Arc<RootSystem> {
        &self.parent
    }

    pub fn i_p(&self) -> &BTreeSet<usize> {
        &self.i_p
    }

    /// The complement `I^P`, sorted.
    pub fn i_up(&self) -> &[usize] {
        &self.i_up
    }

    pub fn is_borel(&self) -> bool {
        self.i_p.is_empty()
    }

    pub fn delta_p_plus(&self) -> &[usize] {
        &self.delta_p_plus
    }

    pub fn delta_plus_p(&self) -> &[usize] {
        &self.delta_plus_p
    }

    pub fn two_rho_p(&self) -> &[i64] {
        &self.two_rho_p
    }

    /// `eta_P`: keeps only the `I^P` coordinates of a coroot.
    pub fn eta(&self, coroot: &[i64]) -> Vec<i64> {
        self.i_up.iter().map(|&i| coroot[i]).collect()
    }

    pub fn label(&self) -> String {
        let ip: Vec<String> = self.i_p.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", ip.join(","))
    }

    /// All subsets of the nodes, as parabolic data.
    pub fn all(parent: &Arc<RootSystem>) -> Vec<ParabolicData> {
        let n = parent.rank();
        (0..1u32 << n)
            .map(|mask| {
                let i_p: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                ParabolicData::new(parent.clone(), &i_p).unwrap()
            })
            .collect()
    }
}
