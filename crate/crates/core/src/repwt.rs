//! Weight systems of irreducible highest-weight modules (Freudenthal) and the
//! tensor-square multiplicity checks for the minuscule-type lemmas.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::matrix::ExactMatrix;
use crate::rat::{self, Rat};
use crate::rootsys::{RootSystem, TypeLetter};
use crate::{Error, Result};

pub const DIMENSION_BUDGET: u64 = 100_000;

/// Weight bookkeeping for one root system: weights are Dynkin labels.
pub struct WeightLattice {
    rs: Arc<RootSystem>,
    inv_cartan: ExactMatrix,
    /// `D * (omega_i, omega_j)`, integral.
    gram: Vec<Vec<i64>>,
    /// Positive roots in weight coordinates.
    roots_w: Vec<Vec<i64>>,
    budget: u64,
}

impl WeightLattice {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = rs.rank();
        let inv_cartan = rs.inverse_cartan();
        let sym = rs.symmetrizer();
        // (omega_i, omega_j) = (C^{-1})_{ji} d_j
        let g: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| &inv_cartan[(j, i)] * rat::int(sym[j])).collect()).collect();
        let d = g.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let gram = g
            .iter()
            .map(|row| row.iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer().to_i64().expect("small gram")).collect())
            .collect();
        let roots_w = rs.positive_roots().iter().map(|r| rs.root_in_weight_coords(r)).collect();
        WeightLattice { rs, inv_cartan, gram, roots_w, budget: DIMENSION_BUDGET }
    }

    /// Largest module dimension accepted by the Freudenthal recursion.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Scaled inner product.
    fn ip(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                for (j, &y) in b.iter().enumerate() {
                    s += i128::from(x) * i128::from(self.gram[i][j]) * i128::from(y);
                }
            }
        }
        s
    }

    pub fn simple_root_weight(&self, i: usize) -> Vec<i64> {
        (0..self.rank()).map(|j| self.rs.cartan()[j][i]).collect()
    }

    pub fn reflect(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let k = mu[i];
        let a = self.simple_root_weight(i);
        mu.iter().zip(&a).map(|(m, x)| m - k * x).collect()
    }

    pub fn dominant_representative(&self, mu: &[i64]) -> Vec<i64> {
        let mut v = mu.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    pub fn orbit(&self, mu: &[i64]) -> BTreeSet<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([mu.to_vec()]);
        seen.insert(mu.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                if v[i] != 0 {
                    let w = self.reflect(i, &v);
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen
    }

    pub fn root_coords(&self, mu: &[i64]) -> Vec<Rat> {
        let w: Vec<Rat> = mu.iter().map(|&x| rat::int(x)).collect();
        self.inv_cartan.mul_vec(&w)
    }

    /// `a - b` is a nonnegative integer combination of simple roots.
    pub fn dominance_geq(&self, a: &[i64], b: &[i64]) -> bool {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.root_coords(&diff).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<BigInt> {
        self.check_dominant(lambda)?;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for c in self.rs.positive_coroots() {
            let a: i64 = c.iter().zip(lambda).map(|(ci, li)| ci * (li + 1)).sum();
            let b: i64 = c.iter().sum();
            num *= a;
            den *= b;
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::Inconsistent("non-integral Weyl dimension".into()));
        }
        Ok(q)
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.len() });
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::Precondition(format!("{lambda:?} is not dominant")));
        }
        Ok(())
    }

    /// Dominant weights `mu <= lambda`, by descending along positive roots.
    pub fn dominant_weights_below(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::from([lambda.to_vec()]);
        let mut queue = VecDeque::from([lambda.to_vec()]);
        while let Some(mu) = queue.pop_front() {
            for a in &self.roots_w {
                let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
                if nu.iter().all(|&x| x >= 0) && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Freudenthal multiplicities of the dominant weights of `V_lambda`.
    pub fn dominant_multiplicities(&self, lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        let dim = self.weyl_dimension(lambda)?;
        if dim > BigInt::from(self.budget) {
            return Err(Error::Budget(format!("dim V_{lambda:?} = {dim} exceeds the budget {}", self.budget)));
        }
        let mut dom = self.dominant_weights_below(lambda);
        let depth = |mu: &Vec<i64>| -> Rat {
            let diff: Vec<i64> = lambda.iter().zip(mu).map(|(x, y)| x - y).collect();
            self.root_coords(&diff).into_iter().fold(Rat::zero(), |a, b| a + b)
        };
        let mut keyed: Vec<(Rat, Vec<i64>)> = dom.drain(..).map(|m| (depth(&m), m)).collect();
        keyed.sort();
        let rho = self.rs.rho();
        let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let top = self.ip(&lr, &lr);
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        for (_, mu) in keyed {
            if mu == lambda {
                mult.insert(mu, 1);
                continue;
            }
            let mut acc = 0i128;
            for a in &self.roots_w {
                let mut k = 1;
                loop {
                    let v: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                    let m = mult.get(&self.dominant_representative(&v)).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    acc += i128::from(m) * self.ip(&v, a);
                    k += 1;
                }
            }
            let mr: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
            let den = top - self.ip(&mr, &mr);
            if den <= 0 || (2 * acc) % den != 0 {
                return Err(Error::Inconsistent(format!("Freudenthal step at {mu:?} is not integral")));
            }
            let m = (2 * acc / den) as u64;
            if m > 0 {
                mult.insert(mu, m);
            }
        }
        Ok(mult.into_iter().collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightSystem {
    pub type_name: String,
    pub highest_weight: Vec<i64>,
    pub weights: BTreeMap<Vec<i64>, u64>,
}

impl WeightSystem {
    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.weights.get(mu).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_w_invariant(&self, lat: &WeightLattice) -> bool {
        self.weights
            .iter()
            .all(|(mu, &m)| (0..lat.rank()).all(|i| self.multiplicity(&lat.reflect(i, mu)) == m))
    }

    pub fn all_multiplicity_one(&self) -> bool {
        self.weights.values().all(|&m| m == 1)
    }
}

/// Full weight system with multiplicities.
pub fn weights_of_in(lat: &WeightLattice, lambda: &[i64]) -> Result<WeightSystem> {
    let dom = lat.dominant_multiplicities(lambda)?;
    let mut weights = BTreeMap::new();
    for (mu, m) in dom {
        for w in lat.orbit(&mu) {
            weights.insert(w, m);
        }
    }
    let ws = WeightSystem { type_name: lat.rs.name(), highest_weight: lambda.to_vec(), weights };
    let dim = lat.weyl_dimension(lambda)?;
    if BigInt::from(ws.dim()) != dim {
        return Err(Error::Inconsistent(format!("Freudenthal total {} != Weyl dimension {dim}", ws.dim())));
    }
    Ok(ws)
}

pub fn weights_of(lambda: &[i64], rs: &Arc<RootSystem>) -> Result<WeightSystem> {
    weights_of_in(&WeightLattice::new(rs.clone()), lambda)
}

/// Character of `A (x) B`.
pub fn tensor_character(a: &WeightSystem, b: &WeightSystem) -> BTreeMap<Vec<i64>, u64> {
    let mut out = BTreeMap::new();
    for (x, m) in &a.weights {
        for (y, k) in &b.weights {
            let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(s).or_insert(0) += m * k;
        }
    }
    out
}

/// `sum_beta mult_A(beta) mult_B(nu - beta)`.
pub fn tensor_weight_multiplicity(a: &WeightSystem, b: &WeightSystem, nu: &[i64]) -> u64 {
    a.weights
        .iter()
        .map(|(beta, m)| {
            let rest: Vec<i64> = nu.iter().zip(beta).map(|(x, y)| x - y).collect();
            m * b.multiplicity(&rest)
        })
        .sum()
}

/// Multiplicity of `nu` in `V_{two_lambda}`.
pub fn highest_weight_multiplicity(rs: &Arc<RootSystem>, two_lambda: &[i64], nu: &[i64]) -> Result<u64> {
    Ok(weights_of(two_lambda, rs)?.multiplicity(nu))
}

/// Union-find over the weights of `v`, joining `a ~ b` when `a + b` lies in
/// `W orbit_weight`; true iff a single class remains.
pub fn equivalence_single_class(lat: &WeightLattice, v: &WeightSystem, orbit_weight: &[i64]) -> bool {
    let ws: Vec<&Vec<i64>> = v.weights.keys().collect();
    let orbit = lat.orbit(orbit_weight);
    let mut parent: Vec<usize> = (0..ws.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut classes = ws.len();
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let s: Vec<i64> = ws[i].iter().zip(ws[j]).map(|(a, b)| a + b).collect();
            if orbit.contains(&s) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    classes -= 1;
                }
            }
        }
    }
    classes <= 1
}

/// Dominant weights `mu` of the character with `top > mu > nu` in dominance order.
pub fn intermediate_dominant_weights(
    lat: &WeightLattice,
    character: &BTreeMap<Vec<i64>, u64>,
    top: &[i64],
    nu: &[i64],
) -> Vec<Vec<i64>> {
    character
        .keys()
        .filter(|mu| mu.iter().all(|&x| x >= 0))
        .filter(|mu| mu.as_slice() != top && mu.as_slice() != nu)
        .filter(|mu| lat.dominance_geq(top, mu) && lat.dominance_geq(mu, nu))
        .cloned()
        .collect()
}

/// Multiplicity of `V_nu` in a character, by peeling off irreducible
/// characters from the top of the dominance order down to `nu`.
pub fn factor_multiplicity_by_peeling(
    lat: &WeightLattice,
    character: &BTreeMap<Vec<i64>, u64>,
    nu: &[i64],
) -> Result<i64> {
    let mut ch: BTreeMap<Vec<i64>, i64> = character.iter().map(|(k, &v)| (k.clone(), v as i64)).collect();
    loop {
        // a maximal dominant weight with nonzero coefficient, among those >= nu
        let candidates: Vec<Vec<i64>> = ch
            .iter()
            .filter(|(mu, &m)| m != 0 && mu.iter().all(|&x| x >= 0) && lat.dominance_geq(mu, nu))
            .map(|(mu, _)| mu.clone())
            .collect();
        let Some(top) = candidates
            .iter()
            .find(|mu| !candidates.iter().any(|o| o != *mu && lat.dominance_geq(o, mu)))
            .cloned()
        else {
            return Ok(0);
        };
        let c = ch[&top];
        if top.as_slice() == nu {
            return Ok(c);
        }
        if c < 0 {
            return Err(Error::Inconsistent(format!("negative coefficient at {top:?}")));
        }
        for (w, m) in weights_of_in(lat, &top)?.weights {
            *ch.entry(w).or_insert(0) -= c * m as i64;
        }
    }
}

/// Parts (2)-(3): `nu` has multiplicity 1 in `V_{2 lambda}` and 2 in `V (x) V`,
/// and no dominant weight of `V (x) V` lies strictly between `2 lambda` and `nu`.
pub fn irreducible_factor_multiplicity_one(lat: &WeightLattice, lambda: &[i64], nu: &[i64]) -> Result<bool> {
    let v = weights_of_in(lat, lambda)?;
    let ch = tensor_character(&v, &v);
    let two: Vec<i64> = lambda.iter().map(|x| 2 * x).collect();
    let top_ok = ch.get(&two).copied() == Some(1);
    let none_between = intermediate_dominant_weights(lat, &ch, &two, nu).is_empty();
    let in_vv = tensor_weight_multiplicity(&v, &v, nu);
    let in_u = weights_of_in(lat, &two)?.multiplicity(nu);
    Ok(top_ok && none_between && in_vv == 2 && in_u == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaCase {
    /// `C_n` with the long simple root first: `V = V_{omega_n}`, orbit of `omega_{n-1}`.
    C(usize),
    /// `D_n` with `alpha_1 = eps_1 + eps_2`: spin `V_{omega_1}`, orbit of `omega_3`.
    D(usize),
    /// `V = V_{omega_7}` (minuscule), orbit of `omega_6`.
    E7,
}

impl LemmaCase {
    pub fn name(&self) -> String {
        match self {
            LemmaCase::C(n) => format!("C{n}"),
            LemmaCase::D(n) => format!("D{n}"),
            LemmaCase::E7 => "E7".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("E7") {
            return Ok(LemmaCase::E7);
        }
        let n: usize = s.get(1..).and_then(|x| x.parse().ok()).ok_or_else(|| Error::Parse(format!("bad case {s:?}")))?;
        match s.chars().next().map(|c| c.to_ascii_uppercase()) {
            Some('C') if n >= 2 => Ok(LemmaCase::C(n)),
            Some('D') if n >= 4 => Ok(LemmaCase::D(n)),
            _ => Err(Error::InvalidType(format!("no weight lemma for {s:?}"))),
        }
    }

    /// Root system, `V`'s highest weight and the orbit weight.
    pub fn data(&self) -> Result<(RootSystem, Vec<i64>, Vec<i64>)> {
        let fund = |n: usize, i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
        Ok(match *self {
            LemmaCase::C(n) => (RootSystem::new(TypeLetter::C, n)?.reversed_labeling()?, fund(n, n - 1), fund(n, n - 2)),
            LemmaCase::D(n) => (RootSystem::new(TypeLetter::D, n)?.reversed_labeling()?, fund(n, 0), fund(n, 2)),
            LemmaCase::E7 => (RootSystem::new(TypeLetter::E, 7)?, fund(7, 6), fund(7, 5)),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub case: String,
    pub v_highest_weight: Vec<i64>,
    pub orbit_weight: Vec<i64>,
    pub dim_v: u64,
    pub expected_dim_v: u64,
    pub orbit_size: usize,
    pub single_class: bool,
    pub mult_in_v2lambda: u64,
    pub mult_in_v_tensor_v: u64,
    pub intermediate_weights: Vec<Vec<i64>>,
    pub peeled_multiplicity: i64,
    pub factor_multiplicity_one: bool,
    /// Weights of `V` agree with the expected explicit list (classical cases).
    pub weights_match: Option<bool>,
}

impl LemmaReport {
    pub fn part1(&self) -> bool {
        self.single_class
    }

    pub fn part2(&self) -> bool {
        self.mult_in_v2lambda == 1 && self.mult_in_v_tensor_v == 2
    }

    pub fn part3(&self) -> bool {
        self.factor_multiplicity_one && self.peeled_multiplicity == 1
    }

    pub fn passed(&self) -> bool {
        self.part1() && self.part2() && self.part3() && self.dim_v == self.expected_dim_v && self.weights_match != Some(false)
    }
}

/// `±eps_k` for `C_n`; even signed permutations of `(1/2, ..., 1/2)` for `D_n`.
pub fn expected_epsilon_weights(case: LemmaCase) -> Option<BTreeSet<Vec<Rat>>> {
    match case {
        LemmaCase::C(n) => Some(
            (0..n)
                .flat_map(|k| {
                    [1, -1].map(|s| (0..n).map(|j| rat::int(if j == k { s } else { 0 })).collect::<Vec<_>>())
                })
                .collect(),
        ),
        LemmaCase::D(n) => Some(
            (0u32..1 << n)
                .filter(|mask| mask.count_ones() % 2 == 0)
                .map(|mask| (0..n).map(|j| rat::frac(if mask & (1 << j) != 0 { -1 } else { 1 }, 2)).collect())
                .collect(),
        ),
        LemmaCase::E7 => None,
    }
}

pub fn lemma_check(case: LemmaCase) -> Result<LemmaReport> {
    lemma_check_with_budget(case, DIMENSION_BUDGET)
}

pub fn lemma_check_with_budget(case: LemmaCase, budget: u64) -> Result<LemmaReport> {
    let (rs, lambda, omega) = case.data()?;
    let rs = Arc::new(rs);
    let lat = WeightLattice::new(rs.clone()).with_budget(budget);
    let v = weights_of_in(&lat, &lambda)?;
    let two: Vec<i64> = lambda.iter().map(|x| 2 * x).collect();
    let u = weights_of_in(&lat, &two)?;
    let ch = tensor_character(&v, &v);
    let expected_dim_v = match case {
        LemmaCase::C(n) => 2 * n as u64,
        LemmaCase::D(n) => 1 << (n - 1),
        LemmaCase::E7 => 56,
    };
    let weights_match = expected_epsilon_weights(case).map(|want| {
        let got: Option<BTreeSet<Vec<Rat>>> = v.weights.keys().map(|w| rs.weight_in_epsilon(w)).collect();
        v.all_multiplicity_one() && got.as_ref() == Some(&want)
    });
    Ok(LemmaReport {
        case: case.name(),
        v_highest_weight: lambda.clone(),
        orbit_weight: omega.clone(),
        dim_v: v.dim(),
        expected_dim_v,
        orbit_size: lat.orbit(&omega).len(),
        single_class: equivalence_single_class(&lat, &v, &omega),
        mult_in_v2lambda: u.multiplicity(&omega),
        mult_in_v_tensor_v: tensor_weight_multiplicity(&v, &v, &omega),
        intermediate_weights: intermediate_dominant_weights(&lat, &ch, &two, &omega),
        peeled_multiplicity: factor_multiplicity_by_peeling(&lat, &ch, &omega)?,
        factor_multiplicity_one: irreducible_factor_multiplicity_one(&lat, &lambda, &omega)?,
        weights_match,
    })
}
