//! Affine Weyl group labels `w t_lambda` and the affine-to-quantum dictionary.
//!
//! Only translation bookkeeping is provided: labels, membership in the minimal
//! coset representatives `W_af^-`, lengths of dominant translations, and the
//! monomials `q_nu sigma_w` the dictionary assigns to ratios of labels.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup};
use crate::{Error, Result};

/// The affine Weyl group element `w t_lambda`, `lambda` in simple-coroot coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineLabel {
    pub w: WeylElement,
    pub lambda: Vec<i64>,
}

#[derive(Serialize)]
struct LabelJson {
    w: String,
    lambda: Vec<i64>,
}

impl AffineLabel {
    pub fn new(w: WeylElement, lambda: Vec<i64>) -> Self {
        AffineLabel { w, lambda }
    }

    pub fn translation(wg: &WeylGroup, lambda: Vec<i64>) -> Self {
        AffineLabel { w: wg.identity(), lambda }
    }

    /// `s_0 = r_theta t_{-theta^vee}`.
    pub fn s0(wg: &WeylGroup) -> Self {
        let rs = wg.root_system();
        let k = (0..rs.num_positive_roots()).find(|&k| rs.positive_roots()[k] == rs.theta()).unwrap();
        let lambda = rs.theta_coroot().iter().map(|x| -x).collect();
        AffineLabel { w: wg.reflection(k), lambda }
    }

    /// `(w t_a)(v t_b) = w v t_{v^{-1} a + b}`.
    pub fn mul(&self, other: &AffineLabel, wg: &WeylGroup) -> AffineLabel {
        let moved = act_on_coroot_inverse(wg.root_system(), &other.w, &self.lambda);
        let lambda = moved.iter().zip(&other.lambda).map(|(a, b)| a + b).collect();
        AffineLabel { w: wg.mult(&self.w, &other.w), lambda }
    }

    /// Membership in `W_af^-`: `lambda` anti-dominant, and `w alpha_i > 0`
    /// whenever `<alpha_i, lambda> = 0`.
    pub fn is_min_coset(&self, rs: &RootSystem) -> bool {
        let pairings = root_pairings(rs, &self.lambda);
        pairings.iter().all(|&p| p <= 0)
            && pairings.iter().enumerate().all(|(i, &p)| p != 0 || !self.w.has_right_descent(i))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LabelJson { w: self.w.word_string(), lambda: self.lambda.clone() }).unwrap()
    }
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} t{:?}", self.w.label(), self.lambda)
    }
}

/// `<alpha_i, lambda>` for each simple root, `lambda` in coroot coordinates.
pub fn root_pairings(rs: &RootSystem, lambda: &[i64]) -> Vec<i64> {
    let n = rs.rank();
    (0..n).map(|i| (0..n).map(|j| lambda[j] * rs.cartan()[j][i]).sum()).collect()
}

pub fn is_dominant_coroot(rs: &RootSystem, lambda: &[i64]) -> bool {
    root_pairings(rs, lambda).iter().all(|&p| p >= 0)
}

pub fn is_antidominant_coroot(rs: &RootSystem, lambda: &[i64]) -> bool {
    root_pairings(rs, lambda).iter().all(|&p| p <= 0)
}

/// `w^{-1}` applied to a coroot, letter by letter.
fn act_on_coroot_inverse(rs: &RootSystem, w: &WeylElement, coroot: &[i64]) -> Vec<i64> {
    w.word().iter().fold(coroot.to_vec(), |v, &i| rs.reflect_coroot(i, &v))
}

/// `l(t_lambda) = 2 ht(lambda)` for dominant `lambda`.
pub fn translation_length(rs: &RootSystem, lambda: &[i64]) -> Result<i64> {
    if lambda.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: lambda.len() });
    }
    if !is_dominant_coroot(rs, lambda) {
        return Err(Error::Precondition(format!(
            "translation length is only supported for dominant coweights, got {lambda:?}"
        )));
    }
    Ok(2 * RootSystem::height(lambda))
}

/// `q_nu sigma_w` with `nu` in simple-coroot coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LocalizedQuantumMonomial {
    pub exponent: Vec<i64>,
    pub base_class: WeylElement,
}

impl LocalizedQuantumMonomial {
    /// Product of monomials in which at most one factor carries a Schubert class.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let base = match (self.base_class.is_identity(), other.base_class.is_identity()) {
            (_, true) => self.base_class.clone(),
            (true, false) => other.base_class.clone(),
            (false, false) => {
                return Err(Error::Precondition("both factors carry a non-trivial Schubert class".into()));
            }
        };
        let exponent = self.exponent.iter().zip(&other.exponent).map(|(a, b)| a + b).collect();
        Ok(LocalizedQuantumMonomial { exponent, base_class: base })
    }
}

impl fmt::Display for LocalizedQuantumMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{:?} sigma[{}]", self.exponent, self.base_class.label())
    }
}

/// `xi_{w t_lambda} xi_{t_mu}^{-1} -> q_{lambda - mu} sigma_w`.
pub fn peterson_dictionary(w: &WeylElement, lambda: &[i64], mu: &[i64]) -> Result<LocalizedQuantumMonomial> {
    if lambda.len() != mu.len() || lambda.len() != w.rank() {
        return Err(Error::DimensionMismatch { expected: w.rank(), got: lambda.len().max(mu.len()) });
    }
    Ok(LocalizedQuantumMonomial {
        exponent: lambda.iter().zip(mu).map(|(a, b)| a - b).collect(),
        base_class: w.clone(),
    })
}

/// Checks that `xi_{w t_nu} xi_{t_mu} = xi_{w t_{nu+mu}}` is respected: the
/// label product is `w t_{nu+mu}`, that label lies in `W_af^-`, and the
/// dictionary images multiply accordingly.
pub fn factorization_consistency(wg: &WeylGroup, w: &WeylElement, nu: &[i64], mu: &[i64]) -> Result<bool> {
    let rs = wg.root_system();
    let left = AffineLabel::new(w.clone(), nu.to_vec());
    let right = AffineLabel::translation(wg, mu.to_vec());
    if !is_antidominant_coroot(rs, mu) {
        return Err(Error::Precondition(format!("mu = {mu:?} is not anti-dominant")));
    }
    if !left.is_min_coset(rs) {
        return Err(Error::Precondition(format!("{left} is not a minimal coset representative")));
    }
    let sum: Vec<i64> = nu.iter().zip(mu).map(|(a, b)| a + b).collect();
    let product = left.mul(&right, wg);
    let expected = AffineLabel::new(w.clone(), sum.clone());
    let zero = vec![0; rs.rank()];
    let lhs = peterson_dictionary(w, nu, &zero)?.mul(&peterson_dictionary(&wg.identity(), mu, &zero)?)?;
    let rhs = peterson_dictionary(w, &sum, &zero)?;
    Ok(product == expected && expected.is_min_coset(rs) && lhs == rhs)
}

/// True iff every `sigma_w` value and every `q_i` is strictly positive.
pub fn affine_positivity_certificate(
    wg: &WeylGroup,
    sigma_values: &HashMap<WeylElement, f64>,
    q: &[f64],
) -> Result<bool> {
    if q.len() != wg.rank() {
        return Err(Error::DimensionMismatch { expected: wg.rank(), got: q.len() });
    }
    let mut ok = q.iter().all(|&x| x > 0.0);
    for w in wg.elements() {
        match sigma_values.get(w) {
            Some(&v) => ok &= v > 0.0,
            None => return Err(Error::Precondition(format!("missing sigma value for {}", w.label()))),
        }
    }
    Ok(ok)
}

/// Anti-dominant coroots with `|ht| <= max_height`.
pub fn antidominant_coroots(rs: &RootSystem, max_height: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank()];
    fn rec(rs: &RootSystem, k: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            if is_antidominant_coroot(rs, cur) {
                out.push(cur.clone());
            }
            return;
        }
        // anti-dominant coroots have all coordinates <= 0
        for x in 0..=budget {
            cur[k] = -x;
            rec(rs, k + 1, budget - x, cur, out);
        }
        cur[k] = 0;
    }
    rec(rs, 0, max_height, &mut cur, &mut out);
    out.sort_by_key(|v| (-v.iter().sum::<i64>(), v.clone()));
    out
}

/// `m_i`: the least positive integer with `m_i omega_i^vee` in the coroot lattice.
pub fn coweight_indices(rs: &RootSystem) -> Vec<i64> {
    // omega_i^vee = sum_k (A^{-1})_{ik} alpha_k^vee
    let inv = rs.inverse_cartan();
    (0..rs.rank())
        .map(|i| {
            inv.row(i).iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
        })
        .map(|m| i64::try_from(m).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLetter;
    use std::sync::Arc;

    fn group(t: TypeLetter, n: usize) -> WeylGroup {
        WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap()))
    }

    #[test]
    fn translation_lengths() {
        let a2 = RootSystem::new(TypeLetter::A, 2).unwrap();
        assert_eq!(translation_length(&a2, &[0, 0]).unwrap(), 0);
        assert_eq!(translation_length(&a2, a2.theta_coroot()).unwrap(), 4);
        assert!(translation_length(&a2, &[1, 0]).is_err());
        let a1 = RootSystem::new(TypeLetter::A, 1).unwrap();
        assert_eq!(translation_length(&a1, &[1]).unwrap(), 2);
    }

    #[test]
    fn dictionary_examples() {
        let wg = group(TypeLetter::A, 1);
        let e = wg.identity();
        let m = peterson_dictionary(&e, &[3], &[3]).unwrap();
        assert_eq!(m.exponent, vec![0]);
        assert!(m.base_class.is_identity());
        let m = peterson_dictionary(&wg.simple(0), &[-1], &[0]).unwrap();
        assert_eq!(m.exponent, vec![-1]);
        assert_eq!(m.base_class, wg.simple(0));
        assert!(factorization_consistency(&wg, &e, &[0], &[0]).unwrap());
        assert!(factorization_consistency(&wg, &wg.simple(0), &[-1], &[-1]).unwrap());
        // s_1 t_0 sends alpha_1 negative while <alpha_1, 0> = 0
        assert!(factorization_consistency(&wg, &wg.simple(0), &[0], &[0]).is_err());
        assert!(factorization_consistency(&wg, &e, &[0], &[1]).is_err());
    }

    #[test]
    fn s0_is_an_involution() {
        for (t, n) in [(TypeLetter::A, 2), (TypeLetter::C, 3), (TypeLetter::G, 2)] {
            let wg = group(t, n);
            let s0 = AffineLabel::s0(&wg);
            let sq = s0.mul(&s0, &wg);
            assert_eq!(sq, AffineLabel::translation(&wg, vec![0; n]));
        }
    }

    #[test]
    fn coweight_index_values() {
        let expect = [
            (TypeLetter::A, 3, vec![4, 2, 4]),
            (TypeLetter::C, 3, vec![1, 1, 2]),
            (TypeLetter::B, 3, vec![2, 1, 2]),
            (TypeLetter::G, 2, vec![1, 1]),
            (TypeLetter::E, 6, vec![3, 1, 3, 1, 3, 3]),
        ];
        for (t, n, m) in expect {
            assert_eq!(coweight_indices(&RootSystem::new(t, n).unwrap()), m, "{t}{n}");
        }
    }

    #[test]
    fn positivity_certificate() {
        let wg = group(TypeLetter::A, 2);
        let mut vals: HashMap<WeylElement, f64> = wg.elements().iter().map(|w| (w.clone(), 1.0)).collect();
        assert!(affine_positivity_certificate(&wg, &vals, &[1.0, 1.0]).unwrap());
        vals.insert(wg.simple(0), 0.0);
        assert!(!affine_positivity_certificate(&wg, &vals, &[1.0, 1.0]).unwrap());
        vals.remove(&wg.simple(0));
        assert!(affine_positivity_certificate(&wg, &vals, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn antidominant_enumeration() {
        let a1 = RootSystem::new(TypeLetter::A, 1).unwrap();
        assert_eq!(antidominant_coroots(&a1, 4), vec![vec![0], vec![-1], vec![-2], vec![-3], vec![-4]]);
        let a2 = RootSystem::new(TypeLetter::A, 2).unwrap();
        // -(a, b) with 2a >= b and 2b >= a
        let got = antidominant_coroots(&a2, 4);
        assert_eq!(got, vec![vec![0, 0], vec![-1, -1], vec![-2, -1], vec![-1, -2], vec![-2, -2]]);
    }
}
