//! Univariate polynomials over the rationals, enough for exact root counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::ExactMatrix;
use crate::rat::{self, Rat};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat::int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * rat::int(k as i64)).collect())
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("zero polynomial")
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree().unwrap();
        let lc = d.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lc;
            for (k, c) in d.0.iter().enumerate() {
                r[shift + k] -= &f * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lead().clone();
        Poly::new(self.0.iter().map(|c| c / &lc).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.degree().unwrap_or(0) == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    fn sign_changes(seq: &[Poly], x: &Rat) -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        Self::sign_changes(&seq, a).saturating_sub(Self::sign_changes(&seq, b))
    }
}

/// Characteristic polynomial `det(xI - M)` by Faddeev-LeVerrier.
pub fn charpoly(m: &ExactMatrix) -> Poly {
    assert!(m.is_square());
    let n = m.nrows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let mut inner = mk.clone();
        for i in 0..n {
            inner[(i, i)] += &coeffs[n - k + 1];
        }
        mk = m * &inner;
        let trace = (0..n).fold(Rat::zero(), |acc, i| acc + &mk[(i, i)]);
        coeffs[n - k] = -trace / rat::int(k as i64);
    }
    Poly::new(coeffs)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i128, 1i128, p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// Characteristic polynomial modulo a prime via Hessenberg reduction.
fn charpoly_mod(a: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let sub = |x: u64, y: u64| if x >= y { x - y } else { x + p - y };
    let add = |x: u64, y: u64| { let s = x + y; if s >= p { s - p } else { s } };
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i * n + m - 1] != 0) else { continue };
        if piv != m {
            for j in 0..n {
                h.swap(piv * n + j, m * n + j);
            }
            for i in 0..n {
                h.swap(i * n + piv, i * n + m);
            }
        }
        let inv = inv_mod(h[m * n + m - 1], p);
        for i in m + 1..n {
            let u = mul(h[i * n + m - 1], inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i * n + j] = sub(h[i * n + j], mul(u, h[m * n + j]));
            }
            for k in 0..n {
                h[k * n + m] = add(h[k * n + m], mul(u, h[k * n + i]));
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1}(x) - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = add(next[d + 1], c);
            next[d] = sub(next[d], mul(h[k * n + k], c));
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = mul(t, h[(i + 1) * n + i]);
            let f = mul(t, h[i * n + k]);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub(next[d], mul(f, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Exact characteristic polynomial of an integer matrix (row-major), by
/// Hessenberg reduction modulo enough primes and Chinese remaindering.
pub fn integer_charpoly(a: &[BigInt], n: usize) -> Vec<BigInt> {
    // |c_{n-k}| <= C(n,k) (sqrt(k) B)^k
    let bmax = a.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero).max(BigInt::one());
    let bbits = bmax.bits() as f64;
    let bound_bits = (0..=n)
        .map(|k| {
            let binom: f64 = (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).log2()).sum();
            binom + k as f64 * (bbits + 0.5 * (k.max(1) as f64).log2())
        })
        .fold(0.0, f64::max);
    let need_bits = bound_bits as u64 + 2;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut p = (1u64 << 62) - 1;
    while modulus.bits() <= need_bits {
        p -= 2;
        while !is_prime_u64(p) {
            p -= 2;
        }
        let pb = BigInt::from(p);
        let reduced: Vec<u64> = a.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
        let cp = charpoly_mod(&reduced, n, p);
        // combine acc (mod modulus) with cp (mod p)
        let m_mod_p = modulus.mod_floor(&pb).to_u64().unwrap();
        let inv = BigInt::from(inv_mod(m_mod_p, p));
        for (c, &r) in acc.iter_mut().zip(&cp) {
            let diff = (BigInt::from(r) - &*c).mod_floor(&pb);
            *c += &modulus * ((diff * &inv).mod_floor(&pb));
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    acc.into_iter().map(|c| if c > half { c - &modulus } else { c }).collect()
}

/// Characteristic polynomial of a rational matrix through [`integer_charpoly`]:
/// with `d M` integral, `det(x - M) = d^{-n} det(d x - d M)`.
pub fn charpoly_multimodular(m: &ExactMatrix) -> Poly {
    let n = m.nrows();
    let d = m.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let dr = Rat::from_integer(d.clone());
    let ints: Vec<BigInt> = m.entries().iter().map(|x| (x * &dr).to_integer()).collect();
    let c = integer_charpoly(&ints, n);
    // coefficient of x^k picks up d^{k-n}
    Poly::new(c.into_iter().enumerate().map(|(k, ck)| Rat::from_integer(ck) / rat::pow(&dr, (n - k) as i64)).collect())
}
