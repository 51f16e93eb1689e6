//! Exact total positivity: minors, TNN and TP tests, unipotent Toeplitz
//! matrices and the centralizer `X` of the principal nilpotent.

pub mod embed;
pub mod wiring;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::matrix::ExactMatrix;
use crate::rat::{self, Rat};
use crate::{Error, Result};

pub use embed::{centralizer_chart, embed_generators, exp_f, principal_nilpotent, CentralizerChart, Embedding, Family};
pub use wiring::{bn_word, chamber_sets, claim_check, longest_word, ChamberSet, PseudolineArrangement};

/// Largest size accepted by the all-minors tests.
pub const ALL_MINORS_LIMIT: usize = 8;

/// Minor with 0-based row and column indices.
pub fn minor(a: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Result<Rat> {
    a.minor(rows, cols)
}

/// All minors of a matrix of size at most [`ALL_MINORS_LIMIT`], indexed by
/// `(row mask, column mask)`, computed by Laplace expansion along the last row
/// from the minors one size down.  Entries are scaled to integers first.
pub struct MinorTable {
    nrows: usize,
    ncols: usize,
    values: Vec<Option<BigInt>>,
}

impl MinorTable {
    pub fn new(a: &ExactMatrix) -> Result<Self> {
        let (r, c) = (a.nrows(), a.ncols());
        if r > ALL_MINORS_LIMIT || c > ALL_MINORS_LIMIT {
            return Err(Error::Budget(format!(
                "all-minors mode is limited to {ALL_MINORS_LIMIT}x{ALL_MINORS_LIMIT}, got {r}x{c}"
            )));
        }
        let d = a.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = a.entries().iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect();
        let width = 1usize << c;
        let mut values: Vec<Option<BigInt>> = vec![None; (1 << r) * width];
        values[0] = Some(BigInt::one());
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); r.max(c) + 1];
        for mask in 0..(1usize << r.max(c)) {
            by_size[mask.count_ones() as usize].push(mask);
        }
        for k in 1..=r.min(c) {
            for &rm in by_size[k].iter().filter(|&&m| m < 1 << r) {
                let last = usize::BITS as usize - 1 - rm.leading_zeros() as usize;
                let rest = rm & !(1 << last);
                for &cm in by_size[k].iter().filter(|&&m| m < width) {
                    let mut acc = BigInt::zero();
                    let mut pos = 0;
                    for j in 0..c {
                        if cm & (1 << j) == 0 {
                            continue;
                        }
                        let e = &ints[last * c + j];
                        if !e.is_zero() {
                            let sub = values[rest * width + (cm & !(1 << j))].as_ref().expect("smaller minor");
                            if (k - 1 + pos) % 2 == 0 {
                                acc += e * sub;
                            } else {
                                acc -= e * sub;
                            }
                        }
                        pos += 1;
                    }
                    values[rm * width + cm] = Some(acc);
                }
            }
        }
        Ok(MinorTable { nrows: r, ncols: c, values })
    }

    /// Minor (up to a positive factor) for the given bitmasks.
    pub fn scaled(&self, rows: usize, cols: usize) -> Option<&BigInt> {
        self.values.get(rows * (1 << self.ncols) + cols).and_then(Option::as_ref)
    }

    /// `(rows, cols, scaled minor)` for every nonempty minor.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        let width = 1usize << self.ncols;
        self.values.iter().enumerate().filter_map(move |(idx, v)| {
            let (rm, cm) = (idx / width, idx % width);
            v.as_ref().filter(|_| rm != 0).map(|x| (rm, cm, x))
        })
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.nrows == 0 || self.ncols == 0
    }
}

fn mask_indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|b| mask & (1 << b) != 0).collect()
}

/// First negative minor, as 0-based `(rows, cols)`.
pub fn negative_minor(a: &ExactMatrix) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let t = MinorTable::new(a)?;
    let found = t.iter().find(|(_, _, v)| v.is_negative()).map(|(r, c, _)| (mask_indices(r), mask_indices(c)));
    Ok(found)
}

/// Every minor is nonnegative.
pub fn is_tnn(a: &ExactMatrix) -> Result<bool> {
    Ok(negative_minor(a)?.is_none())
}

/// Every minor is positive.
pub fn is_totally_positive(a: &ExactMatrix) -> Result<bool> {
    let t = MinorTable::new(a)?;
    let ok = t.iter().all(|(_, _, v)| v.is_positive());
    Ok(ok)
}

/// `r_i >= c_i` for all `i`: the minor is not identically zero on lower unitriangular matrices.
fn lower_admissible(rows: usize, cols: usize) -> bool {
    let (r, c) = (mask_indices(rows), mask_indices(cols));
    r.iter().zip(&c).all(|(a, b)| a >= b)
}

/// Lower unitriangular and every not-identically-zero minor is positive.
pub fn is_tp_unipotent_all_minors(a: &ExactMatrix) -> Result<bool> {
    if !a.is_unit_lower_triangular() {
        return Ok(false);
    }
    let t = MinorTable::new(a)?;
    let ok = t.iter().filter(|(r, c, _)| lower_admissible(*r, *c)).all(|(_, _, v)| v.is_positive());
    Ok(ok)
}

/// `Delta_J` with rows `J` and the first `|J|` columns.
pub fn chamber_minor(a: &ExactMatrix, j: &ChamberSet) -> Result<Rat> {
    let cols: Vec<usize> = (0..j.len()).collect();
    a.minor(&j.rows0(), &cols)
}

pub fn chamber_minors(a: &ExactMatrix, word: &[usize]) -> Result<Vec<(ChamberSet, Rat)>> {
    let arr = PseudolineArrangement::new(word, a.nrows())?;
    if !arr.is_longest() {
        return Err(Error::Precondition(format!("{word:?} is not a word for the longest element")));
    }
    arr.nontrivial_chambers().into_iter().map(|c| chamber_minor(a, &c).map(|v| (c, v))).collect()
}

/// Lower unitriangular with every chamber minor of `word` positive.
pub fn is_tp_chambers(a: &ExactMatrix, word: &[usize]) -> Result<bool> {
    if !a.is_unit_lower_triangular() {
        return Ok(false);
    }
    Ok(chamber_minors(a, word)?.iter().all(|(_, v)| v.is_positive()))
}

/// Totally positive element of the lower unipotent group, by chamber minors
/// of the standard reduced word of `w_0`.
pub fn is_tp(a: &ExactMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), got: a.ncols() });
    }
    is_tp_chambers(a, &longest_word(a.nrows()))
}

/// `y_i(t) = 1 + t E_{i+1,i}`, 1-based `i`.
pub fn y_elementary(m: usize, i: usize, t: &Rat) -> Result<ExactMatrix> {
    if i == 0 || i >= m {
        return Err(Error::IndexOutOfRange { index: i, bound: m - 1 });
    }
    let mut y = ExactMatrix::identity(m);
    y[(i, i - 1)] = t.clone();
    Ok(y)
}

pub fn y_product(m: usize, word: &[usize], params: &[Rat]) -> Result<ExactMatrix> {
    if word.len() != params.len() {
        return Err(Error::DimensionMismatch { expected: word.len(), got: params.len() });
    }
    let mut out = ExactMatrix::identity(m);
    for (&i, t) in word.iter().zip(params) {
        out = &out * &y_elementary(m, i, t)?;
    }
    Ok(out)
}

/// Lower unitriangular Toeplitz matrix with subdiagonal entries `c_1, ..., c_n`.
pub fn toeplitz(entries: &[Rat]) -> ExactMatrix {
    let m = entries.len() + 1;
    let mut a = ExactMatrix::identity(m);
    for r in 1..m {
        for c in 0..r {
            a[(r, c)] = entries[r - c - 1].clone();
        }
    }
    a
}

pub fn is_unipotent_toeplitz(a: &ExactMatrix) -> bool {
    a.is_unit_lower_triangular() && (1..a.nrows()).all(|r| (1..=r).all(|c| a[(r, c)] == a[(r - c, 0)]))
}

/// `(c_1, ..., c_n)` of a unipotent Toeplitz matrix.
pub fn toeplitz_entries(a: &ExactMatrix) -> Result<Vec<Rat>> {
    if !is_unipotent_toeplitz(a) {
        return Err(Error::Precondition("not a unit lower-triangular Toeplitz matrix".into()));
    }
    Ok((1..a.nrows()).map(|r| a[(r, 0)].clone()).collect())
}

/// `t^{-rho} u t^{rho}`: entry `(a, b)` scales by `t^{a-b}`.
pub fn u_t(a: &ExactMatrix, t: &Rat) -> Result<ExactMatrix> {
    if !t.is_positive() {
        return Err(Error::Precondition(format!("u_t needs t > 0, got {}", rat::format(t))));
    }
    if !a.is_unit_lower_triangular() {
        return Err(Error::Precondition("u_t needs a unit lower-triangular matrix".into()));
    }
    let mut out = a.clone();
    for r in 0..a.nrows() {
        for c in 0..r {
            if !a[(r, c)].is_zero() {
                out[(r, c)] = &a[(r, c)] * rat::pow(t, (r - c) as i64);
            }
        }
    }
    Ok(out)
}

/// Lower-left `i x i` corner minors, `i = 1..n`.
pub fn delta_coords(a: &ExactMatrix) -> Result<Vec<Rat>> {
    toeplitz_entries(a)?;
    let m = a.nrows();
    (1..m)
        .map(|i| {
            let rows: Vec<usize> = (m - i..m).collect();
            let cols: Vec<usize> = (0..i).collect();
            a.minor(&rows, &cols)
        })
        .collect()
}

/// Truncated power series product.
fn series_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    (0..n).map(|k| (0..=k).fold(Rat::zero(), |acc, i| acc + &a[i] * &b[k - i])).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ToeplitzParams {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub gamma: String,
}

/// Small positive rational `p/q` with `1 <= p, q <= 9`.
pub fn random_positive_rat<R: Rng>(rng: &mut R) -> Rat {
    rat::frac(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Coefficients of `prod(1 + beta z) / prod(1 - alpha z) * exp(gamma z)` up to `z^{m-1}`.
pub fn edrei_series(m: usize, alpha: &[Rat], beta: &[Rat], gamma: &Rat) -> Vec<Rat> {
    let mut s = vec![Rat::zero(); m];
    s[0] = Rat::one();
    for b in beta {
        let mut f = vec![Rat::zero(); m];
        f[0] = Rat::one();
        if m > 1 {
            f[1] = b.clone();
        }
        s = series_mul(&s, &f);
    }
    for a in alpha {
        let f: Vec<Rat> = (0..m).map(|k| rat::pow(a, k as i64)).collect();
        s = series_mul(&s, &f);
    }
    let mut e = vec![Rat::one(); m];
    for k in 1..m {
        e[k] = &e[k - 1] * gamma / rat::int(k as i64);
    }
    series_mul(&s, &e)
}

/// Random unipotent Toeplitz matrix from a totally positive generating function.
pub fn random_tnn_toeplitz<R: Rng>(rng: &mut R, m: usize) -> (ExactMatrix, ToeplitzParams) {
    let alpha: Vec<Rat> = (0..rng.gen_range(0..=2)).map(|_| random_positive_rat(rng) / rat::int(2)).collect();
    let beta: Vec<Rat> = (0..rng.gen_range(0..=2)).map(|_| random_positive_rat(rng)).collect();
    let gamma = if rng.gen_bool(0.5) { random_positive_rat(rng) } else { Rat::zero() };
    let s = edrei_series(m, &alpha, &beta, &gamma);
    let params = ToeplitzParams {
        alpha: alpha.iter().map(rat::format).collect(),
        beta: beta.iter().map(rat::format).collect(),
        gamma: rat::format(&gamma),
    };
    (toeplitz(&s[1..]), params)
}

/// Random totally positive lower unipotent element, `prod y_i(t_i)` over the
/// standard reduced word of `w_0` with positive rational `t_i`.
pub fn random_tp_unipotent<R: Rng>(rng: &mut R, m: usize) -> (ExactMatrix, Vec<Rat>) {
    let word = longest_word(m);
    let params: Vec<Rat> = word.iter().map(|_| random_positive_rat(rng)).collect();
    let y = y_product(m, &word, &params).expect("valid word");
    (y, params)
}

/// `<e_J, y (e_1 ^ ... ^ e_k)>` for every `k`-subset `J`, i.e. the minors
/// with rows `J` and columns `1..k`.
pub fn wedge_coefficients(y: &ExactMatrix, k: usize) -> Result<Vec<(ChamberSet, Rat)>> {
    let m = y.nrows();
    if k == 0 || k >= m {
        return Err(Error::IndexOutOfRange { index: k, bound: m - 1 });
    }
    let mut out = Vec::new();
    for mask in 0usize..(1 << m) {
        if mask.count_ones() as usize == k {
            let j = ChamberSet { j: mask_indices(mask).into_iter().map(|a| a + 1).collect() };
            out.push((j.clone(), chamber_minor(y, &j)?));
        }
    }
    Ok(out)
}
