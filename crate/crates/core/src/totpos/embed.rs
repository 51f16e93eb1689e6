//! Chevalley generators of `SL_m`, `SO_{2n+1}` and `Sp_{2n}` inside `SL_m`,
//! and the centralizer of the principal nilpotent.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::matrix::ExactMatrix;
use crate::rat::{self, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `SL_{n+1}`.
    A,
    /// `SO_{2n+1}`.
    SoOdd,
    /// `Sp_{2n}`.
    Sp,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "an" | "sl" => Ok(Family::A),
            "b" | "bn" | "so" | "so_odd" | "soodd" => Ok(Family::SoOdd),
            "c" | "cn" | "sp" => Ok(Family::Sp),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::SoOdd => "SO_odd",
            Family::Sp => "Sp",
        })
    }
}

impl Family {
    pub fn ambient_size(self, n: usize) -> usize {
        match self {
            Family::A => n + 1,
            Family::SoOdd => 2 * n + 1,
            Family::Sp => 2 * n,
        }
    }
}

/// `f~_i = E_{i+1,i}` (1-based) in `gl_m`.
pub fn ambient_f(m: usize, i: usize) -> ExactMatrix {
    ExactMatrix::unit(m, i, i - 1)
}

/// `J_{a, m+1-a} = (-1)^{a+1}`.
pub fn antidiagonal_form(m: usize) -> ExactMatrix {
    let mut j = ExactMatrix::zeros(m, m);
    for a in 0..m {
        j[(a, m - 1 - a)] = rat::int(if a % 2 == 0 { 1 } else { -1 });
    }
    j
}

#[derive(Clone, Debug)]
pub struct Embedding {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    generators: Vec<ExactMatrix>,
    form: Option<ExactMatrix>,
}

impl Embedding {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = if family == Family::A { 1 } else { 2 };
        if n < min {
            return Err(Error::Precondition(format!("{family} needs n >= {min}, got {n}")));
        }
        let m = family.ambient_size(n);
        let generators = (1..=n)
            .map(|i| match family {
                Family::A => ambient_f(m, i),
                Family::SoOdd => &ambient_f(m, i) + &ambient_f(m, 2 * n + 1 - i),
                Family::Sp if i < n => &ambient_f(m, i) + &ambient_f(m, 2 * n - i),
                Family::Sp => ambient_f(m, n),
            })
            .collect();
        let form = (family != Family::A).then(|| antidiagonal_form(m));
        Ok(Embedding { family, n, m, generators, form })
    }

    /// `f_i`, 1-based.
    pub fn generator(&self, i: usize) -> Result<&ExactMatrix> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, bound: self.n });
        }
        Ok(&self.generators[i - 1])
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    /// `y_i(t) = exp(t f_i)`.
    pub fn y(&self, i: usize, t: &Rat) -> Result<ExactMatrix> {
        self.generator(i)?.scale(t).exp_nilpotent()
    }

    pub fn product(&self, word: &[usize], params: &[Rat]) -> Result<ExactMatrix> {
        if word.len() != params.len() {
            return Err(Error::DimensionMismatch { expected: word.len(), got: params.len() });
        }
        let mut out = ExactMatrix::identity(self.m);
        for (&i, t) in word.iter().zip(params) {
            out = &out * &self.y(i, t)?;
        }
        Ok(out)
    }

    pub fn principal_nilpotent(&self) -> ExactMatrix {
        self.generators.iter().fold(ExactMatrix::zeros(self.m, self.m), |acc, f| &acc + f)
    }

    pub fn exp_f(&self) -> ExactMatrix {
        self.principal_nilpotent().exp_nilpotent().expect("f is strictly lower triangular")
    }

    pub fn form(&self) -> Option<&ExactMatrix> {
        self.form.as_ref()
    }

    /// `A J A^t = J`; always true in type A.
    pub fn preserves_form(&self, a: &ExactMatrix) -> bool {
        match &self.form {
            None => true,
            Some(j) => &(a * j) * &a.transpose() == *j,
        }
    }

    /// `x J + J x^t = 0`.
    pub fn in_lie_algebra(&self, x: &ExactMatrix) -> bool {
        match &self.form {
            None => true,
            Some(j) => (&(x * j) + &(j * &x.transpose())).is_zero(),
        }
    }

    /// Reduced word for the longest element of the embedded Weyl group.
    pub fn w0_word(&self) -> Vec<usize> {
        match self.family {
            Family::A => super::wiring::longest_word(self.m),
            _ => (0..self.n).flat_map(|_| 1..=self.n).collect(),
        }
    }

    /// Basis of the Lie algebra generated by the `f_i`.
    pub fn lower_nilradical(&self) -> Vec<ExactMatrix> {
        let mut basis: Vec<ExactMatrix> = Vec::new();
        let mut span = Vec::<Vec<Rat>>::new();
        let mut queue: Vec<ExactMatrix> = self.generators.clone();
        while let Some(x) = queue.pop() {
            span.push(x.entries().to_vec());
            let rank = ExactMatrix::from_rows(span.clone()).expect("equal lengths").rank();
            if rank < span.len() {
                span.pop();
                continue;
            }
            for f in &self.generators {
                let b = f.commutator(&x);
                if !b.is_zero() {
                    queue.push(b);
                }
            }
            basis.push(x);
        }
        basis
    }
}

pub fn embed_generators(family: Family, n: usize) -> Result<Embedding> {
    Embedding::new(family, n)
}

/// Principal nilpotent `sum_i E_{i+1,i}` of `gl_m`.
pub fn principal_nilpotent(m: usize) -> ExactMatrix {
    (1..m).fold(ExactMatrix::zeros(m, m), |acc, i| &acc + &ambient_f(m, i))
}

/// `exp(f)` in `SL_m`: entry `(a, b)` is `1/(a-b)!` below the diagonal.
pub fn exp_f(m: usize) -> ExactMatrix {
    principal_nilpotent(m).exp_nilpotent().expect("f is strictly lower triangular")
}

#[derive(Clone, Debug)]
pub struct CentralizerChart {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub f: ExactMatrix,
    pub basis: Vec<ExactMatrix>,
}

impl CentralizerChart {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `exp(sum_j c_j z_j)`.
    pub fn point(&self, coeffs: &[Rat]) -> Result<ExactMatrix> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::DimensionMismatch { expected: self.basis.len(), got: coeffs.len() });
        }
        let z = self
            .basis
            .iter()
            .zip(coeffs)
            .fold(ExactMatrix::zeros(self.m, self.m), |acc, (b, c)| &acc + &b.scale(c));
        z.exp_nilpotent()
    }
}

/// `ker(ad f)` inside the Lie algebra generated by the `f_i`.
pub fn centralizer_chart(family: Family, n: usize) -> Result<CentralizerChart> {
    let emb = Embedding::new(family, n)?;
    let f = emb.principal_nilpotent();
    let span = emb.lower_nilradical();
    let m = emb.m;
    // columns: vec([f, s_k])
    let mut op = ExactMatrix::zeros(m * m, span.len());
    for (k, s) in span.iter().enumerate() {
        for (r, v) in f.commutator(s).entries().iter().enumerate() {
            op[(r, k)] = v.clone();
        }
    }
    let mut basis: Vec<ExactMatrix> = op
        .nullspace()
        .into_iter()
        .map(|c| {
            span.iter()
                .zip(&c)
                .filter(|(_, x)| !x.is_zero())
                .fold(ExactMatrix::zeros(m, m), |acc, (s, x)| &acc + &s.scale(x))
        })
        .collect();
    // order by the lowest nonzero subdiagonal
    basis.sort_by_key(|b| {
        (1..m).find(|&d| (d..m).any(|a| !b[(a, a - d)].is_zero())).unwrap_or(m)
    });
    Ok(CentralizerChart { family, n, m, f, basis })
}

/// `ad`-homogeneity degree of a strictly lower matrix, if it has one.
pub fn grading_degree(x: &ExactMatrix) -> Option<usize> {
    let m = x.nrows();
    let mut deg = None;
    for a in 0..m {
        for b in 0..m {
            if !x[(a, b)].is_zero() {
                if a <= b {
                    return None;
                }
                match deg {
                    None => deg = Some(a - b),
                    Some(d) if d != a - b => return None,
                    _ => {}
                }
            }
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn exp_f_entries() {
        let e = exp_f(3);
        let want = ExactMatrix::from_rows(vec![
            vec![rat::int(1), rat::int(0), rat::int(0)],
            vec![rat::int(1), rat::int(1), rat::int(0)],
            vec![frac(1, 2), rat::int(1), rat::int(1)],
        ])
        .unwrap();
        assert_eq!(e, want);
        let e = exp_f(6);
        let mut fact = 1i64;
        for d in 0..6 {
            if d > 0 {
                fact *= d as i64;
            }
            for b in 0..6 - d {
                assert_eq!(e[(b + d, b)], frac(1, fact));
            }
        }
    }

    #[test]
    fn forms_preserved() {
        for family in [Family::SoOdd, Family::Sp] {
            for n in 2..=4 {
                let emb = Embedding::new(family, n).unwrap();
                let j = emb.form().unwrap();
                if family == Family::SoOdd {
                    assert_eq!(j.transpose(), *j);
                } else {
                    assert_eq!(j.transpose(), j.scale(&rat::int(-1)));
                }
                for i in 1..=n {
                    assert!(emb.in_lie_algebra(emb.generator(i).unwrap()), "{family} n={n} i={i}");
                    let y = emb.y(i, &frac(3, 2)).unwrap();
                    assert!(emb.preserves_form(&y));
                    assert_eq!(emb.y(i, &rat::int(0)).unwrap(), ExactMatrix::identity(emb.m));
                }
                let word = emb.w0_word();
                let params: Vec<Rat> = (0..word.len()).map(|k| frac(k as i64 + 1, 3)).collect();
                assert!(emb.preserves_form(&emb.product(&word, &params).unwrap()));
            }
        }
    }

    #[test]
    fn embedded_products_are_tnn() {
        use crate::{RootSystem, TypeLetter, WeylGroup};
        use std::sync::Arc;
        for (family, letter) in [(Family::SoOdd, TypeLetter::B), (Family::Sp, TypeLetter::C)] {
            for n in 2..=3 {
                let emb = Embedding::new(family, n).unwrap();
                let word = emb.w0_word();
                let wg = WeylGroup::new(Arc::new(RootSystem::new(letter, n).unwrap()));
                let w0 = wg.from_word(&word.iter().map(|i| i - 1).collect::<Vec<_>>()).unwrap();
                assert!(w0.length() == word.len() && w0 == wg.longest());
                let params: Vec<Rat> = (0..word.len()).map(|k| frac(1 + (k as i64 * 7) % 5, 2)).collect();
                let y = emb.product(&word, &params).unwrap();
                assert!(super::super::is_tnn(&y).unwrap(), "{family} n={n}");
                assert!(emb.preserves_form(&y));
            }
        }
    }

    #[test]
    fn so5_generator() {
        let emb = Embedding::new(Family::SoOdd, 2).unwrap();
        let t = frac(2, 3);
        let want = (&ambient_f(5, 1) + &ambient_f(5, 4)).scale(&t).exp_nilpotent().unwrap();
        assert_eq!(emb.y(1, &t).unwrap(), want);
        assert_eq!(emb.y(1, &t).unwrap(), &ExactMatrix::identity(5) + &(&ambient_f(5, 1) + &ambient_f(5, 4)).scale(&t));
    }

    #[test]
    fn nilradical_dimensions() {
        let dims = [(Family::A, 3, 6), (Family::SoOdd, 2, 4), (Family::SoOdd, 3, 9), (Family::Sp, 2, 4), (Family::Sp, 3, 9)];
        for (family, n, d) in dims {
            let emb = Embedding::new(family, n).unwrap();
            let basis = emb.lower_nilradical();
            assert_eq!(basis.len(), d, "{family} {n}");
            assert!(basis.iter().all(|x| emb.in_lie_algebra(x)));
        }
    }

    #[test]
    fn centralizers() {
        for n in 1..=5 {
            let c = centralizer_chart(Family::A, n).unwrap();
            assert_eq!(c.dim(), n);
            // span equals span of f, f^2, ..., f^n
            let mut rows: Vec<Vec<Rat>> = c.basis.iter().map(|b| b.entries().to_vec()).collect();
            let mut p = c.f.clone();
            for _ in 0..n {
                rows.push(p.entries().to_vec());
                p = &p * &c.f;
            }
            assert_eq!(ExactMatrix::from_rows(rows).unwrap().rank(), n);
        }
        for family in [Family::SoOdd, Family::Sp] {
            for n in 2..=4 {
                let c = centralizer_chart(family, n).unwrap();
                assert_eq!(c.dim(), n, "{family} {n}");
                for b in &c.basis {
                    assert!(c.f.commutator(b).is_zero());
                    assert!(b.is_nilpotent_lower());
                }
                let degs: Vec<_> = c.basis.iter().map(grading_degree).collect();
                assert!(degs.iter().all(Option::is_some), "{degs:?}");
            }
        }
    }
}
