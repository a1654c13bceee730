//! Exact abelianization: exponent-sum matrices, Smith normal form, and
//! first homology as invariant factors.

mod matrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use matrix::IntegerMatrix;

use crate::presentation::GroupPresentation;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// diagonal entries positive and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Re-checks every defining property by exact arithmetic.
    pub fn verify(&self, a: &IntegerMatrix) -> Result<(), String> {
        let (m, n) = a.shape();
        if self.u.shape() != (m, m) || self.v.shape() != (n, n) || self.d.shape() != (m, n) {
            return Err("shape mismatch".into());
        }
        if &(&self.u * a) * &self.v != self.d {
            return Err("U*A*V != D".into());
        }
        for (name, t) in [("U", &self.u), ("V", &self.v)] {
            if t.determinant().abs() != BigInt::one() {
                return Err(format!("det({name}) is not +-1"));
            }
        }
        for i in 0..m {
            for j in 0..n {
                if i != j && !self.d[(i, j)].is_zero() {
                    return Err(format!("D has off-diagonal entry at ({i}, {j})"));
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return Err("negative invariant factor".into());
        }
        for w in diag.windows(2) {
            if w[0].is_zero() && !w[1].is_zero() {
                return Err("zero before nonzero on the diagonal".into());
            }
            if !w[1].is_zero() && !w[1].is_multiple_of(&w[0]) {
                return Err(format!("{} does not divide {}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Smith normal form by unimodular row and column operations, always pivoting
/// on an entry of least absolute value in the remaining block.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // Pivot: nonzero entry of least absolute value in d[t.., t..].
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d[(i, j)].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return finish(d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            let p = d[(t, t)].clone();
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&p);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&p);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(d, u, v)
}

fn finish(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix) -> SmithDecomposition {
    SmithDecomposition { d, u, v }
}

/// One row per relator, one column per generator, entries are exponent sums.
pub fn abelianization_matrix(p: &GroupPresentation) -> IntegerMatrix {
    let words = p.relator_words();
    let cols = p.generators().len();
    let mut m = IntegerMatrix::zeros(words.len(), cols);
    for (i, w) in words.iter().enumerate() {
        for l in w.letters() {
            m[(i, l.generator())] += l.exponent();
        }
    }
    m
}

/// Invariant factors of `H_1`: torsion coefficients greater than one in
/// divisibility order, then one `0` per free summand. Empty means trivial.
pub fn first_homology(p: &GroupPresentation) -> Vec<BigInt> {
    let a = abelianization_matrix(p);
    let snf = smith_normal_form(&a);
    let mut out: Vec<BigInt> = snf
        .diagonal()
        .into_iter()
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    let free = a.cols() - snf.rank();
    out.extend(std::iter::repeat_n(BigInt::zero(), free));
    out
}

pub fn is_perfect(p: &GroupPresentation) -> bool {
    first_homology(p).is_empty()
}
