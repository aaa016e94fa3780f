//! Tuples of trace-free matrices with a common flag: the null-cone of `sl_n^{⊕r}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

pub type Vector = Vec<BigRational>;

/// Square matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected {n} columns in every row")));
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect())
    }

    /// Columns become the basis vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let n = cols.len();
        let mut m = Self::zero(n);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Error::Shape(format!("column {j} has length {}, expected {n}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m.entries[i * n + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.chunks(self.n.max(1)).map(<[BigRational]>::to_vec).collect()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigRational]) -> Vector {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut out = Matrix::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Matrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
        Matrix::from_rows(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// `(x_1, ..., x_r)` in `sl_n^{⊕r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    mats: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(n: usize, mats: Vec<Matrix>) -> Result<Self> {
        for (i, m) in mats.iter().enumerate() {
            if m.size() != n {
                return Err(Error::Shape(format!("matrix {i} is {0}x{0}, expected {n}x{n}", m.size())));
            }
            if !m.trace().is_zero() {
                return Err(Error::NotTraceFree(i));
            }
        }
        Ok(MatrixTuple { n, mats })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Parses `[[["1","0"],["0","-1"]], ...]`: a list of matrices, each a list of rows.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Shape(e.to_string()))?;
        let list = v.as_array().ok_or_else(|| Error::Shape("expected an array of matrices".into()))?;
        let mut mats = Vec::with_capacity(list.len());
        for m in list {
            mats.push(matrix_from_json(m)?);
        }
        let n = mats.first().map(Matrix::size).unwrap_or(0);
        MatrixTuple::new(n, mats)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.mats.iter().map(matrix_to_json).collect())
    }
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::Shape("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or_else(|| Error::Shape("row must be an array".into()))?;
        let mut parsed = Vec::with_capacity(cells.len());
        for c in cells {
            let text = match c {
                Value::String(s) => s.clone(),
                Value::Number(x) if x.is_i64() => x.to_string(),
                other => return Err(Error::BadRational(other.to_string())),
            };
            parsed.push(parse_rational(&text)?);
        }
        out.push(parsed);
    }
    Matrix::from_rows(out)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .into_iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let bad = || Error::BadRational(text.to_string());
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Ordered basis whose prefixes span the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub basis: Vec<Vector>,
}

impl Flag {
    /// The change-of-basis matrix `P` with the basis vectors as columns.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis).expect("square basis")
    }

    /// Whether `P^{-1} x P` is strictly upper triangular for every `x`.
    pub fn triangularizes(&self, t: &MatrixTuple) -> bool {
        let p = self.matrix();
        let Ok(p_inv) = p.inverse() else { return false };
        t.matrices().iter().all(|x| p_inv.mul(x).mul(&p).is_strictly_upper())
    }
}

/// Row-reduced echelon basis of the span.
fn rref(vectors: Vec<Vector>, n: usize) -> Vec<Vector> {
    let mut rows: Vec<Vector> = vectors;
    let mut out_rank = 0;
    for col in 0..n {
        let Some(p) = (out_rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(out_rank, p);
        let lead = rows[out_rank][col].clone();
        for x in rows[out_rank].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = rows[out_rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != out_rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        out_rank += 1;
    }
    rows.truncate(out_rank);
    rows
}

/// `U_0 = k^n, U_{j+1} = Σ_i x_i(U_j)` until it vanishes or stabilizes.
fn descending_chain(t: &MatrixTuple) -> Vec<Vec<Vector>> {
    let n = t.size();
    let mut chain = vec![rref(Matrix::identity(n).rows(), n)];
    loop {
        let current = chain.last().expect("non-empty chain");
        if current.is_empty() {
            break;
        }
        let images: Vec<Vector> = t
            .matrices()
            .iter()
            .flat_map(|x| current.iter().map(move |u| x.apply(u)))
            .collect();
        let next = rref(images, n);
        if next.len() == current.len() {
            break;
        }
        chain.push(next);
    }
    chain
}

pub fn in_nullcone(t: &MatrixTuple) -> bool {
    descending_chain(t).last().map_or(true, Vec::is_empty)
}

/// A basis in which every `x_i` is strictly upper triangular, when one exists.
pub fn common_flag(t: &MatrixTuple) -> Option<Flag> {
    let n = t.size();
    let chain = descending_chain(t);
    if !chain.last().map_or(true, Vec::is_empty) {
        return None;
    }
    // Deepest subspace first, each step extended by echelon vectors of the next larger one.
    let mut basis: Vec<Vector> = Vec::with_capacity(n);
    for level in chain.iter().rev() {
        for v in level {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if rref(trial, n).len() > basis.len() {
                basis.push(v.clone());
            }
        }
    }
    debug_assert_eq!(basis.len(), n);
    Some(Flag { basis })
}

/// `φ_r(g, x) = (g x_i g^{-1})_i`.
pub fn resolution_sample(g: &Matrix, nil: &MatrixTuple) -> Result<MatrixTuple> {
    if g.size() != nil.size() {
        return Err(Error::Shape(format!("g is {0}x{0}, tuple has size {1}", g.size(), nil.size())));
    }
    if let Some(i) = nil.matrices().iter().position(|x| !x.is_strictly_upper()) {
        return Err(Error::NotStrictlyUpper(i));
    }
    let g_inv = g.inverse()?;
    let mats = nil.matrices().iter().map(|x| g.mul(x).mul(&g_inv)).collect();
    MatrixTuple::new(nil.size(), mats)
}

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    BigRational::from_integer(rng.gen_range(-bound..=bound).into())
}

pub fn random_strictly_upper<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut m = Matrix::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            m.entries[i * n + j] = small_int(rng, 2);
        }
    }
    m
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zero(n);
        for x in m.entries.iter_mut() {
            *x = small_int(rng, 2);
        }
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// A random trace-free tuple. About half are conjugated strictly upper triangular
/// tuples; of the rest some differ from such a tuple in one entry, others are dense.
pub fn random_tuple<R: Rng>(rng: &mut R, n: usize, r: usize) -> MatrixTuple {
    let g = random_invertible(rng, n);
    let g_inv = g.inverse().expect("invertible by construction");
    let kind = rng.gen_range(0..4);
    let mut mats = Vec::with_capacity(r);
    for _ in 0..r {
        let m = match kind {
            0 | 1 => g.mul(&random_strictly_upper(rng, n)).mul(&g_inv),
            2 => {
                let mut x = random_strictly_upper(rng, n);
                if n > 1 && rng.gen_bool(0.5) {
                    let i = rng.gen_range(1..n);
                    let j = rng.gen_range(0..i);
                    x.entries[i * n + j] = small_int(rng, 1);
                }
                g.mul(&x).mul(&g_inv)
            }
            _ => {
                let mut x = Matrix::zero(n);
                for e in x.entries.iter_mut() {
                    *e = small_int(rng, 1);
                }
                let tr = x.trace();
                if n > 0 {
                    x.entries[n * n - 1] -= tr;
                }
                x
            }
        };
        mats.push(m);
    }
    MatrixTuple::new(n, mats).expect("trace-free by construction")
}
