use std::fmt;

use crate::fields::{Field, FieldElement};
use crate::{Error, Result};

use super::QuadraticForm;

/// Dense square matrix over a tower field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn identity(field: &Field, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Matrix { field: field.clone(), rows }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix must be square".into()));
        }
        if rows.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::TowerMismatch("matrix entry".into()));
        }
        Ok(Matrix { field: field.clone(), rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.rows[i][j] = x;
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(self.field.zero(), |acc, (a, x)| &acc + &(a * x)))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(self.field.zero(), |acc, k| &acc + &(&self.rows[i][k] * &other.rows[k][j])))
                    .collect()
            })
            .collect();
        Matrix { field: self.field.clone(), rows }
    }

    /// Gauss–Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n();
        let mut a = self.rows.clone();
        let mut inv = Matrix::identity(&self.field, n).rows;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let s = a[col][col].inv().ok()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &s;
                inv[col][j] = &inv[col][j] * &s;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = &a[r][j] + &(&f * &a[col][j]);
                        inv[r][j] = &inv[r][j] + &(&f * &inv[col][j]);
                    }
                }
            }
        }
        Some(Matrix { field: self.field.clone(), rows: inv })
    }

    /// Places `m` on the diagonal block starting at `offset` inside an identity of size `n`.
    pub fn embed(m: &Matrix, offset: usize, n: usize) -> Matrix {
        let mut out = Matrix::identity(&m.field, n);
        for i in 0..m.n() {
            for j in 0..m.n() {
                out.rows[offset + i][offset + j] = m.rows[i][j].clone();
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Certificate that `target(M·v) = source(v)` for all `v`.
#[derive(Clone, Debug)]
pub struct IsometryWitness {
    pub matrix: Matrix,
    pub source: QuadraticForm,
    pub target: QuadraticForm,
}

impl IsometryWitness {
    pub fn identity(form: &QuadraticForm) -> Self {
        IsometryWitness {
            matrix: Matrix::identity(form.field(), form.dim()),
            source: form.clone(),
            target: form.clone(),
        }
    }

    /// `self` followed by `next` (`self.target` must equal `next.source`).
    pub fn then(&self, next: &IsometryWitness) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::Precondition("isometry chain does not compose".into()));
        }
        Ok(IsometryWitness {
            matrix: next.matrix.mul(&self.matrix),
            source: self.source.clone(),
            target: next.target.clone(),
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        Some(IsometryWitness {
            matrix: self.matrix.inverse()?,
            source: self.target.clone(),
            target: self.source.clone(),
        })
    }

    /// Checks values on basis vectors and pairwise sums (which pins the
    /// polar form), and invertibility.
    pub fn verify(&self) -> bool {
        let n = self.source.dim();
        if self.target.dim() != n || self.matrix.n() != n || self.matrix.inverse().is_none() {
            return false;
        }
        let f = self.source.field();
        let unit = |i: usize| -> Vec<FieldElement> { (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect() };
        for i in 0..n {
            for j in i..n {
                let mut v = unit(i);
                if j != i {
                    v[j] = f.one();
                }
                if self.target.eval(&self.matrix.apply(&v)) != self.source.eval(&v) {
                    return false;
                }
            }
        }
        true
    }
}
