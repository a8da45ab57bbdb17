use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::elim::{self, Modp, Rat};
use super::{FieldSpec, IndexSet, Prime, Residue, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Rational(Vec<BigRational>),
    Residue(Vec<u64>),
}

/// A dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Entries,
}

/// Outcome of classifying the linear system `A x = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Consistency {
    UniqueSolution,
    AffineSolutionSpace { dim: usize },
    Inconsistent,
}

impl Consistency {
    /// Dimension of the solution set, `-1` if empty.
    pub fn dimension(self) -> i64 {
        match self {
            Consistency::UniqueSolution => 0,
            Consistency::AffineSolutionSpace { dim } => dim as i64,
            Consistency::Inconsistent => -1,
        }
    }
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self::from_fn(field, rows, cols, |_, _| 0)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| (i == j) as i64)
    }

    /// Builds a matrix from integer entries, reduced into the field.
    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let values = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j)));
        let entries = match field {
            FieldSpec::Rationals => Entries::Rational(
                values.map(|(i, j)| BigRational::from_integer(f(i, j).into())).collect(),
            ),
            FieldSpec::PrimeField(p) => Entries::Residue(
                values.map(|(i, j)| Residue::new(f(i, j), p).value()).collect(),
            ),
        };
        Matrix { rows, cols, field, entries }
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| rows[i][j]))
    }

    pub fn from_scalars(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        scalars: Vec<Scalar>,
    ) -> Result<Self> {
        if scalars.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                scalars.len()
            )));
        }
        if let Some(s) = scalars.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: s.field() });
        }
        let entries = match field {
            FieldSpec::Rationals => Entries::Rational(
                scalars
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Rational(q) => q,
                        Scalar::Residue(_) => unreachable!(),
                    })
                    .collect(),
            ),
            FieldSpec::PrimeField(_) => Entries::Residue(
                scalars
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Residue(r) => r.value(),
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect(),
            ),
        };
        Ok(Matrix { rows, cols, field, entries })
    }

    /// A `d x 1` column vector.
    pub fn column(field: FieldSpec, values: Vec<Scalar>) -> Result<Self> {
        let n = values.len();
        Self::from_scalars(field, n, 1, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn prime(&self) -> Prime {
        match self.field {
            FieldSpec::PrimeField(p) => p,
            FieldSpec::Rationals => unreachable!("rational matrix has no modulus"),
        }
    }

    /// Entry at 0-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "({i},{j}) outside {}x{}", self.rows, self.cols);
        let idx = i * self.cols + j;
        match &self.entries {
            Entries::Rational(v) => Scalar::Rational(v[idx].clone()),
            Entries::Residue(v) => {
                Scalar::Residue(Residue::new(v[idx] as i64, self.prime()))
            }
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        let idx = i * self.cols + j;
        match &self.entries {
            Entries::Rational(v) => v[idx].is_zero(),
            Entries::Residue(v) => v[idx] == 0,
        }
    }

    pub fn scalars(&self) -> Vec<Scalar> {
        (0..self.rows).flat_map(|i| (0..self.cols).map(move |j| (i, j))).map(|(i, j)| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Rational(v) => v.iter().all(Zero::is_zero),
            Entries::Residue(v) => v.iter().all(|&x| x == 0),
        }
    }

    fn map_indexed(&self, rows: usize, cols: usize, index: impl Fn(usize, usize) -> usize) -> Matrix {
        let idx = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j)));
        let entries = match &self.entries {
            Entries::Rational(v) => Entries::Rational(idx.map(|(i, j)| v[index(i, j)].clone()).collect()),
            Entries::Residue(v) => Entries::Residue(idx.map(|(i, j)| v[index(i, j)]).collect()),
        };
        Matrix { rows, cols, field: self.field, entries }
    }

    pub fn transpose(&self) -> Matrix {
        let cols = self.cols;
        self.map_indexed(self.cols, self.rows, |i, j| j * cols + i)
    }

    /// `M[I x J]`: rows from `rows`, columns from `cols`, in increasing order.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Matrix> {
        if rows.ambient() != self.rows || cols.ambient() != self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "index sets over [{}]x[{}] applied to a {}x{} matrix",
                rows.ambient(),
                cols.ambient(),
                self.rows,
                self.cols
            )));
        }
        let r: Vec<usize> = rows.positions().collect();
        let c: Vec<usize> = cols.positions().collect();
        let width = self.cols;
        Ok(self.map_indexed(r.len(), c.len(), |i, j| r[i] * width + c[j]))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.ensure_same(other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Matrix,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(u64, u64, u64) -> u64,
    ) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let entries = match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                Entries::Rational(a.iter().zip(b).map(|(x, y)| rat(x, y)).collect())
            }
            (Entries::Residue(a), Entries::Residue(b)) => {
                let p = self.prime().get();
                Entries::Residue(a.iter().zip(b).map(|(&x, &y)| res(x, y, p)).collect())
            }
            _ => unreachable!("fields already checked"),
        };
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b, |a, b, p| (a + b) % p)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }

    pub fn neg(&self) -> Matrix {
        let entries = match &self.entries {
            Entries::Rational(v) => Entries::Rational(v.iter().map(|x| -x).collect()),
            Entries::Residue(v) => {
                let p = self.prime().get();
                Entries::Residue(v.iter().map(|&x| (p - x) % p).collect())
            }
        };
        Matrix { entries, ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        self.field.ensure_same(c.field())?;
        let entries = match (&self.entries, c) {
            (Entries::Rational(v), Scalar::Rational(q)) => {
                Entries::Rational(v.iter().map(|x| x * q).collect())
            }
            (Entries::Residue(v), Scalar::Residue(r)) => {
                let p = self.prime().get();
                Entries::Residue(v.iter().map(|&x| x * r.value() % p).collect())
            }
            _ => unreachable!("fields already checked"),
        };
        Ok(Matrix { entries, ..self.clone() })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.ensure_same(other.field)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, l) = (self.rows, self.cols, other.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => Entries::Rational(
                (0..n * l)
                    .map(|idx| {
                        let (i, j) = (idx / l, idx % l);
                        (0..m).fold(BigRational::zero(), |acc, t| acc + &a[i * m + t] * &b[t * l + j])
                    })
                    .collect(),
            ),
            (Entries::Residue(a), Entries::Residue(b)) => {
                let p = self.prime().get();
                Entries::Residue(
                    (0..n * l)
                        .map(|idx| {
                            let (i, j) = (idx / l, idx % l);
                            (0..m).fold(0, |acc, t| (acc + a[i * m + t] * b[t * l + j]) % p)
                        })
                        .collect(),
                )
            }
            _ => unreachable!("fields already checked"),
        };
        Ok(Matrix { rows: n, cols: l, field: self.field, entries })
    }

    /// Concatenates matrices with equal row counts left to right.
    pub fn hstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let first = blocks.first().ok_or(Error::EmptyFamily)?;
        let rows = first.rows;
        for b in blocks {
            first.field.ensure_same(b.field)?;
            if b.rows != rows {
                return Err(Error::ShapeMismatch("hstack with unequal row counts".into()));
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut scalars = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                scalars.extend((0..b.cols).map(|j| b.get(i, j)));
            }
        }
        Matrix::from_scalars(first.field, rows, cols, scalars)
    }

    /// Concatenates matrices with equal column counts top to bottom.
    pub fn vstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let t: Vec<Matrix> = blocks.iter().map(|b| b.transpose()).collect();
        let refs: Vec<&Matrix> = t.iter().collect();
        Ok(Matrix::hstack(&refs)?.transpose())
    }

    /// Exact determinant. Fraction-free Bareiss elimination over the integers
    /// (after clearing denominators) for ℚ, Gaussian elimination for 𝔽ₚ.
    /// The `0 x 0` determinant is 1.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        Ok(match &self.entries {
            Entries::Rational(v) => {
                let (ints, scale) = elim::clear_denominators(n, n, v);
                let d: BigInt = elim::bareiss_det(n, ints);
                Scalar::Rational(BigRational::new(d, scale))
            }
            Entries::Residue(v) => {
                let p = self.prime();
                let d = elim::gauss_det(&Modp(p.get()), n, v.clone());
                Scalar::Residue(Residue::new(d as i64, p))
            }
        })
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(!self.det()?.is_zero())
    }

    /// Exact rank by Gaussian elimination over the matrix's field.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match &self.entries {
            Entries::Rational(v) => {
                elim::gauss(&Rat, self.rows, self.cols, &mut v.clone(), false).pivots.len()
            }
            Entries::Residue(v) => {
                let p = self.prime().get();
                elim::gauss(&Modp(p), self.rows, self.cols, &mut v.clone(), false).pivots.len()
            }
        }
    }

    /// A basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rows, cols) = (self.rows, self.cols);
        let (rref, pivots) = match &self.entries {
            Entries::Rational(v) => {
                let mut data = v.clone();
                let e = elim::gauss(&Rat, rows, cols, &mut data, true);
                (Matrix { entries: Entries::Rational(data), ..self.clone() }, e.pivots)
            }
            Entries::Residue(v) => {
                let mut data = v.clone();
                let e = elim::gauss(&Modp(self.prime().get()), rows, cols, &mut data, true);
                (Matrix { entries: Entries::Residue(data), ..self.clone() }, e.pivots)
            }
        };
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![Scalar::zero(self.field); cols];
                x[fc] = Scalar::one(self.field);
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = rref.get(r, fc).neg();
                }
                x
            })
            .collect()
    }
}

/// Classifies `A x = b` for an `r x c` matrix `A` and an `r x 1` column `b`:
/// unique iff `rank(A) = c`, otherwise an affine space of dimension
/// `c - rank(A)` iff `rank([A | b]) = rank(A)`, otherwise inconsistent.
pub fn solve_consistency(a: &Matrix, b: &Matrix) -> Result<Consistency> {
    a.field.ensure_same(b.field)?;
    if b.cols != 1 || b.rows != a.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side {}x{} for a {}x{} system",
            b.rows, b.cols, a.rows, a.cols
        )));
    }
    let rank = a.rank();
    let augmented = Matrix::hstack(&[a, b])?.rank();
    Ok(if augmented != rank {
        Consistency::Inconsistent
    } else if rank == a.cols {
        Consistency::UniqueSolution
    } else {
        Consistency::AffineSolutionSpace { dim: a.cols - rank }
    })
}
