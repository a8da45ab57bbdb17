//! Elimination kernels shared by the matrix operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::inv_mod;

/// Field arithmetic over an element type with an external context (the
/// modulus for 𝔽ₚ).
pub(crate) trait Arith {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
}

pub(crate) struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
}

pub(crate) struct Modp(pub u64);

impl Arith for Modp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let p = self.0;
        (a + p - b * c % p) % p
    }
}

pub(crate) struct Echelon<E> {
    pub pivots: Vec<usize>,
    pub swaps: usize,
    /// Product of the pivots as found, before any normalization.
    pub pivot_product: E,
}

/// In-place Gaussian elimination on a row-major `rows x cols` array.
///
/// With `reduce` the result is the reduced row echelon form (pivots scaled to
/// one, eliminated above and below); otherwise a plain row echelon form.
pub(crate) fn gauss<F: Arith>(
    f: &F,
    rows: usize,
    cols: usize,
    data: &mut [F::E],
    reduce: bool,
) -> Echelon<F::E> {
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut product = f.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        product = f.mul(&product, &data[r * cols + c]);
        if reduce {
            let inv = f.inv(&data[r * cols + c]);
            for j in c..cols {
                data[r * cols + j] = f.mul(&data[r * cols + j], &inv);
            }
        }
        let pivot_inv = f.inv(&data[r * cols + c]);
        for i in (0..rows).filter(|&i| if reduce { i != r } else { i > r }) {
            let lead = &data[i * cols + c];
            if f.is_zero(lead) {
                continue;
            }
            let factor = f.mul(lead, &pivot_inv);
            for j in c..cols {
                let v = f.sub_mul(&data[i * cols + j], &factor, &data[r * cols + j]);
                data[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { pivots, swaps, pivot_product: product }
}

/// Determinant of a square matrix by Gaussian elimination.
pub(crate) fn gauss_det<F: Arith>(f: &F, n: usize, mut data: Vec<F::E>) -> F::E {
    let e = gauss(f, n, n, &mut data, false);
    if e.pivots.len() < n {
        return f.zero();
    }
    if e.swaps % 2 == 1 {
        f.neg(&e.pivot_product)
    } else {
        e.pivot_product
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub(crate) fn bareiss_det(n: usize, mut a: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                // exact by Sylvester's identity
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Scales every row of a rational matrix to integers. Returns the integer
/// matrix and the product of the row multipliers.
pub(crate) fn clear_denominators(
    rows: usize,
    cols: usize,
    data: &[BigRational],
) -> (Vec<BigInt>, BigInt) {
    let mut out = Vec::with_capacity(rows * cols);
    let mut scale = BigInt::one();
    for i in 0..rows {
        let row = &data[i * cols..(i + 1) * cols];
        let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        out.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
        scale *= lcm;
    }
    debug_assert!(scale.is_positive());
    (out, scale)
}
