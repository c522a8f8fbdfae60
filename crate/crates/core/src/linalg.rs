//! Exact linear algebra, generic over the scalar.
//!
//! Elimination routines are written against [`Field`] (implemented by
//! `BigRational`, the prime field [`Fp`] and, for completeness, floats) or
//! against [`ExactInt`] for fraction-free integer work, which runs on `i64`
//! and falls back to `BigInt` when an intermediate value overflows.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Kronecker product; entry `((i,k),(j,l))` sits at row `i·rows(B)+k`.
    pub fn kron(&self, other: &Self) -> Self
    where
        T: Mul<Output = T>,
    {
        let (r, c) = (other.rows, other.cols);
        DenseMatrix::from_fn(self.rows * r, self.cols * c, |i, j| {
            self[(i / r, j / c)].clone() * other[(i % r, j % c)].clone()
        })
    }

    pub fn sum(&self) -> T
    where
        T: Zero,
    {
        self.data.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

impl<T: Clone + Zero + One> DenseMatrix<T> {
    pub fn identity(n: usize) -> Self {
        DenseMatrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Clone + Zero + Mul<Output = T>> DenseMatrix<T> {
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = DenseMatrix::filled(self.rows, other.cols, T::zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl<T: Clone + Add<Output = T>> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn add(self, rhs: Self) -> DenseMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Clone + Sub<Output = T>> Sub for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn sub(self, rhs: Self) -> DenseMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Debug> Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Field operations needed by Gaussian elimination.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T>
{
}

/// Integers modulo the Mersenne prime `2^61 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(Self::MODULUS as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(self) -> i64 {
        if self.0 > Self::MODULUS / 2 {
            self.0 as i64 - Self::MODULUS as i64
        } else {
            self.0 as i64
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self, Fp(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(Self::MODULUS - 2))
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { Self::MODULUS - self.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let x = self.0 as u128 * rhs.0 as u128;
        let folded = (x as u64 & Self::MODULUS) + (x >> 61) as u64;
        Fp(if folded >= Self::MODULUS { folded - Self::MODULUS } else { folded })
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

/// Gauss–Jordan elimination with first-nonzero pivoting. Returns the
/// determinant and, when it is nonzero, the inverse.
pub fn gauss_jordan<F: Field>(m: &DenseMatrix<F>) -> (F, Option<DenseMatrix<F>>) {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = DenseMatrix::<F>::identity(n);
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return (F::zero(), None);
        };
        if p != k {
            swap_rows(&mut a, p, k);
            swap_rows(&mut inv, p, k);
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        det = det * pivot.clone();
        let scale = F::one() / pivot;
        for j in 0..n {
            a[(k, j)] = a[(k, j)].clone() * scale.clone();
            inv[(k, j)] = inv[(k, j)].clone() * scale.clone();
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                let (ak, ik) = (a[(k, j)].clone(), inv[(k, j)].clone());
                if !ak.is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * ak;
                }
                if !ik.is_zero() {
                    inv[(i, j)] = inv[(i, j)].clone() - f.clone() * ik;
                }
            }
        }
    }
    (det, Some(inv))
}

pub fn determinant<F: Field>(m: &DenseMatrix<F>) -> F {
    gauss_jordan(m).0
}

/// Rank by row reduction over a field.
pub fn rank<F: Field>(m: &DenseMatrix<F>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, p, r);
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone() / pivot.clone();
            for j in c..cols {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn swap_rows<T>(m: &mut DenseMatrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    let cols = m.cols;
    for j in 0..cols {
        m.data.swap(a * cols + j, b * cols + j);
    }
}

/// Integer scalars for fraction-free elimination. Operations return `None`
/// on overflow so callers can retry with a wider type.
pub trait ExactInt: Clone + PartialEq + Debug + Integer + Signed {
    /// `(a·b − c·d) / e`, where the division is known to be exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    /// `a·b − c·d`.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i64 {
    fn cross_div(a: &i64, b: &i64, c: &i64, d: &i64, e: &i64) -> Option<i64> {
        let v = (*a as i128) * (*b as i128) - (*c as i128) * (*d as i128);
        i64::try_from(v / *e as i128).ok()
    }
    fn cross(a: &i64, b: &i64, c: &i64, d: &i64) -> Option<i64> {
        i64::try_from((*a as i128) * (*b as i128) - (*c as i128) * (*d as i128)).ok()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn cross_div(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, e: &BigInt) -> Option<BigInt> {
        Some((a * b - c * d) / e)
    }
    fn cross(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<BigInt> {
        Some(a * b - c * d)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Bareiss fraction-free determinant. `None` means an intermediate minor
/// overflowed `T`.
pub fn bareiss_determinant<T: ExactInt>(m: &DenseMatrix<T>) -> Option<T> {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return Some(T::one());
    }
    let mut a = m.clone();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Some(T::zero());
            };
            swap_rows(&mut a, p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = T::cross_div(&a[(i, j)], &a[(k, k)], &a[(i, k)], &a[(k, j)], &prev)?;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Some(if negate { -det } else { det })
}

/// Exact determinant of an integer matrix, widening to `BigInt` on overflow.
pub fn integer_determinant(m: &DenseMatrix<i64>) -> BigInt {
    match bareiss_determinant(m) {
        Some(d) => BigInt::from(d),
        None => bareiss_determinant(&m.map(|&v| BigInt::from(v))).expect("BigInt does not overflow"),
    }
}

/// Sparse column `(row, value)` list, sorted by row.
pub type SparseColumn<T> = Vec<(usize, T)>;

/// Rank over the rationals by fraction-free column reduction on the lowest
/// nonzero entry. `None` on overflow of `T`.
pub fn column_reduction_rank<T: ExactInt>(mut cols: Vec<SparseColumn<T>>) -> Option<usize> {
    use std::collections::HashMap;
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let Some((low, a)) = cols[j].last().cloned() else {
                break;
            };
            let Some(&i) = owner.get(&low) else {
                owner.insert(low, j);
                rank += 1;
                break;
            };
            let p = cols[i].last().unwrap().1.clone();
            let g = p.gcd(&a);
            let (pj, ai) = (p.div_floor(&g), a.div_floor(&g));
            let reduced = combine(&cols[j], &pj, &cols[i], &ai)?;
            cols[j] = reduced;
        }
    }
    Some(rank)
}

/// `s·x − t·y`, dropping zeros and dividing out the content.
fn combine<T: ExactInt>(x: &SparseColumn<T>, s: &T, y: &SparseColumn<T>, t: &T) -> Option<SparseColumn<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::zero();
    while i < x.len() || j < y.len() {
        let rx = x.get(i).map_or(usize::MAX, |e| e.0);
        let ry = y.get(j).map_or(usize::MAX, |e| e.0);
        let (row, v) = if rx < ry {
            i += 1;
            (rx, T::cross(&x[i - 1].1, s, &zero, &zero)?)
        } else if ry < rx {
            j += 1;
            (ry, T::cross(&zero, &zero, &y[j - 1].1, t)?)
        } else {
            i += 1;
            j += 1;
            (rx, T::cross(&x[i - 1].1, s, &y[j - 1].1, t)?)
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    let content = out.iter().fold(T::zero(), |g, (_, v)| g.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for e in &mut out {
            e.1 = e.1.div_floor(&content);
        }
    }
    Some(out)
}

/// Exact rank of an integer matrix given as sparse columns.
pub fn exact_rank(cols: &[SparseColumn<i64>]) -> usize {
    match column_reduction_rank(cols.to_vec()) {
        Some(r) => r,
        None => {
            let wide = cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, BigInt::from(*v))).collect())
                .collect();
            column_reduction_rank::<BigInt>(wide).expect("BigInt does not overflow")
        }
    }
}

pub fn dense_to_columns(m: &DenseMatrix<i64>) -> Vec<SparseColumn<i64>> {
    (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| m[(i, j)] != 0).map(|i| (i, m[(i, j)])).collect())
        .collect()
}

/// Inverse of a matrix with determinant ±1, returned with the sign of the
/// determinant. The inverse is computed modulo a 61-bit prime, lifted to
/// symmetric representatives and certified by checking `M·G = I` over the
/// integers; if that check fails the work is redone over the rationals.
pub fn unimodular_inverse(m: &DenseMatrix<i64>) -> Result<(DenseMatrix<i64>, i8)> {
    assert!(m.is_square());
    let n = m.rows();
    let (det, inv) = gauss_jordan(&m.map(|&v| Fp::new(v)));
    let sign = match det.symmetric() {
        1 => 1i8,
        -1 => -1i8,
        _ => return Err(Error::NotUnimodular),
    };
    let inv = inv.expect("nonzero determinant has an inverse");
    let candidate = inv.map(|v| v.symmetric());
    if is_inverse(m, &candidate) {
        return Ok((candidate, sign));
    }

    let (det, inv) = gauss_jordan(&m.map(|&v| BigRational::from_integer(BigInt::from(v))));
    if det.abs() != BigRational::one() {
        return Err(Error::NotUnimodular);
    }
    let inv = inv.expect("unit determinant");
    let mut out = DenseMatrix::filled(n, n, 0i64);
    for i in 0..n {
        for j in 0..n {
            let v = &inv[(i, j)];
            if !v.is_integer() {
                return Err(Error::Invalid("inverse of a unimodular matrix must be integral".into()));
            }
            out[(i, j)] = v
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Invalid("inverse entry exceeds 64 bits".into()))?;
        }
    }
    Ok((out, sign))
}

fn is_inverse(m: &DenseMatrix<i64>, g: &DenseMatrix<i64>) -> bool {
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let mut acc: i128 = 0;
            for k in 0..n {
                acc += m[(i, k)] as i128 * g[(k, j)] as i128;
            }
            if acc != (i == j) as i128 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn random_int(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> DenseMatrix<i64> {
        DenseMatrix::from_fn(n, n, |_, _| rng.random_range(lo..=hi))
    }

    /// Leibniz expansion over all permutations, as an independent oracle.
    fn leibniz(m: &DenseMatrix<i64>) -> BigInt {
        fn perms(k: usize, used: &mut Vec<bool>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if acc.len() == k {
                out.push(acc.clone());
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    acc.push(i);
                    perms(k, used, acc, out);
                    acc.pop();
                    used[i] = false;
                }
            }
        }
        let n = m.rows();
        let mut all = Vec::new();
        perms(n, &mut vec![false; n], &mut Vec::new(), &mut all);
        let mut total = BigInt::zero();
        for p in all {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut prod = BigInt::one();
            for (i, &pi) in p.iter().enumerate() {
                prod *= m[(i, pi)];
            }
            if inversions % 2 == 1 {
                prod = -prod;
            }
            total += prod;
        }
        total
    }

    #[test]
    fn determinants_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.random_range(1..=6);
            let m = random_int(&mut rng, n, -3, 3);
            let expect = leibniz(&m);
            assert_eq!(integer_determinant(&m), expect);
            let rational = determinant(&m.map(|&v| q(v)));
            assert_eq!(rational, BigRational::from_integer(expect.clone()));
            assert_eq!(determinant(&m.map(|&v| Fp::new(v))), Fp::new((expect % Fp::MODULUS as i64).to_i64().unwrap()));
        }
    }

    #[test]
    fn bareiss_widening() {
        let big = 3_000_000_000i64;
        let m = DenseMatrix::from_fn(3, 3, |i, j| if i == j { big } else { (i + j) as i64 });
        assert!(bareiss_determinant(&m).is_none());
        let expect = leibniz(&m);
        assert_eq!(integer_determinant(&m), expect);
    }

    #[test]
    fn ranks_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let (r, c) = (rng.random_range(1..=7), rng.random_range(1..=7));
            let k = rng.random_range(1..=r.min(c));
            let a = DenseMatrix::from_fn(r, k, |_, _| rng.random_range(-2..=2i64));
            let b = DenseMatrix::from_fn(k, c, |_, _| rng.random_range(-2..=2i64));
            let m = a.matmul(&b);
            let expect = rank(&m.map(|&v| q(v)));
            assert!(expect <= k);
            assert_eq!(exact_rank(&dense_to_columns(&m)), expect);
        }
    }

    #[test]
    fn unimodular_inverse_is_certified() {
        // Upper unitriangular times lower unitriangular is unimodular.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.random_range(1..=8);
            let u = DenseMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Less => rng.random_range(-2..=2),
                _ => 0,
            });
            let l = u.transpose();
            let mut m = u.matmul(&l);
            if rng.random_bool(0.5) {
                for j in 0..n {
                    m[(0, j)] = -m[(0, j)];
                }
            }
            let (g, sign) = unimodular_inverse(&m).unwrap();
            assert_eq!(m.matmul(&g), DenseMatrix::identity(n));
            assert_eq!(BigInt::from(sign), integer_determinant(&m));
        }
        let singular = DenseMatrix::from_fn(2, 2, |_, _| 1i64);
        assert!(matches!(unimodular_inverse(&singular), Err(Error::NotUnimodular)));
        let two = DenseMatrix::from_fn(1, 1, |_, _| 2i64);
        assert!(matches!(unimodular_inverse(&two), Err(Error::NotUnimodular)));
    }

    #[test]
    fn kron_and_identity() {
        let a = DenseMatrix::from_fn(2, 2, |i, j| (i * 2 + j) as i64);
        let i2 = DenseMatrix::<i64>::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(2, 2)], 3);
        assert_eq!(k[(2, 3)], 0);
        assert_eq!(k.sum(), a.sum() * 2);
    }
}
