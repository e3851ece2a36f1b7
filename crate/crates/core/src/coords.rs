//! Exact coordinates: rationals, points with a common denominator, and a
//! small amount of rational linear algebra.
//!
//! Every vector in this crate is written in the basis of fundamental
//! coweights, so that `<alpha_i, v> = v[i]` for the simple roots. Roots are
//! written in the basis of simple roots; the canonical pairing is then a dot
//! product.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Rational64;

/// Integer scalar as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, d)) => {
            let p = i64::from_str(p.trim()).map_err(|_| bad())?;
            let d = i64::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(p, d))
        }
        None => Ok(q(i64::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parse a comma separated list of rationals, e.g. `"1/2,0,-1"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_rational).collect()
}

/// Always `"p/q"`, with `q >= 1`.
pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn format_rational_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn integer_vec_to_q(v: &[i64]) -> Vec<Q> {
    v.iter().copied().map(q).collect()
}

/// A rational point stored as integer numerators over one positive
/// denominator. Kept in lowest terms so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    num: Vec<i64>,
    den: i64,
}

impl Point {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut p = Point { num, den };
        p.normalize();
        p
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Point {
            num: v.to_vec(),
            den: 1,
        }
    }

    pub fn from_rationals(v: &[Q]) -> Self {
        let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let num = v.iter().map(|x| x.numer() * (den / x.denom())).collect();
        Point::new(num, den)
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = self.num.iter().fold(self.den, |acc, x| acc.gcd(x));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|x| *x /= g);
        }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn to_rationals(&self) -> Vec<Q> {
        self.num.iter().map(|&x| Q::new(x, self.den)).collect()
    }

    /// Pairing with an integer covector, returned as numerator over
    /// [`Point::denominator`].
    #[inline]
    pub fn pair_numerator(&self, covector: &[i64]) -> i64 {
        covector.iter().zip(&self.num).map(|(a, b)| a * b).sum()
    }

    pub fn pair(&self, covector: &[i64]) -> Q {
        Q::new(self.pair_numerator(covector), self.den)
    }

    /// `floor(<covector, p>)` and whether the pairing is an integer.
    #[inline]
    pub fn floor_pair(&self, covector: &[i64]) -> (i64, bool) {
        let n = self.pair_numerator(covector);
        (n.div_euclid(self.den), n.rem_euclid(self.den) == 0)
    }

    /// `self + t * v` for an integer vector `v` and rational `t`.
    pub fn add_scaled(&self, v: &[i64], t: Q) -> Point {
        let den = self.den.lcm(t.denom());
        let a = den / self.den;
        let b = den / t.denom() * t.numer();
        let num = self.num.iter().zip(v).map(|(x, y)| x * a + y * b).collect();
        Point::new(num, den)
    }

    /// Apply `p -> M p + v` with integer matrix `M` (row major) and integer
    /// translation `v`.
    #[inline]
    pub fn affine_image(&self, mat: &[i64], v: &[i64]) -> Point {
        let n = self.num.len();
        let mut num = Vec::with_capacity(n);
        for i in 0..n {
            let row = &mat[i * n..(i + 1) * n];
            let s: i64 = row.iter().zip(&self.num).map(|(a, b)| a * b).sum();
            num.push(s + v[i] * self.den);
        }
        Point::new(num, self.den)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_rationals().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Inverse of a square rational matrix (row major), or `None` if singular.
pub fn invert(n: usize, mat: &[Q]) -> Option<Vec<Q>> {
    let mut a: Vec<Q> = mat.to_vec();
    let mut inv: Vec<Q> = (0..n * n)
        .map(|k| if k / n == k % n { Q::one() } else { Q::zero() })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
        }
        let p = a[col * n + col];
        for k in 0..n {
            a[col * n + k] /= p;
            inv[col * n + k] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col];
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let (x, y) = (a[col * n + k], inv[col * n + k]);
                a[r * n + k] -= f * x;
                inv[r * n + k] -= f * y;
            }
        }
    }
    Some(inv)
}

/// Row vector times matrix: `(x M)_k = sum_j x_j M[j][k]`.
pub fn row_times(n: usize, x: &[Q], mat: &[Q]) -> Vec<Q> {
    (0..n).map(|k| (0..n).map(|j| x[j] * mat[j * n + k]).sum()).collect()
}

pub fn int_matmul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn int_matvec(n: usize, a: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect()
}

pub fn rational_matvec(n: usize, a: &[i64], v: &[Q]) -> Vec<Q> {
    (0..n).map(|i| (0..n).map(|j| v[j] * a[i * n + j]).sum()).collect()
}

pub fn identity_matrix(n: usize) -> Vec<i64> {
    (0..n * n).map(|k| i64::from(k / n == k % n)).collect()
}

pub fn is_nonnegative(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
