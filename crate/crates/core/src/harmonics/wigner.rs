//! Spin-`j` representations of SU(2) in the `|j, m⟩` basis, `m = j, …, −j`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::groups::SU2Element;
use crate::linalg::{self, CMatrix};
use crate::scalar::{imag_unit, Real};

/// Largest supported `2j`.
pub const MAX_TWO_J: u32 = 8;

fn check_two_j(two_j: u32) -> Result<()> {
    if two_j > MAX_TWO_J {
        return Err(Error::SpinOutOfRange(two_j));
    }
    Ok(())
}

/// Matrix of `g` in the spin-`j` representation. Row and column `i`
/// correspond to `m = j − i`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerD<T> {
    two_j: u32,
    d: CMatrix<T>,
}

impl<T: Real> WignerD<T> {
    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.d
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.d
    }

    /// Entry `D_{m'm}` addressed by magnetic quantum numbers doubled.
    pub fn entry(&self, two_mp: i32, two_m: i32) -> Complex<T> {
        let tj = self.two_j as i32;
        let row = ((tj - two_mp) / 2) as usize;
        let col = ((tj - two_m) / 2) as usize;
        self.d[[row, col]]
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn cpow<T: Real>(z: Complex<T>, k: usize) -> Complex<T> {
    (0..k).fold(Complex::new(T::one(), T::zero()), |acc, _| acc * z)
}

/// `D^j(g)` as the `2j`-th symmetric power of the defining representation.
///
/// With `g = ((a, b), (c, d))` acting on `ξ₁, ξ₂`, the monomial
/// `ξ₁^{n−i} ξ₂^i` maps to `(a ξ₁ + c ξ₂)^{n−i} (b ξ₁ + d ξ₂)^i`; rescaling to
/// the orthonormal basis `ξ₁^{j+m} ξ₂^{j−m} / √((j+m)!(j−m)!)` gives the
/// matrix below.
pub fn wigner_d<T: Real>(two_j: u32, g: &SU2Element<T>) -> Result<WignerD<T>> {
    check_two_j(two_j)?;
    let n = two_j as usize;
    let [[a, b], [c, d]] = g.matrix();
    let mut out = CMatrix::zeros((n + 1, n + 1));
    for i in 0..=n {
        for ip in 0..=n {
            let mut s = Complex::new(T::zero(), T::zero());
            // k: power of a; the partner power n − i' − k of b must lie in 0..=i.
            for k in 0..=(n - i) {
                if k + i + ip < n || n - ip < k || n - ip - k > i {
                    continue;
                }
                let l = n - ip - k;
                let coef = binomial(n - i, k) * binomial(i, l);
                let term = cpow(a, k) * cpow(c, n - i - k) * cpow(b, l) * cpow(d, i - l);
                s += term * T::lit(coef);
            }
            let norm = (factorial(n - ip) * factorial(ip) / (factorial(n - i) * factorial(i))).sqrt();
            out[[ip, i]] = s * T::lit(norm);
        }
    }
    Ok(WignerD { two_j, d: out })
}

/// Spin operators `S₁, S₂, S₃` for a given `j`, with `S₃ = diag(j, …, −j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinMatrices<T> {
    two_j: u32,
    s: [CMatrix<T>; 3],
}

impl<T: Real> SpinMatrices<T> {
    pub fn new(two_j: u32) -> Result<Self> {
        check_two_j(two_j)?;
        let n = two_j as usize + 1;
        let j = T::lit(two_j as f64 / 2.0);
        let mut plus = CMatrix::<T>::zeros((n, n));
        let mut s3 = CMatrix::<T>::zeros((n, n));
        for i in 0..n {
            let m = j - T::of(i);
            s3[[i, i]] = Complex::new(m, T::zero());
            if i > 0 {
                // S₊|m⟩ = √(j(j+1) − m(m+1)) |m+1⟩, and |m+1⟩ sits at row i − 1.
                let k = (j * (j + T::one()) - m * (m + T::one())).sqrt();
                plus[[i - 1, i]] = Complex::new(k, T::zero());
            }
        }
        let minus = linalg::adjoint(&plus);
        let half = T::lit(0.5);
        let s1 = (&plus + &minus).mapv(|z| z * half);
        let s2 = (&plus - &minus).mapv(|z| z * (-imag_unit::<T>() * half));
        Ok(Self { two_j, s: [s1, s2, s3] })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// `S_i` for `i = 1, 2, 3`.
    pub fn get(&self, i: usize) -> &CMatrix<T> {
        &self.s[i - 1]
    }

    pub fn raising(&self) -> CMatrix<T> {
        &self.s[0] + &self.s[1].mapv(|z| z * imag_unit::<T>())
    }
}
