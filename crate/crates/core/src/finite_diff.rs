//! Central differences with one Richardson step.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

pub const DEFAULT_STEP: f64 = 1e-3;
pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-2;

pub fn check_step(h: f64) -> Result<()> {
    if !(MIN_STEP..=MAX_STEP).contains(&h) {
        return Err(Error::StepOutOfRange(h));
    }
    Ok(())
}

/// `(4 D(h/2) − D(h)) / 3` with `D(h) = (f(h) − f(−h)) / 2h`, for a
/// function returning a complex vector.
pub fn richardson_vec<T, F>(h: T, mut f: F) -> Vec<Complex<T>>
where
    T: Real,
    F: FnMut(T) -> Vec<Complex<T>>,
{
    let half = h / T::lit(2.0);
    let central = |f: &mut F, s: T| -> Vec<Complex<T>> {
        let plus = f(s);
        let minus = f(-s);
        let inv = T::one() / (T::lit(2.0) * s);
        plus.iter().zip(&minus).map(|(p, m)| (*p - *m) * inv).collect()
    };
    let coarse = central(&mut f, h);
    let fine = central(&mut f, half);
    let three = T::lit(3.0);
    fine.iter()
        .zip(&coarse)
        .map(|(a, b)| (*a * T::lit(4.0) - *b) / three)
        .collect()
}

/// Matrix-valued variant of [`richardson_vec`].
pub fn richardson_mat<T, F>(h: T, mut f: F) -> CMatrix<T>
where
    T: Real,
    F: FnMut(T) -> CMatrix<T>,
{
    let shape = f(T::zero()).dim();
    let flat = richardson_vec(h, |s| f(s).iter().copied().collect());
    CMatrix::from_shape_vec(shape, flat).expect("shape preserved")
}

/// Scalar real variant.
pub fn richardson_real<T, F>(h: T, mut f: F) -> T
where
    T: Real,
    F: FnMut(T) -> T,
{
    richardson_vec(h, |s| vec![Complex::new(f(s), T::zero())])[0].re
}
