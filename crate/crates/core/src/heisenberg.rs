//! Quantum mechanics on the line, sampled on a periodic grid: position and
//! momentum operators, the Weyl operators `U(a) = e^{−iap̂}` and
//! `V(b) = e^{−ibq̂}`, the Heisenberg group and its representation
//! `𝒰(a, b, r) = U(a)V(b)e^{iμ(r + ab/2)}`, the Groenewold–Van Hove
//! inconsistency and the failure of translations on the half-line.
//!
//! With `(U(a)ψ)(x) = ψ(x − ħa)` one has `U(a)V(b) = V(b)U(a)e^{iħab}`, so
//! the Weyl relation in the form `U(a)V(b) = V(b)U(a)e^{−iμab}` holds with
//! `μ = −ħ`. That choice also gives `[q̂, p̂] = iħ` from the Lie bracket.
//!
//! Everything is spectral, so translations are exact for band-limited data
//! as long as the wave packet stays away from the periodic boundary.

use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::Float;
use rustfft::{FftNum, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::{imag_unit, Real};

/// Largest relative mass allowed outside `|x| < L/2`.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Sampled wave function on `[−L, L)` with `N` points.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction<T> {
    half_width: T,
    hbar: T,
    values: Vec<Complex<T>>,
}

impl<T: Real + FftNum> GridWavefunction<T> {
    pub fn new(half_width: T, hbar: T, values: Vec<Complex<T>>) -> Result<Self> {
        let n = values.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::GridSize(n));
        }
        if !(half_width > T::zero() && hbar > T::zero()) {
            return Err(Error::Parse(format!("need L > 0 and hbar > 0, got {half_width}, {hbar}")));
        }
        Ok(Self { half_width, hbar, values })
    }

    pub fn from_fn<F: Fn(T) -> Complex<T>>(n: usize, half_width: T, hbar: T, f: F) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::GridSize(n));
        }
        let dx = T::lit(2.0) * half_width / T::of(n);
        let values = (0..n).map(|k| f(-half_width + dx * T::of(k))).collect();
        Self::new(half_width, hbar, values)
    }

    /// Normalized `e^{ik₀x} exp(−(x − x₀)²/4σ²)`, so `|ψ|²` has width `σ`.
    pub fn gaussian(n: usize, half_width: T, hbar: T, x0: T, sigma: T, k0: T) -> Result<Self> {
        let four = T::lit(4.0);
        let psi = Self::from_fn(n, half_width, hbar, |x| {
            let env = (-(x - x0) * (x - x0) / (four * sigma * sigma)).exp();
            Complex::from_polar(env, k0 * x)
        })?;
        let nrm = psi.norm();
        Ok(psi.scaled(Complex::new(T::one() / nrm, T::zero())))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn dx(&self) -> T {
        T::lit(2.0) * self.half_width / T::of(self.len())
    }

    pub fn positions(&self) -> Vec<T> {
        let dx = self.dx();
        (0..self.len()).map(|k| -self.half_width + dx * T::of(k)).collect()
    }

    fn with_values(&self, values: Vec<Complex<T>>) -> Self {
        Self { half_width: self.half_width, hbar: self.hbar, values }
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        self.with_values(self.values.iter().map(|v| *v * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| *a - *b).collect())
    }

    /// `⟨self, other⟩ = Δx Σ conj(self_k) other_k`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        let s = self.values.iter().zip(&other.values).fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * *b);
        s * self.dx()
    }

    pub fn norm(&self) -> T {
        (self.values.iter().fold(T::zero(), |s, v| s + v.norm_sqr()) * self.dx()).sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        self.sub(other).norm()
    }

    /// `∫_{x ∈ region} |ψ|² dx` over grid points selected by `keep`.
    pub fn mass_where<F: Fn(T) -> bool>(&self, keep: F) -> T {
        self.positions()
            .iter()
            .zip(&self.values)
            .filter(|(x, _)| keep(**x))
            .fold(T::zero(), |s, (_, v)| s + v.norm_sqr())
            * self.dx()
    }

    /// Relative mass outside `|x| < L/2`.
    pub fn boundary_mass(&self) -> T {
        let half = self.half_width / T::lit(2.0);
        let total = self.norm() * self.norm();
        if total == T::zero() {
            return T::zero();
        }
        self.mass_where(|x| Float::abs(x) >= half) / total
    }

    pub fn check_support(&self) -> Result<()> {
        let mass = self.boundary_mass();
        if mass > T::tol(SUPPORT_TOL) {
            return Err(Error::SupportViolation { mass: mass.to_f64_lossy() });
        }
        Ok(())
    }

    /// Header `# wavefunction N L hbar`, then one `re im` line per sample.
    pub fn to_text(&self) -> String {
        let mut s = format!("# wavefunction {} {:.16e} {:.16e}\n", self.len(), self.half_width, self.hbar);
        for v in &self.values {
            writeln!(s, "{:.16e} {:.16e}", v.re, v.im).expect("write to string");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 5 || f[0] != "#" || f[1] != "wavefunction" {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let bad = |what: &str| Error::Parse(format!("bad {what} in `{header}`"));
        let n: usize = f[2].parse().map_err(|_| bad("N"))?;
        let l: T = f[3].parse().map_err(|_| bad("L"))?;
        let hbar: T = f[4].parse().map_err(|_| bad("hbar"))?;
        let values = lines
            .map(|line| {
                let p: Vec<&str> = line.split_whitespace().collect();
                match p.as_slice() {
                    [re, im] => Ok(Complex::new(
                        re.parse().map_err(|_| Error::Parse(format!("bad value `{line}`")))?,
                        im.parse().map_err(|_| Error::Parse(format!("bad value `{line}`")))?,
                    )),
                    _ => Err(Error::Parse(format!("expected `re im`, got `{line}`"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        Self::new(l, hbar, values)
    }
}

/// Angular wavenumbers in FFT order; the Nyquist mode is mapped to zero so
/// odd derivatives of real data stay real.
fn wavenumbers<T: Real>(n: usize, half_width: T) -> Vec<T> {
    let base = T::PI() / half_width;
    (0..n)
        .map(|j| {
            if 2 * j == n {
                T::zero()
            } else if 2 * j < n {
                base * T::of(j)
            } else {
                -(base * T::of(n - j))
            }
        })
        .collect()
}

/// `F⁻¹[m(k) F[ψ]]`.
fn spectral_multiply<T, F>(psi: &GridWavefunction<T>, m: F) -> GridWavefunction<T>
where
    T: Real + FftNum,
    F: Fn(T) -> Complex<T>,
{
    let n = psi.len();
    let mut planner = FftPlanner::<T>::new();
    let mut buf = psi.values.clone();
    planner.plan_fft_forward(n).process(&mut buf);
    for (v, k) in buf.iter_mut().zip(wavenumbers(n, psi.half_width)) {
        *v *= m(k);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let inv = T::one() / T::of(n);
    psi.with_values(buf.into_iter().map(|v| v * inv).collect())
}

/// `q̂ψ = xψ`.
pub fn op_q<T: Real + FftNum>(psi: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
    psi.check_support()?;
    let values = psi.positions().iter().zip(&psi.values).map(|(x, v)| *v * *x).collect();
    Ok(psi.with_values(values))
}

/// `p̂ψ = −iħ ψ′`, spectrally.
pub fn op_p<T: Real + FftNum>(psi: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
    psi.check_support()?;
    let hbar = psi.hbar;
    Ok(spectral_multiply(psi, |k| Complex::new(hbar * k, T::zero())))
}

/// `U(a)ψ = ψ(· − ħa)`.
pub fn weyl_u<T: Real + FftNum>(a: T, psi: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
    psi.check_support()?;
    let shift = psi.hbar * a;
    if shift == T::zero() {
        // Skip the transform pair so that U(0) is the identity bit for bit.
        return Ok(psi.clone());
    }
    let out = spectral_multiply(psi, |k| Complex::from_polar(T::one(), -k * shift));
    out.check_support()?;
    Ok(out)
}

/// `V(b)ψ = e^{−ibx}ψ`.
pub fn weyl_v<T: Real + FftNum>(b: T, psi: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
    psi.check_support()?;
    let values = psi
        .positions()
        .iter()
        .zip(&psi.values)
        .map(|(x, v)| *v * Complex::from_polar(T::one(), -b * *x))
        .collect();
    Ok(psi.with_values(values))
}

/// The `μ` for which the Weyl relation holds with these operators.
pub fn weyl_mu<T: Real>(hbar: T) -> T {
    -hbar
}

/// `‖U(a)V(b)ψ − e^{−iμab} V(b)U(a)ψ‖ / ‖ψ‖` for an explicit `μ`.
pub fn weyl_residual_with_mu<T: Real + FftNum>(a: T, b: T, mu: T, psi: &GridWavefunction<T>) -> Result<T> {
    let lhs = weyl_u(a, &weyl_v(b, psi)?)?;
    let rhs = weyl_v(b, &weyl_u(a, psi)?)?.scaled(Complex::from_polar(T::one(), -mu * a * b));
    Ok(lhs.distance(&rhs) / psi.norm())
}

/// Weyl-relation residual with `μ = −ħ`.
pub fn check_weyl_relation<T: Real + FftNum>(a: T, b: T, psi: &GridWavefunction<T>) -> Result<T> {
    weyl_residual_with_mu(a, b, weyl_mu(psi.hbar), psi)
}

/// Element `(a, b, r)` of the Heisenberg group on `ℝⁿ × ℝⁿ × ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergElement<T> {
    pub a: Vec<T>,
    pub b: Vec<T>,
    pub r: T,
}

impl<T: Real> HeisenbergElement<T> {
    pub fn new(a: Vec<T>, b: Vec<T>, r: T) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        Ok(Self { a, b, r })
    }

    pub fn scalar(a: T, b: T, r: T) -> Self {
        Self { a: vec![a], b: vec![b], r }
    }

    pub fn identity(n: usize) -> Self {
        Self { a: vec![T::zero(); n], b: vec![T::zero(); n], r: T::zero() }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.a.iter().map(|x| -*x).collect(), b: self.b.iter().map(|x| -*x).collect(), r: -self.r }
    }

    /// `(a₁+a₂, b₁+b₂, r₁+r₂+½(b₁·a₂ − b₂·a₁))`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let dot = |u: &[T], v: &[T]| u.iter().zip(v).fold(T::zero(), |s, (x, y)| s + *x * *y);
        let a = self.a.iter().zip(&other.a).map(|(x, y)| *x + *y).collect();
        let b = self.b.iter().zip(&other.b).map(|(x, y)| *x + *y).collect();
        let twist = (dot(&self.b, &other.a) - dot(&other.b, &self.a)) / T::lit(2.0);
        Ok(Self { a, b, r: self.r + other.r + twist })
    }

    /// `e₁e₂e₁⁻¹e₂⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.product(other)?.product(&self.inverse())?.product(&other.inverse())
    }

    pub fn distance(&self, other: &Self) -> T {
        let d = |u: &[T], v: &[T]| u.iter().zip(v).fold(T::zero(), |m, (x, y)| m.max(Float::abs(*x - *y)));
        d(&self.a, &other.a).max(d(&self.b, &other.b)).max(Float::abs(self.r - other.r))
    }
}

/// `𝒰(a, b, r)ψ = U(a)V(b)e^{iμ(r + ab/2)}ψ` with `μ = −ħ`; one dimension.
pub fn rep_heisenberg<T: Real + FftNum>(
    e: &HeisenbergElement<T>,
    psi: &GridWavefunction<T>,
) -> Result<GridWavefunction<T>> {
    rep_heisenberg_with_mu(e, weyl_mu(psi.hbar), psi)
}

pub fn rep_heisenberg_with_mu<T: Real + FftNum>(
    e: &HeisenbergElement<T>,
    mu: T,
    psi: &GridWavefunction<T>,
) -> Result<GridWavefunction<T>> {
    if e.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: e.dim() });
    }
    let (a, b) = (e.a[0], e.b[0]);
    let phase = Complex::from_polar(T::one(), mu * (e.r + a * b / T::lit(2.0)));
    weyl_u(a, &weyl_v(b, &psi.scaled(phase))?)
}

/// `‖𝒰(e₁)𝒰(e₂)ψ − 𝒰(e₁e₂)ψ‖ / ‖ψ‖`.
pub fn check_rep_homomorphism<T: Real + FftNum>(
    e1: &HeisenbergElement<T>,
    e2: &HeisenbergElement<T>,
    psi: &GridWavefunction<T>,
) -> Result<T> {
    let lhs = rep_heisenberg(e1, &rep_heisenberg(e2, psi)?)?;
    let rhs = rep_heisenberg(&e1.product(e2)?, psi)?;
    Ok(lhs.distance(&rhs) / psi.norm())
}

/// `‖[q̂, p̂]ψ − iħψ‖ / ‖ψ‖`.
pub fn ccr_residual<T: Real + FftNum>(psi: &GridWavefunction<T>) -> Result<T> {
    let qp = op_q(&op_p(psi)?)?;
    let pq = op_p(&op_q(psi)?)?;
    let want = psi.scaled(imag_unit::<T>() * psi.hbar);
    Ok(qp.sub(&pq).distance(&want) / psi.norm())
}

/// `⟨ψ, Aψ⟩ / ⟨ψ, ψ⟩`, real part.
pub fn expectation<T: Real + FftNum>(psi: &GridWavefunction<T>, a_psi: &GridWavefunction<T>) -> T {
    psi.inner(a_psi).re / (psi.norm() * psi.norm())
}

/// Outcome of comparing the two quantizations of `(pq)²`.
#[derive(Debug, Clone)]
pub struct GvhReport<T> {
    /// `(sym(pq))²ψ − (p̂²q̂² + 2iħp̂q̂ − ħ²)ψ`.
    pub difference: GridWavefunction<T>,
    /// Least-squares constant `c` in `difference ≈ cψ`.
    pub constant: T,
    /// `|⟨ψ, d⟩| / (‖ψ‖‖d‖)`.
    pub correlation: T,
    /// `‖sym(pq)²ψ − (p̂²q̂² + 2iħp̂q̂ − ¼ħ²)ψ‖ / ‖ψ‖`.
    pub expansion_residual: T,
}

/// Applies `sym(pq) = (p̂q̂ + q̂p̂)/2` twice and compares with both expanded
/// forms. The difference is `(3/4)ħ²ψ`.
pub fn gvh_discrepancy<T: Real + FftNum>(psi: &GridWavefunction<T>) -> Result<GvhReport<T>> {
    let hbar = psi.hbar;
    let half = Complex::new(T::lit(0.5), T::zero());
    let sym = |f: &GridWavefunction<T>| -> Result<GridWavefunction<T>> {
        Ok(op_p(&op_q(f)?)?.add(&op_q(&op_p(f)?)?).scaled(half))
    };
    let route1 = sym(&sym(psi)?)?;
    let pq = op_p(&op_q(psi)?)?;
    let ppqq = op_p(&op_p(&op_q(&op_q(psi)?)?)?)?;
    let base = ppqq.add(&pq.scaled(imag_unit::<T>() * (T::lit(2.0) * hbar)));
    let h2 = Complex::new(hbar * hbar, T::zero());
    let expanded1 = base.sub(&psi.scaled(h2 * T::lit(0.25)));
    let route2 = base.sub(&psi.scaled(h2));
    let difference = route1.sub(&route2);
    let nn = psi.norm() * psi.norm();
    let overlap = psi.inner(&difference);
    Ok(GvhReport {
        constant: overlap.re / nn,
        correlation: overlap.norm() / (psi.norm() * difference.norm()),
        expansion_residual: route1.distance(&expanded1) / psi.norm(),
        difference,
    })
}

/// Mass pushed out of the half-line by a translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineReport<T> {
    pub shift: T,
    /// `∫_{x<0} |U(a)ψ|² dx / ‖ψ‖²`.
    pub escaped_mass: T,
}

/// Translates a packet living on `x > 0` by `ħa` and reports how much of it
/// ends up at `x < 0`, i.e. outside the half-line. Negative `a` moves the
/// packet towards the origin.
pub fn halfline_breakdown_demo<T: Real + FftNum>(a: T, psi: &GridWavefunction<T>) -> Result<HalfLineReport<T>> {
    let total = psi.norm() * psi.norm();
    let outside = psi.mass_where(|x| x <= T::zero()) / total;
    if outside > T::tol(SUPPORT_TOL) {
        return Err(Error::SupportViolation { mass: outside.to_f64_lossy() });
    }
    let moved = weyl_u(a, psi)?;
    Ok(HalfLineReport { shift: psi.hbar * a, escaped_mass: moved.mass_where(|x| x < T::zero()) / total })
}
