//! Complex spherical harmonics (Condon–Shortley phase), quadrature
//! analysis and synthesis, the even/odd splitting of functions on the
//! sphere, exact angular-momentum operators, and rotations of coefficient
//! tables.

pub mod wigner;

use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::groups::{spinor_map, SU2Element, SpherePoint};
use crate::linalg::{CMatrix, Vec3};
use crate::manifold::QuadratureGrid;
use crate::scalar::{imag_unit, Real};

/// Stray coefficients allowed in a sector-tagged table.
pub const SECTOR_TOL: f64 = 1e-14;

/// Leakage allowed by [`rotate_coeffs`] before it refuses to project.
pub const ROTATION_LEAKAGE_TOL: f64 = 1e-10;

/// Parity class of a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Only even `ℓ`: functions with `f(−x) = f(x)`.
    Even,
    /// Only odd `ℓ`: functions with `f(−x) = −f(x)`.
    Odd,
    Full,
}

impl Sector {
    pub fn allows(self, l: usize) -> bool {
        match self {
            Sector::Even => l.is_multiple_of(2),
            Sector::Odd => l % 2 == 1,
            Sector::Full => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::Even => "even",
            Sector::Odd => "odd",
            Sector::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Sector::Even),
            "odd" => Ok(Sector::Odd),
            "full" => Ok(Sector::Full),
            other => Err(Error::Parse(format!("unknown sector `{other}`"))),
        }
    }

    /// Sector of `ℓ`.
    pub fn of_degree(l: usize) -> Self {
        if l.is_multiple_of(2) {
            Sector::Even
        } else {
            Sector::Odd
        }
    }
}

/// Position of `(ℓ, m)` in a flat table.
#[inline]
pub fn index(l: usize, m: i64) -> usize {
    debug_assert!(m.unsigned_abs() as usize <= l);
    ((l * l + l) as i64 + m) as usize
}

#[inline]
fn table_len(lmax: usize) -> usize {
    (lmax + 1) * (lmax + 1)
}

/// Coefficients `c[ℓ][m]` for `0 ≤ ℓ ≤ lmax`, stored at `ℓ² + ℓ + m`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoeffs<T> {
    lmax: usize,
    sector: Sector,
    c: Vec<Complex<T>>,
}

impl<T: Real> HarmonicCoeffs<T> {
    pub fn zeros(lmax: usize, sector: Sector) -> Self {
        Self { lmax, sector, c: vec![Complex::new(T::zero(), T::zero()); table_len(lmax)] }
    }

    /// Validates the sector constraint; stray entries below the tolerance are
    /// cleared.
    pub fn from_vec(lmax: usize, sector: Sector, c: Vec<Complex<T>>) -> Result<Self> {
        if c.len() != table_len(lmax) {
            return Err(Error::DimensionMismatch { expected: table_len(lmax), got: c.len() });
        }
        Self { lmax, sector: Sector::Full, c }.into_sector(sector, T::tol(SECTOR_TOL))
    }

    /// Unit coefficient on `Y_{ℓm}`.
    pub fn basis(lmax: usize, sector: Sector, l: usize, m: i64) -> Result<Self> {
        if l > lmax || m.unsigned_abs() as usize > l {
            return Err(Error::DimensionMismatch { expected: lmax, got: l });
        }
        if !sector.allows(l) {
            return Err(Error::SectorViolation { sector: sector.name(), stray: 1.0 });
        }
        let mut a = Self::zeros(lmax, sector);
        a.c[index(l, m)] = Complex::new(T::one(), T::zero());
        Ok(a)
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.c
    }

    pub fn get(&self, l: usize, m: i64) -> Complex<T> {
        if l > self.lmax {
            return Complex::new(T::zero(), T::zero());
        }
        self.c[index(l, m)]
    }

    /// Panics when a nonzero value is written into a degree the sector
    /// forbids.
    pub fn set(&mut self, l: usize, m: i64, v: Complex<T>) {
        assert!(
            self.sector.allows(l) || v.norm() == T::zero(),
            "degree {l} not allowed in the {} sector",
            self.sector.name()
        );
        self.c[index(l, m)] = v;
    }

    /// Coefficients of degree `ℓ`, ordered `m = −ℓ..=ℓ`.
    pub fn block(&self, l: usize) -> &[Complex<T>] {
        &self.c[l * l..(l + 1) * (l + 1)]
    }

    pub fn block_mut(&mut self, l: usize) -> &mut [Complex<T>] {
        &mut self.c[l * l..(l + 1) * (l + 1)]
    }

    pub fn norm(&self) -> T {
        self.c.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
    }

    /// `Σ conj(self) · other` over the common degrees.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.c
            .iter()
            .zip(&other.c)
            .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * b)
    }

    pub fn max_abs(&self) -> T {
        self.c.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn scaled(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scaled_complex(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    fn map<F: Fn(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self { lmax: self.lmax, sector: self.sector, c: self.c.iter().map(|z| f(*z)).collect() }
    }

    fn combine<F: Fn(Complex<T>, Complex<T>) -> Complex<T>>(&self, other: &Self, f: F) -> Self {
        let lmax = self.lmax.max(other.lmax);
        let sector = if self.sector == other.sector { self.sector } else { Sector::Full };
        let zero = Complex::new(T::zero(), T::zero());
        let c = (0..table_len(lmax))
            .map(|k| f(*self.c.get(k).unwrap_or(&zero), *other.c.get(k).unwrap_or(&zero)))
            .collect();
        Self { lmax, sector, c }
    }

    /// Sum; the sector is kept when both agree and widens to `Full` otherwise.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    /// Euclidean distance of the coefficient vectors (zero padded).
    pub fn distance(&self, other: &Self) -> T {
        self.sub(other).norm()
    }

    /// Truncates or zero-pads to a new `lmax`.
    pub fn resized(&self, lmax: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(table_len(lmax), Complex::new(T::zero(), T::zero()));
        Self { lmax, sector: self.sector, c }
    }

    /// Largest coefficient in a degree the given sector forbids.
    pub fn stray(&self, sector: Sector) -> T {
        (0..=self.lmax)
            .filter(|&l| !sector.allows(l))
            .flat_map(|l| self.block(l).iter())
            .fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Norm of the content above degree `l`.
    pub fn norm_above(&self, l: usize) -> T {
        if l >= self.lmax {
            return T::zero();
        }
        self.c[table_len(l)..].iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
    }

    /// Clears the degrees the sector forbids and retags.
    pub fn project(&self, sector: Sector) -> Self {
        let mut out = self.clone();
        out.sector = sector;
        for l in 0..=self.lmax {
            if !sector.allows(l) {
                out.block_mut(l).fill(Complex::new(T::zero(), T::zero()));
            }
        }
        out
    }

    /// Retags after checking stray entries against `tol`.
    pub fn into_sector(self, sector: Sector, tol: T) -> Result<Self> {
        let stray = self.stray(sector);
        if stray > tol {
            return Err(Error::SectorViolation { sector: sector.name(), stray: stray.to_f64_lossy() });
        }
        Ok(self.project(sector))
    }

    /// Serializes as a `# lmax sector` header followed by `ℓ m re im` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {} {}\n", self.lmax, self.sector.name());
        for l in 0..=self.lmax {
            let li = l as i64;
            for m in -li..=li {
                let z = self.get(l, m);
                writeln!(s, "{l} {m} {:.16e} {:.16e}", z.re, z.im).expect("write to string");
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.trim_start_matches('#').split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let lmax: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad lmax `{}`", fields[0])))?;
        let sector = Sector::parse(fields[1])?;
        let mut out = Self::zeros(lmax, Sector::Full);
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("bad line `{line}`")));
            }
            let bad = || Error::Parse(format!("bad line `{line}`"));
            let l: usize = f[0].parse().map_err(|_| bad())?;
            let m: i64 = f[1].parse().map_err(|_| bad())?;
            let re: T = f[2].parse().map_err(|_| bad())?;
            let im: T = f[3].parse().map_err(|_| bad())?;
            if l > lmax || m.unsigned_abs() as usize > l {
                return Err(bad());
            }
            out.c[index(l, m)] = Complex::new(re, im);
        }
        out.into_sector(sector, T::tol(SECTOR_TOL))
    }
}

/// All `Y_{ℓm}(x)` for `ℓ ≤ lmax`, in table order.
///
/// Uses `Y_{ℓm} = Q_ℓ^m(x₃)(x₁ + i x₂)^m` for `m ≥ 0`, with `Q` a normalized
/// polynomial obtained by the usual three-term recurrence, and
/// `Y_{ℓ,−m} = (−1)^m conj(Y_{ℓm})`.
pub fn ylm_all<T: Real>(lmax: usize, x: &Vec3<T>) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); table_len(lmax)];
    let t = x[2];
    let u = Complex::new(x[0], x[1]);
    let mut qmm = T::one() / (T::lit(4.0) * T::PI()).sqrt();
    let mut upow = Complex::new(T::one(), T::zero());
    for m in 0..=lmax {
        let mf = T::of(m);
        if m > 0 {
            qmm = -qmm * ((T::lit(2.0) * mf + T::one()) / (T::lit(2.0) * mf)).sqrt();
            upow *= u;
        }
        let mi = m as i64;
        let mut put = |l: usize, q: T| {
            let y = upow * q;
            out[index(l, mi)] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { T::one() } else { -T::one() };
                out[index(l, -mi)] = y.conj() * sign;
            }
        };
        put(m, qmm);
        if m == lmax {
            continue;
        }
        let mut q2 = qmm;
        let mut q1 = (T::lit(2.0) * mf + T::lit(3.0)).sqrt() * t * qmm;
        put(m + 1, q1);
        for l in (m + 2)..=lmax {
            let lf = T::of(l);
            let a = ((T::lit(4.0) * lf * lf - T::one()) / (lf * lf - mf * mf)).sqrt();
            let lm1 = lf - T::one();
            let b = ((lm1 * lm1 - mf * mf) / (T::lit(4.0) * lm1 * lm1 - T::one())).sqrt();
            let q = a * (t * q1 - b * q2);
            put(l, q);
            q2 = q1;
            q1 = q;
        }
    }
    out
}

/// Single harmonic `Y_{ℓm}(x)`.
pub fn ylm<T: Real>(l: usize, m: i64, x: &SpherePoint<T>) -> Complex<T> {
    ylm_all(l, x.coords())[index(l, m)]
}

/// `Σ c[ℓ][m] Y_{ℓm}(x)`.
pub fn evaluate<T: Real>(a: &HarmonicCoeffs<T>, x: &SpherePoint<T>) -> Complex<T> {
    evaluate_at(a, x.coords())
}

/// [`evaluate`] at a raw unit vector.
pub fn evaluate_at<T: Real>(a: &HarmonicCoeffs<T>, x: &Vec3<T>) -> Complex<T> {
    let y = ylm_all(a.lmax, x);
    a.c.iter()
        .zip(&y)
        .fold(Complex::new(T::zero(), T::zero()), |s, (c, y)| s + *c * *y)
}

/// Grid together with every harmonic of degree `≤ lmax_exact` at its nodes.
#[derive(Debug, Clone)]
pub struct SphereBasis<T> {
    grid: QuadratureGrid<T>,
    table: Vec<Vec<Complex<T>>>,
}

impl<T: Real> SphereBasis<T> {
    pub fn new(grid: QuadratureGrid<T>) -> Self {
        let l = grid.lmax_exact();
        let table = grid.nodes().iter().map(|x| ylm_all(l, x.coords())).collect();
        Self { grid, table }
    }

    pub fn grid(&self) -> &QuadratureGrid<T> {
        &self.grid
    }

    pub fn lmax(&self) -> usize {
        self.grid.lmax_exact()
    }

    /// Values of `a` at the grid nodes.
    pub fn synthesize(&self, a: &HarmonicCoeffs<T>) -> Result<Vec<Complex<T>>> {
        self.grid.require(a.lmax)?;
        let n = a.c.len();
        Ok(self
            .table
            .iter()
            .map(|y| {
                a.c.iter()
                    .zip(&y[..n])
                    .fold(Complex::new(T::zero(), T::zero()), |s, (c, y)| s + *c * *y)
            })
            .collect())
    }

    /// Full-sector coefficients up to `lmax` of the node values.
    pub fn analyze(&self, values: &[Complex<T>], lmax: usize) -> Result<HarmonicCoeffs<T>> {
        self.grid.require(lmax)?;
        if values.len() != self.grid.len() {
            return Err(Error::DimensionMismatch { expected: self.grid.len(), got: values.len() });
        }
        let n = table_len(lmax);
        let mut c = vec![Complex::new(T::zero(), T::zero()); n];
        for ((y, w), f) in self.table.iter().zip(self.grid.weights()).zip(values) {
            let wf = *f * *w;
            for (ck, yk) in c.iter_mut().zip(&y[..n]) {
                *ck += yk.conj() * wf;
            }
        }
        Ok(HarmonicCoeffs { lmax, sector: Sector::Full, c })
    }

    /// Quadrature inner product `Σ w_k conj(a(x_k)) b(x_k)` of node values.
    pub fn inner_values(&self, a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
        self.grid
            .weights()
            .iter()
            .zip(a.iter().zip(b))
            .fold(Complex::new(T::zero(), T::zero()), |s, (w, (x, y))| s + x.conj() * *y * *w)
    }
}

/// `c[ℓ][m] = Σ_k w_k conj(Y_{ℓm}(x_k)) f(x_k)`, returned in the `Full` sector.
pub fn analyze<T, F>(f: F, lmax: usize, grid: &QuadratureGrid<T>) -> Result<HarmonicCoeffs<T>>
where
    T: Real,
    F: Fn(&SpherePoint<T>) -> Complex<T>,
{
    grid.require(lmax)?;
    let n = table_len(lmax);
    let mut c = vec![Complex::new(T::zero(), T::zero()); n];
    for (x, w) in grid.nodes().iter().zip(grid.weights()) {
        let wf = f(x) * *w;
        for (ck, yk) in c.iter_mut().zip(ylm_all(lmax, x.coords())) {
            *ck += yk.conj() * wf;
        }
    }
    Ok(HarmonicCoeffs { lmax, sector: Sector::Full, c })
}

/// Splits by parity of `ℓ`; the two parts sum to the input exactly.
pub fn parity_decompose<T: Real>(a: &HarmonicCoeffs<T>) -> (HarmonicCoeffs<T>, HarmonicCoeffs<T>) {
    (a.project(Sector::Even), a.project(Sector::Odd))
}

/// Raising operator `L₊`.
pub fn apply_l_plus<T: Real>(a: &HarmonicCoeffs<T>) -> HarmonicCoeffs<T> {
    let mut out = HarmonicCoeffs::zeros(a.lmax, a.sector);
    for l in 0..=a.lmax {
        let ll = (l * (l + 1)) as i64;
        let li = l as i64;
        for m in (-li + 1)..=li {
            let k = T::of((ll - (m - 1) * m) as usize).sqrt();
            out.c[index(l, m)] = a.c[index(l, m - 1)] * k;
        }
    }
    out
}

/// Lowering operator `L₋`.
pub fn apply_l_minus<T: Real>(a: &HarmonicCoeffs<T>) -> HarmonicCoeffs<T> {
    let mut out = HarmonicCoeffs::zeros(a.lmax, a.sector);
    for l in 0..=a.lmax {
        let ll = (l * (l + 1)) as i64;
        let li = l as i64;
        for m in -li..li {
            let k = T::of((ll - (m + 1) * m) as usize).sqrt();
            out.c[index(l, m)] = a.c[index(l, m + 1)] * k;
        }
    }
    out
}

/// Orbital angular momentum `L_i` (`i = 1, 2, 3`), exact in the harmonic
/// basis with `ħ = 1`. Preserves `lmax` and sector.
pub fn apply_l<T: Real>(i: usize, a: &HarmonicCoeffs<T>) -> HarmonicCoeffs<T> {
    let half = T::lit(0.5);
    match i {
        1 => apply_l_plus(a).add(&apply_l_minus(a)).scaled(half),
        2 => {
            // (L₊ − L₋)/(2i) = −(i/2)(L₊ − L₋)
            let f = -imag_unit::<T>() * half;
            apply_l_plus(a).sub(&apply_l_minus(a)).scaled_complex(f)
        }
        3 => {
            let mut out = a.clone();
            for l in 0..=a.lmax {
                let li = l as i64;
                for m in -li..=li {
                    out.c[index(l, m)] = a.c[index(l, m)] * T::lit(m as f64);
                }
            }
            out
        }
        _ => panic!("angular momentum component {i} not in 1..=3"),
    }
}

/// Coefficients of `x ↦ a(Spin(g)⁻¹ x)` up to the grid's `lmax_exact`,
/// without any projection. Degrees above `a.lmax()` and the opposite parity
/// measure numerical leakage.
pub fn rotate_coeffs_raw<T: Real>(
    g: &SU2Element<T>,
    a: &HarmonicCoeffs<T>,
    grid: &QuadratureGrid<T>,
) -> Result<HarmonicCoeffs<T>> {
    grid.require(a.lmax)?;
    let rinv = spinor_map(g).transpose();
    analyze(|x| evaluate_at(a, &rinv.apply(x.coords())), grid.lmax_exact(), grid)
}

/// Leakage of a rotation: content above the input degree plus content in the
/// opposite parity, both relative to the input norm.
pub fn rotation_leakage<T: Real>(a: &HarmonicCoeffs<T>, raw: &HarmonicCoeffs<T>) -> T {
    let scale = a.norm().max(T::min_positive_value());
    let above = raw.norm_above(a.lmax);
    let stray = raw.resized(a.lmax).stray(a.sector);
    above.max(stray) / scale
}

/// `a ↦ a ∘ Spin(g)⁻¹` by resampling and re-analysis. Keeps `lmax` and
/// sector, refusing when leakage exceeds [`ROTATION_LEAKAGE_TOL`].
pub fn rotate_coeffs<T: Real>(
    g: &SU2Element<T>,
    a: &HarmonicCoeffs<T>,
    grid: &QuadratureGrid<T>,
) -> Result<HarmonicCoeffs<T>> {
    let raw = rotate_coeffs_raw(g, a, grid)?;
    let leak = rotation_leakage(a, &raw);
    if leak > T::tol(ROTATION_LEAKAGE_TOL) {
        return Err(Error::SectorViolation { sector: a.sector.name(), stray: leak.to_f64_lossy() });
    }
    Ok(raw.resized(a.lmax).project(a.sector))
}

/// Per-degree rotation matrices `B_ℓ[m'][m] = ⟨Y_{ℓm'}, U(g) Y_{ℓm}⟩`,
/// computed by quadrature in a single pass over the nodes.
#[derive(Debug, Clone)]
pub struct RotationBlocks<T> {
    blocks: Vec<CMatrix<T>>,
}

impl<T: Real> RotationBlocks<T> {
    pub fn by_quadrature(g: &SU2Element<T>, lmax: usize, grid: &QuadratureGrid<T>) -> Result<Self> {
        grid.require(lmax)?;
        let rinv = spinor_map(g).transpose();
        let mut blocks: Vec<CMatrix<T>> =
            (0..=lmax).map(|l| CMatrix::zeros((2 * l + 1, 2 * l + 1))).collect();
        for (x, w) in grid.nodes().iter().zip(grid.weights()) {
            let here = ylm_all(lmax, x.coords());
            let moved = ylm_all(lmax, &rinv.apply(x.coords()));
            for (l, b) in blocks.iter_mut().enumerate() {
                let off = l * l;
                for mp in 0..(2 * l + 1) {
                    let left = here[off + mp].conj() * *w;
                    for m in 0..(2 * l + 1) {
                        b[[mp, m]] += left * moved[off + m];
                    }
                }
            }
        }
        Ok(Self { blocks })
    }

    pub fn lmax(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Block for degree `ℓ`, rows and columns ordered `m = −ℓ..=ℓ`.
    pub fn block(&self, l: usize) -> &CMatrix<T> {
        &self.blocks[l]
    }

    /// Applies the blocks; degrees above the cached `lmax` are rejected.
    pub fn apply(&self, a: &HarmonicCoeffs<T>) -> Result<HarmonicCoeffs<T>> {
        if a.lmax > self.lmax() {
            return Err(Error::InsufficientGrid { required: a.lmax, available: self.lmax() });
        }
        let mut out = HarmonicCoeffs::zeros(a.lmax, a.sector);
        for l in 0..=a.lmax {
            let b = &self.blocks[l];
            let src = a.block(l);
            let dst = out.block_mut(l);
            for (mp, d) in dst.iter_mut().enumerate() {
                *d = src
                    .iter()
                    .enumerate()
                    .fold(Complex::new(T::zero(), T::zero()), |s, (m, c)| s + b[[mp, m]] * *c);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
