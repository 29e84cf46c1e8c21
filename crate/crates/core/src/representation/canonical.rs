//! The canonical group `W* ⋊ (SU(2) × ℝ₊)` acting on sections over
//! `ℝP² × ℝ₊`:
//!
//! `(𝒰(w, g, λ)Ψ)([x], r) = λ^{3/2} e^{−i r w([x])} (l↑_g Ψ)([g⁻¹x], λ r)`.
//!
//! The radial half-line carries the measure `r² dr` (the `λ^{3/2}` factor is
//! the square root of the dilation's Jacobian for it) and is sampled on a
//! log-uniform grid.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::groups::{spinor_map, SU2Element};
use crate::harmonics::{HarmonicCoeffs, RotationBlocks, Sector, SphereBasis};
use crate::manifold::{eval_w_sphere, WFunctional};
use crate::scalar::Real;

/// Relative mass allowed in the two outermost radial nodes on a side that a
/// dilation pushes past the grid edge.
pub const EDGE_TOL: f64 = 1e-12;

/// Offsets closer than this to a grid node are read from the node directly.
const SNAP_TOL: f64 = 1e-9;

/// Log-uniform nodes `r_k = r_min ρ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid<T> {
    r: Vec<T>,
    u0: T,
    h: T,
}

impl<T: Real> RadialGrid<T> {
    pub fn log_uniform(r_min: T, r_max: T, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::RadialGrid(format!("need at least 4 nodes, got {n}")));
        }
        if !(r_min > T::zero() && r_max > r_min && r_max.is_finite()) {
            return Err(Error::RadialGrid(format!("bad range [{r_min}, {r_max}]")));
        }
        let u0 = r_min.ln();
        let h = (r_max.ln() - u0) / T::of(n - 1);
        let r = (0..n).map(|k| (u0 + h * T::of(k)).exp()).collect();
        Ok(Self { r, u0, h })
    }

    /// Grid whose ratio is `λ^{1/k}` so that `λ` moves nodes onto nodes.
    pub fn aligned(r_min: T, n: usize, lambda: T, k: usize) -> Result<Self> {
        if k == 0 || !(lambda > T::one()) {
            return Err(Error::RadialGrid("alignment needs λ > 1 and k ≥ 1".into()));
        }
        let h = lambda.ln() / T::of(k);
        let r_max = (r_min.ln() + h * T::of(n - 1)).exp();
        Self::log_uniform(r_min, r_max, n)
    }

    pub fn nodes(&self) -> &[T] {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// Spacing in `ln r`.
    pub fn log_step(&self) -> T {
        self.h
    }

    /// `r_{k+1}/r_k`.
    pub fn ratio(&self) -> T {
        self.h.exp()
    }

    pub fn r_min(&self) -> T {
        self.r[0]
    }

    pub fn r_max(&self) -> T {
        self.r[self.r.len() - 1]
    }

    /// `dr` weights of the trapezoid rule in `ln r`: `h r_k`.
    pub fn dr_weights(&self) -> Vec<T> {
        self.r.iter().map(|r| *r * self.h).collect()
    }

    /// Fractional node position of `r`.
    fn position(&self, r: T) -> T {
        (r.ln() - self.u0) / self.h
    }
}

/// Section over `ℝP² × ℝ₊`: one coefficient table per radial node.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSection<T> {
    radial: RadialGrid<T>,
    blocks: Vec<HarmonicCoeffs<T>>,
}

impl<T: Real> FullSection<T> {
    pub fn new(radial: RadialGrid<T>, blocks: Vec<HarmonicCoeffs<T>>) -> Result<Self> {
        if blocks.len() != radial.len() {
            return Err(Error::DimensionMismatch { expected: radial.len(), got: blocks.len() });
        }
        let (lmax, sector) = (blocks[0].lmax(), blocks[0].sector());
        if let Some(b) = blocks.iter().find(|b| b.lmax() != lmax || b.sector() != sector) {
            return Err(Error::BundleMismatch(format!(
                "radial blocks disagree: ({lmax}, {}) vs ({}, {})",
                sector.name(),
                b.lmax(),
                b.sector().name()
            )));
        }
        Ok(Self { radial, blocks })
    }

    /// `Ψ(x, r) = f(r) a(x)`.
    pub fn product<F: Fn(T) -> T>(radial: RadialGrid<T>, f: F, a: &HarmonicCoeffs<T>) -> Self {
        let blocks = radial.nodes().iter().map(|r| a.scaled(f(*r))).collect();
        Self { radial, blocks }
    }

    pub fn radial(&self) -> &RadialGrid<T> {
        &self.radial
    }

    pub fn blocks(&self) -> &[HarmonicCoeffs<T>] {
        &self.blocks
    }

    pub fn lmax(&self) -> usize {
        self.blocks[0].lmax()
    }

    pub fn sector(&self) -> Sector {
        self.blocks[0].sector()
    }

    /// `(Σ_k h r_k · r_k² ‖c_k‖²)^{1/2}`.
    pub fn norm(&self) -> T {
        self.radial
            .dr_weights()
            .iter()
            .zip(self.radial.nodes())
            .zip(&self.blocks)
            .fold(T::zero(), |s, ((w, r), b)| s + *w * *r * *r * b.norm() * b.norm())
            .sqrt()
    }

    /// Norm of the difference, padding the lower degree with zeros.
    pub fn distance(&self, other: &Self) -> Result<T> {
        if self.radial != other.radial {
            return Err(Error::RadialGrid("sections live on different radial grids".into()));
        }
        let w = self.radial.dr_weights();
        let s = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .zip(w.iter().zip(self.radial.nodes()))
            .fold(T::zero(), |s, ((a, b), (w, r))| {
                let d = a.distance(b);
                s + *w * *r * *r * d * d
            });
        Ok(s.sqrt())
    }

    /// Largest `|Ψ(x_j, r_k)|` on the angular grid, per radial node.
    pub fn pointwise_moduli(&self, basis: &SphereBasis<T>) -> Result<Vec<Vec<T>>> {
        self.blocks
            .iter()
            .map(|b| Ok(basis.synthesize(b)?.iter().map(|z| z.norm()).collect()))
            .collect()
    }

    /// Coefficients at radius `r` by four-point Lagrange interpolation in
    /// `ln r`. Outside the grid the section is taken to vanish, provided the
    /// two outermost nodes on that side carry negligible mass.
    pub fn interpolate(&self, r: T) -> Result<HarmonicCoeffs<T>> {
        let n = self.radial.len();
        let p = self.radial.position(r);
        let last = T::of(n - 1);
        let snap = T::lit(SNAP_TOL);
        if p < -snap || p > last + snap {
            let scale = self.blocks.iter().fold(T::zero(), |m, b| m.max(b.norm()));
            let edge = if p < T::zero() { [0, 1] } else { [n - 1, n - 2] };
            let mass = edge.iter().fold(T::zero(), |m, &k| m.max(self.blocks[k].norm()));
            if mass > T::tol(EDGE_TOL) * scale {
                return Err(Error::RadialRangeExceeded {
                    r: r.to_f64_lossy(),
                    r_min: self.radial.r_min().to_f64_lossy(),
                    r_max: self.radial.r_max().to_f64_lossy(),
                });
            }
            return Ok(HarmonicCoeffs::zeros(self.lmax(), self.sector()));
        }
        let nearest = p.round();
        if (p - nearest).abs() <= snap {
            let k = nearest.to_f64_lossy().clamp(0.0, (n - 1) as f64) as usize;
            return Ok(self.blocks[k].clone());
        }
        let base = (p.floor().to_f64_lossy() as i64 - 1).clamp(0, n as i64 - 4) as usize;
        let mut out = HarmonicCoeffs::zeros(self.lmax(), self.sector());
        for j in 0..4 {
            let xj = T::of(base + j);
            let wj = (0..4).filter(|&k| k != j).fold(T::one(), |acc, k| {
                let xk = T::of(base + k);
                acc * (p - xk) / (xj - xk)
            });
            out = out.add(&self.blocks[base + j].scaled(wj));
        }
        Ok(out)
    }

    /// Header `# fullsection lmax sector n` followed, per node, by an
    /// `r <k> <r_k>` line and its `ℓ m re im` coefficient lines.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# fullsection {} {} {} {:.16e} {:.16e}\n",
            self.lmax(),
            self.sector().name(),
            self.radial.len(),
            self.radial.r_min(),
            self.radial.r_max()
        );
        for (k, (r, b)) in self.radial.nodes().iter().zip(&self.blocks).enumerate() {
            writeln!(s, "r {k} {:.16e}", r).expect("write to string");
            for line in b.to_text().lines().skip(1) {
                s.push_str(line);
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 7 || f[0] != "#" || f[1] != "fullsection" {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let bad = |what: &str| Error::Parse(format!("bad {what} in `{header}`"));
        let lmax: usize = f[2].parse().map_err(|_| bad("lmax"))?;
        let sector = Sector::parse(f[3])?;
        let n: usize = f[4].parse().map_err(|_| bad("node count"))?;
        let r_min: T = f[5].parse().map_err(|_| bad("r_min"))?;
        let r_max: T = f[6].parse().map_err(|_| bad("r_max"))?;
        let radial = RadialGrid::log_uniform(r_min, r_max, n)?;
        let mut chunks: Vec<String> = Vec::new();
        for line in lines {
            if line.starts_with("r ") {
                chunks.push(format!("# {lmax} {}\n", sector.name()));
            } else {
                let cur = chunks.last_mut().ok_or_else(|| Error::Parse("coefficients before first node".into()))?;
                cur.push_str(line);
                cur.push('\n');
            }
        }
        let blocks = chunks.iter().map(|c| HarmonicCoeffs::from_text(c)).collect::<Result<Vec<_>>>()?;
        Self::new(radial, blocks)
    }
}

/// Element `(w, g, λ)` of the canonical group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalElement<T> {
    pub w: WFunctional<T>,
    pub g: SU2Element<T>,
    pub lambda: T,
}

impl<T: Real> CanonicalElement<T> {
    pub fn new(w: WFunctional<T>, g: SU2Element<T>, lambda: T) -> Result<Self> {
        if !(lambda > T::zero() && lambda.is_finite()) {
            return Err(Error::RadialGrid(format!("dilation must be positive, got {lambda}")));
        }
        Ok(Self { w, g, lambda })
    }

    pub fn identity() -> Self {
        Self { w: WFunctional::zero(), g: SU2Element::identity(), lambda: T::one() }
    }

    /// Product matching operator composition, `𝒰(e₁)𝒰(e₂) = 𝒰(e₁·e₂)`:
    /// `(w₁ + λ₁ · w₂∘Spin(g₁)⁻¹, g₁g₂, λ₁λ₂)`.
    pub fn compose(&self, other: &Self) -> Self {
        let moved = other.w.rotated(&spinor_map(&self.g)).scale(self.lambda);
        Self { w: self.w.add(&moved), g: self.g * other.g, lambda: self.lambda * other.lambda }
    }
}

/// Angular and radial discretization shared by canonical operators.
#[derive(Debug, Clone)]
pub struct CanonicalGrids<T> {
    pub sphere: SphereBasis<T>,
    pub radial: RadialGrid<T>,
}

fn is_zero_matrix<T: Real>(w: &WFunctional<T>) -> bool {
    w.coefficients().iter().flatten().all(|c| *c == T::zero())
}

/// `𝒰(w, g, λ)` applied to a section. The output degree is the grid's
/// `lmax_exact` when `w` has a non-constant part, since the phase
/// multiplier is not band-limited.
pub fn act_canonical<T: Real>(
    e: &CanonicalElement<T>,
    fs: &FullSection<T>,
    grids: &CanonicalGrids<T>,
) -> Result<FullSection<T>> {
    if fs.radial != grids.radial {
        return Err(Error::RadialGrid("section and operator use different radial grids".into()));
    }
    let sphere = &grids.sphere;
    let lin = fs.lmax();
    let constant_phase = is_zero_matrix(&e.w);
    let lout = if constant_phase { lin } else { sphere.lmax() };
    sphere.grid().require(lin)?;
    let rot = RotationBlocks::by_quadrature(&e.g, lin, sphere.grid())?;
    let wvals: Vec<T> = sphere.grid().nodes().iter().map(|x| eval_w_sphere(&e.w, x)).collect();
    let amp = e.lambda * e.lambda.sqrt();
    let sector = fs.sector();
    let mut blocks = Vec::with_capacity(fs.radial.len());
    for r in fs.radial.nodes() {
        let src = fs.interpolate(e.lambda * *r)?;
        let rotated = rot.apply(&src)?;
        let out = if constant_phase {
            rotated.scaled_complex(Complex::from_polar(amp, -*r * e.w.offset()))
        } else {
            let vals = sphere.synthesize(&rotated)?;
            let phased: Vec<Complex<T>> = vals
                .iter()
                .zip(&wvals)
                .map(|(v, w)| *v * Complex::from_polar(amp, -*r * *w))
                .collect();
            // The phase is even, so parity survives up to rounding.
            sphere.analyze(&phased, lout)?.project(sector)
        };
        blocks.push(out);
    }
    FullSection::new(fs.radial.clone(), blocks)
}

/// `|‖𝒰Ψ‖ − ‖Ψ‖| / ‖Ψ‖`.
pub fn unitarity_defect<T: Real>(
    e: &CanonicalElement<T>,
    fs: &FullSection<T>,
    grids: &CanonicalGrids<T>,
) -> Result<T> {
    let out = act_canonical(e, fs, grids)?;
    Ok((out.norm() - fs.norm()).abs() / fs.norm())
}

/// `‖𝒰(e₁)𝒰(e₂)Ψ − 𝒰(e₁·e₂)Ψ‖ / ‖Ψ‖`.
pub fn check_group_law<T: Real>(
    e1: &CanonicalElement<T>,
    e2: &CanonicalElement<T>,
    fs: &FullSection<T>,
    grids: &CanonicalGrids<T>,
) -> Result<T> {
    let lhs = act_canonical(e1, &act_canonical(e2, fs, grids)?, grids)?;
    let rhs = act_canonical(&e1.compose(e2), fs, grids)?;
    let l = lhs.lmax().max(rhs.lmax());
    let pad = |s: FullSection<T>| -> FullSection<T> {
        let blocks = s.blocks.iter().map(|b| b.resized(l)).collect();
        FullSection { radial: s.radial, blocks }
    };
    Ok(pad(lhs).distance(&pad(rhs))? / fs.norm())
}
