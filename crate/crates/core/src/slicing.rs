//! Rotational Fourier slices of functions on the unit sphere.
//!
//! For `z` in the disc the slice `{z} × {|w| = sqrt(1 - |z|^2)}` is a circle and
//! `c_n(z) = s^{-n} (1/2π) ∫ e^{-inθ} f(z, s e^{iθ}) dθ`, `s = sqrt(1 - |z|^2)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::fourier::PeriodicRule;
use crate::geometry::ComplexPoint2;
use crate::{Complex, Error, Result};

/// Smallest `s^n` we are willing to divide by.
pub const AMPLIFICATION_FLOOR: f64 = 1e-12;
/// Roundoff level of an unamplified coefficient. When checking monotonicity a
/// difference below `MONOTONE_FLOOR * max(1, R^-n)` counts as converged.
pub const MONOTONE_FLOOR: f64 = 1e-12;

/// A function on the unit sphere `bB`.
pub trait BoundaryFunction {
    fn eval(&self, p: ComplexPoint2) -> Complex;
}

impl<F: Fn(ComplexPoint2) -> Complex> BoundaryFunction for F {
    fn eval(&self, p: ComplexPoint2) -> Complex {
        self(p)
    }
}

pub fn min_order(n: i32) -> usize {
    2 * n.unsigned_abs() as usize + 8
}

fn check_slice_args(n_max_abs: u32, z: Complex, order: usize) -> Result<f64> {
    let zz = z.norm_sqr();
    if !(zz < 1.0) {
        return Err(Error::OutsideDomain("slice coefficients need |z| < 1"));
    }
    if order < 2 * n_max_abs as usize + 8 {
        return Err(Error::invalid("quadrature order must be at least 2|n| + 8"));
    }
    Ok((1.0 - zz).sqrt())
}

fn amplify(n: i32, s: f64, raw: Complex) -> Result<Complex> {
    let scale = s.powi(n);
    if n > 0 && scale < AMPLIFICATION_FLOOR {
        return Err(Error::AmplificationRefused { n, scale });
    }
    Ok(raw / scale)
}

fn slice_samples<F: BoundaryFunction + ?Sized>(
    f: &F,
    rule: &PeriodicRule,
    z: Complex,
    s: f64,
) -> Vec<Complex> {
    rule.nodes()
        .map(|e| f.eval(ComplexPoint2::new(z, e * s)))
        .collect()
}

/// `c_n(z)` by the uniform periodic rule with `order` nodes.
pub fn slice_coefficient<F: BoundaryFunction + ?Sized>(
    f: &F,
    n: i32,
    z: Complex,
    order: usize,
) -> Result<Complex> {
    let s = check_slice_args(n.unsigned_abs(), z, order)?;
    let rule = PeriodicRule::new(order);
    let values = slice_samples(f, &rule, z, s);
    amplify(n, s, rule.coefficient(&values, n as i64))
}

/// Continuous extension of `c_n`, `n <= 0`, to the closed disc.
///
/// On `|z| = 1` the slice degenerates to `w = 0`, so `c_0(z) = f(z, 0)` and
/// `c_n(z) = 0` for `n < 0`.
pub fn closed_disc_slice_coefficient<F: BoundaryFunction + ?Sized>(
    f: &F,
    n: i32,
    z: Complex,
    order: usize,
) -> Result<Complex> {
    if n > 0 {
        return Err(Error::invalid(
            "only c_n with n <= 0 extend to the closed disc",
        ));
    }
    if z.norm_sqr() < 1.0 {
        return slice_coefficient(f, n, z, order);
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::OutsideDomain("z must lie in the closed unit disc"));
    }
    if n < 0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    Ok(f.eval(ComplexPoint2::new(z, Complex::new(0.0, 0.0))))
}

/// `c_n(z)` for every `n` in `n_min..=n_max` from one set of samples.
pub fn slice_coefficients_at<F: BoundaryFunction + ?Sized>(
    f: &F,
    n_min: i32,
    n_max: i32,
    z: Complex,
    rule: &PeriodicRule,
) -> Result<Vec<Complex>> {
    if n_min > n_max {
        return Err(Error::invalid("empty n-range"));
    }
    let widest = n_min.unsigned_abs().max(n_max.unsigned_abs());
    let s = check_slice_args(widest, z, rule.order())?;
    let values = slice_samples(f, rule, z, s);
    (n_min..=n_max)
        .map(|n| amplify(n, s, rule.coefficient(&values, n as i64)))
        .collect()
}

/// Points `r_i e^{2πij/angular}` of the disc.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolarGrid {
    pub radii: Vec<f64>,
    pub angular: usize,
}

impl PolarGrid {
    pub fn new(radii: Vec<f64>, angular: usize) -> Result<Self> {
        if radii.is_empty() || angular == 0 {
            return Err(Error::invalid("polar grid needs radii and angular samples"));
        }
        if radii.iter().any(|r| !(*r >= 0.0 && *r < 1.0)) {
            return Err(Error::invalid("grid radii must lie in [0, 1)"));
        }
        Ok(PolarGrid { radii, angular })
    }

    pub fn point(&self, ring: usize, j: usize) -> Complex {
        Complex::from_polar(self.radii[ring], TAU * j as f64 / self.angular as f64)
    }

    pub fn points(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.radii.len()).flat_map(move |i| (0..self.angular).map(move |j| self.point(i, j)))
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angular
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SliceCoefficients {
    pub n_min: i32,
    pub n_max: i32,
    pub order: usize,
    pub grid: PolarGrid,
    /// `values[n - n_min][ring * angular + j]`.
    pub values: Vec<Vec<Complex>>,
}

impl SliceCoefficients {
    pub fn get(&self, n: i32) -> Option<&[Complex]> {
        if n < self.n_min || n > self.n_max {
            return None;
        }
        Some(&self.values[(n - self.n_min) as usize])
    }

    /// Values of `c_n` on one ring of the grid.
    pub fn ring(&self, n: i32, ring: usize) -> Option<&[Complex]> {
        let a = self.grid.angular;
        self.get(n).map(|v| &v[ring * a..(ring + 1) * a])
    }
}

pub fn slice_table<F: BoundaryFunction + ?Sized>(
    f: &F,
    n_min: i32,
    n_max: i32,
    grid: &PolarGrid,
    order: usize,
) -> Result<SliceCoefficients> {
    let rule = PeriodicRule::new(order);
    let mut values = vec![Vec::with_capacity(grid.len()); (n_max - n_min + 1).max(0) as usize];
    for z in grid.points() {
        let row = slice_coefficients_at(f, n_min, n_max, z, &rule)?;
        for (slot, c) in values.iter_mut().zip(row) {
            slot.push(c);
        }
    }
    Ok(SliceCoefficients {
        n_min,
        n_max,
        order,
        grid: grid.clone(),
        values,
    })
}

/// `Ψ_n(z, w) = (1/2π) ∫ e^{-inθ} f(z, w e^{iθ}) dθ`.
#[derive(Debug, Clone)]
pub struct Averaged<'a, F: ?Sized> {
    f: &'a F,
    n: i32,
    rule: PeriodicRule,
}

impl<F: BoundaryFunction + ?Sized> BoundaryFunction for Averaged<'_, F> {
    fn eval(&self, p: ComplexPoint2) -> Complex {
        let values: Vec<Complex> = self
            .rule
            .nodes()
            .map(|e| self.f.eval(ComplexPoint2::new(p.z, p.w * e)))
            .collect();
        self.rule.coefficient(&values, self.n as i64)
    }
}

pub fn averaged_function<F: BoundaryFunction + ?Sized>(
    f: &F,
    n: i32,
    order: usize,
) -> Averaged<'_, F> {
    Averaged {
        f,
        n,
        rule: PeriodicRule::new(order.max(min_order(n))),
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceReport {
    pub n: i32,
    pub radii: Vec<f64>,
    pub angular: usize,
    pub order: usize,
    /// `sup_φ |c_n(z_{i+1}(φ)) - c_n(z_i(φ))|` for consecutive radii.
    pub sup_differences: Vec<f64>,
    pub monotone: bool,
    pub final_difference: f64,
}

/// Tracks `φ -> c_n(sqrt(1 - R^2) e^{iφ})` as `R` decreases toward 0.
pub fn boundary_limit_probe<F: BoundaryFunction + ?Sized>(
    f: &F,
    n: i32,
    radii: &[f64],
    angular: usize,
    order: usize,
) -> Result<ConvergenceReport> {
    if radii.len() < 2 || angular == 0 {
        return Err(Error::invalid(
            "probe needs at least two radii and one angle",
        ));
    }
    if radii.iter().any(|r| !(*r > 0.0 && *r <= 1.0)) || radii.windows(2).any(|p| p[1] >= p[0]) {
        return Err(Error::invalid(
            "radii must be strictly decreasing in (0, 1]",
        ));
    }
    let rule = PeriodicRule::new(order);
    let profile = |big_r: f64| -> Result<Vec<Complex>> {
        let rho = (1.0 - big_r * big_r).sqrt();
        (0..angular)
            .map(|j| {
                let z = Complex::from_polar(rho, TAU * j as f64 / angular as f64);
                let s = check_slice_args(n.unsigned_abs(), z, order)?;
                let values = slice_samples(f, &rule, z, s);
                amplify(n, s, rule.coefficient(&values, n as i64))
            })
            .collect()
    };
    let mut previous = profile(radii[0])?;
    let mut sup_differences = Vec::with_capacity(radii.len() - 1);
    for &big_r in &radii[1..] {
        let current = profile(big_r)?;
        let d = previous
            .iter()
            .zip(&current)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        sup_differences.push(d);
        previous = current;
    }
    let monotone = sup_differences
        .windows(2)
        .zip(&radii[2..])
        .all(|(p, &big_r)| p[1] <= p[0] || p[1] <= MONOTONE_FLOOR * big_r.powi(-n).max(1.0));
    let final_difference = *sup_differences.last().unwrap_or(&0.0);
    Ok(ConvergenceReport {
        n,
        radii: radii.to_vec(),
        angular,
        order,
        sup_differences,
        monotone,
        final_difference,
    })
}

/// One row of a sampled boundary function: `f(x + iy, e^{iθ} sqrt(1 - x^2 - y^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSample {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub value: Complex,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InterpolationInfo {
    pub theta: &'static str,
    pub spatial: &'static str,
    pub theta_samples: usize,
    /// Rough bound: θ-spectrum tail plus second differences over the spatial grid.
    pub error_bound: f64,
}

/// Boundary function known on a product grid `(x, y) × θ`.
///
/// Trigonometric interpolation in θ at each grid node, bilinear in `(x, y)`
/// over whichever cell corners are present.
#[derive(Debug, Clone)]
pub struct SampledGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    theta0: f64,
    m: usize,
    /// Fourier coefficients per node, `None` for nodes outside the data.
    spectra: Vec<Option<Vec<Complex>>>,
    info: InterpolationInfo,
}

const GRID_MATCH: f64 = 1e-9;

fn wrap_angle(theta: f64) -> f64 {
    let r = theta % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

fn distinct_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup_by(|a, b| (*a - *b).abs() <= GRID_MATCH);
    v
}

fn locate(axis: &[f64], v: f64) -> Option<usize> {
    let i = axis.partition_point(|a| *a < v - GRID_MATCH);
    (i < axis.len() && (axis[i] - v).abs() <= GRID_MATCH).then_some(i)
}

impl SampledGrid {
    pub fn from_samples(samples: &[GridSample]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("grid file has no rows"));
        }
        for s in samples {
            if !(s.x.is_finite() && s.y.is_finite() && s.theta.is_finite() && s.value.is_finite()) {
                return Err(Error::invalid("grid rows must be finite"));
            }
            if s.x * s.x + s.y * s.y > 1.0 + 1e-12 {
                return Err(Error::invalid("grid point outside the closed unit disc"));
            }
        }
        let xs = distinct_sorted(samples.iter().map(|s| s.x).collect());
        let ys = distinct_sorted(samples.iter().map(|s| s.y).collect());
        let thetas = distinct_sorted(samples.iter().map(|s| wrap_angle(s.theta)).collect());
        let m = thetas.len();
        if m < 2 {
            return Err(Error::invalid("need at least two theta samples"));
        }
        let step = TAU / m as f64;
        let theta0 = thetas[0];
        if thetas
            .iter()
            .enumerate()
            .any(|(k, t)| (t - theta0 - step * k as f64).abs() > 1e-9)
        {
            return Err(Error::invalid(
                "theta samples must be uniform over a full period",
            ));
        }
        let mut cells: Vec<Option<Vec<Option<Complex>>>> = vec![None; xs.len() * ys.len()];
        for s in samples {
            let ix = locate(&xs, s.x).expect("x on axis");
            let iy = locate(&ys, s.y).expect("y on axis");
            let k = ((wrap_angle(s.theta) - theta0) / step).round() as usize % m;
            let cell = cells[ix * ys.len() + iy].get_or_insert_with(|| vec![None; m]);
            if cell[k].replace(s.value).is_some() {
                return Err(Error::invalid("duplicate grid row"));
            }
        }
        let rule = PeriodicRule::new(m);
        let mut spectra = Vec::with_capacity(cells.len());
        let mut tail: f64 = 0.0;
        for cell in cells {
            let Some(cell) = cell else {
                spectra.push(None);
                continue;
            };
            let values: Vec<Complex> = cell
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::invalid("grid node is missing theta samples"))?;
            let spectrum: Vec<Complex> = (0..m)
                .map(|j| rule.coefficient(&values, j as i64))
                .collect();
            let half = m / 2;
            for (j, c) in spectrum.iter().enumerate() {
                let freq = if j > half { m - j } else { j };
                if 2 * freq >= half {
                    tail = tail.max(c.norm());
                }
            }
            spectra.push(Some(spectrum));
        }
        let mut grid = SampledGrid {
            xs,
            ys,
            theta0,
            m,
            spectra,
            info: InterpolationInfo {
                theta: "trigonometric",
                spatial: "bilinear",
                theta_samples: m,
                error_bound: 0.0,
            },
        };
        grid.info.error_bound = tail * m as f64 / 2.0 + grid.second_difference_bound();
        Ok(grid)
    }

    pub fn info(&self) -> &InterpolationInfo {
        &self.info
    }

    fn spectrum(&self, ix: usize, iy: usize) -> Option<&Vec<Complex>> {
        self.spectra[ix * self.ys.len() + iy].as_ref()
    }

    /// Trigonometric interpolant at one node; the Nyquist mode is split evenly.
    fn node_value(&self, spectrum: &[Complex], theta: f64) -> Complex {
        let m = self.m;
        let phi = theta - self.theta0;
        let mut acc = spectrum[0];
        for j in 1..m.div_ceil(2) {
            acc += spectrum[j] * Complex::from_polar(1.0, j as f64 * phi);
            acc += spectrum[m - j] * Complex::from_polar(1.0, -(j as f64) * phi);
        }
        if m.is_multiple_of(2) {
            acc += spectrum[m / 2] * (m as f64 / 2.0 * phi).cos();
        }
        acc
    }

    fn second_difference_bound(&self) -> f64 {
        let mut bound: f64 = 0.0;
        let probe = [0.0, PI / 2.0, PI, 1.5 * PI];
        let mut check =
            |a: Option<&Vec<Complex>>, b: Option<&Vec<Complex>>, c: Option<&Vec<Complex>>| {
                if let (Some(a), Some(b), Some(c)) = (a, b, c) {
                    for &th in &probe {
                        let d = self.node_value(a, th) - self.node_value(b, th) * 2.0
                            + self.node_value(c, th);
                        bound = bound.max(d.norm() / 8.0);
                    }
                }
            };
        for ix in 1..self.xs.len().saturating_sub(1) {
            for iy in 0..self.ys.len() {
                check(
                    self.spectrum(ix - 1, iy),
                    self.spectrum(ix, iy),
                    self.spectrum(ix + 1, iy),
                );
            }
        }
        for ix in 0..self.xs.len() {
            for iy in 1..self.ys.len().saturating_sub(1) {
                check(
                    self.spectrum(ix, iy - 1),
                    self.spectrum(ix, iy),
                    self.spectrum(ix, iy + 1),
                );
            }
        }
        bound
    }

    fn bracket(axis: &[f64], v: f64) -> Option<(usize, usize, f64)> {
        if axis.len() == 1 {
            return ((axis[0] - v).abs() <= GRID_MATCH).then_some((0, 0, 0.0));
        }
        if v < axis[0] - GRID_MATCH || v > axis[axis.len() - 1] + GRID_MATCH {
            return None;
        }
        let hi = axis.partition_point(|a| *a < v).clamp(1, axis.len() - 1);
        let lo = hi - 1;
        let u = ((v - axis[lo]) / (axis[hi] - axis[lo])).clamp(0.0, 1.0);
        Some((lo, hi, u))
    }

    /// Interpolated value, or `None` when no surrounding node carries data.
    pub fn interpolate(&self, p: ComplexPoint2) -> Option<Complex> {
        let (x0, x1, u) = Self::bracket(&self.xs, p.z.re)?;
        let (y0, y1, v) = Self::bracket(&self.ys, p.z.im)?;
        let theta = if p.w.norm() > 0.0 {
            p.w.arg()
        } else {
            self.theta0
        };
        let corners = [
            (x0, y0, (1.0 - u) * (1.0 - v)),
            (x1, y0, u * (1.0 - v)),
            (x0, y1, (1.0 - u) * v),
            (x1, y1, u * v),
        ];
        let mut acc = Complex::new(0.0, 0.0);
        let mut weight = 0.0;
        for (ix, iy, wgt) in corners {
            if let Some(spec) = self.spectrum(ix, iy) {
                if wgt > 0.0 || weight == 0.0 {
                    acc += self.node_value(spec, theta) * wgt;
                    weight += wgt;
                }
            }
        }
        if weight > 0.0 {
            Some(acc / weight)
        } else {
            corners
                .iter()
                .find_map(|&(ix, iy, _)| self.spectrum(ix, iy).map(|s| self.node_value(s, theta)))
        }
    }
}

impl BoundaryFunction for SampledGrid {
    /// Points outside the sampled region evaluate to NaN.
    fn eval(&self, p: ComplexPoint2) -> Complex {
        self.interpolate(p)
            .unwrap_or(Complex::new(f64::NAN, f64::NAN))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn monomial_slices() {
        let f = |p: ComplexPoint2| p.z * p.w * p.w;
        let z = c(0.3, -0.4);
        for n in -3..=4 {
            let v = slice_coefficient(&f, n, z, 64).unwrap();
            let expect = if n == 2 { z } else { c(0.0, 0.0) };
            assert!((v - expect).norm() < 1e-15, "n={n}");
        }
        let g = |p: ComplexPoint2| Complex::new(p.w.norm_sqr(), 0.0);
        assert!((slice_coefficient(&g, 0, z, 32).unwrap() - c(0.75, 0.0)).norm() < 1e-15);
        assert!(slice_coefficient(&g, 1, z, 32).unwrap().norm() < 1e-15);
    }

    #[test]
    fn argument_checks() {
        let f = |p: ComplexPoint2| p.w;
        assert!(matches!(
            slice_coefficient(&f, 0, c(1.0, 0.0), 64),
            Err(Error::OutsideDomain(_))
        ));
        assert!(slice_coefficient(&f, 30, c(0.0, 0.0), 64).is_err());
        let near = c(1.0 - 1e-14, 0.0);
        assert!(matches!(
            slice_coefficient(&f, 4, near, 64),
            Err(Error::AmplificationRefused { n: 4, .. })
        ));
        assert!(slice_coefficient(&f, -4, near, 64).is_ok());
    }

    #[test]
    fn psi_matches_power_times_coefficient() {
        let f = |p: ComplexPoint2| p.z * p.w.conj() + p.w * p.w * p.w + p.z.conj() * p.w;
        let psi = averaged_function(&f, 1, 64);
        let p = ComplexPoint2::new(c(0.6, 0.0), c(0.0, 0.8));
        let c1 = slice_coefficient(&f, 1, p.z, 64).unwrap();
        assert!((psi.eval(p) - p.w * c1).norm() < 1e-14);
    }

    #[test]
    fn probe_of_z_plus_w_is_flat() {
        let f = |p: ComplexPoint2| p.z + p.w;
        let report = boundary_limit_probe(&f, 1, &[0.5, 0.25, 0.125], 16, 64).unwrap();
        assert!(report.sup_differences.iter().all(|d| *d < 1e-14));
        assert!(report.monotone);
        assert!(boundary_limit_probe(&f, 1, &[0.25, 0.5], 16, 64).is_err());
    }

    #[test]
    fn probe_of_example11_matches_closed_form() {
        // c_0 at sqrt(1 - R^2) e^{iφ} is (1 - R^2)^2 e^{6iφ} for z^5 / conj(z).
        let f = |p: ComplexPoint2| {
            if p.z.norm_sqr() == 0.0 {
                c(0.0, 0.0)
            } else {
                p.z.powu(5) / p.z.conj()
            }
        };
        let radii = [0.5, 0.25, 0.125, 0.0625];
        let report = boundary_limit_probe(&f, 0, &radii, 32, 64).unwrap();
        for (d, pair) in report.sup_differences.iter().zip(radii.windows(2)) {
            let expect = (1.0 - pair[1] * pair[1]).powi(2) - (1.0 - pair[0] * pair[0]).powi(2);
            assert!((d - expect).abs() < 1e-14, "{d} {expect}");
        }
        assert!(report.monotone);
    }

    #[test]
    fn probe_of_smooth_polynomial_converges() {
        let f = |p: ComplexPoint2| {
            let (z, w) = (p.z, p.w);
            z * w.conj() * 0.7 + z.conj().powu(2) * c(0.1, -0.4) + w.powu(3) * z + w.conj() * w * c(0.0, 0.3)
        };
        let radii: Vec<f64> = (1..=10).map(|k| 0.5f64.powi(k)).collect();
        for n in 0..=2 {
            let report = boundary_limit_probe(&f, n, &radii, 64, 64).unwrap();
            assert!(report.monotone, "{n} {:?}", report.sup_differences);
            assert!(report.final_difference < 1e-3);
        }
    }

    fn grid_of<F: Fn(ComplexPoint2) -> Complex>(f: F, nxy: usize, m: usize) -> Vec<GridSample> {
        let mut rows = Vec::new();
        for i in 0..nxy {
            for j in 0..nxy {
                let x = -0.9 + 1.8 * i as f64 / (nxy - 1) as f64;
                let y = -0.9 + 1.8 * j as f64 / (nxy - 1) as f64;
                if x * x + y * y > 1.0 {
                    continue;
                }
                let s = (1.0 - x * x - y * y).max(0.0).sqrt();
                for k in 0..m {
                    let theta = 0.1 + TAU * k as f64 / m as f64;
                    let value = f(ComplexPoint2::new(c(x, y), Complex::from_polar(s, theta)));
                    rows.push(GridSample { x, y, theta, value });
                }
            }
        }
        rows
    }

    #[test]
    fn sampled_grid_reproduces_nodes_and_interpolates() {
        let f = |p: ComplexPoint2| p.z + p.w * p.w;
        let grid = SampledGrid::from_samples(&grid_of(f, 19, 16)).unwrap();
        let p = ComplexPoint2::new(
            c(0.1, 0.2),
            Complex::from_polar((1.0f64 - 0.05).sqrt(), 0.1),
        );
        assert!((grid.eval(p) - f(p)).norm() < 1e-12);
        // Off-node: z linear is exact, w^2 depends on |w| which varies bilinearly.
        let q = ComplexPoint2::new(
            c(0.15, 0.25),
            Complex::from_polar((1.0f64 - 0.085).sqrt(), 1.3),
        );
        assert!((grid.eval(q) - f(q)).norm() < 1e-2);
        assert!(grid.info().error_bound < 1e-1);
        assert_eq!(grid.info().theta_samples, 16);
    }

    #[test]
    fn sampled_grid_rejects_bad_input() {
        let mut rows = grid_of(|p: ComplexPoint2| p.z, 5, 8);
        rows.pop();
        assert!(SampledGrid::from_samples(&rows).is_err());
        let mut rows = grid_of(|p: ComplexPoint2| p.z, 5, 8);
        rows[0].theta += 0.01;
        assert!(SampledGrid::from_samples(&rows).is_err());
        assert!(SampledGrid::from_samples(&[]).is_err());
    }
}
