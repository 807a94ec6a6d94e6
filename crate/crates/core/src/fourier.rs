//! Uniform periodic trapezoid rule on the circle.
//!
//! With `N` nodes `theta_k = 2 pi k / N` the rule integrates every
//! trigonometric polynomial of degree below `N` exactly, and is spectrally
//! accurate for smooth periodic integrands. Phases are looked up by integer
//! index so `e^{-i m theta_k}` never accumulates angle drift.

use alloc::vec::Vec;
use core::f64::consts::TAU;

// Inherent when std is linked into the graph, needed under no_std otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::Complex;

#[derive(Debug, Clone)]
pub struct PeriodicRule {
    roots: Vec<Complex>,
}

impl PeriodicRule {
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "quadrature order must be positive");
        let roots = (0..order)
            .map(|k| {
                let theta = TAU * k as f64 / order as f64;
                Complex::new(theta.cos(), theta.sin())
            })
            .collect();
        PeriodicRule { roots }
    }

    pub fn order(&self) -> usize {
        self.roots.len()
    }

    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.order() as f64
    }

    /// `e^{i theta_k}`.
    pub fn node(&self, k: usize) -> Complex {
        self.roots[k % self.order()]
    }

    /// `e^{i m theta_k}` for any integer `m`.
    pub fn phase(&self, m: i64, k: usize) -> Complex {
        let n = self.order() as i64;
        let idx = (m.rem_euclid(n) * (k as i64 % n)).rem_euclid(n);
        self.roots[idx as usize]
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex> + '_ {
        self.roots.iter().copied()
    }

    /// `(1/N) sum_k v_k e^{-i m theta_k}`.
    pub fn coefficient(&self, values: &[Complex], m: i64) -> Complex {
        assert_eq!(
            values.len(),
            self.order(),
            "sample count must equal quadrature order"
        );
        let mut acc = Complex::new(0.0, 0.0);
        for (k, v) in values.iter().enumerate() {
            acc += v * self.phase(-m, k);
        }
        acc / self.order() as f64
    }

    /// Largest `|coefficient(-m)|` over `1 <= m <= N/2 - 1`, with the offending mode `-m`.
    pub fn negative_residual(&self, values: &[Complex]) -> (f64, Option<i64>) {
        let top = (self.order() / 2).saturating_sub(1) as i64;
        let mut worst = (0.0, None);
        for m in 1..=top {
            let c = self.coefficient(values, -m).norm();
            if c > worst.0 || worst.1.is_none() {
                worst = (c, Some(-m));
            }
        }
        worst
    }
}
