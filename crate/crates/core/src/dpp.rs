//! Exact sampling of the determinantal process of K^s restricted to an
//! interval, on the measure of a quadrature grid.
//!
//! With D the quadrature weights, the discrete process on the grid nodes has
//! marginal kernel D^{1/2} K D^{1/2}. Its node intensities w_i K(x_i, x_i)
//! integrate the continuum one-point function K(x, x) bin by bin.

use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::kernel::SpectralParameter;
use crate::quadrature::QuadratureRule;
use crate::{Complex, Error, Result};

/// Gauss–Legendre nodes per panel of the sampling grid.
pub const PANEL_NODES: usize = 16;

/// Eigendata of the symmetrized kernel matrix on [a, b].
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    grid: QuadratureRule,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex>,
    clip: f64,
}

/// One draw: sorted grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    pub points: Vec<f64>,
    pub seed: u64,
    pub interval: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// bins + 1 edges.
    pub edges: Vec<f64>,
    /// Points per unit length, averaged over draws.
    pub density: Vec<f64>,
    pub std_err: Vec<f64>,
}

/// Panel-aligned composite Gauss–Legendre grid with at least `n_nodes` nodes.
/// When 0 is interior the grid has a panel edge there, so no node sits at 0.
pub fn sampling_grid(a: f64, b: f64, n_nodes: usize) -> Result<QuadratureRule> {
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("sampling interval needs a < b"));
    }
    if n_nodes < PANEL_NODES {
        return Err(Error::Domain("at least 16 nodes"));
    }
    let panels = n_nodes.div_ceil(PANEL_NODES);
    if a < 0.0 && b > 0.0 && panels >= 2 {
        let left = ((panels as f64 * -a / (b - a)).round() as usize).clamp(1, panels - 1);
        let l = QuadratureRule::composite(left, PANEL_NODES, a, 0.0, 0.0)?;
        return l.join(&QuadratureRule::composite(panels - left, PANEL_NODES, 0.0, b, 0.0)?);
    }
    QuadratureRule::composite(panels, PANEL_NODES, a, b, 0.0)
}

pub fn nystrom_eig(s: &SpectralParameter, a: f64, b: f64, n_nodes: usize) -> Result<SpectralDecomposition> {
    let grid = sampling_grid(a, b, n_nodes)?;
    SpectralDecomposition::on_grid(s, grid)
}

impl SpectralDecomposition {
    pub fn on_grid(s: &SpectralParameter, grid: QuadratureRule) -> Result<Self> {
        let xs = grid.nodes();
        let n = xs.len();
        let k = s.kernel_matrix(xs)?;
        let sw: Vec<f64> = grid.weights().iter().map(|w| w.sqrt()).collect();
        let m = DMatrix::from_fn(n, n, |i, j| k[i * n + j] * (sw[i] * sw[j]));
        let eig = m.symmetric_eigen();
        Self::from_parts(grid, eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    }

    /// Assembles a decomposition from given eigendata, clipping eigenvalues to [0, 1].
    pub fn from_parts(grid: QuadratureRule, eigenvalues: Vec<f64>, eigenvectors: DMatrix<Complex>) -> Result<Self> {
        if eigenvectors.nrows() != grid.len() || eigenvectors.ncols() != eigenvalues.len() {
            return Err(Error::Domain("eigendata does not match the grid"));
        }
        let mut clip = 0.0f64;
        let mut vals = Vec::with_capacity(eigenvalues.len());
        for v in eigenvalues {
            if !v.is_finite() {
                return Err(Error::EigFailure);
            }
            let c = v.clamp(0.0, 1.0);
            clip = clip.max((v - c).abs());
            vals.push(c);
        }
        Ok(SpectralDecomposition { grid, eigenvalues: vals, eigenvectors, clip })
    }

    pub fn grid(&self) -> &QuadratureRule {
        &self.grid
    }

    /// Eigenvalues after clipping to [0, 1], in the solver's order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors of D^{1/2} K D^{1/2}, one per column.
    pub fn eigenvectors(&self) -> &DMatrix<Complex> {
        &self.eigenvectors
    }

    /// Largest distance an eigenvalue was moved by clipping.
    pub fn clip_norm(&self) -> f64 {
        self.clip
    }

    pub fn interval(&self) -> (f64, f64) {
        self.grid.domain()
    }

    /// Expected number of points, Σ λ_k.
    pub fn expected_count(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Inclusion probability of each node, Σ_k λ_k |v_k(i)|².
    pub fn node_intensity(&self) -> Vec<f64> {
        let v = &self.eigenvectors;
        (0..v.nrows())
            .map(|i| (0..v.ncols()).map(|k| self.eigenvalues[k] * v[(i, k)].norm_sqr()).sum())
            .collect()
    }

    /// Expected points per unit length in each of `bins` equal bins.
    pub fn expected_intensity(&self, bins: usize) -> Vec<f64> {
        let (a, b) = self.interval();
        let width = (b - a) / bins as f64;
        let mut out = alloc::vec![0.0; bins];
        for (&x, p) in self.grid.nodes().iter().zip(self.node_intensity()) {
            out[bin_of(x, a, width, bins)] += p / width;
        }
        out
    }

    /// Bernoulli selection of eigenvectors, then the projection recursion.
    pub fn sample(&self, seed: u64) -> PointConfiguration {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.eigenvectors.nrows();
        let mut cols: Vec<Vec<Complex>> = Vec::new();
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            if uniform(&mut rng) < lam {
                cols.push(self.eigenvectors.column(k).iter().copied().collect());
            }
        }
        let nodes = self.grid.nodes();
        let mut points = Vec::with_capacity(cols.len());
        while !cols.is_empty() {
            let probs: Vec<f64> = (0..n).map(|i| cols.iter().map(|c| c[i].norm_sqr()).sum()).collect();
            let total: f64 = probs.iter().sum();
            let mut u = uniform(&mut rng) * total;
            let mut pick = n - 1;
            for (i, &p) in probs.iter().enumerate() {
                if u < p {
                    pick = i;
                    break;
                }
                u -= p;
            }
            points.push(nodes[pick]);
            // drop the direction with the largest component at the chosen node,
            // eliminate that node from the rest and re-orthonormalize
            let j = (0..cols.len())
                .max_by(|&p, &q| cols[p][pick].norm().total_cmp(&cols[q][pick].norm()))
                .unwrap_or(0);
            let pivot = cols.swap_remove(j);
            for c in cols.iter_mut() {
                let r = c[pick] / pivot[pick];
                for (ci, pi) in c.iter_mut().zip(&pivot) {
                    *ci -= r * pi;
                }
                c[pick] = Complex::new(0.0, 0.0);
            }
            gram_schmidt(&mut cols);
        }
        points.sort_by(f64::total_cmp);
        PointConfiguration { points, seed, interval: self.interval() }
    }
}

fn gram_schmidt(cols: &mut [Vec<Complex>]) {
    for k in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(k);
        let c = &mut rest[0];
        for q in done.iter() {
            let d: Complex = q.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
            for (ci, qi) in c.iter_mut().zip(q) {
                *ci -= d * qi;
            }
        }
        let norm = c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for ci in c.iter_mut() {
            *ci /= norm;
        }
    }
}

/// 53 random bits in [0, 1).
fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn bin_of(x: f64, a: f64, width: f64, bins: usize) -> usize {
    (((x - a) / width) as usize).min(bins - 1)
}

/// Binned points per unit length with per-bin standard errors across draws.
pub fn empirical_intensity(configs: &[PointConfiguration], bins: usize) -> Result<Histogram> {
    if configs.len() < 500 {
        return Err(Error::Domain("empirical intensity needs at least 500 configurations"));
    }
    if bins == 0 {
        return Err(Error::Domain("at least one bin"));
    }
    let (a, b) = configs[0].interval;
    if configs.iter().any(|c| c.interval != (a, b)) {
        return Err(Error::Domain("configurations on different intervals"));
    }
    let width = (b - a) / bins as f64;
    let d = configs.len() as f64;
    let mut sum = alloc::vec![0.0; bins];
    let mut sum_sq = alloc::vec![0.0; bins];
    let mut counts = alloc::vec![0.0; bins];
    for c in configs {
        counts.iter_mut().for_each(|v| *v = 0.0);
        for &x in &c.points {
            counts[bin_of(x, a, width, bins)] += 1.0;
        }
        for k in 0..bins {
            sum[k] += counts[k];
            sum_sq[k] += counts[k] * counts[k];
        }
    }
    let mut density = Vec::with_capacity(bins);
    let mut std_err = Vec::with_capacity(bins);
    for k in 0..bins {
        let mean = sum[k] / d;
        let var = (sum_sq[k] / d - mean * mean).max(0.0) * d / (d - 1.0);
        density.push(mean / width);
        std_err.push((var / d).sqrt() / width);
    }
    let edges = (0..=bins).map(|k| a + k as f64 * width).collect();
    Ok(Histogram { edges, density, std_err })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_splits_at_zero() {
        let g = sampling_grid(-10.0, 10.0, 400).unwrap();
        assert_eq!(g.len(), 400);
        assert!(g.nodes().iter().all(|&x| x != 0.0));
        let total: f64 = g.weights().iter().sum();
        assert!((total - 20.0).abs() < 1e-12);
        assert!(sampling_grid(1.0, 2.0, 8).is_err());
    }

    #[test]
    fn gram_schmidt_orthonormalizes() {
        let mut cols = alloc::vec![
            alloc::vec![Complex::new(1.0, 0.0), Complex::new(1.0, 1.0), Complex::new(0.0, 2.0)],
            alloc::vec![Complex::new(0.0, 1.0), Complex::new(2.0, 0.0), Complex::new(1.0, 0.0)],
        ];
        gram_schmidt(&mut cols);
        let d: Complex = cols[0].iter().zip(&cols[1]).map(|(a, b)| a.conj() * b).sum();
        assert!(d.norm() < 1e-15);
    }
}
