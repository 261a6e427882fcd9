//! Periodic hypercubic lattices and difference operators on scalar fields.
//!
//! A [`Lattice`] is a `D`-dimensional torus with `shape[a]` sites along axis
//! `a` and uniform spacing `ε`. Scalar fields are dense complex arrays in
//! row-major node order. The translation operator is
//! `T_y[f](x) = f(x − y)`; the two one-sided difference quotients are
//!
//! * `forward_diff` (written `←∂ₐ`): `(f(x + eₐ) − f(x)) / ε`
//! * `backward_diff` (written `→∂ₐ`): `(f(x) − f(x − eₐ)) / ε`
//!
//! together with the symmetric mean `½(←∂ₐ + →∂ₐ)` and the osmotic
//! difference `←∂ₐ − →∂ₐ` (a second difference times `ε`). All of these
//! commute with each other and satisfy `T_{−eₐ} ∘ →∂ₐ = ←∂ₐ` and
//! `(→∂ₐ)† = −←∂ₐ` with respect to the plain node sum.

use num_complex::Complex64;

/// A periodic hypercubic lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    shape: Vec<usize>,
    spacing: f64,
}

impl Lattice {
    /// Creates a lattice with the given per-axis extents and spacing.
    ///
    /// Panics if `shape` is empty, any extent is zero, or `spacing ≤ 0`.
    pub fn new(shape: Vec<usize>, spacing: f64) -> Self {
        assert!(!shape.is_empty(), "lattice must have at least one axis");
        assert!(shape.iter().all(|&n| n > 0), "extents must be positive");
        assert!(spacing > 0.0, "spacing must be positive");
        Self { shape, spacing }
    }

    /// Cubic lattice: `dim` axes of `size` sites each.
    pub fn cubic(dim: usize, size: usize, spacing: f64) -> Self {
        Self::new(vec![size; dim], spacing)
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Total number of nodes.
    pub fn num_nodes(&self) -> usize {
        self.shape.iter().product()
    }

    /// Row-major flat index of a coordinate tuple (coordinates are reduced
    /// modulo the extents, so any integer offsets are accepted).
    pub fn index_of(&self, coords: &[i64]) -> usize {
        debug_assert_eq!(coords.len(), self.dim());
        let mut idx = 0usize;
        for (a, &c) in coords.iter().enumerate() {
            let n = self.shape[a] as i64;
            idx = idx * self.shape[a] + c.rem_euclid(n) as usize;
        }
        idx
    }

    /// Coordinate tuple of a flat node index.
    pub fn coords_of(&self, mut idx: usize) -> Vec<i64> {
        let mut coords = vec![0i64; self.dim()];
        for a in (0..self.dim()).rev() {
            coords[a] = (idx % self.shape[a]) as i64;
            idx /= self.shape[a];
        }
        coords
    }

    /// Flat index of the node one step along `axis` from `idx`
    /// (`steps` may be negative; periodic wrap-around).
    pub fn neighbor(&self, idx: usize, axis: usize, steps: i64) -> usize {
        let mut coords = self.coords_of(idx);
        coords[axis] += steps;
        self.index_of(&coords)
    }

    /// Iterates all node indices.
    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.num_nodes()
    }

    /// Translation `T_y[f](x) = f(x − y)` with `y` in lattice steps.
    pub fn translate(&self, f: &[Complex64], y: &[i64]) -> Vec<Complex64> {
        debug_assert_eq!(f.len(), self.num_nodes());
        let mut out = vec![Complex64::default(); f.len()];
        for x in self.nodes() {
            let coords = self.coords_of(x);
            let src: Vec<i64> = coords.iter().zip(y).map(|(c, s)| c - s).collect();
            out[x] = f[self.index_of(&src)];
        }
        out
    }

    /// Forward difference `←∂ₐ f (x) = (f(x + eₐ) − f(x)) / ε`.
    pub fn forward_diff(&self, f: &[Complex64], axis: usize) -> Vec<Complex64> {
        let eps = self.spacing;
        (0..f.len())
            .map(|x| (f[self.neighbor(x, axis, 1)] - f[x]) / eps)
            .collect()
    }

    /// Backward difference `→∂ₐ f (x) = (f(x) − f(x − eₐ)) / ε`.
    pub fn backward_diff(&self, f: &[Complex64], axis: usize) -> Vec<Complex64> {
        let eps = self.spacing;
        (0..f.len())
            .map(|x| (f[x] - f[self.neighbor(x, axis, -1)]) / eps)
            .collect()
    }

    /// Symmetric difference `½(←∂ₐ + →∂ₐ) f (x) = (f(x+eₐ) − f(x−eₐ)) / 2ε`.
    pub fn symmetric_diff(&self, f: &[Complex64], axis: usize) -> Vec<Complex64> {
        let eps = self.spacing;
        (0..f.len())
            .map(|x| (f[self.neighbor(x, axis, 1)] - f[self.neighbor(x, axis, -1)]) / (2.0 * eps))
            .collect()
    }

    /// Osmotic difference `(←∂ₐ − →∂ₐ) f (x) = (f(x+eₐ) − 2f(x) + f(x−eₐ)) / ε`.
    pub fn osmotic_diff(&self, f: &[Complex64], axis: usize) -> Vec<Complex64> {
        let eps = self.spacing;
        (0..f.len())
            .map(|x| {
                (f[self.neighbor(x, axis, 1)] - 2.0 * f[x] + f[self.neighbor(x, axis, -1)]) / eps
            })
            .collect()
    }

    /// Allowed momentum components along `axis`: `k = 2π n / (N ε)`.
    pub fn momentum(&self, axis: usize, n: usize) -> f64 {
        2.0 * std::f64::consts::PI * n as f64 / (self.shape[axis] as f64 * self.spacing)
    }

    /// Plane wave `exp(i k · x)` with `k` given per axis in physical units.
    pub fn plane_wave(&self, k: &[f64]) -> Vec<Complex64> {
        debug_assert_eq!(k.len(), self.dim());
        self.nodes()
            .map(|x| {
                let coords = self.coords_of(x);
                let phase: f64 = coords
                    .iter()
                    .zip(k)
                    .map(|(&c, &kk)| kk * c as f64 * self.spacing)
                    .sum();
                Complex64::from_polar(1.0, phase)
            })
            .collect()
    }

    /// Node sum `Σ_x f̄(x) g(x)` (unweighted sesquilinear pairing).
    pub fn dot(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        f.iter().zip(g).map(|(a, b)| a.conj() * b).sum()
    }

    /// Sawtooth coordinate function `Xᵃ(x) = ε · xᵃ` with `xᵃ ∈ [0, Nₐ)`.
    ///
    /// On the torus the coordinate is single-valued only up to the wrap, so
    /// identities involving `Xᵃ` hold at nodes whose relevant neighbours do
    /// not cross the seam; see [`interior_mask`](Self::interior_mask).
    pub fn coordinate(&self, axis: usize) -> Vec<Complex64> {
        self.nodes()
            .map(|x| Complex64::new(self.coords_of(x)[axis] as f64 * self.spacing, 0.0))
            .collect()
    }

    /// `true` for nodes at least `margin` steps away from the periodic seam
    /// along every axis (so shifts up to `margin` never wrap).
    pub fn interior_mask(&self, margin: usize) -> Vec<bool> {
        self.nodes()
            .map(|x| {
                let coords = self.coords_of(x);
                coords.iter().enumerate().all(|(a, &c)| {
                    c >= margin as i64 && c + (margin as i64) < self.shape[a] as i64
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn indexing_round_trip() {
        let lat = Lattice::new(vec![3, 4, 5], 0.5);
        for idx in lat.nodes() {
            assert_eq!(lat.index_of(&lat.coords_of(idx)), idx);
        }
        assert_eq!(lat.index_of(&[-1, 0, 0]), lat.index_of(&[2, 0, 0]));
    }

    #[test]
    fn translation_shifts_arguments() {
        // T_y[f](x) = f(x − y) on a 4-site line.
        let lat = Lattice::cubic(1, 4, 1.0);
        let f: Vec<_> = (0..4).map(|i| c(i as f64)).collect();
        let t = lat.translate(&f, &[1]);
        assert_eq!(t, vec![c(3.0), c(0.0), c(1.0), c(2.0)]);
    }

    #[test]
    fn forward_equals_translated_backward() {
        // T_{−eₐ} ∘ →∂ₐ = ←∂ₐ.
        let lat = Lattice::cubic(2, 4, 0.7);
        let f: Vec<_> = lat
            .nodes()
            .map(|x| Complex64::new((x as f64).sin(), (x as f64 * 0.3).cos()))
            .collect();
        let lhs = lat.translate(&lat.backward_diff(&f, 1), &[0, -1]);
        let rhs = lat.forward_diff(&f, 1);
        for (a, b) in lhs.iter().zip(&rhs) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-14);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn backward_adjoint_is_minus_forward() {
        // ⟨→∂ₐ f, g⟩ = ⟨f, −←∂ₐ g⟩ under the plain node sum.
        let lat = Lattice::cubic(2, 5, 1.3);
        let f: Vec<_> = lat.nodes().map(|x| c((x * x % 7) as f64)).collect();
        let g: Vec<_> = lat.nodes().map(|x| c((x * 3 % 11) as f64)).collect();
        let lhs = lat.dot(&lat.backward_diff(&f, 0), &g);
        let rhs = -lat.dot(&f, &lat.forward_diff(&g, 0));
        assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-12);
        assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-12);
    }

    #[test]
    fn plane_wave_is_forward_diff_eigenvector() {
        // ←∂ₐ e^{ikx} = (e^{ikε} − 1)/ε · e^{ikx}.
        let lat = Lattice::cubic(1, 8, 0.5);
        let k = lat.momentum(0, 3);
        let w = lat.plane_wave(&[k]);
        let d = lat.forward_diff(&w, 0);
        let lam = (Complex64::from_polar(1.0, k * lat.spacing()) - 1.0) / lat.spacing();
        for x in lat.nodes() {
            let expect = lam * w[x];
            assert_abs_diff_eq!(d[x].re, expect.re, epsilon = 1e-13);
            assert_abs_diff_eq!(d[x].im, expect.im, epsilon = 1e-13);
        }
    }

    #[test]
    fn product_rule_with_lattice_correction() {
        // ←∂ₐ(fg) = (←∂ₐf)g + f(←∂ₐg) + ε(←∂ₐf)(←∂ₐg).
        let lat = Lattice::cubic(2, 4, 0.9);
        let f: Vec<_> = lat.nodes().map(|x| c((x as f64 * 0.31).sin())).collect();
        let g: Vec<_> = lat.nodes().map(|x| c((x as f64 * 0.17).cos())).collect();
        let fg: Vec<_> = f.iter().zip(&g).map(|(a, b)| a * b).collect();
        let df = lat.forward_diff(&f, 0);
        let dg = lat.forward_diff(&g, 0);
        let lhs = lat.forward_diff(&fg, 0);
        for x in lat.nodes() {
            let rhs = df[x] * g[x] + f[x] * dg[x] + lat.spacing() * df[x] * dg[x];
            assert_abs_diff_eq!(lhs[x].re, rhs.re, epsilon = 1e-13);
        }
    }
}
