//! Metric structure: the metric operator `ĝ`, deformed inner products and
//! codifferentials, volume forms, the Hodge star, and Laplace–Beltrami
//! operators.
//!
//! A [`MetricField`] stores a symmetric invertible `D×D` matrix `g_{ab}(x)`
//! per node together with the volume weight `dV(x) = √|det g(x)|`. On a
//! grade-`p` form the metric operator acts pointwise through the `p`-th
//! compound matrix,
//!
//! ```text
//! (ĝα)_B(x) = Σ_A det( g(x)[B, A] ) α_A(x) ,
//! ```
//!
//! (minor determinants over increasing row/column sets), which is the
//! antisymmetrised product of `p` copies of `g`. Everything metric-deformed
//! is built by conjugation with `ĝ`:
//!
//! * inner product  `⟨α|β⟩_g = ⟨α| ĝ⁻¹ β⟩_{dV}`,
//! * codifferential `d†_g = ĝ ∘ d†_{dV} ∘ ĝ⁻¹` (the exact adjoint of `d`),
//! * Hodge star     `⋆_g = ĝ ∘ ⋆_{dV}`,
//! * Laplace–Beltrami `Δ_g = d d†_g + d†_g d`.
//!
//! The "light-cone" metric `g_ab = δ_ab − 2/D` (available for `D ≥ 2` via
//! [`MetricField::diamond`]) is flat Lorentzian: it has one eigenvalue `−1`
//! along the diagonal direction `t ∝ Σ_a Xᵃ` and `D−1` eigenvalues `+1`,
//! and equals the operator `(ε²/D)(G†G − GG†)` built from the graph
//! operator `G`.

use crate::forms::FormField;
use crate::lattice::Lattice;
use crate::multi_index as mi;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

const DET_THRESHOLD: f64 = 1e-12;

/// A per-node symmetric invertible metric with cached inverse, determinant
/// and volume weight.
#[derive(Debug, Clone)]
pub struct MetricField {
    lattice: Lattice,
    g: Vec<DMatrix<f64>>,
    g_inv: Vec<DMatrix<f64>>,
    det: Vec<f64>,
    dv: Vec<f64>,
    /// Sign constant `c` of the volume form `c · dX^{1⋯D} √|det g|/dV |1⟩`.
    vol_sign: f64,
}

impl MetricField {
    /// Builds a metric from per-node matrices, validating symmetry and
    /// invertibility (`|det g| > 1e-12`) and caching `dV = √|det g|`.
    pub fn new(lattice: &Lattice, g: Vec<DMatrix<f64>>) -> crate::Result<Self> {
        if g.len() != lattice.num_nodes() {
            return Err(crate::Error::InvalidInput(format!(
                "expected {} metric matrices, got {}",
                lattice.num_nodes(),
                g.len()
            )));
        }
        let d = lattice.dim();
        let mut g_inv = Vec::with_capacity(g.len());
        let mut det = Vec::with_capacity(g.len());
        let mut dv = Vec::with_capacity(g.len());
        for (node, m) in g.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(crate::Error::InvalidInput(format!(
                    "metric at node {node} is not {d}×{d}"
                )));
            }
            if (m - m.transpose()).abs().max() > 1e-12 {
                return Err(crate::Error::InvalidInput(format!(
                    "metric at node {node} is not symmetric"
                )));
            }
            let dt = m.determinant();
            if dt.abs() <= DET_THRESHOLD {
                return Err(crate::Error::InvalidInput(format!(
                    "degenerate metric at node {node}: |det| = {:.3e}",
                    dt.abs()
                )));
            }
            g_inv.push(m.clone().try_inverse().expect("checked determinant"));
            det.push(dt);
            dv.push(dt.abs().sqrt());
        }
        Ok(Self { lattice: lattice.clone(), g, g_inv, det, dv, vol_sign: 1.0 })
    }

    /// The flat (identity) metric.
    pub fn flat(lattice: &Lattice) -> Self {
        let d = lattice.dim();
        Self::new(lattice, vec![DMatrix::identity(d, d); lattice.num_nodes()])
            .expect("identity metric is valid")
    }

    /// A constant metric (the same matrix at every node).
    pub fn constant(lattice: &Lattice, m: DMatrix<f64>) -> crate::Result<Self> {
        Self::new(lattice, vec![m; lattice.num_nodes()])
    }

    /// The flat Lorentzian light-cone metric `g_ab = δ_ab − 2/D` with
    /// `det g = −1`, `dV ≡ 1`, and volume sign `c = −1`.
    pub fn diamond(lattice: &Lattice) -> crate::Result<Self> {
        let d = lattice.dim();
        if d < 2 {
            return Err(crate::Error::InvalidInput(
                "light-cone metric requires dimension ≥ 2".into(),
            ));
        }
        let m = DMatrix::from_fn(d, d, |a, b| {
            (if a == b { 1.0 } else { 0.0 }) - 2.0 / d as f64
        });
        let mut out = Self::constant(lattice, m)?;
        out.vol_sign = -1.0;
        Ok(out)
    }

    /// A diagonal metric from per-node diagonal entries.
    pub fn diagonal(lattice: &Lattice, diag: &[Vec<f64>]) -> crate::Result<Self> {
        let d = lattice.dim();
        let g = diag
            .iter()
            .map(|row| DMatrix::from_fn(d, d, |a, b| if a == b { row[a] } else { 0.0 }))
            .collect();
        Self::new(lattice, g)
    }

    /// A random position-dependent diagonal Riemannian metric with entries
    /// in `[1/2, 2]`.
    pub fn random_diagonal<R: Rng>(lattice: &Lattice, rng: &mut R) -> Self {
        let diag: Vec<Vec<f64>> = (0..lattice.num_nodes())
            .map(|_| (0..lattice.dim()).map(|_| rng.gen::<f64>() * 1.5 + 0.5).collect())
            .collect();
        Self::diagonal(lattice, &diag).expect("positive diagonal is valid")
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn g(&self, node: usize) -> &DMatrix<f64> {
        &self.g[node]
    }

    pub fn g_inv(&self, node: usize) -> &DMatrix<f64> {
        &self.g_inv[node]
    }

    pub fn det(&self, node: usize) -> f64 {
        self.det[node]
    }

    pub fn dv(&self) -> &[f64] {
        &self.dv
    }

    pub fn vol_sign(&self) -> f64 {
        self.vol_sign
    }

    pub fn with_vol_sign(mut self, c: f64) -> Self {
        self.vol_sign = c;
        self
    }

    fn minor(m: &DMatrix<f64>, rows: &[u8], cols: &[u8]) -> f64 {
        match rows.len() {
            0 => 1.0,
            1 => m[(rows[0] as usize, cols[0] as usize)],
            _ => DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
                m[(rows[i] as usize, cols[j] as usize)]
            })
            .determinant(),
        }
    }

    fn apply_matrices(&self, a: &FormField, mats: &[DMatrix<f64>]) -> FormField {
        let dim = self.lattice.dim();
        let p = a.grade();
        let mut out = FormField::zero(&self.lattice, p);
        let indices = mi::multi_indices(dim, p);
        for (bi, b_idx) in indices.iter().enumerate() {
            for (ai, a_idx) in indices.iter().enumerate() {
                let src = &a.comps()[ai];
                let target = &mut out.comp_mut(b_idx)[..];
                for x in 0..src.len() {
                    let w = Self::minor(&mats[x], b_idx, a_idx);
                    if w != 0.0 {
                        target[x] += w * src[x];
                    }
                }
                let _ = bi;
            }
        }
        out
    }

    /// The metric operator `ĝ` (identity on grade 0).
    pub fn apply(&self, a: &FormField) -> FormField {
        self.apply_matrices(a, &self.g)
    }

    /// The inverse metric operator `ĝ⁻¹`.
    pub fn apply_inverse(&self, a: &FormField) -> FormField {
        self.apply_matrices(a, &self.g_inv)
    }

    /// Deformed inner product
    /// `⟨α|β⟩_g = Σ_x Σ_{A,B} det(g⁻¹(x)[A,B]) ᾱ_A(x) β_B(x) dV(x)`.
    /// Sesquilinear in the first slot; for an indefinite metric this is the
    /// (possibly indefinite) bilinear pairing on real forms.
    pub fn inner_product(&self, a: &FormField, b: &FormField) -> Complex64 {
        if a.grade() != b.grade() {
            return Complex64::default();
        }
        a.inner_weighted(&self.apply_inverse(b), &self.dv)
    }

    /// Deformed codifferential `d†_g = ĝ ∘ d†_{dV} ∘ ĝ⁻¹`, the exact adjoint
    /// of the exterior derivative under [`inner_product`](Self::inner_product).
    pub fn codifferential(&self, a: &FormField) -> FormField {
        self.apply(&self.apply_inverse(a).codifferential_weighted(&self.dv))
    }

    /// Metric Hodge star `⋆_g = ĝ ∘ ⋆_{dV}` (grade `p` → `D−p`).
    pub fn hodge(&self, a: &FormField) -> FormField {
        self.apply(&a.hodge_weighted(&self.dv))
    }

    /// Inverse Hodge star `⋆_g⁻¹ = ⋆_{dV}⁻¹ ∘ ĝ⁻¹`.
    pub fn hodge_inverse(&self, a: &FormField) -> FormField {
        let b = self.apply_inverse(a);
        // Invert ⋆_dV: out_A(y) = σ(A) · dV(y + shift) · b_{A^c}(y + shift),
        // the exact inverse of the weighted star's sign/shift/weight action.
        let dim = self.lattice.dim();
        let p = dim - b.grade();
        let mut out = FormField::zero(&self.lattice, p);
        for a_idx in mi::multi_indices(dim, p) {
            let compl = mi::complement(dim, &a_idx);
            let sign = mi::annihilation_sign(dim, &a_idx) as f64;
            let y: Vec<i64> = (0..dim as u8)
                .map(|ax| if compl.contains(&ax) { -1 } else { 0 })
                .collect();
            let src = self.lattice.translate(b.comp(&compl), &y);
            let dv_shift = self.lattice.translate(
                &self.dv.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>(),
                &y,
            );
            let target = &mut out.comp_mut(&a_idx)[..];
            for x in 0..src.len() {
                target[x] = sign * src[x] * dv_shift[x];
            }
        }
        out
    }

    /// Volume form `c · dX^{1⋯D} (det g / dV) |1⟩` with the configured sign
    /// constant `c`; with `dV = √|det g|` the coefficient is `±√|det g|`,
    /// and `⋆_g|1⟩` reproduces it at `c = 1`.
    pub fn volume_form(&self) -> FormField {
        let dim = self.lattice.dim();
        let top: Vec<u8> = (0..dim as u8).collect();
        let data: Vec<Complex64> = self
            .det
            .iter()
            .zip(&self.dv)
            .map(|(&dt, &w)| Complex64::new(self.vol_sign * dt / w, 0.0))
            .collect();
        FormField::from_component(&self.lattice, &top, data)
    }

    /// Laplace–Beltrami operator `{d, d†_g} = d d†_g + d†_g d`.
    pub fn laplace_beltrami(&self, a: &FormField) -> FormField {
        let term2 = self.codifferential(&a.exterior_derivative());
        if a.grade() == 0 {
            // d† on 0-forms is zero, so only the d†d term contributes.
            return term2;
        }
        let term1 = self.codifferential(a).exterior_derivative();
        term1.add(&term2)
    }
}
