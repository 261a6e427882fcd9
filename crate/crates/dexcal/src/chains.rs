//! p-vector fields (chains), musical isomorphisms, integration, and the
//! boundary operator.
//!
//! A [`ChainField`] stores antisymmetric vector coefficients `v^A(x)` on
//! strictly increasing multi-indices, mirroring [`FormField`]; like form
//! coefficients they live at the *head* node of their cell, so the
//! elementary edge chain `[x, x+eₐ]` has `v^a = δ_{x+eₐ}`. The musical
//! maps insert the metric and volume factors
//!
//! ```text
//! ♯:  v^A = dV · Σ_B det(g⁻¹[A,B]) α_B ,    ♭:  α_A = (1/dV) Σ_B det(g[A,B]) v^B ,
//! ```
//!
//! integration is the coefficient pairing `∫_S α = Σ_x Σ_A α_A(x) S^A(x)`
//! over increasing tuples (the 1/p! of a full-tuple sum is absorbed by the
//! increasing-index storage), and the boundary operator is the transpose of
//! the exterior derivative under that pairing — all metric factors cancel,
//! leaving
//!
//! ```text
//! (∂S)^A = Σ_{b∉A} sign(A,b) · (−←∂_b) S^{A∪b} ,
//! ```
//!
//! so Stokes' theorem `∫_S dα = ∫_{∂S} α` holds exactly by construction.

use crate::forms::FormField;
use crate::lattice::Lattice;
use crate::metric::MetricField;
use crate::multi_index as mi;
use num_complex::Complex64;
use rand::Rng;

/// A p-vector field; storage mirrors [`FormField`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChainField {
    field: FormField,
}

impl ChainField {
    pub fn zero(lattice: &Lattice, grade: usize) -> Self {
        Self { field: FormField::zero(lattice, grade) }
    }

    pub fn random<R: Rng>(lattice: &Lattice, grade: usize, rng: &mut R) -> Self {
        Self { field: FormField::random(lattice, grade, rng) }
    }

    /// Builds a chain from raw increasing-index coefficients.
    pub fn from_coefficients(field: FormField) -> Self {
        Self { field }
    }

    /// The elementary edge chain `[x, x+eₐ]` (unit coefficient at the head).
    pub fn unit_edge(lattice: &Lattice, x: &[i64], axis: usize) -> Self {
        let mut coords = x.to_vec();
        coords[axis] += 1;
        let mut data = vec![Complex64::default(); lattice.num_nodes()];
        data[lattice.index_of(&coords)] = Complex64::new(1.0, 0.0);
        Self { field: FormField::from_component(lattice, &[axis as u8], data) }
    }

    /// The elementary plaquette chain spanned by `axis_a < axis_b` at base
    /// `x` (unit coefficient at the far corner).
    pub fn unit_plaquette(lattice: &Lattice, x: &[i64], axis_a: usize, axis_b: usize) -> Self {
        let mut coords = x.to_vec();
        coords[axis_a] += 1;
        coords[axis_b] += 1;
        let mut data = vec![Complex64::default(); lattice.num_nodes()];
        data[lattice.index_of(&coords)] = Complex64::new(1.0, 0.0);
        Self {
            field: FormField::from_component(lattice, &[axis_a as u8, axis_b as u8], data),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        self.field.lattice()
    }

    pub fn grade(&self) -> usize {
        self.field.grade()
    }

    /// The raw coefficient storage.
    pub fn coefficients(&self) -> &FormField {
        &self.field
    }

    pub fn comp(&self, idx: &[u8]) -> &[Complex64] {
        self.field.comp(idx)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { field: self.field.sub(&other.field) }
    }

    pub fn max_abs(&self) -> f64 {
        self.field.max_abs()
    }

    /// Boundary operator: the transpose of the exterior derivative under
    /// the integration pairing. Metric-independent.
    pub fn boundary(&self) -> Self {
        let lat = self.lattice().clone();
        let dim = lat.dim();
        if self.grade() == 0 {
            return Self::zero(&lat, 0);
        }
        let mut out = FormField::zero(&lat, self.grade() - 1);
        for a_idx in mi::multi_indices(dim, self.grade() - 1) {
            let target = out.comp_mut(&a_idx);
            for b in 0..dim as u8 {
                let Some((merged, sign)) = mi::insert(&a_idx, b) else {
                    continue;
                };
                let d = lat.forward_diff(self.field.comp(&merged), b as usize);
                let s = -(sign as f64);
                for x in 0..target.len() {
                    target[x] += s * d[x];
                }
            }
        }
        Self { field: out }
    }
}

/// Index raising `♯`: `v^A = dV Σ_B det(g⁻¹[A,B]) α_B`.
pub fn sharp(alpha: &FormField, m: &MetricField) -> ChainField {
    let mut raised = m.apply_inverse(alpha);
    for idx in raised.indices() {
        let comp = raised.comp_mut(&idx);
        for (v, &w) in comp.iter_mut().zip(m.dv()) {
            *v *= w;
        }
    }
    ChainField { field: raised }
}

/// Index lowering `♭`: `α_A = (1/dV) Σ_B det(g[A,B]) v^B`; inverse of
/// [`sharp`].
pub fn flat(v: &ChainField, m: &MetricField) -> FormField {
    let mut scaled = v.field.clone();
    for idx in scaled.indices() {
        let comp = scaled.comp_mut(&idx);
        for (c, &w) in comp.iter_mut().zip(m.dv()) {
            *c /= w;
        }
    }
    m.apply(&scaled)
}

/// Integration of a form over a chain: the coefficient pairing
/// `Σ_x Σ_A α_A(x) S^A(x)`. Mismatched grades integrate to zero.
pub fn integrate(alpha: &FormField, s: &ChainField) -> Complex64 {
    if alpha.grade() != s.grade() {
        return Complex64::default();
    }
    alpha.pair_bilinear(&s.field)
}

/// Stokes residual `|∫_S dα − ∫_{∂S} α|`.
pub fn stokes_residual(alpha: &FormField, s: &ChainField) -> f64 {
    let lhs = integrate(&alpha.exterior_derivative(), s);
    let rhs = integrate(alpha, &s.boundary());
    (lhs - rhs).norm()
}
