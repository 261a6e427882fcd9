//! Graded form fields on a periodic lattice with right-slot coefficients.
//!
//! A grade-`p` form is `Σ_A |dX^{a₁}⋯dX^{a_p} f_A⟩` with strictly increasing
//! multi-indices `A` and a dense complex node array `f_A` per index. The
//! coefficient sits in the *right* slot: moving a function leftward past a
//! differential costs a translation, `f · dXᵇ = dXᵇ · T_{e_b}[f]`. The
//! noncommutative product of basis forms is
//!
//! ```text
//! (dX^A f)(dX^B g) = sign(A,B) · dX^{sort(A∪B)} · T_{Σ_{b∈B} e_b}[f] · g ,
//! ```
//!
//! zero when `A ∩ B ≠ ∅`. The exterior derivative acts componentwise with
//! the backward difference, `d(dX^A f) = Σ_{b∉A} sign · dX^{A∪b} (→∂_b f)`,
//! and the (volume-weighted) codifferential with the forward difference,
//! `d†(dX^{a₁⋯a_p} h) = Σ_r (−1)^r dX^{A∖a_r} (1/dV) ←∂_{a_r}(dV·h)`.

use crate::lattice::Lattice;
use crate::multi_index as mi;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// A graded form field with complex scalar coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FormField {
    lattice: Lattice,
    grade: usize,
    /// One dense node array per increasing multi-index, in lexicographic
    /// order of the indices. Empty when `grade > dim` (the zero form).
    comps: Vec<Vec<Complex64>>,
}

impl FormField {
    /// The zero form of the given grade.
    pub fn zero(lattice: &Lattice, grade: usize) -> Self {
        let n = lattice.num_nodes();
        let comps = vec![
            vec![Complex64::default(); n];
            mi::num_multi_indices(lattice.dim(), grade)
        ];
        Self { lattice: lattice.clone(), grade, comps }
    }

    /// A grade-0 form from a node array.
    pub fn scalar(lattice: &Lattice, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), lattice.num_nodes());
        Self { lattice: lattice.clone(), grade: 0, comps: vec![data] }
    }

    /// The constant unit 0-form `|1⟩`.
    pub fn one(lattice: &Lattice) -> Self {
        Self::scalar(lattice, vec![Complex64::new(1.0, 0.0); lattice.num_nodes()])
    }

    /// A single-component form `dX^idx · data`. The index may be given in any
    /// order; the permutation sign is applied. Repeated axes yield zero.
    pub fn from_component(lattice: &Lattice, idx: &[u8], data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), lattice.num_nodes());
        let mut out = Self::zero(lattice, idx.len());
        let mut sorted: Vec<u8> = Vec::new();
        let mut sign = 1i32;
        // `insert` prepends, so fold the axes from the right to preserve
        // the written wedge order.
        for &a in idx.iter().rev() {
            match mi::insert(&sorted, a) {
                Some((s, sg)) => {
                    sorted = s;
                    sign *= sg;
                }
                None => return out,
            }
        }
        let r = mi::rank(lattice.dim(), &sorted);
        out.comps[r] = if sign == 1 {
            data
        } else {
            data.into_iter().map(|v| -v).collect()
        };
        out
    }

    /// A form with independent standard-normal real and imaginary parts in
    /// every component.
    pub fn random<R: Rng>(lattice: &Lattice, grade: usize, rng: &mut R) -> Self {
        let mut out = Self::zero(lattice, grade);
        for comp in &mut out.comps {
            for v in comp.iter_mut() {
                *v = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * 2.0;
            }
        }
        out
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    /// The increasing multi-indices of this grade, in storage order.
    pub fn indices(&self) -> Vec<Vec<u8>> {
        mi::multi_indices(self.lattice.dim(), self.grade)
    }

    /// Coefficient array for an increasing multi-index.
    pub fn comp(&self, idx: &[u8]) -> &[Complex64] {
        &self.comps[mi::rank(self.lattice.dim(), idx)]
    }

    pub fn comp_mut(&mut self, idx: &[u8]) -> &mut Vec<Complex64> {
        let r = mi::rank(self.lattice.dim(), idx);
        &mut self.comps[r]
    }

    pub fn comps(&self) -> &[Vec<Complex64>] {
        &self.comps
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.grade, other.grade);
        let mut out = self.clone();
        for (c, d) in out.comps.iter_mut().zip(&other.comps) {
            for (a, b) in c.iter_mut().zip(d) {
                *a += b;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for c in &mut out.comps {
            for a in c.iter_mut() {
                *a *= s;
            }
        }
        out
    }

    /// Largest coefficient magnitude over all components and nodes.
    pub fn max_abs(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Componentwise translation `T_y` applied to every coefficient array.
    pub fn translate(&self, y: &[i64]) -> Self {
        let mut out = self.clone();
        for c in &mut out.comps {
            *c = self.lattice.translate(c, y);
        }
        out
    }

    /// Left multiplication by a function: `f · dX^A h = dX^A T_{Σ_{a∈A} e_a}[f] · h`.
    pub fn left_mul_fn(&self, f: &[Complex64]) -> Self {
        let mut out = self.clone();
        for (idx, c) in self.indices().iter().zip(&mut out.comps) {
            let y: Vec<i64> = (0..self.lattice.dim() as u8)
                .map(|a| if idx.contains(&a) { 1 } else { 0 })
                .collect();
            let tf = self.lattice.translate(f, &y);
            for (v, t) in c.iter_mut().zip(&tf) {
                *v *= t;
            }
        }
        out
    }

    /// Right multiplication by a function: `dX^A h · g = dX^A (h·g)`.
    pub fn right_mul_fn(&self, g: &[Complex64]) -> Self {
        let mut out = self.clone();
        for c in &mut out.comps {
            for (v, t) in c.iter_mut().zip(g) {
                *v *= t;
            }
        }
        out
    }

    /// The graded noncommutative product.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.lattice, other.lattice);
        let mut out = Self::zero(&self.lattice, self.grade + other.grade);
        let dim = self.lattice.dim();
        for (a_idx, a_comp) in self.indices().iter().zip(&self.comps) {
            for (b_idx, b_comp) in other.indices().iter().zip(&other.comps) {
                let Some((merged, sign)) = mi::merge(a_idx, b_idx) else {
                    continue;
                };
                // T_{Σ_{b∈B} e_b}[f] · g.
                let y: Vec<i64> = (0..dim as u8)
                    .map(|a| if b_idx.contains(&a) { 1 } else { 0 })
                    .collect();
                let ta = self.lattice.translate(a_comp, &y);
                let target = &mut out.comps[mi::rank(dim, &merged)];
                let s = sign as f64;
                for x in 0..target.len() {
                    target[x] += s * ta[x] * b_comp[x];
                }
            }
        }
        out
    }

    /// Graded anticommutator `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        self.product(other).add(&other.product(self))
    }

    /// Creation operator `Cᵃ`: left multiplication by `dXᵃ` (no translation).
    pub fn create(&self, axis: usize) -> Self {
        let dim = self.lattice.dim();
        let mut out = Self::zero(&self.lattice, self.grade + 1);
        for (idx, comp) in self.indices().iter().zip(&self.comps) {
            if let Some((merged, sign)) = mi::insert(idx, axis as u8) {
                let target = &mut out.comps[mi::rank(dim, &merged)];
                let s = sign as f64;
                for x in 0..target.len() {
                    target[x] += s * comp[x];
                }
            }
        }
        out
    }

    /// Annihilation operator `cᵃ`: removes `dXᵃ` with the alternating sign
    /// of its position (no translation); the adjoint of [`create`](Self::create)
    /// under the unweighted component inner product.
    pub fn annihilate(&self, axis: usize) -> Self {
        let dim = self.lattice.dim();
        if self.grade == 0 {
            return Self::zero(&self.lattice, 0);
        }
        let mut out = Self::zero(&self.lattice, self.grade - 1);
        for (idx, comp) in self.indices().iter().zip(&self.comps) {
            let Some(r) = idx.iter().position(|&a| a == axis as u8) else {
                continue;
            };
            let (reduced, sign) = mi::delete_at(idx, r);
            let target = &mut out.comps[mi::rank(dim, &reduced)];
            let s = sign as f64;
            for x in 0..target.len() {
                target[x] += s * comp[x];
            }
        }
        out
    }

    /// Exterior derivative `d`, acting componentwise with the backward
    /// difference: `d(dX^A f) = Σ_{b∉A} sign(A,b) dX^{A∪b} (→∂_b f)`.
    pub fn exterior_derivative(&self) -> Self {
        let dim = self.lattice.dim();
        let mut out = Self::zero(&self.lattice, self.grade + 1);
        for (idx, comp) in self.indices().iter().zip(&self.comps) {
            for b in 0..dim {
                let Some((merged, sign)) = mi::insert(idx, b as u8) else {
                    continue;
                };
                let df = self.lattice.backward_diff(comp, b);
                let target = &mut out.comps[mi::rank(dim, &merged)];
                let s = sign as f64;
                for x in 0..target.len() {
                    target[x] += s * df[x];
                }
            }
        }
        out
    }

    /// Volume-weighted codifferential
    /// `d†(dX^{a₁⋯a_p} h) = Σ_r (−1)^r dX^{A∖a_r} (1/dV) ←∂_{a_r}(dV·h)`
    /// (`r` 1-based). With `dV ≡ 1` this is the flat codifferential, the
    /// exact adjoint of `d` under the unweighted component inner product.
    pub fn codifferential_weighted(&self, dv: &[f64]) -> Self {
        let dim = self.lattice.dim();
        if self.grade == 0 {
            return Self::zero(&self.lattice, 0);
        }
        let mut out = Self::zero(&self.lattice, self.grade - 1);
        for (idx, comp) in self.indices().iter().zip(&self.comps) {
            let weighted: Vec<Complex64> =
                comp.iter().zip(dv).map(|(v, &w)| v * w).collect();
            for r in 0..idx.len() {
                let (reduced, _) = mi::delete_at(idx, r);
                let sign = if r % 2 == 0 { -1.0 } else { 1.0 }; // (−1)^{r+1} for 0-based r
                let df = self.lattice.forward_diff(&weighted, idx[r] as usize);
                let target = &mut out.comps[mi::rank(dim, &reduced)];
                for x in 0..target.len() {
                    target[x] += sign * df[x] / dv[x];
                }
            }
        }
        out
    }

    /// Flat codifferential (`dV ≡ 1`).
    pub fn codifferential_flat(&self) -> Self {
        self.codifferential_weighted(&vec![1.0; self.lattice.num_nodes()])
    }

    /// Volume-weighted Hodge dual:
    /// `⋆(dX^A f) = σ(A) · dX^{A^c} · T_{Σ_{c∈A^c} e_c}[f] / dV`,
    /// where `σ(A)` is the sign of annihilating the axes of `A` in order
    /// from the top form. With `dV ≡ 1` this is the flat star; metric stars
    /// compose it with the metric operator.
    pub fn hodge_weighted(&self, dv: &[f64]) -> Self {
        let dim = self.lattice.dim();
        if self.grade > dim {
            // Identically zero (no components above the top grade).
            return Self::zero(&self.lattice, 0);
        }
        let mut out = Self::zero(&self.lattice, dim - self.grade);
        for (idx, comp) in self.indices().iter().zip(&self.comps) {
            let compl = mi::complement(dim, idx);
            let sign = mi::annihilation_sign(dim, idx) as f64;
            let y: Vec<i64> = (0..dim as u8)
                .map(|a| if compl.contains(&a) { 1 } else { 0 })
                .collect();
            let tf = self.lattice.translate(comp, &y);
            let target = &mut out.comps[mi::rank(dim, &compl)];
            for x in 0..target.len() {
                target[x] += sign * tf[x] / dv[x];
            }
        }
        out
    }

    /// Component inner product `⟨α|β⟩ = Σ_x Σ_A ᾱ_A(x) β_A(x) dV(x)`.
    pub fn inner_weighted(&self, other: &Self, dv: &[f64]) -> Complex64 {
        assert_eq!(self.grade, other.grade);
        let mut acc = Complex64::default();
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for x in 0..a.len() {
                acc += a[x].conj() * b[x] * dv[x];
            }
        }
        acc
    }

    /// Flat inner product (`dV ≡ 1`).
    pub fn inner_flat(&self, other: &Self) -> Complex64 {
        self.inner_weighted(other, &vec![1.0; self.lattice.num_nodes()])
    }

    /// Transpose (bilinear, unweighted) pairing `Σ_x Σ_A α_A(x) β_A(x)`.
    pub fn pair_bilinear(&self, other: &Self) -> Complex64 {
        assert_eq!(self.grade, other.grade);
        let mut acc = Complex64::default();
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for x in 0..a.len() {
                acc += a[x] * b[x];
            }
        }
        acc
    }
}

/// The graph operator `G = (1/ε) Σ_a dXᵃ` of a cubic lattice, as a grade-1
/// form with constant coefficients `1/ε`.
pub fn graph_operator(lattice: &Lattice) -> FormField {
    let mut out = FormField::zero(lattice, 1);
    let w = Complex64::new(1.0 / lattice.spacing(), 0.0);
    for a in 0..lattice.dim() {
        for v in out.comp_mut(&[a as u8]).iter_mut() {
            *v = w;
        }
    }
    out
}

/// A per-node vielbein: `D` edge vectors `e_a^μ(x)` as rows of a `D×D`
/// matrix, invertible at every node.
#[derive(Debug, Clone)]
pub struct Vielbein {
    pub lattice: Lattice,
    /// One `D×D` matrix per node; row `a` is the edge vector `e_a`.
    pub e: Vec<DMatrix<f64>>,
}

impl Vielbein {
    /// A constant vielbein (the same edge matrix at every node).
    pub fn constant(lattice: &Lattice, e: DMatrix<f64>) -> Self {
        assert_eq!(e.nrows(), lattice.dim());
        assert_eq!(e.ncols(), lattice.dim());
        Self { lattice: lattice.clone(), e: vec![e; lattice.num_nodes()] }
    }

    /// The unit (cubic) vielbein.
    pub fn unit(lattice: &Lattice) -> Self {
        Self::constant(lattice, DMatrix::identity(lattice.dim(), lattice.dim()))
    }
}

/// Per-node structure functions `C^{μν}_λ(x)`.
#[derive(Debug, Clone)]
pub struct StructureFunctions {
    pub lattice: Lattice,
    dim: usize,
    /// Flattened `[node][μ][ν][λ]`.
    c: Vec<f64>,
}

impl StructureFunctions {
    pub fn get(&self, node: usize, mu: usize, nu: usize, lam: usize) -> f64 {
        let d = self.dim;
        self.c[((node * d + mu) * d + nu) * d + lam]
    }
}

/// Structure functions `C^{μν}_λ(x) = −Σ_a e_a^μ(x) e_a^ν(x) e^a_λ(x)` with
/// the node-wise inverse vielbein. For the unit vielbein this gives
/// `C^{μν}_λ = −δ^{μν} δ^μ_λ`, matching `[dX^μ, X^ν] = ε δ^{μν} dX^μ`.
pub fn structure_functions(v: &Vielbein) -> crate::Result<StructureFunctions> {
    let d = v.lattice.dim();
    let mut c = vec![0.0; v.lattice.num_nodes() * d * d * d];
    for (node, e) in v.e.iter().enumerate() {
        let inv = e.clone().try_inverse().ok_or_else(|| {
            crate::Error::InvalidInput(format!("singular vielbein at node {node}"))
        })?;
        for mu in 0..d {
            for nu in 0..d {
                for lam in 0..d {
                    let mut s = 0.0;
                    for a in 0..d {
                        // e_a^μ = e[(a, μ)]; e^a_λ = inv[(λ, a)].
                        s += e[(a, mu)] * e[(a, nu)] * inv[(lam, a)];
                    }
                    c[((node * d + mu) * d + nu) * d + lam] = -s;
                }
            }
        }
    }
    Ok(StructureFunctions { lattice: v.lattice.clone(), dim: d, c })
}
