//! Lattice gauge fields as matrix-algebra-valued forms.
//!
//! A gauge configuration assigns an invertible `N×N` matrix `U_a(x)` to the
//! link `x → x+eₐ`. Packaging the links into the holonomy 1-form
//! `H = Σ_a dXᵃ f_a` with right-slot coefficient `f_a(y) = U_a(y−eₐ)/ε`
//! (stored at the head node), the square under the noncommutative form
//! product is the field strength: its coefficient on `dXᵃdXᵇ` at head `y`
//! (plaquette base `x = y−eₐ−e_b`) is
//!
//! ```text
//! F_{ab}(y) = [ U_a(x) U_b(x+eₐ) − U_b(x) U_a(x+e_b) ] / ε² = (R − L)/ε² ,
//! ```
//!
//! the difference of the two parallel transports around the plaquette. The
//! Wilson action is the trace norm `S = ⟨H²|H²⟩`; per plaquette
//! `ε⁴ tr(F†F) = 2N(1 − Re W/N)` with the Wilson loop `W = tr(L⁻¹R)` for
//! unitary links. The Bianchi identity is the graded commutator
//! `[H, H²] = 0` (exact by associativity), and the equation-of-motion
//! residual is `‖L_H† H²‖` for the linearised covariant derivative
//! `L_H : ω ↦ Hω + ωH` on matrix 1-forms. Gauge transformations
//! `U_a(x) ↦ Ω(x) U_a(x) Ω(x+eₐ)⁻¹` conjugate `H` and leave both the
//! action and the residual invariant.

use crate::lattice::Lattice;
use crate::multi_index as mi;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

type CMat = DMatrix<Complex64>;

/// A graded form field with `N×N` complex matrix coefficients.
#[derive(Debug, Clone)]
pub struct MatrixFormField {
    lattice: Lattice,
    grade: usize,
    n: usize,
    comps: Vec<Vec<CMat>>,
}

impl MatrixFormField {
    pub fn zero(lattice: &Lattice, grade: usize, n: usize) -> Self {
        let z = CMat::zeros(n, n);
        let comps = vec![
            vec![z; lattice.num_nodes()];
            mi::num_multi_indices(lattice.dim(), grade)
        ];
        Self { lattice: lattice.clone(), grade, n, comps }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> Vec<Vec<u8>> {
        mi::multi_indices(self.lattice.dim(), self.grade)
    }

    pub fn comp(&self, idx: &[u8]) -> &[CMat] {
        &self.comps[mi::rank(self.lattice.dim(), idx)]
    }

    pub fn comp_mut(&mut self, idx: &[u8]) -> &mut Vec<CMat> {
        let r = mi::rank(self.lattice.dim(), idx);
        &mut self.comps[r]
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
        assert_eq!(self.grade, other.grade);
        let mut out = self.clone();
        for (c, d) in out.comps.iter_mut().zip(&other.comps) {
            for (a, b) in c.iter_mut().zip(d) {
                *a -= b;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .flat_map(|m| m.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// The matrix-valued noncommutative product; coefficient matrices
    /// multiply in order `T[f]·g`.
    pub fn product(&self, other: &Self) -> crate::Result<Self> {
        if self.n != other.n {
            return Err(crate::Error::InvalidInput(format!(
                "matrix sizes differ: {} vs {}",
                self.n, other.n
            )));
        }
        assert_eq!(self.lattice, other.lattice);
        let dim = self.lattice.dim();
        let mut out = Self::zero(&self.lattice, self.grade + other.grade, self.n);
        for (a_idx, a_comp) in self.indices().iter().zip(&self.comps) {
            for (b_idx, b_comp) in other.indices().iter().zip(&other.comps) {
                let Some((merged, sign)) = mi::merge(a_idx, b_idx) else {
                    continue;
                };
                let shift: Vec<i64> = (0..dim as u8)
                    .map(|a| if b_idx.contains(&a) { 1 } else { 0 })
                    .collect();
                let s = Complex64::new(sign as f64, 0.0);
                let target = &mut out.comps[mi::rank(dim, &merged)];
                for x in 0..target.len() {
                    // T_y[f](x) = f(x − y), per-axis shifts from b's indices.
                    let src = shifted_index(&self.lattice, x, &shift);
                    target[x] += (&a_comp[src] * &b_comp[x]).scale_cplx(s);
                }
            }
        }
        Ok(out)
    }

    /// Componentwise exterior derivative (backward differences of matrix
    /// entries).
    pub fn exterior_derivative(&self) -> Self {
        let dim = self.lattice.dim();
        let mut out = Self::zero(&self.lattice, self.grade + 1, self.n);
        let eps = self.lattice.spacing();
        for (idx, comp) in self.indices().iter().zip(&self.comps) {
            for b in 0..dim {
                let Some((merged, sign)) = mi::insert(idx, b as u8) else {
                    continue;
                };
                let s = sign as f64;
                let target = &mut out.comps[mi::rank(dim, &merged)];
                for x in 0..target.len() {
                    let prev = self.lattice.neighbor(x, b, -1);
                    let diff = (&comp[x] - &comp[prev]).unscale(eps);
                    target[x] += diff.scale(s);
                }
            }
        }
        out
    }

    /// Trace inner product `⟨A|B⟩ = Σ_x Σ_A tr(A_A(x)† B_A(x)) dV(x)`.
    pub fn inner_weighted(&self, other: &Self, dv: &[f64]) -> Complex64 {
        assert_eq!(self.grade, other.grade);
        let mut acc = Complex64::default();
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for x in 0..a.len() {
                acc += (a[x].adjoint() * &b[x]).trace() * dv[x];
            }
        }
        acc
    }

    pub fn inner_flat(&self, other: &Self) -> Complex64 {
        self.inner_weighted(other, &vec![1.0; self.lattice.num_nodes()])
    }

    pub fn norm_flat(&self) -> f64 {
        self.inner_flat(self).re.max(0.0).sqrt()
    }
}

trait ScaleCplx {
    fn scale_cplx(self, s: Complex64) -> Self;
}
impl ScaleCplx for CMat {
    fn scale_cplx(mut self, s: Complex64) -> Self {
        for v in self.iter_mut() {
            *v *= s;
        }
        self
    }
}

fn shifted_index(lat: &Lattice, x: usize, y: &[i64]) -> usize {
    let coords = lat.coords_of(x);
    let src: Vec<i64> = coords.iter().zip(y).map(|(c, s)| c - s).collect();
    lat.index_of(&src)
}

/// A lattice gauge configuration: one invertible `N×N` link matrix per
/// node and axis, `U_a(x)` on the link `x → x+eₐ`.
#[derive(Debug, Clone)]
pub struct GaugeField {
    pub lattice: Lattice,
    pub n: usize,
    /// `links[a][x] = U_a(x)`.
    pub links: Vec<Vec<CMat>>,
}

impl GaugeField {
    /// The trivial (all-identity) configuration.
    pub fn identity(lattice: &Lattice, n: usize) -> Self {
        let id = CMat::identity(n, n);
        Self {
            lattice: lattice.clone(),
            n,
            links: vec![vec![id; lattice.num_nodes()]; lattice.dim()],
        }
    }

    /// A random unitary configuration: each link is `exp(i K)` for a random
    /// Hermitian `K` with entries of magnitude ≤ `scale`.
    pub fn random_unitary<R: Rng>(lattice: &Lattice, n: usize, scale: f64, rng: &mut R) -> Self {
        let mut out = Self::identity(lattice, n);
        for a in 0..lattice.dim() {
            for x in lattice.nodes() {
                out.links[a][x] = random_unitary(n, scale, rng);
            }
        }
        out
    }

    /// The holonomy 1-form `H = Σ_a dXᵃ f_a`, `f_a(y) = U_a(y−eₐ)/ε`.
    pub fn holonomy_one_form(&self) -> MatrixFormField {
        let mut h = MatrixFormField::zero(&self.lattice, 1, self.n);
        let eps = self.lattice.spacing();
        for a in 0..self.lattice.dim() {
            let comp = h.comp_mut(&[a as u8]);
            for y in self.lattice.nodes() {
                let tail = self.lattice.neighbor(y, a, -1);
                comp[y] = self.links[a][tail].unscale(eps);
            }
        }
        h
    }

    /// The field strength `F = H²` (grade-2 matrix form).
    pub fn field_strength(&self) -> MatrixFormField {
        let h = self.holonomy_one_form();
        h.product(&h).expect("same matrix size")
    }

    /// Wilson action `S = ⟨H²|H²⟩` with volume weight `dv`.
    pub fn wilson_action(&self, dv: &[f64]) -> f64 {
        let f = self.field_strength();
        f.inner_weighted(&f, dv).re
    }

    /// Per-plaquette data: for each node `x` and axis pair `a<b`, the
    /// holonomy products `R = U_a(x)U_b(x+eₐ)`, `L = U_b(x)U_a(x+e_b)`,
    /// returning `(ε⁴·tr(F†F), 2N(1 − Re W/N))` with `W = tr(L⁻¹R)`.
    pub fn plaquette_actions(&self) -> Vec<PlaquetteSample> {
        let lat = &self.lattice;
        let mut out = Vec::new();
        for x in lat.nodes() {
            for a in 0..lat.dim() {
                for b in (a + 1)..lat.dim() {
                    let xa = lat.neighbor(x, a, 1);
                    let xb = lat.neighbor(x, b, 1);
                    let r = &self.links[a][x] * &self.links[b][xa];
                    let l = &self.links[b][x] * &self.links[a][xb];
                    let diff = &r - &l;
                    let trace_form = (diff.adjoint() * &diff).trace().re;
                    let w = (l.clone().try_inverse().expect("invertible link product") * &r)
                        .trace();
                    let n = self.n as f64;
                    let wilson = 2.0 * n * (1.0 - w.re / n);
                    out.push(PlaquetteSample { node: x, axes: (a, b), trace_form, wilson });
                }
            }
        }
        out
    }

    /// Gauge transformation `U_a(x) ↦ Ω(x) U_a(x) Ω(x+eₐ)⁻¹`.
    pub fn gauge_transform(&self, omega: &[CMat]) -> Self {
        let mut out = self.clone();
        for a in 0..self.lattice.dim() {
            for x in self.lattice.nodes() {
                let head = self.lattice.neighbor(x, a, 1);
                let inv = omega[head].clone().try_inverse().expect("invertible gauge matrix");
                out.links[a][x] = &omega[x] * &self.links[a][x] * inv;
            }
        }
        out
    }

    /// Residual of the Bianchi identity `[H, H²] = H H² − H² H`
    /// (zero by associativity of the form product).
    pub fn bianchi_residual(&self) -> f64 {
        let h = self.holonomy_one_form();
        let h2 = self.field_strength();
        let lhs = h.product(&h2).expect("same size");
        let rhs = h2.product(&h).expect("same size");
        lhs.sub(&rhs).max_abs()
    }

    /// Equation-of-motion residual `‖L_H† H²‖` where `L_H ω = Hω + ωH` is
    /// the linearisation of `H ↦ H²` on matrix 1-forms and the adjoint is
    /// taken in the flat trace inner product (computed densely; intended
    /// for small lattices).
    pub fn eom_residual(&self) -> f64 {
        let lat = &self.lattice;
        let h = self.holonomy_one_form();
        let h2 = self.field_strength();
        let n = self.n;
        let dim = lat.dim();
        let nodes = lat.num_nodes();
        let basis1 = dim * nodes * n * n;
        let idx2 = mi::multi_indices(dim, 2);
        let basis2 = idx2.len() * nodes * n * n;
        // Dense matrix of L_H in the orthonormal entry bases: the flat trace
        // inner product is the plain entrywise dot product there, so the
        // adjoint is the conjugate transpose.
        let mut m = DMatrix::<Complex64>::zeros(basis2, basis1);
        let one = Complex64::new(1.0, 0.0);
        for a in 0..dim {
            for x in 0..nodes {
                for i in 0..n {
                    for j in 0..n {
                        let col = ((a * nodes + x) * n + i) * n + j;
                        let mut e = MatrixFormField::zero(lat, 1, n);
                        e.comp_mut(&[a as u8])[x][(i, j)] = one;
                        let img = h.product(&e).expect("size").add(&e.product(&h).expect("size"));
                        for (t, t_idx) in idx2.iter().enumerate() {
                            let comp = img.comp(t_idx);
                            for y in 0..nodes {
                                for (r, row_entry) in comp[y].iter().enumerate() {
                                    let row = (t * nodes + y) * n * n + r;
                                    m[(row, col)] += row_entry;
                                }
                            }
                        }
                    }
                }
            }
        }
        // vec(H²) in the same entry basis.
        let mut v = nalgebra::DVector::<Complex64>::zeros(basis2);
        for (t, t_idx) in idx2.iter().enumerate() {
            let comp = h2.comp(t_idx);
            for y in 0..nodes {
                for (r, entry) in comp[y].iter().enumerate() {
                    v[(t * nodes + y) * n * n + r] = *entry;
                }
            }
        }
        (m.adjoint() * v).norm()
    }
}

/// One plaquette's contribution to the Wilson action in both forms.
#[derive(Debug, Clone)]
pub struct PlaquetteSample {
    pub node: usize,
    pub axes: (usize, usize),
    /// `ε⁴ · tr(F†F)` from the field-strength form.
    pub trace_form: f64,
    /// `2N(1 − Re W/N)` with the Wilson loop `W = tr(L⁻¹R)`.
    pub wilson: f64,
}

/// Matrix exponential by scaling-and-squaring with a Taylor series.
pub fn matrix_exp(a: &CMat) -> CMat {
    let n = a.nrows();
    let norm = a.iter().map(|v| v.norm()).fold(0.0, f64::max) * n as f64;
    let s = norm.log2().ceil().max(0.0) as u32 + 1;
    let scaled = a / Complex64::new(2f64.powi(s as i32), 0.0);
    let mut term = CMat::identity(n, n);
    let mut acc = CMat::identity(n, n);
    for k in 1..=20 {
        term = (&term * &scaled) / Complex64::new(k as f64, 0.0);
        acc += &term;
    }
    let mut out = acc;
    for _ in 0..s {
        out = &out * &out;
    }
    out
}

/// A Haar-ish random unitary `exp(iK)` with Hermitian `K`, entries `O(scale)`.
pub fn random_unitary<R: Rng>(n: usize, scale: f64, rng: &mut R) -> CMat {
    let mut k = CMat::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = Complex64::new((rng.gen::<f64>() - 0.5) * 2.0 * scale, 0.0);
        for j in (i + 1)..n {
            let v = Complex64::new(
                (rng.gen::<f64>() - 0.5) * scale,
                (rng.gen::<f64>() - 0.5) * scale,
            );
            k[(i, j)] = v;
            k[(j, i)] = v.conj();
        }
    }
    matrix_exp(&k.scale_cplx(Complex64::new(0.0, 1.0)))
}

/// A random SU(N) matrix: random unitary with the determinant phase
/// removed.
pub fn random_special_unitary<R: Rng>(n: usize, scale: f64, rng: &mut R) -> CMat {
    let u = random_unitary(n, scale, rng);
    let det = u.determinant();
    let phase = det.arg() / n as f64;
    u.scale_cplx(Complex64::from_polar(1.0, -phase))
}

/// A U(1) gauge configuration `U_a(x) = exp(i ε A_a(x))` from a smooth real
/// vector potential.
pub fn abelian_from_potential(
    lattice: &Lattice,
    potential: impl Fn(usize, &[i64]) -> f64,
) -> GaugeField {
    let mut out = GaugeField::identity(lattice, 1);
    let eps = lattice.spacing();
    for a in 0..lattice.dim() {
        for x in lattice.nodes() {
            let coords = lattice.coords_of(x);
            let theta = eps * potential(a, &coords);
            out.links[a][x][(0, 0)] = Complex64::from_polar(1.0, theta);
        }
    }
    out
}
