//! Dirac–Kähler fermions: operators on the full (mixed-grade) form space.
//!
//! An [`InhomForm`] is a direct sum of one [`FormField`] per grade `0..=D`,
//! the `2^D`-component space fermionic wave functions live on. On it act
//!
//! * the Clifford generators `γ_±ᵃ = Cᵃ ± cᵃ` (creation ± annihilation),
//!   with `{γ_±ᵃ, γ_±ᵇ} = ±2δᵃᵇ` and `{γ_±ᵃ, γ_∓ᵇ} = 0`, their metric
//!   deformations `γ_G±ᵃ = Cᵃ ± ĝ cᵃ ĝ⁻¹`, and the diagonal combinations
//!   `γ_±ᵗ = (1/√D) Σ_a γ_±ᵃ` (timelike for the light-cone metric:
//!   `{γ_G±ᵗ, γ_G±ᵗ} = ∓2`);
//! * the pseudo-Clifford generators `q_±ᵃ = Cᵃ ± T_{−eₐ}∘cᵃ` with
//!   `{q_±ᵃ, q_±ᵇ} = ±2δᵃᵇ T_{−eₐ}` and `{q_±ᵃ, q_∓ᵇ} = 0`;
//! * the Dirac–Kähler operator `D = d + d† = Σ_a q_−ᵃ ∂_a` and its metric
//!   variant `d + d†_g`;
//! * the chirality operator: for even `D` the product `q̄ = q_−¹⋯q_−ᴰ`
//!   anticommutes with `D` and squares to `±T_{−e₁−⋯−e_D}`; combining it
//!   with the inverse half diagonal translation (a Fourier multiplier)
//!   yields an involution `q̃` with `q̃² = Id` and `{D, q̃} = 0`.
//!
//! [`dispersion_scan`] samples the momentum-space matrix of a Dirac
//! operator over the Brillouin zone and reports the smallest squared
//! eigenvalue per momentum, which exhibits the doubling pattern: the naive
//! symmetric-difference discretisation has `2^D` zeros, the Dirac–Kähler
//! operator exactly one.

use crate::forms::FormField;
use crate::lattice::Lattice;
use crate::metric::MetricField;
use crate::multi_index as mi;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

/// A mixed-grade form: one component per grade `0..=D`.
#[derive(Debug, Clone)]
pub struct InhomForm {
    lattice: Lattice,
    parts: Vec<FormField>,
}

impl InhomForm {
    pub fn zero(lattice: &Lattice) -> Self {
        let parts = (0..=lattice.dim()).map(|p| FormField::zero(lattice, p)).collect();
        Self { lattice: lattice.clone(), parts }
    }

    pub fn random<R: Rng>(lattice: &Lattice, rng: &mut R) -> Self {
        let parts = (0..=lattice.dim())
            .map(|p| FormField::random(lattice, p, rng))
            .collect();
        Self { lattice: lattice.clone(), parts }
    }

    /// Embeds a pure-grade form.
    pub fn from_part(f: FormField) -> Self {
        let mut out = Self::zero(f.lattice());
        let grade = f.grade();
        out.parts[grade] = f;
        out
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn part(&self, p: usize) -> &FormField {
        &self.parts[p]
    }

    pub fn add(&self, other: &Self) -> Self {
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b)).collect();
        Self { lattice: self.lattice.clone(), parts }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.sub(b)).collect();
        Self { lattice: self.lattice.clone(), parts }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let parts = self.parts.iter().map(|a| a.scale(s)).collect();
        Self { lattice: self.lattice.clone(), parts }
    }

    pub fn max_abs(&self) -> f64 {
        self.parts.iter().map(FormField::max_abs).fold(0.0, f64::max)
    }

    /// Componentwise translation of every coefficient array.
    pub fn translate(&self, y: &[i64]) -> Self {
        let parts = self.parts.iter().map(|a| a.translate(y)).collect();
        Self { lattice: self.lattice.clone(), parts }
    }

    /// Applies a grade-shifting map to every part and re-collects by grade.
    fn map_parts<F: Fn(&FormField) -> FormField>(&self, f: F) -> Self {
        let mut out = Self::zero(&self.lattice);
        for part in &self.parts {
            let img = f(part);
            if img.grade() <= self.lattice.dim() {
                out.parts[img.grade()] = out.parts[img.grade()].add(&img);
            }
        }
        out
    }
}

/// Creation operator `Cᵃ` on the full form space.
pub fn create(psi: &InhomForm, axis: usize) -> InhomForm {
    psi.map_parts(|p| p.create(axis))
}

/// Annihilation operator `cᵃ` (flat adjoint of `Cᵃ`).
pub fn annihilate(psi: &InhomForm, axis: usize) -> InhomForm {
    psi.map_parts(|p| p.annihilate(axis))
}

/// Translated annihilator `T_{−eₐ} ∘ cᵃ`.
pub fn annihilate_translated(psi: &InhomForm, axis: usize) -> InhomForm {
    let mut y = vec![0i64; psi.lattice().dim()];
    y[axis] = -1;
    annihilate(psi, axis).translate(&y)
}

/// Clifford generator `γ_±ᵃ = Cᵃ ± cᵃ`.
pub fn gamma(psi: &InhomForm, axis: usize, plus: bool) -> InhomForm {
    let c = create(psi, axis);
    let a = annihilate(psi, axis);
    if plus {
        c.add(&a)
    } else {
        c.sub(&a)
    }
}

/// Metric-deformed Clifford generator `γ_G±ᵃ = Cᵃ ± ĝ cᵃ ĝ⁻¹`.
pub fn gamma_deformed(psi: &InhomForm, axis: usize, plus: bool, metric: &MetricField) -> InhomForm {
    let c = create(psi, axis);
    let a = psi
        .map_parts(|p| metric.apply_inverse(p))
        .map_parts(|p| p.annihilate(axis))
        .map_parts(|p| metric.apply(p));
    if plus {
        c.add(&a)
    } else {
        c.sub(&a)
    }
}

/// Diagonal Clifford combination `γ_±ᵗ = (1/√D) Σ_a γ_±ᵃ` (flat), or the
/// deformed version when a metric is given; timelike for the light-cone
/// metric.
pub fn gamma_t(psi: &InhomForm, plus: bool, metric: Option<&MetricField>) -> InhomForm {
    let d = psi.lattice().dim();
    let mut acc = InhomForm::zero(psi.lattice());
    for a in 0..d {
        let term = match metric {
            Some(m) => gamma_deformed(psi, a, plus, m),
            None => gamma(psi, a, plus),
        };
        acc = acc.add(&term);
    }
    acc.scale(Complex64::new(1.0 / (d as f64).sqrt(), 0.0))
}

/// Pseudo-Clifford generator `q_±ᵃ = Cᵃ ± T_{−eₐ}∘cᵃ`.
pub fn q(psi: &InhomForm, axis: usize, plus: bool) -> InhomForm {
    let c = create(psi, axis);
    let a = annihilate_translated(psi, axis);
    if plus {
        c.add(&a)
    } else {
        c.sub(&a)
    }
}

/// Componentwise partial `∂_a` (backward difference on every coefficient).
pub fn partial(psi: &InhomForm, axis: usize) -> InhomForm {
    psi.map_parts(|p| {
        let mut out = p.clone();
        for idx in p.indices() {
            *out.comp_mut(&idx) = p.lattice().backward_diff(p.comp(&idx), axis);
        }
        out
    })
}

/// Flat Dirac–Kähler operator `D = d + d† = Σ_a q_−ᵃ ∂_a`.
pub fn dirac_kahler(psi: &InhomForm) -> InhomForm {
    psi.map_parts(|p| p.exterior_derivative())
        .add(&psi.map_parts(|p| p.codifferential_flat()))
}

/// Metric Dirac–Kähler operator `d + d†_g`.
pub fn dirac_kahler_metric(psi: &InhomForm, metric: &MetricField) -> InhomForm {
    psi.map_parts(|p| p.exterior_derivative())
        .add(&psi.map_parts(|p| metric.codifferential(p)))
}

/// Naive Dirac operator `Σ_a γ_+ᵃ ↔∂_a` (symmetric differences), the
/// doubling-afflicted discretisation.
pub fn naive_dirac(psi: &InhomForm) -> InhomForm {
    let d = psi.lattice().dim();
    let mut acc = InhomForm::zero(psi.lattice());
    for a in 0..d {
        let sym = psi.map_parts(|p| {
            let mut out = p.clone();
            for idx in p.indices() {
                *out.comp_mut(&idx) = p.lattice().symmetric_diff(p.comp(&idx), a);
            }
            out
        });
        acc = acc.add(&gamma(&sym, a, true));
    }
    acc
}

/// Bare chirality product `q̄ = q_−⁰ ∘ ⋯ ∘ q_−^{D−1}` (the highest axis acts
/// first). For even `D` it anticommutes with the Dirac–Kähler operator and
/// squares to `± T_{−e₀−⋯−e_{D−1}}`.
pub fn chirality_bare(psi: &InhomForm) -> InhomForm {
    let d = psi.lattice().dim();
    let mut acc = psi.clone();
    for a in (0..d).rev() {
        acc = q(&acc, a, false);
    }
    acc
}

/// Sign `s` in `q̄² = s · T_{−e₀−⋯−e_{D−1}}`, determined by applying `q̄²`
/// to the constant 0-form.
pub fn chirality_square_sign(lattice: &Lattice) -> f64 {
    let one = InhomForm::from_part(FormField::one(lattice));
    let sq = chirality_bare(&chirality_bare(&one));
    let v = sq.part(0).comp(&[])[0];
    v.re.signum()
}

/// Inverse half diagonal translation `(T_{−e₀−⋯−e_{D−1}})^{−1/2}`, realized
/// as the Fourier multiplier `exp(−iπ Σ_a n_a / L_a)` on every coefficient
/// array (principal branch).
pub fn inverse_half_translation(psi: &InhomForm) -> InhomForm {
    let lat = psi.lattice().clone();
    psi.map_parts(|p| {
        let mut out = p.clone();
        for idx in p.indices() {
            *out.comp_mut(&idx) = fourier_multiplier(&lat, p.comp(&idx), |n, shape| {
                let phase: f64 = n
                    .iter()
                    .zip(shape)
                    .map(|(&ni, &li)| -std::f64::consts::PI * ni as f64 / li as f64)
                    .sum();
                Complex64::from_polar(1.0, phase)
            });
        }
        out
    })
}

/// Normalized chirality operator `q̃ = λ (T_{−Σeₐ})^{−1/2} q̄` with
/// `λ ∈ {1, i}` chosen so that `q̃² = Id`.
pub fn chirality(psi: &InhomForm) -> InhomForm {
    let s = chirality_square_sign(psi.lattice());
    let lambda = if s > 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    inverse_half_translation(&chirality_bare(psi)).scale(lambda)
}

/// Applies a diagonal momentum-space multiplier to a scalar node array via
/// the discrete Fourier transform (direct `O(N²)` evaluation; lattices here
/// are small).
fn fourier_multiplier<F>(lat: &Lattice, f: &[Complex64], mult: F) -> Vec<Complex64>
where
    F: Fn(&[usize], &[usize]) -> Complex64,
{
    let n = lat.num_nodes();
    let shape = lat.shape().to_vec();
    let tau = 2.0 * std::f64::consts::PI;
    // Forward transform: f̂(n) = (1/N) Σ_x f(x) e^{−2πi n·x/L}.
    let mut fhat = vec![Complex64::default(); n];
    for (kidx, fh) in fhat.iter_mut().enumerate() {
        let kc = lat.coords_of(kidx);
        let mut acc = Complex64::default();
        for x in 0..n {
            let xc = lat.coords_of(x);
            let phase: f64 = kc
                .iter()
                .zip(&xc)
                .zip(&shape)
                .map(|((&ki, &xi), &li)| -tau * ki as f64 * xi as f64 / li as f64)
                .sum();
            acc += f[x] * Complex64::from_polar(1.0, phase);
        }
        *fh = acc / n as f64;
    }
    // Multiply and invert.
    let mut out = vec![Complex64::default(); n];
    for (x, o) in out.iter_mut().enumerate() {
        let xc = lat.coords_of(x);
        let mut acc = Complex64::default();
        for (kidx, fh) in fhat.iter().enumerate() {
            let kc = lat.coords_of(kidx);
            let kcu: Vec<usize> = kc.iter().map(|&v| v as usize).collect();
            let m = mult(&kcu, &shape);
            let phase: f64 = kc
                .iter()
                .zip(&xc)
                .zip(&shape)
                .map(|((&ki, &xi), &li)| tau * ki as f64 * xi as f64 / li as f64)
                .sum();
            acc += fh * m * Complex64::from_polar(1.0, phase);
        }
        *o = acc;
    }
    out
}

/// Which Dirac operator a dispersion scan uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracKind {
    /// Dirac–Kähler `d + d†` (or `d + d†_g` with a metric).
    DiracKahler,
    /// Naive `Σ γ_+ᵃ ↔∂_a`.
    Naive,
}

/// One Brillouin-zone sample of a dispersion scan.
#[derive(Debug, Clone)]
pub struct DispersionPoint {
    /// Momentum components `k_a = 2π n_a /(L_a ε)`.
    pub k: Vec<f64>,
    /// Smallest `|eigenvalue|` of the squared momentum-space operator.
    pub min_abs_eig: f64,
    /// Whether `min_abs_eig` is below the zero threshold `1e-8`.
    pub zero: bool,
}

/// Threshold below which a dispersion eigenvalue counts as an exact zero.
pub const DISPERSION_ZERO_THRESHOLD: f64 = 1e-8;

/// Builds the `2^D × 2^D` momentum-space matrix of `op` at momentum `k` by
/// applying it to every plane-wave basis form and reading the coefficients
/// at the origin.
pub fn momentum_matrix<F>(lat: &Lattice, k: &[f64], op: F) -> DMatrix<Complex64>
where
    F: Fn(&InhomForm) -> InhomForm,
{
    let dim = lat.dim();
    let basis: Vec<(usize, Vec<u8>)> = (0..=dim)
        .flat_map(|p| mi::multi_indices(dim, p).into_iter().map(move |i| (p, i)))
        .collect();
    let n = basis.len();
    let wave = lat.plane_wave(k);
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (col, (_, idx)) in basis.iter().enumerate() {
        let input = InhomForm::from_part(FormField::from_component(lat, idx, wave.clone()));
        let out = op(&input);
        for (row, (p, jdx)) in basis.iter().enumerate() {
            m[(row, col)] = out.part(*p).comp(jdx)[0];
        }
    }
    m
}

/// Scans the full Brillouin zone of `lat`, reporting for each momentum the
/// smallest `|eigenvalue|` of the squared operator matrix `M(k)²`.
pub fn dispersion_scan(
    lat: &Lattice,
    kind: DiracKind,
    metric: Option<&MetricField>,
) -> Vec<DispersionPoint> {
    let points: Vec<Vec<usize>> = lat
        .nodes()
        .map(|i| lat.coords_of(i).iter().map(|&c| c as usize).collect())
        .collect();
    points
        .par_iter()
        .map(|ns| {
            let k: Vec<f64> = ns.iter().enumerate().map(|(a, &n)| lat.momentum(a, n)).collect();
            let m = momentum_matrix(lat, &k, |psi| match (kind, metric) {
                (DiracKind::DiracKahler, None) => dirac_kahler(psi),
                (DiracKind::DiracKahler, Some(g)) => dirac_kahler_metric(psi, g),
                (DiracKind::Naive, _) => naive_dirac(psi),
            });
            let sq = &m * &m;
            let min_abs_eig = sq
                .svd(false, false)
                .singular_values
                .iter()
                .fold(f64::INFINITY, |acc, &s| acc.min(s));
            DispersionPoint { k, min_abs_eig, zero: min_abs_eig < DISPERSION_ZERO_THRESHOLD }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn anticomm<F, G>(psi: &InhomForm, f: F, g: G) -> InhomForm
    where
        F: Fn(&InhomForm) -> InhomForm,
        G: Fn(&InhomForm) -> InhomForm,
    {
        f(&g(psi)).add(&g(&f(psi)))
    }

    #[test]
    fn clifford_algebra_relations() {
        let lat = Lattice::cubic(2, 4, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = InhomForm::random(&lat, &mut rng);
        for a in 0..2 {
            for b in 0..2 {
                for plus in [true, false] {
                    let got = anticomm(&psi, |x| gamma(x, a, plus), |x| gamma(x, b, plus));
                    let sign = if plus { 2.0 } else { -2.0 };
                    let expect = if a == b {
                        psi.scale(cx(sign))
                    } else {
                        InhomForm::zero(&lat)
                    };
                    assert!(got.sub(&expect).max_abs() < 1e-12, "a={a} b={b} plus={plus}");
                }
                // Mixed signs anticommute to zero.
                let mixed = anticomm(&psi, |x| gamma(x, a, true), |x| gamma(x, b, false));
                assert!(mixed.max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pseudo_clifford_algebra_relations() {
        let lat = Lattice::cubic(2, 4, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = InhomForm::random(&lat, &mut rng);
        for a in 0..2 {
            for b in 0..2 {
                for plus in [true, false] {
                    let got = anticomm(&psi, |x| q(x, a, plus), |x| q(x, b, plus));
                    let expect = if a == b {
                        let mut y = vec![0i64; 2];
                        y[a] = -1;
                        psi.translate(&y).scale(cx(if plus { 2.0 } else { -2.0 }))
                    } else {
                        InhomForm::zero(&lat)
                    };
                    assert!(got.sub(&expect).max_abs() < 1e-12, "a={a} b={b} plus={plus}");
                }
                let mixed = anticomm(&psi, |x| q(x, a, true), |x| q(x, b, false));
                assert!(mixed.max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lorentzian_timelike_gamma() {
        // {γ_G±ᵗ, γ_G±ᵗ} = ∓2 for the light-cone metric.
        let lat = Lattice::cubic(2, 4, 1.0);
        let m = MetricField::diamond(&lat).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = InhomForm::random(&lat, &mut rng);
        for plus in [true, false] {
            let got = anticomm(&psi, |x| gamma_t(x, plus, Some(&m)), |x| gamma_t(x, plus, Some(&m)));
            let expect = psi.scale(cx(if plus { -2.0 } else { 2.0 }));
            assert!(got.sub(&expect).max_abs() < 1e-12, "plus={plus}");
        }
    }

    #[test]
    fn flat_gamma_t_is_spacelike() {
        let lat = Lattice::cubic(3, 2, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let psi = InhomForm::random(&lat, &mut rng);
        let got = anticomm(&psi, |x| gamma_t(x, true, None), |x| gamma_t(x, true, None));
        assert!(got.sub(&psi.scale(cx(2.0))).max_abs() < 1e-12);
    }

    #[test]
    fn gamma_coordinate_commutator() {
        // [γ_±ᵃ, Xᵇ] = ε δᵃᵇ γ_∓ᵃ at nodes away from the periodic seam.
        let lat = Lattice::cubic(2, 6, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = InhomForm::random(&lat, &mut rng);
        let mask = lat.interior_mask(1);
        for a in 0..2 {
            for b in 0..2 {
                for plus in [true, false] {
                    let xb = lat.coordinate(b);
                    let mul = |w: &InhomForm| w.map_parts(|p| p.left_mul_fn(&xb));
                    let lhs = gamma(&mul(&psi), a, plus).sub(&mul(&gamma(&psi, a, plus)));
                    let rhs = if a == b {
                        gamma(&psi, a, !plus).scale(cx(lat.spacing()))
                    } else {
                        InhomForm::zero(&lat)
                    };
                    let diff = lhs.sub(&rhs);
                    for p in 0..=2 {
                        for idx in diff.part(p).indices() {
                            for x in lat.nodes() {
                                if mask[x] {
                                    assert!(
                                        diff.part(p).comp(&idx)[x].norm() < 1e-12,
                                        "a={a} b={b} plus={plus} p={p} x={x}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dirac_kahler_equals_pseudo_clifford_assembly() {
        // d + d† = Σ_a q_−ᵃ ∂_a and d − d† = Σ_a q_+ᵃ ∂_a.
        let lat = Lattice::cubic(2, 4, 0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let psi = InhomForm::random(&lat, &mut rng);

        let mut plus_side = InhomForm::zero(&lat);
        let mut minus_side = InhomForm::zero(&lat);
        for a in 0..2 {
            let dpsi = partial(&psi, a);
            minus_side = minus_side.add(&q(&dpsi, a, false));
            plus_side = plus_side.add(&q(&dpsi, a, true));
        }
        let d_plus = dirac_kahler(&psi);
        let d_minus = psi
            .map_parts(|p| p.exterior_derivative())
            .sub(&psi.map_parts(|p| p.codifferential_flat()));
        assert!(d_plus.sub(&minus_side).max_abs() < 1e-12);
        assert!(d_minus.sub(&plus_side).max_abs() < 1e-12);
    }

    #[test]
    fn chirality_square_and_anticommutation() {
        let lat = Lattice::cubic(2, 4, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let psi = InhomForm::random(&lat, &mut rng);
        // q̄² = −T_{−e₀−e₁} in two dimensions.
        let sq = chirality_bare(&chirality_bare(&psi));
        let expect = psi.translate(&[-1, -1]).scale(cx(-1.0));
        assert!(sq.sub(&expect).max_abs() < 1e-12);
        assert!(chirality_square_sign(&lat) < 0.0);
        // q̄ anticommutes with the Dirac–Kähler operator.
        let anti = anticomm(&psi, dirac_kahler, chirality_bare);
        assert!(anti.max_abs() < 1e-12);
    }

    #[test]
    fn normalized_chirality_is_involution() {
        let lat = Lattice::cubic(2, 4, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let psi = InhomForm::random(&lat, &mut rng);
        let sq = chirality(&chirality(&psi));
        assert!(sq.sub(&psi).max_abs() < 1e-10, "residual {}", sq.sub(&psi).max_abs());
        let anti = anticomm(&psi, dirac_kahler, chirality);
        assert!(anti.max_abs() < 1e-10);
    }

    #[test]
    fn dispersion_zero_counts() {
        // Dirac–Kähler: one zero; naive: 2^D zeros; DK dispersion equals
        // 4 Σ sin²(k_a ε/2)/ε².
        for d in 1..=2usize {
            let lat = Lattice::cubic(d, 8, 1.0);
            let dk = dispersion_scan(&lat, DiracKind::DiracKahler, None);
            assert_eq!(dk.iter().filter(|p| p.zero).count(), 1, "D={d} dk");
            let eps = lat.spacing();
            for pt in &dk {
                let expect: f64 =
                    pt.k.iter().map(|&k| 4.0 * (k * eps / 2.0).sin().powi(2) / (eps * eps)).sum();
                assert!((pt.min_abs_eig - expect).abs() < 1e-10, "D={d} k={:?}", pt.k);
            }
            let naive = dispersion_scan(&lat, DiracKind::Naive, None);
            assert_eq!(naive.iter().filter(|p| p.zero).count(), 1 << d, "D={d} naive");
        }
    }

    #[test]
    fn dirac_kahler_is_self_adjoint() {
        let lat = Lattice::cubic(2, 4, 0.9);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = InhomForm::random(&lat, &mut rng);
        let b = InhomForm::random(&lat, &mut rng);
        let inner = |x: &InhomForm, y: &InhomForm| -> Complex64 {
            (0..=2).map(|p| x.part(p).inner_flat(y.part(p))).sum()
        };
        let lhs = inner(&dirac_kahler(&a), &b);
        let rhs = inner(&a, &dirac_kahler(&b));
        assert!((lhs - rhs).norm() < 1e-11);
    }
}
