//! Differential calculus on finite directed graphs via paths, chains, and
//! cochains; the brute-force oracle for the lattice modules.
//!
//! A grade-`p` path is a sequence of `p+1` nodes whose consecutive pairs
//! are edges. The boundary operator deletes nodes with alternating signs,
//! projecting away any deleted sequence that is no longer a path:
//!
//! ```text
//! ∂|i₀,…,i_p⟩ = Σ_r (−1)^r |i₀,…,î_r,…,i_p⟩ (non-paths ↦ 0).
//! ```
//!
//! Because of the projection `∂² ≠ 0` in general; the grade-`p` *chains*
//! are `C_p = ker(∂²|paths)`, on which `∂` restricts to a true chain
//! complex. Kernels are computed exactly in rational arithmetic. The
//! coboundary is the transpose `d = ∂ᵗ`, and the cup product of cochains
//! is concatenation of paths (dual to path splitting) with projection. The
//! graph operator `G` (the sum of all edge 1-cochains) squares to zero on
//! chain duals exactly when the graph has no *intermediate* edges
//! (a shortcut `(i,j)` alongside `(i,k),(k,j)`) and no *opposite* edges
//! (`(i,j)` and `(j,i)` together).

use std::collections::BTreeSet;

/// A finite directed graph without self-loops or duplicate edges.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(node_count: usize, edge_list: &[(usize, usize)]) -> crate::Result<Self> {
        let mut edges = BTreeSet::new();
        for &(i, j) in edge_list {
            if i == j {
                return Err(crate::Error::InvalidInput(format!("self-loop at node {i}")));
            }
            if i >= node_count || j >= node_count {
                return Err(crate::Error::InvalidInput(format!(
                    "edge ({i},{j}) out of range for {node_count} nodes"
                )));
            }
            edges.insert((i, j));
        }
        Ok(Self { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// `{has_intermediate, has_opposite}` edge classification.
    pub fn classify_edges(&self) -> EdgeClassification {
        let has_opposite = self.edges.iter().any(|&(i, j)| self.has_edge(j, i));
        let has_intermediate = self.edges.iter().any(|&(i, j)| {
            (0..self.node_count).any(|k| self.has_edge(i, k) && self.has_edge(k, j))
        });
        EdgeClassification { has_intermediate, has_opposite }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeClassification {
    pub has_intermediate: bool,
    pub has_opposite: bool,
}

/// The grade-`p` path basis: all edge-composable node sequences of length
/// `p+1`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct PathSpace {
    pub grade: usize,
    pub basis: Vec<Vec<usize>>,
}

/// Enumerates path spaces for grades `0..=max_grade`.
pub fn build_path_spaces(g: &DirectedGraph, max_grade: usize) -> Vec<PathSpace> {
    let mut out = Vec::with_capacity(max_grade + 1);
    let mut current: Vec<Vec<usize>> = (0..g.node_count()).map(|i| vec![i]).collect();
    out.push(PathSpace { grade: 0, basis: current.clone() });
    for p in 1..=max_grade {
        let mut next = Vec::new();
        for path in &current {
            let last = *path.last().expect("non-empty path");
            for j in 0..g.node_count() {
                if g.has_edge(last, j) {
                    let mut ext = path.clone();
                    ext.push(j);
                    next.push(ext);
                }
            }
        }
        next.sort();
        out.push(PathSpace { grade: p, basis: next.clone() });
        current = next;
    }
    out
}

/// Matrix of the boundary operator from `paths_p` to `paths_pm1`
/// (rows = lower paths, columns = upper paths), integer entries.
pub fn boundary_matrix(paths_p: &PathSpace, paths_pm1: &PathSpace, g: &DirectedGraph) -> IMatrix {
    assert_eq!(paths_p.grade, paths_pm1.grade + 1, "grades must differ by one");
    let mut m = IMatrix::zeros(paths_pm1.basis.len(), paths_p.basis.len());
    for (col, path) in paths_p.basis.iter().enumerate() {
        for r in 0..path.len() {
            let mut reduced = path.clone();
            reduced.remove(r);
            if !is_path(g, &reduced) {
                continue;
            }
            if let Ok(row) = paths_pm1.basis.binary_search(&reduced) {
                m.data[row][col] += if r % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

fn is_path(g: &DirectedGraph, seq: &[usize]) -> bool {
    seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// A dense integer matrix (the path bases are small).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<i64>>,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * other.data[k][j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&v| v == 0))
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// Exact kernel basis over the rationals, scaled to integer vectors,
    /// via fraction-free Gaussian elimination. Deterministic: free columns
    /// in ascending order.
    pub fn integer_kernel(&self) -> Vec<Vec<i64>> {
        // Row-reduce a rational copy.
        let mut a: Vec<Vec<Rational>> = self
            .data
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_int(v as i128)).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].clone();
            for c in col..self.cols {
                a[row][c] = a[row][c].div(&inv);
            }
            for r in 0..self.rows {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..self.cols {
                        let sub = a[row][c].mul(&factor);
                        a[r][c] = a[r][c].sub(&sub);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        // Back-substitute free columns.
        let mut kernel = Vec::new();
        let pivot_set: BTreeSet<usize> = pivot_cols.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::from_int(0); self.cols];
            v[free] = Rational::from_int(1);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a[r][free].neg();
            }
            // Clear denominators.
            let lcm = v.iter().fold(1i128, |acc, x| {
                let d = x.den;
                acc / gcd(acc, d) * d
            });
            kernel.push(v.iter().map(|x| (x.num * (lcm / x.den)) as i64).collect());
        }
        kernel
    }

    pub fn rank(&self) -> usize {
        self.cols - self.integer_kernel().len()
    }
}

/// A minimal exact rational number on `i128`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Rational {
    num: i128,
    den: i128, // > 0
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Rational {
    fn from_int(v: i128) -> Self {
        Self { num: v, den: 1 }
    }
    fn normalize(num: i128, den: i128) -> Self {
        let s = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den);
        Self { num: s * num / g, den: s * den / g }
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn mul(&self, o: &Self) -> Self {
        Self::normalize(self.num * o.num, self.den * o.den)
    }
    fn div(&self, o: &Self) -> Self {
        assert!(o.num != 0, "division by zero");
        Self::normalize(self.num * o.den, self.den * o.num)
    }
    fn sub(&self, o: &Self) -> Self {
        Self::normalize(self.num * o.den - o.num * self.den, self.den * o.den)
    }
    fn neg(&self) -> Self {
        Self { num: -self.num, den: self.den }
    }
}

/// A basis of the chain space `C_p = ker(∂²|paths_p)`, columns in the path
/// basis.
#[derive(Debug, Clone)]
pub struct ChainBasis {
    pub grade: usize,
    /// One integer path-coefficient vector per basis chain.
    pub vectors: Vec<Vec<i64>>,
}

impl ChainBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Chain spaces for grades `0..=max_grade`; `C₀` and `C₁` are the full path
/// spaces (nothing to project), higher grades are kernels of `∂²`.
pub fn chain_spaces(g: &DirectedGraph, max_grade: usize) -> Vec<ChainBasis> {
    let paths = build_path_spaces(g, max_grade);
    let mut out = Vec::new();
    for p in 0..=max_grade {
        let np = paths[p].basis.len();
        if p < 2 {
            out.push(ChainBasis { grade: p, vectors: IMatrix::identity(np).data });
            continue;
        }
        let d1 = boundary_matrix(&paths[p], &paths[p - 1], g);
        let d2 = boundary_matrix(&paths[p - 1], &paths[p - 2], g);
        let sq = d2.mul(&d1);
        out.push(ChainBasis { grade: p, vectors: sq.integer_kernel() });
    }
    out
}

/// Chain dimensions `dim C_p` for grades `0..=max_grade`.
pub fn chain_dimensions(g: &DirectedGraph, max_grade: usize) -> Vec<usize> {
    chain_spaces(g, max_grade).iter().map(ChainBasis::dim).collect()
}

/// Coboundary matrices `d = ∂ᵗ` in path coordinates, grade `p → p+1` at
/// position `p`.
pub fn coboundary_matrices(g: &DirectedGraph, max_grade: usize) -> Vec<IMatrix> {
    let paths = build_path_spaces(g, max_grade);
    (0..max_grade)
        .map(|p| boundary_matrix(&paths[p + 1], &paths[p], g).transpose())
        .collect()
}

/// Cup product of cochains in path coordinates: concatenation of a
/// `p`-path front and `q`-path back sharing the middle node, projected onto
/// admissible paths (no normalization prefactor).
pub fn cup_product(
    g: &DirectedGraph,
    p: usize,
    s: &[f64],
    q: usize,
    t: &[f64],
) -> Vec<f64> {
    let paths = build_path_spaces(g, p + q);
    assert_eq!(s.len(), paths[p].basis.len());
    assert_eq!(t.len(), paths[q].basis.len());
    paths[p + q]
        .basis
        .iter()
        .map(|path| {
            let front = &path[..=p];
            let back = &path[p..];
            let sv = paths[p].basis.binary_search(&front.to_vec()).map(|i| s[i]).unwrap_or(0.0);
            let tv = paths[q].basis.binary_search(&back.to_vec()).map(|i| t[i]).unwrap_or(0.0);
            sv * tv
        })
        .collect()
}

/// Matrix of the graph operator `G` (sum of all edge 1-cochains acting by
/// cup product from the left) from grade-`p` to grade-`p+1` path cochains.
pub fn graph_operator_matrix(g: &DirectedGraph, p: usize) -> IMatrix {
    let paths = build_path_spaces(g, p + 1);
    let mut m = IMatrix::zeros(paths[p + 1].basis.len(), paths[p].basis.len());
    for (row, path) in paths[p + 1].basis.iter().enumerate() {
        // (G ⌣ α)(i₀,…,i_{p+1}) = α(i₁,…,i_{p+1}); the leading pair is an
        // edge by construction of the path basis.
        let back = path[1..].to_vec();
        if let Ok(col) = paths[p].basis.binary_search(&back) {
            m.data[row][col] = 1;
        }
    }
    m
}

/// Whether `G² = 0` as a map from grade-0 cochains to grade-2 *chain*
/// duals, i.e. `B₂ᵗ (G₁ G₀) = 0` with `B₂` the chain basis.
pub fn graph_operator_squares_to_zero(g: &DirectedGraph) -> bool {
    let g1 = graph_operator_matrix(g, 1);
    let g0 = graph_operator_matrix(g, 0);
    let gg = g1.mul(&g0);
    let chains = chain_spaces(g, 2);
    let b2 = &chains[2];
    // Rows of gg are 2-paths; contract each chain vector against each
    // column of gg.
    for chain in &b2.vectors {
        for col in 0..gg.cols {
            let s: i64 = chain.iter().enumerate().map(|(r, &c)| c * gg.data[r][col]).sum();
            if s != 0 {
                return false;
            }
        }
    }
    true
}
