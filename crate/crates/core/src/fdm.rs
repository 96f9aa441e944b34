//! Finite-difference reference solver.
//!
//! Five-point Laplacian on the truncated strip `[-L, L] × [0, 1]` with
//! Dirichlet walls at `x = ±L`. Neumann boundary nodes use mirror ghosts and
//! carry half mass; the generalized problem `K u = λ M u` is symmetrized as
//! `S = M^{-1/2} K M^{-1/2}`. Nodes where a wall switches from Neumann to
//! Dirichlet are pinned to zero.
//!
//! The lowest eigenpairs come from Lanczos on `S⁻¹` (banded Cholesky solves,
//! full reorthogonalization) followed by inverse-iteration polishing.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Geometry, ModelKind, Wall};
use crate::{Error, Result};

/// Default extra length beyond the window, in units of `d`.
pub const DEFAULT_TAIL_LENGTH: f64 = 12.0;
pub const DEFAULT_STEPS: [f64; 3] = [1.0 / 40.0, 1.0 / 80.0, 1.0 / 160.0];
pub const RESIDUAL_TOL: f64 = 1e-10;
const MAX_PAIRS: usize = 6;
const SEED: u64 = 0x5eed_f00d;

/// Tensor grid on the unit strip plus the Dirichlet/Neumann layout of both walls.
#[derive(Debug, Clone)]
pub struct FdmGrid {
    pub half_length: f64,
    /// Number of x-intervals across `[-L, L]`.
    pub nx: usize,
    /// Number of y-intervals across `[0, 1]`.
    pub ny: usize,
    pub hx: f64,
    pub hy: f64,
    /// Dirichlet flag per x-node `i = 0..=nx` on `y = 0` and `y = 1`.
    pub bottom_dirichlet: Vec<bool>,
    pub top_dirichlet: Vec<bool>,
}

impl FdmGrid {
    /// Grid for one of the models. `h` is the target spacing; `hx` is adjusted
    /// so the switch points `±δ` are nodes, and `L` is snapped to the grid.
    pub fn for_model(model: ModelKind, geometry: &Geometry, h: f64, half_length: f64) -> Result<Self> {
        let delta = geometry.lambda();
        let cells_in_window = (delta / h).round().max(1.0) as usize;
        Self::for_model_with_cells(model, delta, cells_in_window, (1.0 / h).round() as usize, half_length)
    }

    /// `cells_in_window` x-intervals on `[0, δ]`, `ny` intervals across.
    pub fn for_model_with_cells(
        model: ModelKind,
        delta: f64,
        cells_in_window: usize,
        ny: usize,
        half_length: f64,
    ) -> Result<Self> {
        if !(half_length > delta) {
            return Err(Error::Grid(format!(
                "half length {half_length} must exceed the half window {delta}"
            )));
        }
        if cells_in_window == 0 || ny < 2 {
            return Err(Error::Grid("grid too coarse".into()));
        }
        let hx = delta / cells_in_window as f64;
        let outer = ((half_length - delta) / hx).round().max(1.0) as usize;
        let nx = 2 * (cells_in_window + outer);
        let half_length = delta + outer as f64 * hx;
        // A node is Dirichlet when it touches a Dirichlet segment, which pins
        // the switch points.
        let touches = |wall: Wall, x: f64| {
            model.dirichlet_at(wall, x - 0.5 * hx, delta) || model.dirichlet_at(wall, x + 0.5 * hx, delta)
        };
        let xs: Vec<f64> = (0..=nx).map(|i| -half_length + i as f64 * hx).collect();
        let grid = Self {
            half_length,
            nx,
            ny,
            hx,
            hy: 1.0 / ny as f64,
            bottom_dirichlet: xs.iter().map(|&x| touches(Wall::Bottom, x)).collect(),
            top_dirichlet: xs.iter().map(|&x| touches(Wall::Top, x)).collect(),
        };
        grid.check_switch_points(delta)?;
        Ok(grid)
    }

    fn check_switch_points(&self, delta: f64) -> Result<()> {
        for s in [-delta, delta] {
            let i = (s + self.half_length) / self.hx;
            if (i - i.round()).abs() > 1e-9 {
                return Err(Error::Grid(format!("switch point {s} is not a grid node")));
            }
        }
        Ok(())
    }

    /// Arbitrary wall layout, for test problems with known spectra.
    pub fn with_walls(
        half_length: f64,
        nx: usize,
        ny: usize,
        bottom: impl Fn(f64) -> bool,
        top: impl Fn(f64) -> bool,
    ) -> Result<Self> {
        if nx < 2 || ny < 2 || !(half_length > 0.0) {
            return Err(Error::Grid("grid too coarse".into()));
        }
        let hx = 2.0 * half_length / nx as f64;
        let xs: Vec<f64> = (0..=nx).map(|i| -half_length + i as f64 * hx).collect();
        Ok(Self {
            half_length,
            nx,
            ny,
            hx,
            hy: 1.0 / ny as f64,
            bottom_dirichlet: xs.iter().map(|&x| bottom(x)).collect(),
            top_dirichlet: xs.iter().map(|&x| top(x)).collect(),
        })
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_length + i as f64 * self.hx
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.hy
    }

    fn is_free(&self, i: usize, j: usize) -> bool {
        if i == 0 || i == self.nx {
            return false;
        }
        if j == 0 {
            return !self.bottom_dirichlet[i];
        }
        if j == self.ny {
            return !self.top_dirichlet[i];
        }
        true
    }
}

/// Symmetrized five-point operator in compressed rows.
#[derive(Debug, Clone)]
pub struct FdmOperator {
    grid: FdmGrid,
    /// Unknown number for node `(i, j)`, or `usize::MAX` if pinned.
    index: Vec<usize>,
    nodes: Vec<(usize, usize)>,
    mass: Vec<f64>,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    bandwidth: usize,
}

pub fn build_operator(grid: &FdmGrid) -> Result<FdmOperator> {
    let (nx, ny) = (grid.nx, grid.ny);
    let stride = ny + 1;
    let mut index = vec![usize::MAX; (nx + 1) * stride];
    let mut nodes = Vec::new();
    for i in 0..=nx {
        for j in 0..=ny {
            if grid.is_free(i, j) {
                index[i * stride + j] = nodes.len();
                nodes.push((i, j));
            }
        }
    }
    if nodes.is_empty() {
        return Err(Error::Grid("no free nodes".into()));
    }
    let mass: Vec<f64> = nodes
        .iter()
        .map(|&(_, j)| if j == 0 || j == ny { 0.5 } else { 1.0 })
        .collect();
    let (cx, cy) = (1.0 / (grid.hx * grid.hx), 1.0 / (grid.hy * grid.hy));

    let mut row_start = Vec::with_capacity(nodes.len() + 1);
    let mut cols = Vec::with_capacity(5 * nodes.len());
    let mut vals = Vec::with_capacity(5 * nodes.len());
    let mut bandwidth = 0;
    for (r, &(i, j)) in nodes.iter().enumerate() {
        row_start.push(cols.len());
        let m = mass[r];
        // Row of K = (mass-weighted) stencil; ghost reflection at Neumann walls.
        let mut entries: Vec<(usize, f64)> = Vec::with_capacity(5);
        let mut diag = 2.0 * m * cx;
        for ii in [i - 1, i + 1] {
            let c = index[ii * stride + j];
            if c != usize::MAX {
                entries.push((c, -m * cx));
            }
        }
        if j == 0 || j == ny {
            diag += cy;
            let jj = if j == 0 { 1 } else { ny - 1 };
            let c = index[i * stride + jj];
            if c != usize::MAX {
                entries.push((c, -cy));
            }
        } else {
            diag += 2.0 * cy;
            for jj in [j - 1, j + 1] {
                let c = index[i * stride + jj];
                if c != usize::MAX {
                    entries.push((c, -cy));
                }
            }
        }
        entries.push((r, diag));
        entries.sort_by_key(|e| e.0);
        for (c, v) in entries {
            bandwidth = bandwidth.max(r.abs_diff(c));
            cols.push(c);
            vals.push(v / (m * mass[c]).sqrt());
        }
    }
    row_start.push(cols.len());
    Ok(FdmOperator {
        grid: grid.clone(),
        index,
        nodes,
        mass,
        row_start,
        cols,
        vals,
        bandwidth,
    })
}

impl FdmOperator {
    pub fn grid(&self) -> &FdmGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        for r in 0..self.dim() {
            let mut s = 0.0;
            for p in self.row_start[r]..self.row_start[r + 1] {
                s += self.vals[p] * v[self.cols[p]];
            }
            out[r] = s;
        }
    }

    fn entry(&self, r: usize, c: usize) -> f64 {
        let range = self.row_start[r]..self.row_start[r + 1];
        self.cols[range.clone()]
            .iter()
            .position(|&cc| cc == c)
            .map(|p| self.vals[range.start + p])
            .unwrap_or(0.0)
    }

    /// `max |S_rc - S_cr|` over the stored entries.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim() {
            for p in self.row_start[r]..self.row_start[r + 1] {
                let c = self.cols[p];
                worst = worst.max((self.vals[p] - self.entry(c, r)).abs());
            }
        }
        worst
    }

    /// Nodal values of an eigenvector of `S` (undoes the mass scaling).
    /// Pinned nodes are zero. Indexed `[i][j]`.
    pub fn nodal_values(&self, v: &[f64]) -> Vec<Vec<f64>> {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let mut out = vec![vec![0.0; ny + 1]; nx + 1];
        for (r, &(i, j)) in self.nodes.iter().enumerate() {
            out[i][j] = v[r] / self.mass[r].sqrt();
        }
        out
    }

    /// Unknown index of node `(i, j)`, if it is free.
    pub fn unknown(&self, i: usize, j: usize) -> Option<usize> {
        let c = self.index[i * (self.grid.ny + 1) + j];
        (c != usize::MAX).then_some(c)
    }
}

/// Lower-banded Cholesky factor, rows stored contiguously.
struct BandCholesky {
    n: usize,
    bw: usize,
    l: Vec<f64>,
}

impl BandCholesky {
    fn factor(op: &FdmOperator) -> Result<Self> {
        let (n, bw) = (op.dim(), op.bandwidth());
        let w = bw + 1;
        let mut l = vec![0.0; n * w];
        for r in 0..n {
            for p in op.row_start[r]..op.row_start[r + 1] {
                let c = op.cols[p];
                if c <= r {
                    l[r * w + (c + bw - r)] = op.vals[p];
                }
            }
        }
        for i in 0..n {
            let first = i.saturating_sub(bw);
            for j in first..=i {
                let k0 = first.max(j.saturating_sub(bw));
                let (ri, rj) = (i * w + bw - i, j * w + bw - j);
                let mut s = l[ri + j];
                for k in k0..j {
                    s -= l[ri + k] * l[rj + k];
                }
                if i == j {
                    if !(s > 0.0) {
                        return Err(Error::NotConverged {
                            what: "banded Cholesky",
                            detail: format!("non-positive pivot {s} at row {i}"),
                        });
                    }
                    l[ri + i] = s.sqrt();
                } else {
                    l[ri + j] = s / l[rj + j];
                }
            }
        }
        Ok(Self { n, bw, l })
    }

    fn solve_in_place(&self, x: &mut [f64]) {
        let (n, bw, w) = (self.n, self.bw, self.bw + 1);
        for i in 0..n {
            let first = i.saturating_sub(bw);
            let ri = i * w + bw - i;
            let mut s = x[i];
            for k in first..i {
                s -= self.l[ri + k] * x[k];
            }
            x[i] = s / self.l[ri + i];
        }
        for i in (0..n).rev() {
            let ri = i * w + bw - i;
            let xi = x[i] / self.l[ri + i];
            x[i] = xi;
            for k in i.saturating_sub(bw)..i {
                x[k] -= self.l[ri + k] * xi;
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn orthonormalize(block: &mut [Vec<f64>]) {
    for i in 0..block.len() {
        for _ in 0..2 {
            for j in 0..i {
                let (head, tail) = block.split_at_mut(i);
                let c = dot(&tail[0], &head[j]);
                axpy(-c, &head[j], &mut tail[0]);
            }
        }
        normalize(&mut block[i]);
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    /// Eigenvalue on the unit strip.
    pub value: f64,
    /// Unit-norm eigenvector of the symmetrized operator.
    pub vector: Vec<f64>,
    /// `‖S v - λ v‖ / (|λ| ‖v‖)`
    pub residual: f64,
}

/// Double-double accumulator (error-free transforms).
#[derive(Clone, Copy, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn add(self, x: f64) -> Dd {
        let s = self.hi + x;
        let bb = s - self.hi;
        let err = (self.hi - (s - bb)) + (x - bb);
        Dd { hi: s, lo: self.lo + err }
    }

    fn add_prod(self, a: f64, b: f64) -> Dd {
        let p = a * b;
        let e = a.mul_add(b, -p);
        let mut d = self.add(p);
        d.lo += e;
        d
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Rayleigh quotient and relative residual of `v`, evaluated with compensated
/// sums. Plain f64 cannot resolve `Sv - θv` on fine grids: the stencil
/// entries are O(1/h²) while θ is O(1).
fn accurate_residual(op: &FdmOperator, v: &[f64]) -> (f64, f64, Vec<f64>) {
    let n = op.dim();
    let mut image = vec![Dd::default(); n];
    for (r, out) in image.iter_mut().enumerate() {
        *out = (op.row_start[r]..op.row_start[r + 1]).fold(Dd::default(), |acc, p| {
            acc.add_prod(op.vals[p], v[op.cols[p]])
        });
    }
    let (mut num, mut den) = (Dd::default(), Dd::default());
    for (i, img) in image.iter().enumerate() {
        num = num.add_prod(v[i], img.hi).add_prod(v[i], img.lo);
        den = den.add_prod(v[i], v[i]);
    }
    let theta = num.value() / den.value();
    let r: Vec<f64> = image
        .iter()
        .zip(v)
        .map(|(img, &vi)| Dd::default().add(img.hi).add(img.lo).add_prod(-theta, vi).value())
        .collect();
    let rel = dot(&r, &r).sqrt() / (theta.abs() * den.value().sqrt());
    (theta, rel, r)
}

/// Rayleigh–Ritz on `span(block)` with the true operator.
fn rayleigh_ritz(op: &FdmOperator, block: &[Vec<f64>]) -> Vec<Eigenpair> {
    let k = block.len();
    let n = op.dim();
    let images: Vec<Vec<f64>> = block
        .iter()
        .map(|v| {
            let mut out = vec![0.0; n];
            op.apply(v, &mut out);
            out
        })
        .collect();
    let h = DMatrix::from_fn(k, k, |a, b| 0.5 * (dot(&block[a], &images[b]) + dot(&block[b], &images[a])));
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order
        .into_iter()
        .map(|c| {
            let mut vector = vec![0.0; n];
            for a in 0..k {
                axpy(eig.eigenvectors[(a, c)], &block[a], &mut vector);
            }
            normalize(&mut vector);
            let (value, residual, _) = accurate_residual(op, &vector);
            Eigenpair { value, vector, residual }
        })
        .collect()
}

/// The `k` smallest eigenpairs of the operator.
pub fn lowest_eigenpairs(op: &FdmOperator, k: usize) -> Result<Vec<Eigenpair>> {
    if k == 0 || k > MAX_PAIRS {
        return Err(Error::InvalidArgument(format!("can compute 1..={MAX_PAIRS} eigenpairs, asked for {k}")));
    }
    let n = op.dim();
    if n <= 2 * k {
        return Err(Error::Grid(format!("operator of size {n} too small for {k} eigenpairs")));
    }
    let chol = BandCholesky::factor(op)?;
    let max_steps = 160.min(n);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut q: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    chol.solve_in_place(&mut q);
    normalize(&mut q);
    let mut basis = vec![q];
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    let mut ritz: Option<(DVector<f64>, DMatrix<f64>)> = None;

    for step in 0..max_steps {
        let mut w = basis[step].clone();
        chol.solve_in_place(&mut w);
        let a = dot(&w, &basis[step]);
        axpy(-a, &basis[step], &mut w);
        if step > 0 {
            axpy(-beta[step - 1], &basis[step - 1], &mut w);
        }
        for v in &basis {
            let c = dot(&w, v);
            axpy(-c, v, &mut w);
        }
        let b = dot(&w, &w).sqrt();
        alpha.push(a);

        let m = alpha.len();
        let exhausted = b <= 1e-14 * a.abs() || m == max_steps;
        if m >= k && (m % 5 == 0 || exhausted) {
            let t = DMatrix::from_fn(m, m, |r, c| {
                if r == c {
                    alpha[r]
                } else if r.abs_diff(c) == 1 {
                    beta[r.min(c)]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
            let wanted = &order[..k];
            let converged = wanted
                .iter()
                .all(|&i| (b * eig.eigenvectors[(m - 1, i)]).abs() <= 1e-13 * eig.eigenvalues[i].abs());
            let vals = DVector::from_iterator(k, wanted.iter().map(|&i| eig.eigenvalues[i]));
            let vecs = DMatrix::from_fn(m, k, |r, c| eig.eigenvectors[(r, wanted[c])]);
            ritz = Some((vals, vecs));
            if converged || exhausted {
                break;
            }
        }
        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(w);
    }

    let (_, vecs) = ritz.ok_or_else(|| Error::NotConverged {
        what: "Lanczos",
        detail: "no Ritz values computed".into(),
    })?;
    let mut block: Vec<Vec<f64>> = (0..k)
        .map(|c| {
            let mut y = vec![0.0; n];
            for (r, v) in basis.iter().enumerate().take(vecs.nrows()) {
                axpy(vecs[(r, c)], v, &mut y);
            }
            y
        })
        .collect();
    drop(basis);

    let mut pairs = Vec::new();
    for _ in 0..4 {
        for v in block.iter_mut() {
            chol.solve_in_place(v);
        }
        orthonormalize(&mut block);
        pairs = rayleigh_ritz(op, &block);
        if pairs.iter().all(|p| p.residual < RESIDUAL_TOL) {
            return Ok(pairs);
        }
        block = pairs.iter().map(|p| p.vector.clone()).collect();
    }
    // Inverse iteration stalls at the roundoff of the factored solves. An
    // Olsen correction solves only for the small update, so its own solve
    // error is negligible.
    for _ in 0..3 {
        for p in pairs.iter_mut().filter(|p| p.residual >= RESIDUAL_TOL) {
            let (_, _, mut z) = accurate_residual(op, &p.vector);
            let mut y = p.vector.clone();
            chol.solve_in_place(&mut z);
            chol.solve_in_place(&mut y);
            let eps = dot(&p.vector, &z) / dot(&p.vector, &y);
            for ((v, zi), yi) in p.vector.iter_mut().zip(&z).zip(&y) {
                *v -= zi - eps * yi;
            }
            normalize(&mut p.vector);
            let (value, residual, _) = accurate_residual(op, &p.vector);
            p.value = value;
            p.residual = residual;
        }
        if pairs.iter().all(|p| p.residual < RESIDUAL_TOL) {
            return Ok(pairs);
        }
    }
    let worst = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    Err(Error::NotConverged {
        what: "finite-difference eigensolver",
        detail: format!("relative residual {worst:e} after polishing"),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    /// `(h, E/μ)` per grid, coarsest first.
    pub values: Vec<(f64, f64)>,
    /// Richardson estimate of `E/μ` as `h → 0`.
    pub estimate: f64,
    /// Observed order `p` in `E(h) ≈ E₀ + C h^p`.
    pub order: f64,
}

/// Eigenvalue number `branch` (1-based) on each grid, then Richardson
/// extrapolation with the observed order from the last three grids.
pub fn extrapolate(
    model: ModelKind,
    geometry: &Geometry,
    h_list: &[f64],
    half_length: f64,
    branch: usize,
) -> Result<Extrapolation> {
    if branch == 0 {
        return Err(Error::InvalidArgument("branch index starts at 1".into()));
    }
    let mut all = extrapolate_branches(model, geometry, h_list, half_length, branch)?;
    Ok(all.swap_remove(branch - 1))
}

/// [`extrapolate`] for branches `1..=count`, sharing the eigensolves.
pub fn extrapolate_branches(
    model: ModelKind,
    geometry: &Geometry,
    h_list: &[f64],
    half_length: f64,
    count: usize,
) -> Result<Vec<Extrapolation>> {
    if h_list.len() < 3 {
        return Err(Error::InvalidArgument("extrapolation needs at least 3 grids".into()));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one branch".into()));
    }
    let ratio = h_list[0] / h_list[1];
    for w in h_list.windows(2) {
        if !((w[0] / w[1] - ratio).abs() < 1e-9 * ratio) || ratio <= 1.0 {
            return Err(Error::InvalidArgument("grid spacings must decrease in a fixed ratio".into()));
        }
    }
    let delta = geometry.lambda();
    let base_cells = (delta / h_list[0]).round().max(1.0);
    let base_ny = (1.0 / h_list[0]).round();
    let mu = std::f64::consts::PI.powi(2) / 4.0;
    let mut per_grid = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let refine = h_list[0] / h;
        let grid = FdmGrid::for_model_with_cells(
            model,
            delta,
            (base_cells * refine).round() as usize,
            (base_ny * refine).round() as usize,
            half_length,
        )?;
        let op = build_operator(&grid)?;
        let pairs = lowest_eigenpairs(&op, count)?;
        per_grid.push(pairs.iter().map(|p| p.value / mu).collect::<Vec<_>>());
    }
    (0..count)
        .map(|b| {
            let values: Vec<(f64, f64)> = h_list.iter().zip(&per_grid).map(|(&h, v)| (h, v[b])).collect();
            richardson(values, ratio)
        })
        .collect()
}

fn richardson(values: Vec<(f64, f64)>, ratio: f64) -> Result<Extrapolation> {
    let m = values.len();
    let (e1, e2, e3) = (values[m - 3].1, values[m - 2].1, values[m - 1].1);
    let (d1, d2) = (e1 - e2, e2 - e3);
    if d1 == 0.0 || d2 == 0.0 || d1.signum() != d2.signum() || d2.abs() >= d1.abs() {
        return Err(Error::NotConverged {
            what: "Richardson extrapolation",
            detail: format!("non-monotone sequence {e1}, {e2}, {e3}"),
        });
    }
    let order = (d1 / d2).ln() / ratio.ln();
    let estimate = e3 - d2 / (ratio.powf(order) - 1.0);
    Ok(Extrapolation { values, estimate, order })
}
