//! Spectral measurements of stochastic matrices: the diameter semi-norm,
//! inner spectral radius, spectral gap, minimum entry, Gershgorin disks and
//! the communicating-class decomposition that decides non-criticality.

use nalgebra::DMatrix;
use num_complex::Complex64;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matrix::{one_norm, ProbabilityVector, StochasticMatrix};

/// Half the largest pairwise 1-norm distance between columns:
/// `tau(A) = max_{i,j} 1/2 sum_k |a_ki - a_kj|`.
pub fn diameter_tau(a: &StochasticMatrix) -> f64 {
    let cols: Vec<Vec<(usize, f64)>> = (0..a.n()).map(|j| a.column_entries(j)).collect();
    let mut best: f64 = 0.0;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            best = best.max(0.5 * merged_abs_diff(&cols[i], &cols[j]));
        }
    }
    best.min(1.0)
}

/// The same quantity through column overlaps:
/// `tau(A) = 1 - min_{i,j} sum_k min(a_ki, a_kj)`.
pub fn diameter_tau_overlap(a: &StochasticMatrix) -> f64 {
    let cols: Vec<Vec<(usize, f64)>> = (0..a.n()).map(|j| a.column_entries(j)).collect();
    let mut min_overlap = f64::INFINITY;
    for i in 0..cols.len() {
        for j in i..cols.len() {
            min_overlap = min_overlap.min(merged_min_sum(&cols[i], &cols[j]));
        }
    }
    (1.0 - min_overlap).max(0.0)
}

fn merged_abs_diff(x: &[(usize, f64)], y: &[(usize, f64)]) -> f64 {
    let (mut p, mut q, mut s) = (0, 0, 0.0);
    loop {
        match (x.get(p), y.get(q)) {
            (Some(&(i, u)), Some(&(j, v))) => {
                if i == j {
                    s += (u - v).abs();
                    p += 1;
                    q += 1;
                } else if i < j {
                    s += u;
                    p += 1;
                } else {
                    s += v;
                    q += 1;
                }
            }
            (Some(&(_, u)), None) => {
                s += u;
                p += 1;
            }
            (None, Some(&(_, v))) => {
                s += v;
                q += 1;
            }
            (None, None) => break,
        }
    }
    s
}

fn merged_min_sum(x: &[(usize, f64)], y: &[(usize, f64)]) -> f64 {
    let (mut p, mut q, mut s) = (0, 0, 0.0);
    while p < x.len() && q < y.len() {
        let (i, u) = x[p];
        let (j, v) = y[q];
        if i == j {
            s += u.min(v);
            p += 1;
            q += 1;
        } else if i < j {
            p += 1;
        } else {
            q += 1;
        }
    }
    s
}

/// Smallest entry `m(A)`, zeros included.
pub fn min_entry(a: &StochasticMatrix) -> f64 {
    let n = a.n();
    if a.nnz() < n * n {
        return 0.0;
    }
    (0..n)
        .flat_map(|j| a.column_entries(j).into_iter().map(|(_, v)| v))
        .fold(f64::INFINITY, f64::min)
}

/// Eigenvalues of a dense square matrix, sorted by decreasing modulus and
/// then by decreasing real part.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_iters = (100 * n).max(10_000);
    // the double-shift QR sweep can stall on cyclic structure; a random
    // orthogonal similarity keeps the spectrum and breaks the symmetry
    for attempt in 0..4u64 {
        let work = if attempt == 0 {
            m.clone()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(attempt);
            let q = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5).qr().q();
            q.transpose() * m * q
        };
        let Some(schur) = nalgebra::Schur::try_new(work, f64::EPSILON, max_iters) else {
            continue;
        };
        let mut ev: Vec<Complex64> = schur
            .complex_eigenvalues()
            .iter()
            .map(|z| Complex64::new(z.re, z.im))
            .collect();
        if ev.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            continue;
        }
        sort_spectrum(&mut ev);
        return Ok(ev);
    }
    Err(Error::EigensolverFailure)
}

pub fn sort_spectrum(ev: &mut [Complex64]) {
    ev.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
}

/// Modulus of the second eigenvalue once the Perron eigenvalue 1 is set
/// aside. Returns 1 when 1 is a repeated eigenvalue or another eigenvalue
/// sits on the unit circle.
pub fn inner_spectral_radius(a: &StochasticMatrix) -> Result<f64> {
    if a.n() == 1 {
        return Ok(0.0);
    }
    let ev = eigenvalues(&a.to_dense())?;
    Ok(inner_radius_of_spectrum(&ev))
}

/// `rho_i` from a precomputed spectrum of a stochastic matrix.
pub fn inner_radius_of_spectrum(ev: &[Complex64]) -> f64 {
    if ev.len() < 2 {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    let perron = ev
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - one).norm().total_cmp(&(y.1 - one).norm()))
        .map(|(k, _)| k)
        .unwrap_or(0);
    ev.iter()
        .enumerate()
        .filter(|(k, _)| *k != perron)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max)
        .min(1.0)
}

/// `g(A) = 1 - rho_i(A)`.
pub fn spectral_gap(a: &StochasticMatrix) -> Result<f64> {
    Ok(1.0 - inner_spectral_radius(a)?)
}

/// Communicating classes of the transition digraph (`j -> i` whenever
/// `a_ij > 0`), with transient vertices split off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecomposition {
    /// Vertex sets, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub essential: Vec<bool>,
    /// gcd of cycle lengths inside each class.
    pub periods: Vec<usize>,
    /// Vertices that do not lead back to themselves.
    pub transient: Vec<usize>,
}

impl ClassDecomposition {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_essential(&self) -> usize {
        self.essential.iter().filter(|&&e| e).count()
    }

    pub fn essential_classes(&self) -> impl Iterator<Item = (&[usize], usize)> {
        self.classes
            .iter()
            .zip(&self.essential)
            .zip(&self.periods)
            .filter(|((_, &e), _)| e)
            .map(|((c, _), &p)| (c.as_slice(), p))
    }
}

pub fn classify(a: &StochasticMatrix) -> ClassDecomposition {
    classify_with_threshold(a, 0.0)
}

/// Like [`classify`], counting only entries strictly above `eps` as edges.
pub fn classify_with_threshold(a: &StochasticMatrix, eps: f64) -> ClassDecomposition {
    let n = a.n();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, a.nnz());
    let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..n {
        for (i, v) in a.column_entries(j) {
            if v > eps {
                g.add_edge(nodes[j], nodes[i], ());
                out[j].push(i);
            }
        }
    }

    let mut comp = vec![usize::MAX; n];
    let sccs = tarjan_scc(&g);
    for (c, members) in sccs.iter().enumerate() {
        for v in members {
            comp[v.index()] = c;
        }
    }

    let mut found: Vec<(Vec<usize>, bool, usize)> = Vec::new();
    let mut transient = Vec::new();
    for (c, members) in sccs.iter().enumerate() {
        let mut vs: Vec<usize> = members.iter().map(|v| v.index()).collect();
        vs.sort_unstable();
        let recurrent = vs.len() > 1 || out[vs[0]].contains(&vs[0]);
        if !recurrent {
            transient.push(vs[0]);
            continue;
        }
        let essential = vs.iter().all(|&u| out[u].iter().all(|&w| comp[w] == c));
        let period = class_period(&vs, &out, &comp, c);
        found.push((vs, essential, period));
    }
    found.sort_by_key(|(vs, _, _)| vs[0]);
    transient.sort_unstable();

    ClassDecomposition {
        classes: found.iter().map(|f| f.0.clone()).collect(),
        essential: found.iter().map(|f| f.1).collect(),
        periods: found.iter().map(|f| f.2).collect(),
        transient,
    }
}

/// gcd over internal edges `u -> w` of `level(u) + 1 - level(w)`, with
/// levels from a BFS inside the class.
fn class_period(members: &[usize], out: &[Vec<usize>], comp: &[usize], c: usize) -> usize {
    let mut level = std::collections::HashMap::with_capacity(members.len());
    let root = members[0];
    level.insert(root, 0i64);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let lu = level[&u];
        for &w in &out[u] {
            if comp[w] == c && !level.contains_key(&w) {
                level.insert(w, lu + 1);
                queue.push_back(w);
            }
        }
    }
    let mut g: u64 = 0;
    for &u in members {
        for &w in &out[u] {
            if comp[w] == c {
                let d = (level[&u] + 1 - level[&w]).unsigned_abs();
                g = gcd(g, d);
            }
        }
    }
    g.max(1) as usize
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff there is exactly one essential class and it is aperiodic.
pub fn is_non_critical(a: &StochasticMatrix) -> bool {
    is_non_critical_decomposition(&classify(a))
}

pub fn is_non_critical_decomposition(d: &ClassDecomposition) -> bool {
    let mut ess = d.essential_classes();
    matches!((ess.next(), ess.next()), (Some((_, 1)), None))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GershgorinDisk {
    pub center: f64,
    pub radius: f64,
}

impl GershgorinDisk {
    pub fn distance(&self, z: Complex64) -> f64 {
        ((z - Complex64::new(self.center, 0.0)).norm() - self.radius).max(0.0)
    }
}

/// Row disks: center `a_ii`, radius `r_i(A) = sum_{j != i} |a_ij|`.
pub fn gershgorin(m: &DMatrix<f64>) -> Vec<GershgorinDisk> {
    (0..m.nrows())
        .map(|i| GershgorinDisk {
            center: m[(i, i)],
            radius: m
                .row(i)
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.abs())
                .sum(),
        })
        .collect()
}

/// Distance from `z` to the union of the disks (0 inside).
pub fn distance_to_union(disks: &[GershgorinDisk], z: Complex64) -> f64 {
    disks.iter().map(|d| d.distance(z)).fold(f64::INFINITY, f64::min)
}

/// `(||Ax - Ay||_1, tau(A) ||x - y||_1)`; the first never exceeds the second.
pub fn contraction_check(a: &StochasticMatrix, x: &ProbabilityVector, y: &ProbabilityVector) -> Result<(f64, f64)> {
    let ax = a.mul_vec(x.as_slice())?;
    let ay = a.mul_vec(y.as_slice())?;
    let lhs: Vec<f64> = ax.iter().zip(&ay).map(|(p, q)| p - q).collect();
    let diff: Vec<f64> = x.as_slice().iter().zip(y.as_slice()).map(|(p, q)| p - q).collect();
    Ok((one_norm(&lhs), diameter_tau(a) * one_norm(&diff)))
}

/// Every measurement for one matrix.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub n: usize,
    pub tau: f64,
    pub rho_i: f64,
    pub gap: f64,
    pub m: f64,
    pub eigenvalues: Vec<Complex64>,
    pub classes: ClassDecomposition,
}

/// Printable subset of a [`SpectralReport`].
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSummary {
    pub n: usize,
    pub tau: f64,
    pub rho_i: f64,
    pub gap: f64,
    pub m: f64,
    pub num_classes: usize,
    pub num_essential: usize,
    pub non_critical: bool,
}

impl SpectralReport {
    pub fn compute(a: &StochasticMatrix, edge_eps: f64) -> Result<Self> {
        let eigenvalues = if a.n() > 1 {
            eigenvalues(&a.to_dense())?
        } else {
            vec![Complex64::new(1.0, 0.0)]
        };
        let rho_i = inner_radius_of_spectrum(&eigenvalues);
        Ok(Self {
            n: a.n(),
            tau: diameter_tau(a),
            rho_i,
            gap: 1.0 - rho_i,
            m: min_entry(a),
            eigenvalues,
            classes: classify_with_threshold(a, edge_eps),
        })
    }

    pub fn summary(&self) -> SpectralSummary {
        SpectralSummary {
            n: self.n,
            tau: self.tau,
            rho_i: self.rho_i,
            gap: self.gap,
            m: self.m,
            num_classes: self.classes.num_classes(),
            num_essential: self.classes.num_essential(),
            non_critical: is_non_critical_decomposition(&self.classes),
        }
    }
}
