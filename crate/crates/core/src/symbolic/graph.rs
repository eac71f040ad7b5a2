//! Graphs with rational-function edge weights, branches and graph
//! reduction.
//!
//! Edge `(i, j)` carries the matrix entry `M[i][j]`, so a branch
//! `(i0, .., ip)` multiplies entries along its consecutive pairs.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::Polynomial;
use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::matrix::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), RationalFunction>,
}

/// A path `(i0, .., ip)`, `p >= 1`, whose interior vertices are distinct
/// and outside the kept set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch {
    pub vertices: Vec<usize>,
}

impl Branch {
    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("branch has at least two vertices")
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Sets `w(i, j)`; a zero weight removes the edge.
    pub fn set_edge(&mut self, i: usize, j: usize, w: RationalFunction) -> Result<()> {
        for idx in [i, j] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    n: self.n,
                });
            }
        }
        if w.is_zero() {
            self.edges.remove(&(i, j));
        } else {
            self.edges.insert((i, j), w);
        }
        Ok(())
    }

    /// Graph of a square matrix of exact entries.
    pub fn from_matrix(m: &[Vec<BigRational>]) -> Result<Self> {
        let n = m.len();
        let mut g = Self::new(n);
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                g.set_edge(i, j, RationalFunction::constant(v.clone()))?;
            }
        }
        Ok(g)
    }

    /// Graph of a float matrix, each entry taken at its exact binary value.
    pub fn from_dense(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let n = m.nrows();
        let mut g = Self::new(n);
        for j in 0..n {
            for i in 0..n {
                let v = m[(i, j)];
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i + 1, col: j + 1 });
                }
                if v != 0.0 {
                    g.set_edge(i, j, RationalFunction::from_f64(v))?;
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `w(i, j)`, zero off the edge set.
    pub fn weight(&self, i: usize, j: usize) -> RationalFunction {
        self.edges.get(&(i, j)).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&(i, j))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &RationalFunction)> {
        self.edges.iter().map(|(&(i, j), w)| (i, j, w))
    }

    fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|(&(_, j), _)| j)
    }

    /// `M_G(lambda)` as a dense array of weights.
    pub fn adjacency(&self) -> Vec<Vec<RationalFunction>> {
        let mut m = vec![vec![RationalFunction::zero(); self.n]; self.n];
        for (&(i, j), w) in &self.edges {
            m[i][j] = w.clone();
        }
        m
    }

    fn check_set(&self, s: &IndexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: s.universe(),
            });
        }
        Ok(())
    }

    /// Every cycle other than a loop meets `S`, and no loop outside `S`
    /// has weight identically `lambda`.
    pub fn is_structural_set(&self, s: &IndexSet) -> bool {
        if self.check_set(s).is_err() {
            return false;
        }
        let outside = s.complement();
        let lambda = RationalFunction::lambda();
        if outside.iter().any(|&k| self.edges.get(&(k, k)) == Some(&lambda)) {
            return false;
        }
        // acyclicity of the complement-induced graph, loops ignored
        let mut state = vec![0u8; self.n]; // 0 new, 1 on stack, 2 done
        for &root in &outside {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, self.successors(root).collect::<Vec<_>>(), 0usize)];
            state[root] = 1;
            while let Some((v, succ, pos)) = stack.last_mut() {
                if *pos == succ.len() {
                    state[*v] = 2;
                    stack.pop();
                    continue;
                }
                let w = succ[*pos];
                *pos += 1;
                if w == *v || s.contains(w) {
                    continue;
                }
                match state[w] {
                    1 => return false,
                    0 => {
                        state[w] = 1;
                        let next = self.successors(w).collect();
                        stack.push((w, next, 0));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    /// All branches with both endpoints in `S`, in lexicographic order.
    pub fn branches(&self, s: &IndexSet) -> Result<Vec<Branch>> {
        self.check_set(s)?;
        if !self.is_structural_set(s) {
            return Err(Error::NotStructural);
        }
        let mut out = Vec::new();
        let mut path = Vec::new();
        for i in s.iter() {
            path.clear();
            path.push(i);
            self.extend_branches(s, &mut path, &mut out);
        }
        out.sort();
        Ok(out)
    }

    fn extend_branches(&self, s: &IndexSet, path: &mut Vec<usize>, out: &mut Vec<Branch>) {
        let last = *path.last().expect("non-empty path");
        let succ: Vec<usize> = self.successors(last).collect();
        for k in succ {
            if s.contains(k) {
                let mut v = path.clone();
                v.push(k);
                out.push(Branch { vertices: v });
            } else if k != last {
                // interiors cannot repeat: the complement is acyclic
                path.push(k);
                self.extend_branches(s, path, out);
                path.pop();
            }
        }
    }

    /// `w(i0, i1) * prod_{l >= 1} w(i_l, i_{l+1}) / (lambda - w(i_l, i_l))`.
    pub fn branch_weight(&self, beta: &Branch) -> Result<RationalFunction> {
        let v = &beta.vertices;
        if v.len() < 2 {
            return Err(Error::InvalidIndexSet("a branch needs at least one edge".into()));
        }
        let lambda = RationalFunction::lambda();
        let mut w = self.weight(v[0], v[1]);
        for l in 1..v.len() - 1 {
            let num = self.weight(v[l], v[l + 1]);
            let den = &lambda - &self.weight(v[l], v[l]);
            w = &w * &num.checked_div(&den)?;
        }
        Ok(w)
    }

    /// The reduced graph over `S` (vertices renumbered in increasing
    /// order): `R_ij = sum of w(beta)` over branches from `i` to `j`.
    pub fn graph_reduce(&self, s: &IndexSet) -> Result<WeightedDigraph> {
        let branches = self.branches(s)?;
        let mut pos = vec![usize::MAX; self.n];
        for (a, k) in s.iter().enumerate() {
            pos[k] = a;
        }
        let mut sums: BTreeMap<(usize, usize), RationalFunction> = BTreeMap::new();
        for b in &branches {
            let key = (pos[b.start()], pos[b.end()]);
            let w = self.branch_weight(b)?;
            let e = sums.entry(key).or_insert_with(RationalFunction::zero);
            *e = &*e + &w;
        }
        let mut r = WeightedDigraph::new(s.len());
        for ((i, j), w) in sums {
            r.set_edge(i, j, w)?;
        }
        Ok(r)
    }

    /// Entry values at an exact `lambda0`.
    pub fn evaluate_exact(&self, lambda0: &BigRational) -> Result<Vec<Vec<BigRational>>> {
        let mut m = vec![vec![BigRational::zero(); self.n]; self.n];
        for (&(i, j), w) in &self.edges {
            m[i][j] = w.eval(lambda0).ok_or(Error::PoleAtLambda { row: i + 1, col: j + 1 })?;
        }
        Ok(m)
    }

    /// Entry values at `lambda0`, evaluated exactly and rounded once.
    pub fn evaluate_at(&self, lambda0: f64) -> Result<DMatrix<f64>> {
        let x = BigRational::from_float(lambda0)
            .ok_or_else(|| Error::PreconditionViolation(format!("lambda {lambda0} is not finite")))?;
        let exact = self.evaluate_exact(&x)?;
        Ok(DMatrix::from_fn(self.n, self.n, |i, j| {
            exact[i][j].to_f64().unwrap_or(f64::NAN)
        }))
    }

    /// Reads `i j num-coeffs / den-coeffs` lines (1-based vertices,
    /// ascending rational coefficients). An optional first line holding a
    /// single integer fixes the vertex count; otherwise it is the largest
    /// index seen. `#` and `%` start comments.
    pub fn parse<R: Read>(reader: R) -> Result<Self> {
        let mut declared = None;
        let mut entries = Vec::new();
        let mut first = true;
        for (no, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let lineno = no + 1;
            let text = line.split(['#', '%']).next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lineno, msg };
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if first && tokens.len() == 1 {
                declared = Some(
                    tokens[0]
                        .parse::<usize>()
                        .map_err(|_| perr(format!("invalid vertex count '{}'", tokens[0])))?,
                );
                first = false;
                continue;
            }
            first = false;
            if tokens.len() < 3 {
                return Err(perr("expected 'i j num-coeffs [/ den-coeffs]'".into()));
            }
            let i: usize = tokens[0]
                .parse()
                .map_err(|_| perr(format!("invalid vertex '{}'", tokens[0])))?;
            let j: usize = tokens[1]
                .parse()
                .map_err(|_| perr(format!("invalid vertex '{}'", tokens[1])))?;
            if i == 0 || j == 0 {
                return Err(perr("vertices are numbered from 1".into()));
            }
            let rest = tokens[2..].join(" ");
            let (num, den) = match rest.split_once(" / ") {
                Some((a, b)) => (a.to_string(), b.to_string()),
                None if rest.ends_with(" /") || rest.starts_with("/ ") => {
                    return Err(perr("empty polynomial around '/'".into()))
                }
                None => (rest.clone(), "1".to_string()),
            };
            let num = Polynomial::parse(&num).map_err(perr)?;
            let den = Polynomial::parse(&den).map_err(perr)?;
            let w = RationalFunction::new(num, den).map_err(|_| perr("zero denominator polynomial".into()))?;
            entries.push((lineno, i - 1, j - 1, w));
        }
        let max_idx = entries.iter().map(|e| e.1.max(e.2) + 1).max().unwrap_or(0);
        let n = declared.unwrap_or(max_idx);
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut g = Self::new(n);
        for (lineno, i, j, w) in entries {
            if i >= n || j >= n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("vertex outside 1..={n}"),
                });
            }
            let sum = &g.weight(i, j) + &w;
            g.set_edge(i, j, sum)?;
        }
        Ok(g)
    }
}
