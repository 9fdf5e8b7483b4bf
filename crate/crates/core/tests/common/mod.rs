//! Reference implementations used only by tests. None of them shares code
//! with the library beyond the `Graph` container.

#![allow(dead_code)]

use itertools::Itertools;
use nodal_geometry::graph::Graph;

/// Householder reduction of a symmetric matrix to tridiagonal form;
/// returns `(diagonal, off_diagonal)`.
pub fn tridiagonalize(m: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        let alpha = -x[0].signum() * x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- H A H with H = I - 2 v v^T / |v|^2 acting on rows/cols k+1..n.
        let idx: Vec<usize> = (k + 1..n).collect();
        let p: Vec<f64> = (0..n)
            .map(|i| idx.iter().zip(&v).map(|(&j, vj)| a[i][j] * vj).sum::<f64>() * 2.0 / vnorm2)
            .collect();
        let kappa: f64 = idx.iter().zip(&v).map(|(&i, vi)| vi * p[i]).sum::<f64>() / vnorm2;
        let mut q = vec![0.0; n];
        for (&i, vi) in idx.iter().zip(&v) {
            q[i] = p[i] - kappa * vi;
        }
        q[..=k].copy_from_slice(&p[..=k]);
        let mut full_v = vec![0.0; n];
        for (&i, vi) in idx.iter().zip(&v) {
            full_v[i] = *vi;
        }
        for i in 0..n {
            for j in 0..n {
                a[i][j] -= full_v[i] * q[j] + q[i] * full_v[j];
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    let off = (1..n).map(|i| a[i][i - 1]).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`
/// (Sturm sequence sign changes).
pub fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues in ascending order by bisection on the inertia count.
pub fn eigenvalues_by_bisection(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    // Gershgorin interval.
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, row) in m.iter().enumerate() {
        let radius: f64 = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.abs())
            .sum();
        lo = lo.min(row[i] - radius);
        hi = hi.max(row[i] + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    let (diag, off) = tridiagonalize(m);
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if count_below(&diag, &off, mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
                if b - a < 1e-13 * (1.0 + a.abs().max(b.abs())) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

pub fn laplacian_rows(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0.0; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = -1.0;
        m[v][u] = -1.0;
        m[u][u] += 1.0;
        m[v][v] += 1.0;
    }
    m
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Strong domains as union-find classes of edges joining two vertices of
/// the same strict sign; each class listed sorted, classes ordered by their
/// smallest vertex.
pub fn strong_domains_by_labeling(g: &Graph, u: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let sign = |x: f64| {
        if x.abs() <= tol * scale {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for (a, b) in g.edges() {
        if sign(u[a]) != 0 && sign(u[a]) == sign(u[b]) {
            uf.union(a, b);
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in (0..n).filter(|&v| sign(u[v]) != 0) {
        let r = uf.find(v);
        classes.entry(r).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

/// Faces of the embedding given by full cyclic orders (no pinning), traced
/// with an explicit edge-to-position lookup.
pub fn faces_of(order: &[Vec<usize>]) -> usize {
    let mut darts = Vec::new();
    for (v, nbrs) in order.iter().enumerate() {
        for &w in nbrs {
            darts.push((v, w));
        }
    }
    let mut used = std::collections::HashSet::new();
    let mut faces = 0;
    for &start in &darts {
        if used.contains(&start) {
            continue;
        }
        faces += 1;
        let mut d = start;
        while used.insert(d) {
            let (a, b) = d;
            let at_b = &order[b];
            let i = at_b.iter().position(|&x| x == a).unwrap();
            d = (b, at_b[(i + 1) % at_b.len()]);
        }
    }
    faces
}

/// Minimum genus over every rotation system, each cyclic order enumerated
/// through all `d!` linear orders.
pub fn brute_force_genus(g: &Graph) -> usize {
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        return 0;
    }
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            let nb = g.neighbors(v).to_vec();
            let len = nb.len();
            nb.into_iter().permutations(len).collect()
        })
        .collect();
    let mut best = usize::MAX;
    for choice in per_vertex
        .iter()
        .map(|c| c.iter())
        .multi_cartesian_product()
    {
        let order: Vec<Vec<usize>> = choice.into_iter().cloned().collect();
        let f = faces_of(&order) as i64;
        let twice = 2 - (n as i64 - g.edge_count() as i64 + f);
        best = best.min((twice / 2) as usize);
    }
    best
}

/// Whether every subset of at most half the vertices has outer boundary
/// of size at least the square root of its size.
pub fn volume_growth_by_subsets(g: &Graph) -> bool {
    let n = g.vertex_count();
    (1..=n / 2).all(|k| {
        (0..n).combinations(k).all(|set| {
            let mut boundary = std::collections::BTreeSet::new();
            for &v in &set {
                for &w in g.neighbors(v) {
                    if !set.contains(&w) {
                        boundary.insert(w);
                    }
                }
            }
            (boundary.len() as f64) >= (k as f64).sqrt()
        })
    })
}
