//! Adjacency spectra, the eigenvalue form of the Lovász theta function, and
//! the eigenspace constants that feed the Krawtchouk linear program.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_edge_transitive, Graph};
use crate::limits::Limits;

/// Numerical tolerances of the spectral layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralTolerances {
    /// Eigenvalues within `multiplicity * ρ` of `λm` span the `λm`-eigenspace.
    pub multiplicity: f64,
    /// Allowed spread of `c` across the edge set.
    pub c_constancy: f64,
    pub max_sweeps: usize,
}

impl Default for SpectralTolerances {
    fn default() -> Self {
        SpectralTolerances {
            multiplicity: 1e-8,
            c_constancy: 1e-7,
            max_sweeps: 100,
        }
    }
}

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi rotations on a dense symmetric matrix.
pub fn jacobi_eigen(matrix: &[Vec<f64>], max_sweeps: usize) -> Result<SymmetricEigen> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter("matrix is not square".into()));
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let off = |a: &Vec<Vec<f64>>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i][j] * a[i][j];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    Ok(SymmetricEigen {
        values: order.iter().map(|&k| a[k][k]).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[i][k]).collect())
            .collect(),
    })
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    a
}

/// All adjacency eigenvalues, descending.
pub fn adjacency_spectrum(g: &Graph) -> Result<Vec<f64>> {
    let tol = SpectralTolerances::default();
    Ok(jacobi_eigen(&adjacency_matrix(g), tol.max_sweeps)?.values)
}

/// Spectral quantities of an edge-bearing graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub lambda0: f64,
    pub lambda_min: f64,
    /// `g / (1 − λ0/λm)`.
    pub theta_l: f64,
    /// Dimension of the `λm`-eigenspace, `tr P_m`.
    pub multiplicity_min: usize,
    /// `−g (P_m)_{uv}` on edges.
    pub c_const: f64,
    pub q_prime: f64,
}

fn theta_from(g: usize, lambda0: f64, lambda_min: f64) -> f64 {
    g as f64 / (1.0 - lambda0 / lambda_min)
}

fn require_edge(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        Err(Error::EdgelessGraph)
    } else {
        Ok(())
    }
}

/// `θ_L(G) = |V| / (1 − λ0/λm)` for regular edge-transitive `G`.
///
/// Edge-transitivity is checked by brute force up to the automorphism cap;
/// beyond it the graph must pass the edge-constancy test of
/// [`eigenspace_constants`] instead. Graphs failing either gate get
/// [`Error::Unsupported`] rather than a value that might not be θ_L.
pub fn lovasz_theta_edge_transitive(g: &Graph, limits: &Limits) -> Result<f64> {
    Ok(gated_constants(g, limits)?.theta_l)
}

fn gated_constants(g: &Graph, limits: &Limits) -> Result<SpectralData> {
    require_edge(g)?;
    if g.regular_degree().is_none() {
        return Err(Error::Unsupported(format!(
            "{} is not regular; the eigenvalue formula for theta needs a regular edge-transitive graph",
            g.label()
        )));
    }
    let checkable =
        g.known_symmetry().edge_transitive || g.vertex_count() <= limits.max_automorphism_vertices;
    if checkable && !is_edge_transitive(g, limits)? {
        return Err(Error::Unsupported(format!(
            "{} is not edge-transitive",
            g.label()
        )));
    }
    eigenspace_constants(g).map_err(|e| match e {
        Error::NonConstantC { min, max } => Error::Unsupported(format!(
            "{} fails the edge-constancy gate (c ranges over [{min}, {max}])",
            g.label()
        )),
        other => other,
    })
}

/// `D = g/(λ0 − λm) (A − λm I)`, positive semidefinite with constant
/// diagonal `θ_L` and row sums `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LovaszMatrix {
    pub entries: Vec<Vec<f64>>,
}

impl LovaszMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = jacobi_eigen(&self.entries, SpectralTolerances::default().max_sweeps)?;
        Ok(eig.values.last().copied().unwrap_or(0.0))
    }
}

pub fn lovasz_matrix(g: &Graph, limits: &Limits) -> Result<LovaszMatrix> {
    let data = gated_constants(g, limits)?;
    let scale = g.vertex_count() as f64 / (data.lambda0 - data.lambda_min);
    let mut entries = adjacency_matrix(g);
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] -= data.lambda_min;
        for x in row.iter_mut() {
            *x *= scale;
        }
    }
    Ok(LovaszMatrix { entries })
}

/// Projector onto the eigenspace of the smallest adjacency eigenvalue.
pub fn min_eigenspace_projector(g: &Graph, tol: &SpectralTolerances) -> Result<Vec<Vec<f64>>> {
    let eig = jacobi_eigen(&adjacency_matrix(g), tol.max_sweeps)?;
    Ok(projector(&eig, tol))
}

fn projector(eig: &SymmetricEigen, tol: &SpectralTolerances) -> Vec<Vec<f64>> {
    let n = eig.values.len();
    let rho = eig.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let lambda_min = eig.values[n - 1];
    let mut p = vec![vec![0.0; n]; n];
    for (value, vec) in eig.values.iter().zip(&eig.vectors) {
        if (value - lambda_min).abs() > tol.multiplicity * rho {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                p[i][j] += vec[i] * vec[j];
            }
        }
    }
    p
}

/// Spectral data of `G`, with `c` checked constant over every edge.
pub fn eigenspace_constants(g: &Graph) -> Result<SpectralData> {
    eigenspace_constants_with(g, &SpectralTolerances::default())
}

pub fn eigenspace_constants_with(g: &Graph, tol: &SpectralTolerances) -> Result<SpectralData> {
    require_edge(g)?;
    let n = g.vertex_count();
    let eig = jacobi_eigen(&adjacency_matrix(g), tol.max_sweeps)?;
    let rho = eig.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let lambda0 = eig.values[0];
    let lambda_min = eig.values[n - 1];
    let multiplicity_min = eig
        .values
        .iter()
        .filter(|&&x| (x - lambda_min).abs() <= tol.multiplicity * rho)
        .count();
    let p = projector(&eig, tol);

    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (u, v) in g.edges() {
        let c = -(n as f64) * p[u][v];
        min = min.min(c);
        max = max.max(c);
    }
    if max - min > tol.c_constancy * max.abs().max(1.0) {
        return Err(Error::NonConstantC { min, max });
    }
    let c_const = 0.5 * (min + max);
    let theta_l = theta_from(n, lambda0, lambda_min);
    let q_prime = 1.0 - lambda0 / lambda_min;

    let forms = [1.0 + multiplicity_min as f64 / c_const, n as f64 / theta_l];
    if forms
        .iter()
        .any(|f| (f - q_prime).abs() > tol.c_constancy * q_prime)
    {
        return Err(Error::Numeric(format!(
            "q' disagrees across its expressions: 1 - l0/lm = {q_prime}, 1 + d/c = {}, g/theta = {}",
            forms[0], forms[1]
        )));
    }
    Ok(SpectralData {
        eigenvalues: eig.values,
        lambda0,
        lambda_min,
        theta_l,
        multiplicity_min,
        c_const,
        q_prime,
    })
}
