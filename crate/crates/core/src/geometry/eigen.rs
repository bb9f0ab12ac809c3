//! Cyclic Jacobi eigen-solver for real symmetric 3x3 matrices.

/// Eigenvalues in ascending order with the matching unit eigenvectors
/// (`vectors[k]` belongs to `values[k]`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen {
    pub values: [f64; 3],
    pub vectors: [[f64; 3]; 3],
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
const MAX_SWEEPS: usize = 64;

/// Diagonalizes `m` (upper triangle is authoritative) by plane rotations.
///
/// An off-diagonal entry is annihilated unless it is already negligible
/// against the geometric mean of its two diagonal entries, which keeps small
/// eigenvalues of positive-definite input relatively accurate.
pub fn sym3_eigen(m: &[[f64; 3]; 3]) -> SymEigen {
    let mut a = *m;
    for i in 0..3 {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for &(p, q) in &PAIRS {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            if apq.abs() <= 1e-18 * (a[p][p] * a[q][q]).abs().sqrt() {
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                continue;
            }
            rotated = true;
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = if theta.abs() > 1e150 {
                0.5 / theta
            } else {
                theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            a[p][p] -= t * apq;
            a[q][q] += t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let (arp, arq) = (a[r][p], a[r][q]);
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];

            for row in v.iter_mut() {
                let (vp, vq) = (row[p], row[q]);
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    SymEigen {
        values: order.map(|k| a[k][k]),
        vectors: order.map(|k| [v[0][k], v[1][k], v[2][k]]),
    }
}

/// Ascending eigenvalues of a symmetric 3x3 matrix.
pub fn sym3_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
    sym3_eigen(m).values
}
