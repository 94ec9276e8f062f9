//! Fixed-size complex matrix helpers for the per-frequency resolvent solves.

use num_complex::Complex64 as C64;

pub type Mat2 = [[C64; 2]; 2];
pub type Mat3 = [[C64; 3]; 3];

pub fn det2(m: &Mat2) -> C64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn det3(m: &Mat3) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Analytic inverse; `None` when the determinant vanishes.
pub fn inv2(m: &Mat2) -> Option<Mat2> {
    let d = det2(m);
    if d == C64::new(0.0, 0.0) || !d.is_finite() {
        return None;
    }
    Some([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn inv3(m: &Mat3) -> Option<Mat3> {
    let mut a = *m;
    let mut inv = identity::<3>();
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for k in 0..3 {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for row in 0..3 {
            if row == col {
                continue;
            }
            let f = a[row][col];
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..3 {
                let (ak, ik) = (a[col][k], inv[col][k]);
                a[row][k] -= f * ak;
                inv[row][k] -= f * ik;
            }
        }
    }
    if inv.iter().flatten().all(|z| z.is_finite()) {
        Some(inv)
    } else {
        None
    }
}

pub fn identity<const N: usize>() -> [[C64; N]; N] {
    let mut m = [[C64::new(0.0, 0.0); N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    m
}

/// Infinity norm (max absolute row sum).
pub fn norm_inf<const N: usize>(m: &[[C64; N]; N]) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `(-i omega) I - a` for a real drift matrix `a`.
pub fn resolvent_operator<const N: usize>(a: &[[f64; N]; N], omega: f64) -> [[C64; N]; N] {
    let mut m = [[C64::new(0.0, 0.0); N]; N];
    for i in 0..N {
        for j in 0..N {
            m[i][j] = C64::new(-a[i][j], 0.0);
        }
        m[i][i] += C64::new(0.0, -omega);
    }
    m
}

/// `g * d * g^H` for a real symmetric `d`.
pub fn sandwich<const N: usize>(g: &[[C64; N]; N], d: &[[f64; N]; N]) -> [[C64; N]; N] {
    let mut gd = [[C64::new(0.0, 0.0); N]; N];
    for i in 0..N {
        for k in 0..N {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..N {
                acc += g[i][j] * d[j][k];
            }
            gd[i][k] = acc;
        }
    }
    let mut out = [[C64::new(0.0, 0.0); N]; N];
    for i in 0..N {
        for l in 0..N {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..N {
                acc += gd[i][k] * g[l][k].conj();
            }
            out[i][l] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
        let mut out = [[c(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    #[test]
    fn inv3_needs_pivoting() {
        let m = [
            [c(0.0, 0.0), c(1.0, 2.0), c(3.0, 0.0)],
            [c(4.0, -1.0), c(0.0, 0.0), c(1.0, 0.0)],
            [c(2.0, 0.0), c(-1.0, 1.0), c(0.5, 0.0)],
        ];
        let inv = inv3(&m).unwrap();
        let p = mul3(&m, &inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p[i][j] - c(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_matrices_have_no_inverse() {
        let m = [
            [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)],
            [c(2.0, 0.0), c(4.0, 0.0), c(6.0, 0.0)],
            [c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)],
        ];
        assert!(inv3(&m).is_none() || norm_inf(&inv3(&m).unwrap()) > 1e14);
        assert!(inv2(&[[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]]).is_none());
    }

    #[test]
    fn det3_matches_cofactor_of_triangular() {
        let m = [
            [c(2.0, 0.0), c(5.0, 1.0), c(-1.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 3.0), c(7.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)],
        ];
        assert_eq!(det3(&m), c(0.0, 24.0));
    }
}
