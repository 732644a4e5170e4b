//! Closed-form eigendecomposition of symmetric 2x2 matrices.

/// Eigen-pairs of `[[a, b], [b, c]]`, eigenvalues ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen2 {
    pub values: [f64; 2],
    /// Unit eigenvectors; `vectors[i]` belongs to `values[i]`.
    pub vectors: [[f64; 2]; 2],
    /// Half the eigenvalue gap, `sqrt(((a - c)/2)^2 + b^2)`.
    pub half_gap: f64,
}

/// Flip the sign so the component of largest magnitude is positive
/// (first component wins ties).
pub fn canonical_sign(v: [f64; 2]) -> [f64; 2] {
    let lead = if v[0].abs() >= v[1].abs() { v[0] } else { v[1] };
    if lead < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Eigendecomposition of `[[a, b], [b, c]]`.
///
/// With equal eigenvalues the basis is the identity. Eigenvectors are sign
/// normalized with [`canonical_sign`].
pub fn sym_eigen2(a: f64, b: f64, c: f64) -> SymEigen2 {
    let mean = 0.5 * (a + c);
    let h = 0.5 * (a - c);
    let r = h.hypot(b);
    if r == 0.0 {
        return SymEigen2 {
            values: [mean, mean],
            vectors: [[1.0, 0.0], [0.0, 1.0]],
            half_gap: 0.0,
        };
    }
    if b == 0.0 {
        return if a < c {
            SymEigen2 {
                values: [a, c],
                vectors: [[1.0, 0.0], [0.0, 1.0]],
                half_gap: r,
            }
        } else {
            SymEigen2 {
                values: [c, a],
                vectors: [[0.0, 1.0], [1.0, 0.0]],
                half_gap: r,
            }
        };
    }
    // The eigenvalue of smaller magnitude goes through the determinant to
    // keep relative accuracy when it is tiny.
    let det = a * c - b * b;
    let (lo, hi) = if mean >= 0.0 {
        let hi = mean + r;
        (det / hi, hi)
    } else {
        let lo = mean - r;
        (lo, det / lo)
    };
    // Major axis at angle phi with tan(2 phi) = 2b / (a - c).
    let phi = 0.5 * b.atan2(h);
    let (s, co) = phi.sin_cos();
    let major = canonical_sign([co, s]);
    let minor = canonical_sign([-s, co]);
    SymEigen2 {
        values: [lo, hi],
        vectors: [minor, major],
        half_gap: r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(a: f64, b: f64, c: f64, v: [f64; 2]) -> [f64; 2] {
        [a * v[0] + b * v[1], b * v[0] + c * v[1]]
    }

    #[test]
    fn diagonal() {
        let e = sym_eigen2(0.1, 0.0, 0.9);
        assert_eq!(e.values, [0.1, 0.9]);
        assert_eq!(e.vectors, [[1.0, 0.0], [0.0, 1.0]]);
        let e = sym_eigen2(-3.0, 0.0, -5.0);
        assert_eq!(e.values, [-5.0, -3.0]);
        assert_eq!(e.vectors, [[0.0, 1.0], [1.0, 0.0]]);
    }

    #[test]
    fn equal_eigenvalues_give_identity() {
        let e = sym_eigen2(0.5, 0.0, 0.5);
        assert_eq!(e.values, [0.5, 0.5]);
        assert_eq!(e.vectors, [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn forty_five_degrees() {
        let e = sym_eigen2(0.5, 0.4, 0.5);
        assert!((e.values[0] - 0.1).abs() < 1e-15);
        assert!((e.values[1] - 0.9).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // up to sign: the two components tie in magnitude
        let [m, n] = e.vectors;
        assert!((m[0] * s - m[1] * s).abs() > 1.0 - 1e-15);
        assert!((n[0] * s + n[1] * s).abs() > 1.0 - 1e-15);
    }

    #[test]
    fn tiny_eigenvalue_keeps_relative_accuracy() {
        // rank-one plus a tiny isotropic part along a rotated frame
        let (w, theta) = (3e-9_f64, 0.7_f64);
        let (s, c) = theta.sin_cos();
        let a = w * c * c + (1.0 - w) * s * s;
        let b = w * c * s - (1.0 - w) * s * c;
        let cc = w * s * s + (1.0 - w) * c * c;
        let e = sym_eigen2(a, b, cc);
        assert!(((e.values[0] - w) / w).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn eigen_pairs_satisfy_definition(a in -50.0..50.0f64, b in -50.0..50.0f64, c in -50.0..50.0f64) {
            let e = sym_eigen2(a, b, c);
            prop_assert!(e.values[0] <= e.values[1]);
            let scale = 1.0 + a.abs() + b.abs() + c.abs();
            for i in 0..2 {
                let v = e.vectors[i];
                prop_assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-14);
                let av = apply(a, b, c, v);
                prop_assert!((av[0] - e.values[i] * v[0]).abs() < 1e-12 * scale);
                prop_assert!((av[1] - e.values[i] * v[1]).abs() < 1e-12 * scale);
            }
            let [m, n] = e.vectors;
            prop_assert!((m[0] * n[0] + m[1] * n[1]).abs() < 1e-15);
        }
    }
}
