//! Composition on the circle: unit complex multiplication modulo `±1`, and
//! its lift to second moments and Bingham distributions.

use crate::bingham::{
    covariance, mle_from_covariance, BinghamParams, CovMat2, UnitVec2, TRACE_TOL,
};
use crate::error::{BinghamError, Result};

/// `x ⊕ y = (x1 y1 - x2 y2, x1 y2 + x2 y1)`, renormalized.
pub fn compose(x: &UnitVec2, y: &UnitVec2) -> UnitVec2 {
    let re = x.c1() * y.c1() - x.c2() * y.c2();
    let im = x.c1() * y.c2() + x.c2() * y.c1();
    let norm = re.hypot(im);
    UnitVec2::new_unchecked(re / norm, im / norm)
}

/// Group inverse: the complex conjugate.
pub fn conjugate(x: &UnitVec2) -> UnitVec2 {
    UnitVec2::new_unchecked(x.c1(), -x.c2())
}

/// Second moment of `x ⊕ y` for independent, antipodally symmetric `x`, `y`
/// with second moments `a` and `b`.
pub fn compose_cov(a: &CovMat2, b: &CovMat2) -> Result<CovMat2> {
    for (name, m) in [("a", a), ("b", b)] {
        let t = m.trace();
        if (t - 1.0).abs() > TRACE_TOL {
            return Err(BinghamError::domain(
                "compose_cov",
                format!("argument {name} has trace {t}"),
            ));
        }
    }
    let (a11, a12, a22) = (a.s11(), a.s12(), a.s22());
    let (b11, b12, b22) = (b.s11(), b.s12(), b.s22());
    let c11 = a11 * b11 - 2.0 * a12 * b12 + a22 * b22;
    let c12 = a11 * b12 - a12 * b22 + a12 * b11 - a22 * b12;
    let c22 = a11 * b22 + 2.0 * a12 * b12 + a22 * b11;
    CovMat2::new(c11, c12, c22)
}

/// Bingham approximation of the distribution of `x ⊕ y`, obtained by moment
/// matching through [`compose_cov`].
pub fn compose_dist(p1: &BinghamParams, p2: &BinghamParams) -> Result<BinghamParams> {
    let c = compose_cov(&covariance(p1), &covariance(p2))?;
    mle_from_covariance(&c).map_err(|e| match e {
        BinghamError::ConcentrationOverflow { detail, .. } => {
            BinghamError::overflow("compose_dist", detail)
        }
        other => other,
    })
}
