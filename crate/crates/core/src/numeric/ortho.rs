use super::field::Vec3;
use crate::error::{Error, Result};

const DEGENERATE_NORM: f64 = 1e-12;

/// Gram-Schmidt on the first two vectors; the third is replaced by their
/// cross product, so the result is orthonormal and right-handed.
pub fn orthonormalize(frame: [Vec3; 3]) -> Result<[Vec3; 3]> {
    let [v1, v2, _] = frame;
    let n1 = v1.norm();
    if n1 < DEGENERATE_NORM {
        return Err(Error::DegenerateFrame("first vector vanishes"));
    }
    let e1 = v1 / n1;
    let w = v2 - e1 * e1.dot(&v2);
    let n2 = w.norm();
    if n2 < DEGENERATE_NORM {
        return Err(Error::DegenerateFrame("second vector is parallel to the first"));
    }
    let e2 = w / n2;
    Ok([e1, e2, e1.cross(&e2)])
}
