//! Haar-distributed random rotations.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Draw an `n x n` rotation (orthogonal, determinant +1) from the invariant
/// distribution on the rotation group.
///
/// QR factorization of a standard Gaussian matrix, with the R diagonal forced
/// positive for a unique factorization (this makes Q Haar on the full
/// orthogonal group), then a reflection of the first column when the
/// determinant is negative, which pushes the reflection coset onto the
/// rotation group without disturbing invariance.
pub fn haar_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidInput("rotation dimension must be >= 1".into()));
    }
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for i in 0..n {
        if r[(i, i)] < 0.0 {
            for k in 0..n {
                q[(k, i)] = -q[(k, i)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for k in 0..n {
            q[(k, 0)] = -q[(k, 0)];
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::RngStream;

    #[test]
    fn one_dimensional_rotation_is_identity() {
        let mut rng = RngStream::new(0, 0).rng();
        for _ in 0..20 {
            let q = haar_rotation(1, &mut rng).unwrap();
            assert_eq!(q[(0, 0)], 1.0);
        }
    }

    #[test]
    fn orthogonal_with_unit_determinant() {
        let mut rng = RngStream::new(42, 0).rng();
        for n in 1..=6 {
            for _ in 0..10 {
                let q = haar_rotation(n, &mut rng).unwrap();
                let qtq = q.transpose() * &q;
                let eye = DMatrix::<f64>::identity(n, n);
                assert!((qtq - eye).abs().max() < 1e-10, "n = {n}");
                assert!((q.determinant() - 1.0).abs() < 1e-10, "n = {n}");
            }
        }
    }

    #[test]
    fn reproducible_per_stream() {
        let q1 = haar_rotation(4, &mut RngStream::new(9, 3).rng()).unwrap();
        let q2 = haar_rotation(4, &mut RngStream::new(9, 3).rng()).unwrap();
        assert_eq!(q1, q2);
        let q3 = haar_rotation(4, &mut RngStream::new(9, 4).rng()).unwrap();
        assert_ne!(q1, q3);
    }

    #[test]
    fn zero_dimension_rejected() {
        let mut rng = RngStream::new(0, 0).rng();
        assert!(haar_rotation(0, &mut rng).is_err());
    }
}
