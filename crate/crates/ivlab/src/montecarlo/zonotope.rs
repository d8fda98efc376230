//! Zonotope volume by subset determinants.

use itertools::Itertools;
use nalgebra::DMatrix;

/// Volume of the zonotope spanned by the columns of `generators` (a `j x n`
/// matrix with `j <= n`): the sum of `|det|` over all `j`-column subsets.
/// This is exactly the `j`-volume of a box with edge vectors given by the
/// columns, projected onto the row space. Cost grows as `C(n,j)`, so callers
/// cap `n`.
pub fn zonotope_volume(generators: &DMatrix<f64>) -> f64 {
    let j = generators.nrows();
    let n = generators.ncols();
    debug_assert!(j <= n);
    if j == 0 {
        return 1.0;
    }
    (0..n)
        .combinations(j)
        .map(|cols| generators.select_columns(&cols).determinant().abs())
        .sum()
}
