//! Measure operator norms restricted to subspaces.
//!
//! The norm of `T` restricted to a subspace `V` is the largest singular value
//! of `T` applied to unit vectors of `V`. Restricting can only shrink the
//! norm, and which subspace is chosen decides how much. This example takes a
//! diagonal matrix, measures its norm on the whole space, on a coordinate
//! plane, and on a slanted plane built by Gram-Schmidt, and shows that
//! linearly dependent spanning vectors are rejected.
//!
//! Run with:
//!
//! ```text
//! cargo run --example restricted_norms
//! ```

use an_lab::numeric::{
    fmt_e, gram_schmidt, operator_norm, restricted_norm, DenseMatrix, SubspaceBasis,
};
use num_complex::Complex64;

fn main() {
    let t = DenseMatrix::diagonal(&[5.0, 3.0, 2.0, 1.0]);
    let norm = operator_norm(&t).expect("the norm exists");
    println!("T = diag(5, 3, 2, 1)");
    println!("  norm on the whole space            {}", fmt_e(norm));

    // The full space as a subspace: restriction changes nothing.
    let full = SubspaceBasis::identity(4);
    let (on_full, _) = restricted_norm(&t, &full).expect("the restriction exists");
    println!("  norm restricted to span(e1..e4)    {}", fmt_e(on_full));

    // A coordinate plane that misses the top eigenvector.
    let mut plane = DenseMatrix::zeros(4, 2);
    plane[(1, 0)] = Complex64::new(1.0, 0.0);
    plane[(2, 1)] = Complex64::new(1.0, 0.0);
    let coordinate = SubspaceBasis::new(plane).expect("coordinate columns are orthonormal");
    let (on_plane, attaining) = restricted_norm(&t, &coordinate).expect("the restriction exists");
    println!("  norm restricted to span(e2, e3)    {}", fmt_e(on_plane));
    println!(
        "  attained at basis coefficients     ({})  i.e. at e2 itself",
        attaining
            .iter()
            .map(|z| format!("{:.3}", z.re))
            .collect::<Vec<_>>()
            .join(", ")
    );

    // A slanted plane: Gram-Schmidt turns a raw spanning set into an
    // orthonormal basis first.
    let mut raw = DenseMatrix::zeros(4, 2);
    raw[(0, 0)] = Complex64::new(1.0, 0.0);
    raw[(1, 0)] = Complex64::new(1.0, 0.0);
    raw[(2, 1)] = Complex64::new(1.0, 0.0);
    raw[(3, 1)] = Complex64::new(1.0, 0.0);
    let slanted = gram_schmidt(&raw).expect("the spanning set is independent");
    let (on_slant, _) = restricted_norm(&t, &slanted).expect("the restriction exists");
    println!(
        "  norm on span(e1+e2, e3+e4)         {}  (this is sqrt((25 + 9) / 2))",
        fmt_e(on_slant)
    );
    assert!(on_plane <= norm && on_slant <= norm);

    // Dependent spanning vectors cannot define a subspace basis.
    let mut dependent = DenseMatrix::zeros(4, 3);
    for (r, c, x) in [
        (0, 0, 1.0),
        (1, 1, 1.0),
        (0, 2, 1.0),
        (1, 2, 1.0), // third column = first + second
    ] {
        dependent[(r, c)] = Complex64::new(x, 0.0);
    }
    match gram_schmidt(&dependent) {
        Err(err) => println!("  dependent spanning set rejected    ({err})"),
        Ok(_) => unreachable!("the third column is a sum of the first two"),
    }
}
