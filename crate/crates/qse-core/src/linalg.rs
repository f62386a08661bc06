//! Small fixed-size eigendecomposition helpers shared across modules.
//!
//! nalgebra's `SymmetricEigen` handles self-adjoint complex matrices; the
//! wrappers here add the deterministic ordering and sign conventions the
//! rest of the crate relies on for golden tests.

use nalgebra::{Complex, Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector2, Vector3, Vector4};

pub type C64 = Complex<f64>;

/// Eigenvalues (ascending) and eigenvectors (matching columns) of a 4x4
/// Hermitian matrix. Input is symmetrized first to kill rounding asymmetry.
pub fn herm_eigen4(m: &Matrix4<C64>) -> (Vector4<f64>, Matrix4<C64>) {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let es = SymmetricEigen::new(h);
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&i, &j| es.eigenvalues[i].partial_cmp(&es.eigenvalues[j]).unwrap());
    let mut vals = Vector4::zeros();
    let mut vecs = Matrix4::zeros();
    for (k, &i) in idx.iter().enumerate() {
        vals[k] = es.eigenvalues[i];
        vecs.set_column(k, &es.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Ascending eigenvalues of a 4x4 Hermitian matrix.
pub fn herm_eigvals4(m: &Matrix4<C64>) -> Vector4<f64> {
    herm_eigen4(m).0
}

/// Eigenvalues (ascending) and eigenvectors of a 2x2 Hermitian matrix.
pub fn herm_eigen2(m: &Matrix2<C64>) -> (Vector2<f64>, Matrix2<C64>) {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let es = SymmetricEigen::new(h);
    if es.eigenvalues[0] <= es.eigenvalues[1] {
        (es.eigenvalues, es.eigenvectors)
    } else {
        let vals = Vector2::new(es.eigenvalues[1], es.eigenvalues[0]);
        let mut vecs = Matrix2::zeros();
        vecs.set_column(0, &es.eigenvectors.column(1));
        vecs.set_column(1, &es.eigenvectors.column(0));
        (vals, vecs)
    }
}

/// Deterministic eigenframe of a real symmetric 3x3 matrix.
///
/// Eigenvalues descending; each eigenvector's first component above 1e-12
/// in magnitude is made positive; near-degenerate eigenvalues are ordered
/// by lexicographically larger eigenvector; finally the last column is
/// flipped if needed so det = +1.
pub fn sym_eigen3_frame(q: &Matrix3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
    let s = (q + q.transpose()) * 0.5;
    let es = SymmetricEigen::new(s);
    let scale = es.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tie = 1e-12 * scale.max(1.0);

    let mut pairs: Vec<(f64, Vector3<f64>)> = (0..3)
        .map(|i| {
            (
                es.eigenvalues[i],
                normalize_sign(es.eigenvectors.column(i).into_owned()),
            )
        })
        .collect();
    pairs.sort_by(|a, b| {
        if (a.0 - b.0).abs() <= tie {
            lex_cmp(&b.1, &a.1)
        } else {
            b.0.partial_cmp(&a.0).unwrap()
        }
    });

    let vals = Vector3::new(pairs[0].0, pairs[1].0, pairs[2].0);
    let mut r = Matrix3::from_columns(&[pairs[0].1, pairs[1].1, pairs[2].1]);
    if r.determinant() < 0.0 {
        let c2 = -r.column(2);
        r.set_column(2, &c2);
    }
    (vals, r)
}

fn normalize_sign(mut v: Vector3<f64>) -> Vector3<f64> {
    for k in 0..3 {
        if v[k].abs() > 1e-12 {
            if v[k] < 0.0 {
                v = -v;
            }
            break;
        }
    }
    v
}

pub fn lex_cmp(a: &Vector3<f64>, b: &Vector3<f64>) -> std::cmp::Ordering {
    for k in 0..3 {
        match a[k].partial_cmp(&b[k]).unwrap() {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}
