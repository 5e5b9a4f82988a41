//! Bases of Hom_K(V, F): matrices A (dim F × dim V) with σ_F(Z) A = A ρ_V(Z)
//! for all Z in k.
//!
//! A Cartan generator is diagonalized first; invariants are the weight-zero
//! elements of V*⊗F annihilated by the two remaining generators.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::su2::CMat;

const NULL_TOL: f64 = 1e-7;

/// Orthonormal basis of the kernel of `m` (columns). Rows are padded so the
/// SVD returns a full set of right singular vectors.
pub fn null_space(m: &CMat) -> CMat {
    let (r, c) = m.shape();
    if c == 0 {
        return CMat::zeros(0, 0);
    }
    if r == 0 {
        return CMat::identity(c, c);
    }
    let padded = if r < c { m.clone().resize_vertically(c, Complex64::new(0.0, 0.0)) } else { m.clone() };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let smax = svd.singular_values.max().max(1.0);
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|k| svd.singular_values[*k] <= NULL_TOL * smax)
        .collect();
    CMat::from_fn(c, cols.len(), |i, k| vt[(cols[k], i)].conj())
}

/// Hom_K basis for a fiber with K-action `fiber_k` (Cartan generator last)
/// and a representation V with generators `v_k` and diagonal weights `v_weights`
/// of the same Cartan generator (scaled so that weights are integers:
/// ρ(Z₃) = −i√2·diag(w)).
pub fn hom_k_basis(fiber_k: &[CMat], v_k: &[CMat], v_weights: &[i32]) -> Result<Vec<CMat>> {
    let df = fiber_k[2].nrows();
    let dv = v_k[2].nrows();
    // H = iσ(Z₃)/√2 is Hermitian with integer spectrum
    let h: CMat = &fiber_k[2] * Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let eig = SymmetricEigen::new((&h + h.adjoint()) * Complex64::new(0.5, 0.0));
    let w = eig.eigenvectors;
    let mut fw = Vec::with_capacity(df);
    for x in eig.eigenvalues.iter() {
        let r = x.round();
        if (x - r).abs() > 1e-9 {
            return Err(Error::Geometry(format!("non-integral fiber weight {x}")));
        }
        fw.push(r as i32);
    }
    let slots: Vec<(usize, usize)> = (0..df)
        .flat_map(|r| (0..dv).map(move |c| (r, c)))
        .filter(|(r, c)| fw[*r] == v_weights[*c])
        .collect();
    if slots.is_empty() {
        return Ok(Vec::new());
    }
    let rot: Vec<CMat> = fiber_k[..2].iter().map(|k| w.adjoint() * k * &w).collect();
    let n = df * dv;
    let mut m = CMat::zeros(2 * n, slots.len());
    for (s, &(r, c)) in slots.iter().enumerate() {
        for (g, (fk, vk)) in rot.iter().zip(&v_k[..2]).enumerate() {
            // σ'(Z) E_rc − E_rc ρ(Z)
            for i in 0..df {
                m[(g * n + i * dv + c, s)] += fk[(i, r)];
            }
            for j in 0..dv {
                m[(g * n + r * dv + j, s)] -= vk[(c, j)];
            }
        }
    }
    let ns = null_space(&m);
    Ok((0..ns.ncols())
        .map(|k| {
            let mut a = CMat::zeros(df, dv);
            for (s, &(r, c)) in slots.iter().enumerate() {
                a[(r, c)] = ns[(s, k)];
            }
            &w * a
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_and_empty() {
        let m = CMat::from_row_slice(1, 3, &[1.0, 1.0, 0.0].map(|x| Complex64::new(x, 0.0)));
        let n = null_space(&m);
        assert_eq!(n.ncols(), 2);
        assert!((&m * &n).norm() < 1e-12);
        assert_eq!(null_space(&CMat::zeros(0, 4)).ncols(), 4);
    }
}
