//! Relation between the Levi-Civita curvature R and the canonical Hermitian
//! curvature R̄ of a nearly Kähler 6-manifold with scal = 30, plus a sampler
//! of admissible R̄.

use num_traits::Zero;
use rand::Rng;

use super::tensor::CurvTensor;
use crate::error::{Error, Result};
use crate::fiber::forms::{FiberForm, DIM};
use crate::fiber::structure::SU3Structure;
use crate::fiber::types::{label_basis_forms, project_form, TypeLabel};
use crate::linalg::{q, qf, Q, QMat};

/// C = R − R̄:
/// −¼ g(Y,W)g(X,Z) + ¼ g(X,Y)g(Z,W) + ¾ g(Y,JW)g(JX,Z) − ¾ g(Y,JX)g(JW,Z) − ½ g(X,JW)g(JY,Z).
pub fn correction_tensor(s: &SU3Structure) -> CurvTensor {
    let j = s.j();
    let d = |a: usize, b: usize| if a == b { q(1) } else { Q::zero() };
    // g(a, J b) = J[a][b]
    let gj = |a: usize, b: usize| j.entry(a, b);
    CurvTensor::from_fn(|w, x, y, z| {
        qf(-1, 4) * d(y, w) * d(x, z) + qf(1, 4) * d(x, y) * d(z, w) + qf(3, 4) * gj(y, w) * gj(z, x)
            - qf(3, 4) * gj(y, x) * gj(z, w)
            - qf(1, 2) * gj(x, w) * gj(z, y)
    })
}

/// Checks that ℛ̄ is a symmetric endomorphism of Λ² supported on Λ^{(1,1)}_0.
pub fn check_hermitian_type(rbar: &CurvTensor, s: &SU3Structure) -> Result<()> {
    rbar.check_pair_symmetries()?;
    let op = rbar.operator_matrix();
    for n in 0..15 {
        let col = FiberForm::from_coeffs(2, op.column(n));
        let p = project_form(&col, TypeLabel::L2Primitive11, s)?;
        if p != col {
            return Err(Error::SymmetryViolation(format!(
                "curvature operator leaves Λ^(1,1)_0 on basis 2-form {n}"
            )));
        }
    }
    Ok(())
}

/// R = R̄ + C. The input must have pair symmetries and be of (1,1)₀ type; the
/// output must satisfy all curvature symmetries, which constrains the
/// Bianchi defect of R̄ to cancel that of C.
pub fn gray_relation(rbar: &CurvTensor, s: &SU3Structure) -> Result<CurvTensor> {
    check_hermitian_type(rbar, s)?;
    let r = rbar + &correction_tensor(s);
    r.check_curvature_symmetries()?;
    Ok(r)
}

fn two_form_value(f: &FiberForm, i: usize, j: usize) -> Q {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => f.coeff(&[i, j]),
        std::cmp::Ordering::Greater => -f.coeff(&[j, i]),
        std::cmp::Ordering::Equal => Q::zero(),
    }
}

/// Affine space of admissible R̄: ℛ̄ ∈ Sym(Λ^{(1,1)}_0) with b(R̄) = −b(C).
pub struct RbarSpace {
    particular: CurvTensor,
    directions: Vec<CurvTensor>,
}

impl RbarSpace {
    pub fn new(s: &SU3Structure) -> Result<Self> {
        let alpha = label_basis_forms(TypeLabel::L2Primitive11, s)?;
        let n = alpha.len();
        let mut gens = Vec::new();
        for a in 0..n {
            for b in a..n {
                gens.push(CurvTensor::from_fn(|i, j, k, l| {
                    let ab = two_form_value(&alpha[a], i, j) * two_form_value(&alpha[b], k, l);
                    if a == b {
                        ab
                    } else {
                        ab + two_form_value(&alpha[b], i, j) * two_form_value(&alpha[a], k, l)
                    }
                }));
            }
        }
        let defects: Vec<Vec<Q>> = gens.iter().map(|g| g.bianchi_defect().components().to_vec()).collect();
        let m = QMat::from_columns(DIM.pow(4), &defects);
        let target: Vec<Q> = correction_tensor(s)
            .bianchi_defect()
            .components()
            .iter()
            .map(|x| -*x)
            .collect();
        let x = m
            .solve(&target)
            .ok_or_else(|| Error::ConstraintViolation("no admissible canonical curvature".into()))?;
        let combine = |coef: &[Q]| {
            let mut t = CurvTensor::zero();
            for (c, g) in coef.iter().zip(&gens) {
                if !c.is_zero() {
                    t = &t + &g.scale(*c);
                }
            }
            t
        };
        let particular = combine(&x);
        let directions = m.nullspace().iter().map(|v| combine(v)).collect();
        Ok(Self {
            particular,
            directions,
        })
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn particular(&self) -> &CurvTensor {
        &self.particular
    }

    /// A random admissible R̄ with small integer coordinates along the
    /// homogeneous directions.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> CurvTensor {
        let mut t = self.particular.clone();
        for d in &self.directions {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                t = &t + &d.scale(q(c));
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn correction_alone() {
        let s = SU3Structure::standard();
        let c = correction_tensor(&s);
        c.check_pair_symmetries().unwrap();
        assert_eq!(c.ricci(), QMat::identity(6));
        assert!(!c.satisfies_bianchi());
    }

    #[test]
    fn admissible_samples() {
        let s = SU3Structure::standard();
        let space = RbarSpace::new(&s).unwrap();
        assert_eq!(space.dim(), 27);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let rbar = space.sample(&mut rng);
            let r = gray_relation(&rbar, &s).unwrap();
            assert_eq!(rbar.ricci(), QMat::identity(6).scale(q(4)));
            assert_eq!(r.ricci(), QMat::identity(6).scale(q(5)));
        }
        assert!(gray_relation(&CurvTensor::zero(), &s).is_err());
    }
}
