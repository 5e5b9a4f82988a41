//! Irreducible representations of SU(2)³ and branching to the diagonal SU(2).

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, qf, Q};

pub type CMat = DMatrix<Complex64>;

/// V_a ⊗ V_b ⊗ V_c, stored as twice the spins so that labels stay integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub twice: [u32; 3],
}

fn half(t: u32) -> String {
    if t % 2 == 0 {
        (t / 2).to_string()
    } else {
        format!("{t}/2")
    }
}

impl IrrepLabel {
    pub fn new(twice: [u32; 3]) -> Self {
        Self { twice }
    }

    pub fn dim(&self) -> usize {
        self.twice.iter().map(|t| *t as usize + 1).product()
    }

    /// Casimir 6 Σ j(j+1) of the metric with scal = 30.
    pub fn casimir(&self) -> Q {
        self.twice
            .iter()
            .map(|&t| qf(3 * (t as i64) * (t as i64 + 2), 2))
            .sum()
    }

    /// Only these can occur in sections of bundles associated to m.
    pub fn is_admissible(&self) -> bool {
        self.twice.iter().sum::<u32>() % 2 == 0
    }

    pub fn file_stem(&self) -> String {
        format!("{}_{}_{}", self.twice[0], self.twice[1], self.twice[2])
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.twice;
        write!(f, "({}, {}, {})", half(a), half(b), half(c))
    }
}

/// All admissible irreps with Casimir ≤ cutoff, ordered by (Casimir, label).
pub fn enumerate_irreps(cutoff: Q) -> Result<Vec<IrrepLabel>> {
    if cutoff <= q(0) {
        return Err(Error::Config(format!("cutoff must be positive, got {cutoff}")));
    }
    let mut tmax = 0u32;
    while qf(3 * (tmax as i64 + 1) * (tmax as i64 + 3), 2) <= cutoff {
        tmax += 1;
    }
    let mut out = Vec::new();
    for a in 0..=tmax {
        for b in 0..=tmax {
            for c in 0..=tmax {
                let l = IrrepLabel::new([a, b, c]);
                if l.is_admissible() && l.casimir() <= cutoff {
                    out.push(l);
                }
            }
        }
    }
    out.sort_by(|x, y| x.casimir().cmp(&y.casimir()).then(x.cmp(y)));
    Ok(out)
}

/// ρ(e_a) = −i J_a on spin t/2, basis m = j, j−1, ..., −j; [e_a, e_b] = ε_abc e_c.
pub fn spin_generators(t: u32) -> [CMat; 3] {
    let d = t as usize + 1;
    let j = t as f64 / 2.0;
    let mut jp = CMat::zeros(d, d);
    for k in 1..d {
        let m = j - k as f64;
        jp[(k - 1, k)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jm = jp.adjoint();
    let i = Complex64::i();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
    let jy = (&jp - &jm) * (-0.5 * i);
    let jz = CMat::from_fn(d, d, |r, c| {
        if r == c {
            Complex64::new(j - r as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    [jx * -i, jy * -i, jz * -i]
}

/// An element of su(2)³: `x[factor][component]` in the basis e_1, e_2, e_3.
pub type G3 = [[f64; 3]; 3];

/// ρ on V_a ⊗ V_b ⊗ V_c, first factor most significant.
pub struct TripleRep {
    pub label: IrrepLabel,
    gens: [[CMat; 3]; 3],
    dims: [usize; 3],
}

impl TripleRep {
    pub fn new(label: IrrepLabel) -> Self {
        let gens = label.twice.map(spin_generators);
        let dims = label.twice.map(|t| t as usize + 1);
        Self { label, gens, dims }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn rho(&self, x: &G3) -> CMat {
        let n = self.dim();
        let mut out = CMat::zeros(n, n);
        for f in 0..3 {
            let mut m = CMat::zeros(self.dims[f], self.dims[f]);
            for a in 0..3 {
                if x[f][a] != 0.0 {
                    m += &self.gens[f][a] * Complex64::new(x[f][a], 0.0);
                }
            }
            let mats: Vec<CMat> = (0..3)
                .map(|g| if g == f { m.clone() } else { CMat::identity(self.dims[g], self.dims[g]) })
                .collect();
            out += mats[0].kronecker(&mats[1]).kronecker(&mats[2]);
        }
        out
    }

    /// Diagonal weight m₁ + m₂ + m₃ of each basis vector.
    pub fn weights(&self) -> Vec<i32> {
        let mut w = Vec::with_capacity(self.dim());
        for k0 in 0..self.dims[0] {
            for k1 in 0..self.dims[1] {
                for k2 in 0..self.dims[2] {
                    let twice: i32 = [k0, k1, k2]
                        .iter()
                        .zip(self.label.twice)
                        .map(|(k, t)| t as i32 - 2 * *k as i32)
                        .sum();
                    w.push(twice / 2);
                }
            }
        }
        w
    }
}

/// Integer spins contained in V_a ⊗ V_b ⊗ V_c, with multiplicity, by
/// iterated Clebsch–Gordan. Index = spin.
pub fn diagonal_decomposition(label: IrrepLabel) -> Vec<usize> {
    let [a, b, c] = label.twice;
    let mut out = Vec::new();
    let mut j = a.abs_diff(b);
    while j <= a + b {
        let mut s = j.abs_diff(c);
        while s <= j + c {
            if s % 2 == 0 {
                let k = (s / 2) as usize;
                if out.len() <= k {
                    out.resize(k + 1, 0);
                }
                out[k] += 1;
            }
            s += 2;
        }
        j += 2;
    }
    out
}

/// Spins in a weight multiset (integer weights), peeling highest weights.
pub fn spins_from_weights(weights: &[i32]) -> Result<Vec<u32>> {
    let mut w: Vec<i32> = weights.to_vec();
    let mut out = Vec::new();
    while let Some(&top) = w.iter().max() {
        if top < 0 {
            return Err(Error::Geometry("weight multiset is not a character".into()));
        }
        for m in -top..=top {
            let pos = w
                .iter()
                .position(|x| *x == m)
                .ok_or_else(|| Error::Geometry("weight multiset is not a character".into()))?;
            w.swap_remove(pos);
        }
        out.push(top as u32);
    }
    out.sort_unstable();
    Ok(out)
}

/// dim Hom_K(V_label, F) for a fiber given by its K-weights.
pub fn branch_multiplicity(label: IrrepLabel, fiber_weights: &[i32]) -> Result<usize> {
    let dec = diagonal_decomposition(label);
    Ok(spins_from_weights(fiber_weights)?
        .into_iter()
        .map(|s| dec.get(s as usize).copied().unwrap_or(0))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comm(a: &CMat, b: &CMat) -> CMat {
        a * b - b * a
    }

    #[test]
    fn spin_relations() {
        for t in 0..5 {
            let g = spin_generators(t);
            assert!((comm(&g[0], &g[1]) - &g[2]).norm() < 1e-12);
            let cas: CMat = g.iter().map(|x| x * x).sum();
            let j = t as f64 / 2.0;
            assert!((cas + CMat::identity(t as usize + 1, t as usize + 1) * Complex64::new(j * (j + 1.0), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_irreps(qf(1, 2)).unwrap(), vec![IrrepLabel::new([0, 0, 0])]);
        let small = enumerate_irreps(q(30)).unwrap();
        let big = enumerate_irreps(q(60)).unwrap();
        assert!(small.iter().all(|l| big.contains(l)));
        assert_eq!(big.len(), 53);
        assert!(enumerate_irreps(q(0)).is_err());
        assert_eq!(IrrepLabel::new([2, 1, 1]).to_string(), "(1, 1/2, 1/2)");
        assert_eq!(IrrepLabel::new([2, 2, 2]).casimir(), q(36));
    }

    #[test]
    fn clebsch_gordan() {
        assert_eq!(diagonal_decomposition(IrrepLabel::new([0, 0, 0])), vec![1]);
        // 1 ⊗ 1 ⊗ 1 = 0 + 3·1 + 2·2 + 3
        assert_eq!(diagonal_decomposition(IrrepLabel::new([2, 2, 2])), vec![1, 3, 2, 1]);
        assert_eq!(spins_from_weights(&[-1, 0, 1, 0]).unwrap(), vec![0, 1]);
        assert!(spins_from_weights(&[1, 0]).is_err());
    }
}
