use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{CoverClass, CoverGroup};
use crate::error::{Error, Result};

const ATTEMPTS: usize = 8;

/// Irreducible characters of Γ̃_n computed in floating point.
#[derive(Clone, Debug)]
pub struct NumericTable {
    pub class_sizes: Vec<usize>,
    /// values[row][class].
    pub values: Vec<Vec<Complex64>>,
}

impl NumericTable {
    pub fn degree(&self, row: usize) -> f64 {
        self.values[row][0].re
    }

    /// ⟨χ_a, χ_b⟩ over the whole group.
    pub fn inner_product(&self, a: usize, b: usize) -> Complex64 {
        let total: usize = self.class_sizes.iter().sum();
        let s: Complex64 = (0..self.class_sizes.len())
            .map(|k| self.values[a][k] * self.values[b][k].conj() * self.class_sizes[k] as f64)
            .sum();
        s / total as f64
    }
}

/// M_i[j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}, so that C_i C_j = Σ_k M_i[j][k] C_k.
pub fn structure_constants(group: &mut CoverGroup, classes: &[CoverClass], class_of: &[u32]) -> Vec<DMatrix<f64>> {
    let r = classes.len();
    let mut out = vec![DMatrix::<f64>::zeros(r, r); r];
    for (i, ci) in classes.iter().enumerate() {
        for &x in &ci.members {
            let xinv = group.inverse(group.decode(x));
            for (k, ck) in classes.iter().enumerate() {
                let y = group.mul(xinv, ck.rep);
                let j = class_of[group.encode(y)] as usize;
                out[i][(j, k)] += 1.0;
            }
        }
    }
    out
}

fn null_vector(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let last = svd.singular_values.len() - 1;
    vt.row(last).iter().map(|c| c.conj()).collect()
}

/// Burnside's method: the vectors (|C_k| χ(g_k) / χ(1))_k are the common
/// eigenvectors of the class multiplication matrices. A random combination
/// separates them; it is redrawn when two eigenvalues nearly coincide.
pub fn numeric_character_table(
    group: &mut CoverGroup,
    classes: &[CoverClass],
    class_of: &[u32],
    seed: u64,
) -> Result<NumericTable> {
    let r = classes.len();
    let mats = structure_constants(group, classes, class_of);
    let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    let order: usize = sizes.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let mut m = DMatrix::<f64>::zeros(r, r);
        for mi in &mats {
            let c: f64 = rng.random_range(-1.0..1.0);
            m += mi * c;
        }
        let eig = m.complex_eigenvalues();
        let scale = eig.iter().map(|e| e.norm()).fold(1.0, f64::max);
        let separated = (0..r).all(|a| (a + 1..r).all(|b| (eig[a] - eig[b]).norm() > 1e-7 * scale));
        if !separated {
            continue;
        }
        let mc = m.map(|x| Complex64::new(x, 0.0));
        let mut values = Vec::with_capacity(r);
        for lambda in eig.iter() {
            let shifted = &mc - DMatrix::<Complex64>::identity(r, r) * *lambda;
            let v = null_vector(&shifted);
            let v0 = v[0];
            let omega: Vec<Complex64> = v.iter().map(|x| x / v0).collect();
            let norm: f64 = omega.iter().zip(&sizes).map(|(w, &s)| w.norm_sqr() / s as f64).sum();
            let deg = (order as f64 / norm).sqrt();
            values.push(omega.iter().zip(&sizes).map(|(w, &s)| w * deg / s as f64).collect::<Vec<_>>());
        }
        values.sort_by(|a: &Vec<Complex64>, b| a[0].re.total_cmp(&b[0].re));
        return Ok(NumericTable { class_sizes: sizes, values });
    }
    Err(Error::EigenSeparation(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::builtin;
    use crate::oracle::group::{conjugacy_classes, GammaModel};

    fn table(name: &str, n: usize) -> (NumericTable, usize) {
        let gd = builtin(name).unwrap();
        let mut g = CoverGroup::new(GammaModel::builtin(&gd).unwrap(), n);
        let (classes, class_of) = conjugacy_classes(&mut g);
        (numeric_character_table(&mut g, &classes, &class_of, 7).unwrap(), g.order())
    }

    #[test]
    fn orthonormal_and_complete() {
        for (name, n) in [("trivial", 4), ("z2", 2), ("z3", 2)] {
            let (t, order) = table(name, n);
            let sum: f64 = (0..t.values.len()).map(|a| t.degree(a).powi(2)).sum();
            assert!((sum - order as f64).abs() < 1e-6, "{name}");
            for a in 0..t.values.len() {
                for b in 0..t.values.len() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((t.inner_product(a, b) - want).norm() < 1e-8, "{name} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn double_cover_of_s4_degrees() {
        let (t, _) = table("trivial", 4);
        let mut degs: Vec<i64> = (0..t.values.len()).map(|a| t.degree(a).round() as i64).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 3, 3, 4]);
    }
}
