//! Unitaries `exp(iH)` for Hermitian generators with sector structure.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::Result;
use crate::fock::{decode, Block, ModeOperator, TruncationSpec};
use crate::scalar::{cis, czero, Real};

/// `exp(iH)` for a Hermitian `h`, via its eigendecomposition.
pub fn exp_i_hermitian<T: Real>(h: DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let n = h.nrows();
    if n == 1 {
        return DMatrix::from_element(1, 1, cis(h[(0, 0)].re));
    }
    let eig = SymmetricEigen::new(h);
    let v = eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = cis(lambda);
        scaled.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    scaled * v.adjoint()
}

/// Off-diagonal entry `H[row, col] = value` (and its conjugate at `[col, row]`).
pub(crate) struct Coupling<T: Real> {
    pub row: usize,
    pub col: usize,
    pub value: Complex<T>,
}

/// Builds `exp(iH)` block by block.
///
/// `sector` labels every basis state; couplings must stay inside a sector, so
/// elements between sectors of the result are exactly zero.
pub(crate) fn sector_unitary<T: Real>(
    num_modes: usize,
    trunc: TruncationSpec,
    sector: impl Fn(&[usize]) -> i64,
    couplings: &[Coupling<T>],
) -> Result<ModeOperator<T>> {
    let d = trunc.local_dim();
    let dim = trunc.dim(num_modes);
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut label = vec![0i64; dim];
    for (i, slot) in label.iter_mut().enumerate() {
        *slot = sector(&decode(i, num_modes, d));
        groups.entry(*slot).or_default().push(i);
    }
    let mut position = vec![0usize; dim];
    for indices in groups.values() {
        for (p, &i) in indices.iter().enumerate() {
            position[i] = p;
        }
    }
    let mut hams: BTreeMap<i64, DMatrix<Complex<T>>> =
        groups.iter().map(|(&k, idx)| (k, DMatrix::from_element(idx.len(), idx.len(), czero()))).collect();
    for c in couplings {
        let key = label[c.row];
        assert_eq!(key, label[c.col], "coupling crosses sectors");
        let h = hams.get_mut(&key).expect("sector present");
        let (r, s) = (position[c.row], position[c.col]);
        h[(r, s)] += c.value;
        h[(s, r)] += c.value.conj();
    }
    let blocks = groups
        .into_iter()
        .map(|(k, indices)| {
            let h = hams.remove(&k).expect("sector present");
            Block::new(indices, exp_i_hermitian(h))
        })
        .collect::<Result<Vec<_>>>()?;
    ModeOperator::from_blocks(num_modes, trunc, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cone;

    // Taylor series of exp(iH), summed until the terms underflow.
    fn taylor_exp_i(h: &DMatrix<Complex<f64>>) -> DMatrix<Complex<f64>> {
        let n = h.nrows();
        let ih = h * Complex::new(0.0, 1.0);
        let mut term = DMatrix::<Complex<f64>>::identity(n, n);
        let mut sum = term.clone();
        for k in 1..200 {
            term = &term * &ih / Complex::new(k as f64, 0.0);
            sum += &term;
            if term.camax() < 1e-18 {
                break;
            }
        }
        sum
    }

    #[test]
    fn matches_taylor_series() {
        let h = DMatrix::from_row_slice(
            3,
            3,
            &[
                Complex::new(0.3, 0.0),
                Complex::new(0.2, -0.5),
                Complex::new(0.0, 0.1),
                Complex::new(0.2, 0.5),
                Complex::new(-0.7, 0.0),
                Complex::new(0.4, 0.0),
                Complex::new(0.0, -0.1),
                Complex::new(0.4, 0.0),
                Complex::new(0.1, 0.0),
            ],
        );
        let u = exp_i_hermitian(h.clone());
        assert!((u - taylor_exp_i(&h)).camax() < 1e-13);
    }

    #[test]
    fn scalar_block() {
        let u = exp_i_hermitian(DMatrix::from_element(1, 1, Complex::new(0.5f64, 0.0)));
        assert!((u[(0, 0)] - Complex::new(0.5f64.cos(), 0.5f64.sin())).norm() < 1e-15);
    }

    #[test]
    fn sectors_stay_decoupled() {
        let t = TruncationSpec::with_n_max(3).unwrap();
        // hop between |0⟩ and |2⟩ only
        let couplings = [Coupling { row: 2, col: 0, value: Complex::new(0.8f64, 0.0) }];
        let u = sector_unitary(1, t, |n| (n[0] % 2) as i64, &couplings).unwrap();
        let dense = u.to_dense();
        assert_eq!(dense[(1, 0)], czero());
        assert_eq!(dense[(3, 3)], cone());
        assert!((dense[(0, 0)].re - 0.8f64.cos()).abs() < 1e-14);
        assert!((dense[(2, 0)].im - 0.8f64.sin()).abs() < 1e-14);
        assert!(u.unitarity_defect() < 1e-14);
    }
}
