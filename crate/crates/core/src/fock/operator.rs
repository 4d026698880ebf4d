//! Linear operators on truncated multi-mode spaces.
//!
//! An operator is stored as a set of dense blocks over disjoint groups of
//! basis indices that together cover the whole space. Matrix elements between
//! different groups are zero by construction, which is how number-conserving
//! unitaries keep their sector structure exact. A plain dense operator is the
//! single-block case.

use nalgebra::{Complex, DMatrix, DVector};

use super::basis::{self, TruncationSpec};
use super::state::FockState;
use crate::error::{Result, SimError};
use crate::scalar::{cone, czero, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct Block<T: Real> {
    indices: Vec<usize>,
    matrix: DMatrix<Complex<T>>,
}

impl<T: Real> Block<T> {
    pub fn new(indices: Vec<usize>, matrix: DMatrix<Complex<T>>) -> Result<Self> {
        if matrix.nrows() != indices.len() || matrix.ncols() != indices.len() {
            return Err(SimError::InvalidParameter(format!(
                "block over {} indices has a {}x{} matrix",
                indices.len(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { indices, matrix })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    fn apply_gathered(&self, src: &[Complex<T>], dst: &mut [Complex<T>]) {
        for (row, &i) in self.indices.iter().enumerate() {
            let mut acc = czero();
            for (col, &j) in self.indices.iter().enumerate() {
                acc += self.matrix[(row, col)] * src[j];
            }
            dst[i] = acc;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator<T: Real> {
    num_modes: usize,
    trunc: TruncationSpec,
    blocks: Vec<Block<T>>,
}

impl<T: Real> ModeOperator<T> {
    /// Block operator; the blocks' index sets must partition the space.
    pub fn from_blocks(num_modes: usize, trunc: TruncationSpec, blocks: Vec<Block<T>>) -> Result<Self> {
        let dim = trunc.dim(num_modes);
        let mut seen = vec![false; dim];
        for &i in blocks.iter().flat_map(|b| b.indices.iter()) {
            if i >= dim || seen[i] {
                return Err(SimError::InvalidParameter(format!("block index {i} out of range or repeated")));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(SimError::InvalidParameter("blocks do not cover the whole space".into()));
        }
        Ok(Self { num_modes, trunc, blocks })
    }

    pub fn from_dense(num_modes: usize, trunc: TruncationSpec, matrix: DMatrix<Complex<T>>) -> Result<Self> {
        let dim = trunc.dim(num_modes);
        let block = Block::new((0..dim).collect(), matrix)?;
        Self::from_blocks(num_modes, trunc, vec![block])
    }

    pub fn identity(num_modes: usize, trunc: TruncationSpec) -> Self {
        let blocks = (0..trunc.dim(num_modes))
            .map(|i| Block { indices: vec![i], matrix: DMatrix::from_element(1, 1, cone()) })
            .collect();
        Self { num_modes, trunc, blocks }
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn trunc(&self) -> TruncationSpec {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.trunc.dim(self.num_modes)
    }

    pub fn blocks(&self) -> &[Block<T>] {
        &self.blocks
    }

    pub fn to_dense(&self) -> DMatrix<Complex<T>> {
        let mut out = DMatrix::from_element(self.dim(), self.dim(), czero());
        for b in &self.blocks {
            for (r, &i) in b.indices.iter().enumerate() {
                for (c, &j) in b.indices.iter().enumerate() {
                    out[(i, j)] = b.matrix[(r, c)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let blocks =
            self.blocks.iter().map(|b| Block { indices: b.indices.clone(), matrix: b.matrix.adjoint() }).collect();
        Self { num_modes: self.num_modes, trunc: self.trunc, blocks }
    }

    /// `‖U†U − I‖_max`, evaluated block by block.
    pub fn unitarity_defect(&self) -> T {
        self.blocks.iter().fold(T::zero(), |worst, b| {
            let n = b.indices.len();
            let gram = b.matrix.adjoint() * &b.matrix;
            let mut w = worst;
            for r in 0..n {
                for c in 0..n {
                    let target = if r == c { cone() } else { czero() };
                    w = w.max((gram[(r, c)] - target).norm_sqr().sqrt());
                }
            }
            w
        })
    }

    /// Dense product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_same_space(other.num_modes, other.trunc)?;
        Self::from_dense(self.num_modes, self.trunc, self.to_dense() * other.to_dense())
    }

    /// Matrix-vector product on the operator's full space.
    pub fn apply(&self, state: &FockState<T>) -> Result<FockState<T>> {
        self.ensure_same_space(state.num_modes(), state.trunc())?;
        let src = state.amplitudes().as_slice();
        let mut dst = vec![czero(); src.len()];
        for b in &self.blocks {
            b.apply_gathered(src, &mut dst);
        }
        FockState::from_amplitudes(self.num_modes, self.trunc, DVector::from_vec(dst))
    }

    /// Acts on `target_modes` of a larger state, identity elsewhere.
    ///
    /// Equivalent to `self.embed(target_modes, state.num_modes())?.apply(state)`
    /// without materializing the embedded matrix.
    pub fn apply_on_modes(&self, state: &FockState<T>, target_modes: &[usize]) -> Result<FockState<T>> {
        self.trunc.ensure_same(&state.trunc())?;
        self.check_targets(target_modes, state.num_modes())?;
        let d = self.trunc.local_dim();
        let total = state.num_modes();
        let local = basis::sub_offsets(target_modes, total, d);
        let rest_modes = basis::complement(target_modes, total);
        let rest = basis::sub_offsets(&rest_modes, total, d);

        let src = state.amplitudes();
        let mut out = vec![czero(); src.len()];
        let mut gathered = vec![czero(); local.len()];
        let mut result = vec![czero(); local.len()];
        for &base in &rest {
            for (g, &off) in gathered.iter_mut().zip(&local) {
                *g = src[base + off];
            }
            for b in &self.blocks {
                b.apply_gathered(&gathered, &mut result);
            }
            for (&r, &off) in result.iter().zip(&local) {
                out[base + off] = r;
            }
        }
        FockState::from_amplitudes(total, self.trunc, DVector::from_vec(out))
    }

    /// Lifts the operator onto `total_modes` modes, acting on `target_modes`.
    pub fn embed(&self, target_modes: &[usize], total_modes: usize) -> Result<Self> {
        self.check_targets(target_modes, total_modes)?;
        let d = self.trunc.local_dim();
        let local = basis::sub_offsets(target_modes, total_modes, d);
        let rest = basis::sub_offsets(&basis::complement(target_modes, total_modes), total_modes, d);
        let mut blocks = Vec::with_capacity(rest.len() * self.blocks.len());
        for &base in &rest {
            for b in &self.blocks {
                blocks.push(Block {
                    indices: b.indices.iter().map(|&i| base + local[i]).collect(),
                    matrix: b.matrix.clone(),
                });
            }
        }
        Ok(Self { num_modes: total_modes, trunc: self.trunc, blocks })
    }

    fn check_targets(&self, target_modes: &[usize], total_modes: usize) -> Result<()> {
        basis::validate_modes(target_modes, total_modes)?;
        if target_modes.len() != self.num_modes {
            return Err(SimError::ShapeMismatch { expected: self.num_modes, found: target_modes.len() });
        }
        Ok(())
    }

    fn ensure_same_space(&self, num_modes: usize, trunc: TruncationSpec) -> Result<()> {
        self.trunc.ensure_same(&trunc)?;
        if num_modes != self.num_modes {
            return Err(SimError::ShapeMismatch { expected: self.num_modes, found: num_modes });
        }
        Ok(())
    }
}

/// Single-mode annihilation operator `â` (dense).
pub fn annihilation<T: Real>(trunc: TruncationSpec) -> ModeOperator<T> {
    let d = trunc.local_dim();
    let mut m = DMatrix::from_element(d, d, czero());
    for n in 1..d {
        m[(n - 1, n)] = Complex::new(crate::scalar::from_usize::<T>(n).sqrt(), T::zero());
    }
    ModeOperator::from_dense(1, trunc, m).expect("square matrix of the single-mode dimension")
}
