use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{vec_norm2, DenseMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Analytic,
    Numeric,
}

/// One eigenpair, tagged with the mode index it was generated for.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub mode: usize,
    pub value: Scalar,
    pub vector: Vec<Scalar>,
    pub residual: Option<f64>,
}

impl EigenPair {
    pub fn new(mode: usize, value: Scalar, vector: Vec<Scalar>) -> Self {
        Self {
            mode,
            value,
            vector,
            residual: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub pairs: Vec<EigenPair>,
    pub provenance: Provenance,
    /// Mesh parameter of the closed form, when there is one.
    pub h: Option<f64>,
    /// Non-fatal conditions met while generating the pairs.
    pub notes: Vec<String>,
}

impl EigenSolution {
    pub fn new(pairs: Vec<EigenPair>, provenance: Provenance) -> Self {
        Self {
            pairs,
            provenance,
            h: None,
            notes: Vec::new(),
        }
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = Some(h);
        self
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Pairs ordered by (real part, imaginary part), ties by mode index.
    pub fn sorted_view(&self) -> Vec<&EigenPair> {
        let mut view: Vec<&EigenPair> = self.pairs.iter().collect();
        view.sort_by(|a, b| {
            a.value
                .re
                .total_cmp(&b.value.re)
                .then(a.value.im.total_cmp(&b.value.im))
                .then(a.mode.cmp(&b.mode))
        });
        view
    }

    pub fn sorted_values(&self) -> Vec<Scalar> {
        self.sorted_view().iter().map(|p| p.value).collect()
    }

    pub fn pair(&self, mode: usize) -> Option<&EigenPair> {
        self.pairs.iter().find(|p| p.mode == mode)
    }

    /// Copy with every eigenvector rescaled to unit Euclidean norm.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.pairs {
            let norm = vec_norm2(&p.vector);
            if norm > 0.0 {
                p.vector.iter_mut().for_each(|z| *z /= norm);
            }
        }
        out
    }

    /// Fills in the scaled residual of every pair against the pencil (A, B).
    pub fn with_residuals(mut self, a: &DenseMatrix, b: &DenseMatrix) -> Result<Self> {
        self.check_vector_lengths(a.cols())?;
        for p in &mut self.pairs {
            p.residual = Some(crate::reference::residual_gevp(a, b, p.value, &p.vector)?);
        }
        Ok(self)
    }

    pub fn max_residual(&self) -> Option<f64> {
        self.pairs
            .iter()
            .filter_map(|p| p.residual)
            .fold(None, |acc, r| Some(acc.map_or(r, |a: f64| a.max(r))))
    }

    pub(crate) fn check_vector_lengths(&self, n: usize) -> Result<()> {
        if self.pairs.iter().any(|p| p.vector.len() != n) {
            return Err(Error::ShapeMismatch(format!("eigenvectors must have length {n}")));
        }
        Ok(())
    }
}
