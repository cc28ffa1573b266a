use std::collections::HashMap;
use std::sync::Arc;

use super::scalar::FiniteField;
use crate::budget::{Budget, Meter};
use crate::cat::{FinCategory, MorId, ObjId, RawCategory};
use crate::error::Result;

/// A `rows × cols` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: FiniteField> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut m = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let x = &mut m.data[i * other.cols + j];
                    *x = *x + a * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| c * a).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Rows separated by `;`, entries by `,`.
    pub fn label(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                r.join(",")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// Matrices over `F` with objects the dimensions `0..=d`; a morphism
/// `m → n` is an `n × m` matrix.
#[derive(Debug, Clone)]
pub struct MatrixCategory<F: FiniteField> {
    pub category: Arc<FinCategory>,
    pub max_dim: usize,
    matrices: Vec<Matrix<F>>,
    index: HashMap<Matrix<F>, MorId>,
}

impl<F: FiniteField> MatrixCategory<F> {
    pub fn dim(&self, x: ObjId) -> usize {
        self.category.object_name(x).parse().expect("dimension object")
    }

    pub fn object(&self, dim: usize) -> ObjId {
        self.category.object_id(&dim.to_string()).expect("dimension in range")
    }

    pub fn matrix(&self, m: MorId) -> &Matrix<F> {
        &self.matrices[m.index()]
    }

    pub fn morphism(&self, m: &Matrix<F>) -> Option<MorId> {
        self.index.get(m).copied()
    }

    pub fn zero(&self, src: usize, tgt: usize) -> MorId {
        self.index[&Matrix::zero(tgt, src)]
    }
}

fn all_matrices<F: FiniteField>(rows: usize, cols: usize) -> Vec<Matrix<F>> {
    let elems = F::elements();
    let n = rows * cols;
    let total = elems.len().pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut data = vec![F::zero(); n];
            for x in data.iter_mut().rev() {
                *x = elems[code % elems.len()];
                code /= elems.len();
            }
            Matrix { rows, cols, data }
        })
        .collect()
}

pub fn matrix_category<F: FiniteField>(max_dim: usize, budget: &Budget) -> Result<MatrixCategory<F>> {
    let mut meter = Meter::new(budget.candidates, "matrices");
    let mut raw = RawCategory::new(format!("Mat({},{max_dim})", F::ring_name()));
    for n in 0..=max_dim {
        raw.add_object(n.to_string());
    }
    let mut mats: Vec<Matrix<F>> = Vec::new();
    for m in 0..=max_dim {
        for n in 0..=max_dim {
            let all = all_matrices::<F>(n, m);
            meter.tick(all.len() as u64)?;
            for a in all {
                raw.add_morphism(format!("{m}->{n}:{}", a.label()), m, n);
                mats.push(a);
            }
        }
    }
    let raw_index: HashMap<Matrix<F>, usize> = mats.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
    raw.identities = (0..=max_dim).map(|n| raw_index[&Matrix::identity(n)]).collect();
    let (cat, _, mor_new) = raw.build_indexed(budget, |g, f| raw_index.get(&mats[g].mul(&mats[f])).copied())?;
    let mut matrices = vec![Matrix::zero(0, 0); mats.len()];
    let mut index = HashMap::with_capacity(mats.len());
    for (r, a) in mats.into_iter().enumerate() {
        index.insert(a.clone(), mor_new[r]);
        matrices[mor_new[r].index()] = a;
    }
    Ok(MatrixCategory {
        category: Arc::new(cat),
        max_dim,
        matrices,
        index,
    })
}
