//! Exact algebra over the integers: vector partitions, the power-sum basis of
//! MacMahon symmetric functions, sparse Laurent polynomials and tensors.

use std::sync::OnceLock;

mod laurent;
mod macmahon;
mod tensor;
mod vector;

pub use laurent::{Exponents, LaurentPolynomial};
pub use macmahon::{truncation_variables, MacMahonElement};
pub use tensor::{TensorElement, TripleTensor};
pub use vector::{
    vp_binomial, vp_canonicalize, vp_enumerate, PartMode, VectorPartition, VectorVec,
};

/// Exact coefficient type. All arithmetic on it is checked; overflow panics
/// rather than wrapping.
pub type Coeff = i128;

#[inline]
pub(crate) fn c_add(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow in addition")
}

#[inline]
pub(crate) fn c_mul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b)
        .expect("coefficient overflow in multiplication")
}

/// Binomial coefficient with the combinatorial convention: zero whenever
/// `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> Coeff {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    if n < PASCAL_ROWS as i64 {
        return pascal()[n as usize][k as usize] as Coeff;
    }
    let k = k.min(n - k);
    let mut acc: Coeff = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = c_mul(acc, (n - i) as Coeff) / (i + 1) as Coeff;
    }
    acc
}

const PASCAL_ROWS: usize = 67;

fn pascal() -> &'static [Vec<u64>] {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(PASCAL_ROWS);
        for n in 0..PASCAL_ROWS {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

/// `(-1)^k`.
#[inline]
pub fn sign(k: i64) -> Coeff {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
