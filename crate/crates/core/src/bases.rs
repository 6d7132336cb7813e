//! Chromatic bases of width-2 MacMahon functions.
//!
//! A family `(n, w) ↦ G_{(n,w)}` of connected graphs on `n` vertices with
//! total weight `w` gives one graph `G_Λ = ⊔ G_{λ_i}` per vector partition.
//! Its chromatic functions form a basis exactly when the transition matrix
//! to power sums is invertible; at each multidegree it is triangular in the
//! length-then-lex order.

use std::fmt;

use crate::algebra::{vp_enumerate, Coeff, PartMode, VectorPartition, VectorVec};
use crate::chromatic::cmf;
use crate::error::{Error, Result};
use crate::graphs::WeightedGraph;

/// Star on `n` vertices centred at vertex 0, leaves of weight 1 and centre
/// of weight `w - n + 1`.
pub fn star_family(n: usize, w: u32) -> Result<WeightedGraph> {
    if n == 0 || (w as usize) < n {
        return Err(Error::InvalidParameter(format!(
            "no star on {n} vertices has total weight {w}"
        )));
    }
    let mut weights = vec![1u32; n];
    weights[0] = w - n as u32 + 1;
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    WeightedGraph::with_scalar_weights(&weights, &edges)
}

/// Transition matrix at a fixed multidegree: `entries[i][j]` is the
/// coefficient of `p_{partitions[j]}` in `cmf(G_{partitions[i]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMatrix {
    pub partitions: Vec<VectorPartition>,
    pub entries: Vec<Vec<Coeff>>,
}

/// Partitions of `u` whose every part `(n_i, w_i)` has `w_i ≥ n_i ≥ 1`, so
/// that some graph with positive integer weights has that bitype. Sorted by
/// length, then lexicographically.
pub fn realizable_partitions(u: (usize, u32)) -> Vec<VectorPartition> {
    if u == (0, 0) {
        return vec![VectorPartition::empty(2)];
    }
    if u.0 == 0 || u.1 == 0 {
        return Vec::new();
    }
    let mut out: Vec<_> = vp_enumerate(&VectorVec::from([u.0 as u32, u.1]), PartMode::Positive)
        .expect("nonzero target")
        .into_iter()
        .filter(|l| l.parts().iter().all(|p| p.coords()[1] >= p.coords()[0]))
        .collect();
    out.sort_by(|a, b| a.length_lex_cmp(b));
    out
}

/// Builds the transition matrix of `family` at multidegree `u = (N, W)`.
pub fn basis_matrix<F>(family: F, u: (usize, u32)) -> Result<BasisMatrix>
where
    F: Fn(usize, u32) -> Result<WeightedGraph>,
{
    let partitions = realizable_partitions(u);
    let mut entries = Vec::with_capacity(partitions.len());
    for lambda in &partitions {
        let mut g = WeightedGraph::empty(1);
        for part in lambda.parts() {
            let (n, w) = (part.coords()[0] as usize, part.coords()[1]);
            let h = family(n, w)?;
            if h.r() != 1 || h.n() != n || h.total_weight().coords() != [w] {
                return Err(Error::InvalidParameter(format!(
                    "family graph for ({n},{w}) has the wrong grade"
                )));
            }
            if h.num_components() != 1 {
                return Err(Error::InvalidParameter(format!(
                    "family graph for ({n},{w}) is disconnected"
                )));
            }
            g = g.disjoint_union(&h)?;
        }
        let x = cmf(&g)?;
        entries.push(partitions.iter().map(|m| x.coeff(m)).collect());
    }
    Ok(BasisMatrix {
        partitions,
        entries,
    })
}

/// True iff the square matrix is upper or lower triangular with every
/// diagonal entry equal to ±1.
pub fn check_chromatic_basis(matrix: &[Vec<Coeff>]) -> Result<bool> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquare);
    }
    if (0..n).any(|i| matrix[i][i].abs() != 1) {
        return Ok(false);
    }
    let upper = (0..n).all(|i| (0..i).all(|j| matrix[i][j] == 0));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| matrix[i][j] == 0));
    Ok(upper || lower)
}

impl fmt::Display for BasisMatrix {
    /// One line per row: the partition, then the entries, tab-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lambda, row) in self.partitions.iter().zip(&self.entries) {
            write!(f, "{lambda}")?;
            for c in row {
                write!(f, "\t{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vp_canonicalize;

    fn vp(parts: &[[u32; 2]]) -> VectorPartition {
        vp_canonicalize(parts.iter().map(|&p| VectorVec::from(p)).collect()).unwrap()
    }

    #[test]
    fn star_examples() {
        assert_eq!(
            star_family(1, 4).unwrap(),
            WeightedGraph::with_scalar_weights(&[4], &[]).unwrap()
        );
        assert_eq!(
            star_family(3, 5).unwrap(),
            WeightedGraph::with_scalar_weights(&[3, 1, 1], &[(0, 1), (0, 2)]).unwrap()
        );
        assert!(star_family(3, 2).is_err());
        assert!(star_family(0, 2).is_err());
    }

    #[test]
    fn small_matrices() {
        let m = basis_matrix(star_family, (1, 1)).unwrap();
        assert_eq!(m.entries, vec![vec![1]]);
        let m = basis_matrix(star_family, (2, 2)).unwrap();
        assert_eq!(m.partitions, vec![vp(&[[2, 2]]), vp(&[[1, 1], [1, 1]])]);
        // cmf(edge) = p_{(1,1),(1,1)} - p_{(2,2)}; cmf(two points) = p_{(1,1),(1,1)}
        assert_eq!(m.entries, vec![vec![-1, 1], vec![0, 1]]);
        assert!(check_chromatic_basis(&m.entries).unwrap());
        let m = basis_matrix(star_family, (3, 3)).unwrap();
        assert_eq!(m.partitions.len(), 3);
        assert!(check_chromatic_basis(&m.entries).unwrap());
        assert_eq!(m.to_string().lines().count(), 3);
    }

    #[test]
    fn stars_through_4_6() {
        for n in 1..=4 {
            for w in n as u32..=6 {
                let m = basis_matrix(star_family, (n, w)).unwrap();
                assert!(check_chromatic_basis(&m.entries).unwrap(), "u = ({n},{w})");
            }
        }
    }

    #[test]
    fn paths_also_form_a_basis() {
        let path = |n: usize, w: u32| {
            let mut ws = vec![1u32; n];
            ws[n - 1] = w - n as u32 + 1;
            Ok(WeightedGraph::path(&ws))
        };
        for n in 1..=4 {
            for w in n as u32..=6 {
                let m = basis_matrix(path, (n, w)).unwrap();
                assert!(check_chromatic_basis(&m.entries).unwrap());
            }
        }
    }

    #[test]
    fn family_validation() {
        let bad = |n: usize, _w: u32| WeightedGraph::with_scalar_weights(&vec![1; n], &[]);
        assert!(basis_matrix(bad, (2, 2)).is_err());
        let wrong_weight = |n: usize, _w: u32| star_family(n, n as u32);
        assert!(basis_matrix(wrong_weight, (2, 3)).is_err());
    }

    #[test]
    fn check_examples() {
        assert!(check_chromatic_basis(&[vec![1, 0], vec![0, 1]]).unwrap());
        assert!(!check_chromatic_basis(&[vec![1, 0], vec![0, 0]]).unwrap());
        assert!(!check_chromatic_basis(&[vec![1, 2], vec![3, 1]]).unwrap());
        assert!(!check_chromatic_basis(&[vec![2]]).unwrap());
        assert!(check_chromatic_basis(&[vec![-1, 0], vec![5, 1]]).unwrap());
        assert_eq!(check_chromatic_basis(&[vec![1, 0]]), Err(Error::NonSquare));
        assert!(check_chromatic_basis(&[]).unwrap());
    }

    #[test]
    fn cmf_is_multiplicative() {
        let mut family = Vec::new();
        for n in 1..=5 {
            for w in n as u32..=n as u32 + 2 {
                family.push(star_family(n, w).unwrap());
            }
        }
        for a in &family {
            for b in &family {
                if a.n() + b.n() > 6 {
                    continue;
                }
                let u = a.disjoint_union(b).unwrap();
                assert_eq!(
                    cmf(&u).unwrap(),
                    cmf(a).unwrap().mul(&cmf(b).unwrap()).unwrap()
                );
            }
        }
    }
}
