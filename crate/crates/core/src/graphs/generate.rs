use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::WeightedGraph;
use crate::algebra::VectorVec;
use crate::error::{Error, Result};

/// Decodes a Prüfer sequence of length `n - 2` into the edge list of a
/// labeled tree on `n ≥ 2` vertices.
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Vec<(usize, usize)>> {
    if n < 2 || seq.len() != n - 2 {
        return Err(Error::InvalidParameter(format!(
            "Prüfer sequence of length {} does not describe a tree on {n} vertices",
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange(bad));
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n)
            .find(|&u| degree[u] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Ok(edges)
}

/// Edge lists of all `n^{n-2}` labeled trees on `n` vertices (one empty list
/// for `n ≤ 1`), in lexicographic order of Prüfer sequences.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let len = n.saturating_sub(2);
    let total = if n < 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut code| {
        if n < 2 {
            return Vec::new();
        }
        let mut seq = vec![0usize; len];
        for slot in seq.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        prufer_decode(&seq, n).expect("valid sequence")
    })
}

/// Iterator over every assignment of weights in `[1, max]^r` to `n` vertices.
#[derive(Debug, Clone)]
pub struct WeightAssignments {
    digits: Vec<u32>,
    n: usize,
    r: usize,
    max: u32,
    done: bool,
}

/// All `max^{n·r}` weight assignments, odometer order (last coordinate
/// fastest).
pub fn weight_assignments(n: usize, r: usize, max: u32) -> WeightAssignments {
    WeightAssignments {
        digits: vec![1; n * r],
        n,
        r,
        max,
        done: max == 0 || r == 0,
    }
}

impl Iterator for WeightAssignments {
    type Item = Vec<VectorVec>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = (0..self.n)
            .map(|v| VectorVec::from(&self.digits[v * self.r..(v + 1) * self.r]))
            .collect();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] < self.max {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = 1;
        }
        Some(out)
    }
}

/// Random weighted forest: a uniform labeled tree (uniform Prüfer sequence)
/// with each edge then deleted independently with probability 1/4, and
/// i.i.d. uniform weights in `[1, max_weight]^r`. Deterministic in `seed`.
pub fn random_forest(n: usize, max_weight: u32, r: usize, seed: u64) -> Result<WeightedGraph> {
    if max_weight == 0 {
        return Err(Error::InvalidParameter("max_weight must be ≥ 1".into()));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    if n >= 2 {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        for e in prufer_decode(&seq, n)? {
            if rng.gen_range(0..4) != 0 {
                edges.push(e);
            }
        }
    }
    let weights = (0..n)
        .map(|_| VectorVec::new((0..r).map(|_| rng.gen_range(1..=max_weight))))
        .collect();
    WeightedGraph::new(r, weights, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn prufer_examples() {
        assert_eq!(prufer_decode(&[], 2).unwrap(), vec![(0, 1)]);
        // star centred at 0
        let mut e: Vec<_> = prufer_decode(&[0, 0], 4)
            .unwrap()
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 2), (0, 3)]);
        assert!(prufer_decode(&[5], 3).is_err());
    }

    #[test]
    fn labeled_tree_counts_and_distinctness() {
        for n in 0..=6usize {
            let trees: Vec<_> = labeled_trees(n).collect();
            let expected = if n < 2 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(trees.len(), expected);
            let mut distinct = BTreeSet::new();
            for t in trees {
                let g = WeightedGraph::with_scalar_weights(&vec![1; n], &t).unwrap();
                assert!(g.is_forest());
                assert_eq!(g.num_components(), usize::from(n > 0));
                distinct.insert(g.edges().to_vec());
            }
            assert_eq!(distinct.len(), expected);
        }
    }

    #[test]
    fn weight_assignment_count() {
        assert_eq!(weight_assignments(3, 1, 2).count(), 8);
        assert_eq!(weight_assignments(2, 2, 3).count(), 81);
        assert_eq!(weight_assignments(0, 1, 3).count(), 1);
    }

    #[test]
    fn random_forest_contract() {
        assert_eq!(random_forest(0, 3, 1, 7).unwrap().n(), 0);
        let one = random_forest(1, 3, 2, 7).unwrap();
        assert_eq!((one.n(), one.num_edges(), one.r()), (1, 0, 2));
        for seed in 0..20 {
            let a = random_forest(8, 4, 1, seed).unwrap();
            assert_eq!(a, random_forest(8, 4, 1, seed).unwrap());
            assert!(a.is_forest());
            assert!(a.weights().iter().all(|w| (1..=4).contains(&w.coords()[0])));
        }
        assert!(random_forest(3, 0, 1, 0).is_err());
        assert!(random_forest(3, 1, 0, 0).is_err());
    }
}
