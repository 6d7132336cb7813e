//! Explicit linear reconstruction of the EGDP of a scalar-weighted forest
//! from its β-coefficients.
//!
//! For a forest on `n` vertices with `e` edges and total weight `w`,
//!
//! ```text
//! g(a,b,c,d) = Σ_{Λ ⊢ (n,w)} β_Λ (-1)^{n-ℓ(Λ)} ω(Λ,a,b,c,d)
//! ω(Λ,a,b,c,d) = (-1)^{e-a} Σ_{Ω ⊢ (b,c)} C(b-ℓ(Ω), d) · C(Λ, Ω) · C(n-ℓ(Λ)+ℓ(Ω)-b, e-a-d)
//! ```
//!
//! where `C(Λ, Ω)` is [`vp_binomial`](crate::algebra::vp_binomial). Only Ω
//! that are sub-multisets of Λ contribute, so the sum over Ω is taken over
//! those directly.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use smallvec::SmallVec;

use crate::algebra::{binomial, c_add, c_mul, sign, Coeff, LaurentPolynomial, VectorPartition};
use crate::chromatic::egdp_variables;
use crate::error::{Error, Result};

/// `Σ_{k=0}^{p} C(p,k) (-1)^{k+q} C(k,q)`, which is 1 when `p = q` and 0
/// otherwise.
pub fn signed_binomial_sum(p_size: u64, q: u64) -> Coeff {
    Coeff::from(p_size == q)
}

/// The same sum evaluated term by term.
pub fn signed_binomial_sum_expanded(p_size: u64, q: u64) -> Coeff {
    (0..=p_size as i64).fold(0, |acc, k| {
        let t = c_mul(
            c_mul(binomial(p_size as i64, k), binomial(k, q as i64)),
            sign(k + q as i64),
        );
        c_add(acc, t)
    })
}

/// Sub-multisets Ω of Λ grouped by `(b, c, ℓ(Ω))`, with the number of ways
/// to choose each.
fn sub_multisets(lambda: &VectorPartition) -> HashMap<(u32, u32, u32), Coeff> {
    let mut out = HashMap::default();
    lambda.for_each_sub_multiset(|grade, len, ways| {
        let slot = out.entry((grade[0], grade[1], len as u32)).or_insert(0);
        *slot = c_add(*slot, ways);
    });
    out
}

fn check_width2(lambda: &VectorPartition) -> Result<()> {
    if lambda.width() != 2 {
        return Err(Error::WidthMismatch {
            expected: 2,
            found: lambda.width(),
        });
    }
    Ok(())
}

/// `ω(Λ, a, b, c, d)` for a forest with `n` vertices and `e` edges.
#[allow(clippy::too_many_arguments)]
pub fn omega(
    lambda: &VectorPartition,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    n: u32,
    e: u32,
) -> Result<Coeff> {
    check_width2(lambda)?;
    let grade_n = lambda.parts().iter().map(|p| p.coords()[0]).sum::<u32>();
    if grade_n != n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} has vertex grade {grade_n}, expected {n}"
        )));
    }
    let q = e as i64 - a as i64 - d as i64;
    if q < 0 {
        return Ok(0);
    }
    let len_l = lambda.len() as i64;
    let mut acc: Coeff = 0;
    for (&(ob, oc, len_o), &ways) in &sub_multisets(lambda) {
        if ob != b || oc != c {
            continue;
        }
        let len_o = len_o as i64;
        let t = c_mul(
            c_mul(binomial(b as i64 - len_o, d as i64), ways),
            binomial(n as i64 - len_l + len_o - b as i64, q),
        );
        acc = c_add(acc, t);
    }
    Ok(c_mul(sign(e as i64 - a as i64), acc))
}

/// The raw table `g(a,b,c,d)` for a forest with `n` vertices, total weight
/// `w` and `e` edges, computed from its β-table. Zero entries are omitted.
/// No sanity checks beyond the grade of each partition: a corrupted table
/// may yield negative entries.
pub fn explicit_coefficients(
    beta: &BTreeMap<VectorPartition, u64>,
    n: u32,
    w: u32,
    e: u32,
) -> Result<BTreeMap<(u32, u32, u32, u32), Coeff>> {
    let mut g: HashMap<(u32, u32, u32, u32), Coeff> = HashMap::default();
    for (lambda, &count) in beta {
        check_width2(lambda)?;
        let grade = lambda.grade();
        if grade.coords() != [n, w] {
            return Err(Error::InvalidParameter(format!(
                "partition {lambda} is not a partition of ({n},{w})"
            )));
        }
        let outer = c_mul(count as Coeff, sign(n as i64 - lambda.len() as i64));
        let len_l = lambda.len() as i64;
        for (&(b, c, len_o), &ways) in &sub_multisets(lambda) {
            let len_o = len_o as i64;
            let rest = n as i64 - len_l + len_o - b as i64;
            // only 0 ≤ d ≤ b - ℓ(Ω) and 0 ≤ e - a - d ≤ rest contribute
            let d_max = (b as i64 - len_o).min(e as i64);
            for d in 0..=d_max {
                let bd = c_mul(c_mul(binomial(b as i64 - len_o, d), ways), outer);
                for q in 0..=rest.min(e as i64 - d) {
                    let a = e as i64 - d - q;
                    let t = c_mul(c_mul(bd, binomial(rest, q)), sign(e as i64 - a));
                    let slot = g.entry((a as u32, b, c, d as u32)).or_insert(0);
                    *slot = c_add(*slot, t);
                }
            }
        }
    }
    Ok(g.into_iter().filter(|&(_, k)| k != 0).collect())
}

/// Rebuilds the EGDP `Σ g(a,b,c,d) w^a x^b y^c z^d` of a forest with `n`
/// vertices, total weight `w` and `e` edges from its β-table.
///
/// Fails if any reconstructed coefficient is negative or the coefficients
/// do not sum to `2^n`; either means the table (or `e`) is not that of a
/// forest.
pub fn recover_egdp_explicit(
    beta: &BTreeMap<VectorPartition, u64>,
    n: u32,
    w: u32,
    e: u32,
) -> Result<LaurentPolynomial> {
    let g = explicit_coefficients(beta, n, w, e)?;
    let mut total: Coeff = 0;
    let mut terms = Vec::with_capacity(g.len());
    for ((a, b, c, d), k) in g {
        if k < 0 {
            return Err(Error::Reconstruction(format!(
                "g({a},{b},{c},{d}) = {k} is negative"
            )));
        }
        total = c_add(total, k);
        terms.push((
            SmallVec::from_slice(&[a as i32, b as i32, c as i32, d as i32]),
            k,
        ));
    }
    if total != 1 << n {
        return Err(Error::Reconstruction(format!(
            "coefficients sum to {total}, expected 2^{n}"
        )));
    }
    Ok(LaurentPolynomial::from_terms(&egdp_variables(1), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{vp_binomial, vp_canonicalize, vp_enumerate, PartMode, VectorVec};
    use crate::chromatic::{beta_table, egdp};
    use crate::graphs::{random_forest, WeightedGraph};

    fn vp(parts: &[[u32; 2]]) -> VectorPartition {
        vp_canonicalize(parts.iter().map(|&p| VectorVec::from(p)).collect()).unwrap()
    }

    /// ω as printed: a literal sum over every Ω ⊢ (b,c) with ℙ² parts.
    fn omega_literal(l: &VectorPartition, a: u32, b: u32, c: u32, d: u32, n: u32, e: u32) -> Coeff {
        let omegas = if b == 0 && c == 0 {
            vec![VectorPartition::empty(2)]
        } else if b == 0 || c == 0 {
            vec![]
        } else {
            vp_enumerate(&VectorVec::from([b, c]), PartMode::Positive).unwrap()
        };
        let q = e as i64 - a as i64 - d as i64;
        let s: Coeff = omegas
            .iter()
            .map(|o| {
                let lo = o.len() as i64;
                binomial(b as i64 - lo, d as i64)
                    * vp_binomial(l, o)
                    * binomial(n as i64 - l.len() as i64 + lo - b as i64, q)
            })
            .sum();
        sign(e as i64 - a as i64) * s
    }

    /// Brute-force g(a,b,c,d) over vertex subsets.
    fn g_brute(f: &WeightedGraph) -> BTreeMap<(u32, u32, u32, u32), Coeff> {
        let mut out = BTreeMap::new();
        for mask in 0u64..(1 << f.n()) {
            let (ext, int) = f.ext_int_mask(mask);
            let wt: u32 = (0..f.n())
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| f.weights()[v].coords()[0])
                .sum();
            *out.entry((ext as u32, mask.count_ones(), wt, int as u32))
                .or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn signed_binomial_examples() {
        assert_eq!(signed_binomial_sum_expanded(2, 1), 0);
        assert_eq!(signed_binomial_sum_expanded(3, 3), 1);
        assert_eq!(signed_binomial_sum_expanded(0, 0), 1);
        for p in 0..=20 {
            for q in 0..=20 {
                assert_eq!(
                    signed_binomial_sum_expanded(p, q),
                    signed_binomial_sum(p, q)
                );
            }
        }
    }

    #[test]
    fn omega_empty_subset_case() {
        let l = vp(&[[1, 1], [1, 2]]);
        for e in 0..3 {
            assert_eq!(
                omega(&l, 0, 0, 0, 0, 2, e).unwrap(),
                sign(e as i64) * binomial(2 - 2, e as i64)
            );
        }
        let l = vp(&[[2, 3]]);
        assert_eq!(omega(&l, 0, 0, 0, 0, 2, 1).unwrap(), -binomial(1, 1));
    }

    #[test]
    fn omega_pins_edge_reconstruction() {
        // edge on weights 1, 2: β = {((1,1),(1,2)): 1, ((2,3)): 1}, n = 2, e = 1
        let split = vp(&[[1, 1], [1, 2]]);
        let joined = vp(&[[2, 3]]);
        let brute = g_brute(&WeightedGraph::with_scalar_weights(&[1, 2], &[(0, 1)]).unwrap());
        for a in 0..=1 {
            for b in 0..=2 {
                for c in 0..=3 {
                    for d in 0..=(1 - a) {
                        let got = omega(&split, a, b, c, d, 2, 1).unwrap()
                            - omega(&joined, a, b, c, d, 2, 1).unwrap();
                        let want = brute.get(&(a, b, c, d)).copied().unwrap_or(0);
                        assert_eq!(got, want, "(a,b,c,d) = ({a},{b},{c},{d})");
                    }
                }
            }
        }
    }

    #[test]
    fn omega_matches_literal_sum() {
        for seed in 0..6 {
            let f = random_forest(6, 3, 1, seed).unwrap();
            let (n, e) = (f.n() as u32, f.num_edges() as u32);
            let w = f.total_weight().coords()[0];
            for l in beta_table(&f).unwrap().keys() {
                for a in 0..=e {
                    for d in 0..=(e - a) {
                        for b in 0..=n {
                            for c in 0..=w {
                                assert_eq!(
                                    omega(l, a, b, c, d, n, e).unwrap(),
                                    omega_literal(l, a, b, c, d, n, e)
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn omega_tree_sign() {
        // for trees e = n - 1, so (-1)^{e-a} = (-1)^{n-a-1}
        let l = vp(&[[1, 1], [1, 1], [1, 1]]);
        for a in 0..=2u32 {
            let v = omega(&l, a, 0, 0, 0, 3, 2).unwrap();
            let expected = sign(3 - a as i64 - 1) * binomial(0, 2 - a as i64);
            assert_eq!(v, expected);
        }
    }

    #[test]
    fn omega_rejects_wrong_grade() {
        assert!(omega(&vp(&[[2, 3]]), 0, 0, 0, 0, 3, 1).is_err());
    }

    #[test]
    fn recovery_examples() {
        let single = WeightedGraph::with_scalar_weights(&[3], &[]).unwrap();
        let r = recover_egdp_explicit(&beta_table(&single).unwrap(), 1, 3, 0).unwrap();
        assert_eq!(r.to_string(), "+1 +1 x y^3");
        let edge = WeightedGraph::with_scalar_weights(&[1, 2], &[(0, 1)]).unwrap();
        let r = recover_egdp_explicit(&beta_table(&edge).unwrap(), 2, 3, 1).unwrap();
        assert_eq!(r.to_string(), "+1 +1 w x y +1 w x y^2 +1 x^2 y^3 z");
        let m = [("w", 3), ("x", 2), ("y", 4)];
        for (weights, want) in [([2, 1, 2, 3, 1], 1), ([2, 3, 1, 2, 1], 2)] {
            let t = WeightedGraph::path(&weights);
            let r = recover_egdp_explicit(&beta_table(&t).unwrap(), 5, 9, 4).unwrap();
            assert_eq!(r, egdp(&t).unwrap());
            assert_eq!(r.coeff(&m), want);
        }
    }

    #[test]
    fn recovery_detects_bad_input() {
        let t = WeightedGraph::path(&[1, 2, 1]);
        let mut beta = beta_table(&t).unwrap();
        assert!(recover_egdp_explicit(&beta, 3, 4, 1).is_err());
        let key = beta.keys().next().unwrap().clone();
        *beta.get_mut(&key).unwrap() += 1;
        assert!(matches!(
            recover_egdp_explicit(&beta, 3, 4, 2),
            Err(Error::Reconstruction(_))
        ));
        let wrong = BTreeMap::from([(vp(&[[2, 3]]), 1u64)]);
        assert!(matches!(
            recover_egdp_explicit(&wrong, 3, 3, 1),
            Err(Error::InvalidParameter(_))
        ));
    }
}
