//! Chromatic invariants of weighted graphs: the chromatic MacMahon symmetric
//! function (CMF) in the power-sum basis, β-coefficients of forests, the
//! extended generalized degree polynomial (EGDP), their specializations,
//! and a brute-force proper-coloring oracle.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use smallvec::SmallVec;

use crate::algebra::{
    c_add, truncation_variables, Coeff, Exponents, LaurentPolynomial, MacMahonElement,
    VectorPartition, VectorVec,
};
use crate::error::{Error, Result};
use crate::graphs::WeightedGraph;

/// Guardrails for the exponential enumerations. Exceeding a cap is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Edge-subset enumeration (`cmf`, `beta_table`): at most this many edges.
    pub max_edges: usize,
    /// Vertex-subset enumeration (`egdp`): at most this many vertices.
    pub max_vertices: usize,
    /// Coloring enumeration: at most this many colorings `k^n`.
    pub max_colorings: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 30,
            max_vertices: 25,
            max_colorings: 10_000_000,
        }
    }
}

// hard ceilings imposed by the bitmask representations
const EDGE_MASK_BITS: usize = 63;
const VERTEX_MASK_BITS: usize = 63;

impl Limits {
    fn check_edges(&self, g: &WeightedGraph) -> Result<()> {
        let cap = self.max_edges.min(EDGE_MASK_BITS);
        if g.num_edges() > cap {
            return Err(Error::CapExceeded {
                what: "edge count",
                value: g.num_edges() as u128,
                cap: cap as u128,
            });
        }
        Ok(())
    }

    fn check_vertices(&self, g: &WeightedGraph) -> Result<()> {
        let cap = self.max_vertices.min(VERTEX_MASK_BITS);
        if g.n() > cap {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: g.n() as u128,
                cap: cap as u128,
            });
        }
        Ok(())
    }
}

/// Sums `(-1)^{|S|} p_{bitype(S)}` over all edge subsets `S`, or, unsigned,
/// counts subsets per bitype.
///
/// Same result as calling [`WeightedGraph::bitype_of_mask`] per subset, but
/// keyed by a flat sorted coordinate list so the loop does not allocate.
fn bitype_sum(g: &WeightedGraph, signed: bool) -> BTreeMap<VectorPartition, Coeff> {
    let n = g.n();
    let width = g.r() + 1;
    let edges = g.edges();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut sums = vec![0u32; n * width];
    let mut roots: Vec<usize> = Vec::with_capacity(n);
    let mut key: SmallVec<[u32; 32]> = SmallVec::new();
    let mut acc: HashMap<SmallVec<[u32; 32]>, Coeff> = HashMap::default();

    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }

    for mask in 0u64..(1u64 << edges.len()) {
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        sums.fill(0);
        roots.clear();
        for v in 0..n {
            let root = find(&mut parent, v);
            let s = &mut sums[root * width..(root + 1) * width];
            if s[0] == 0 {
                roots.push(root);
            }
            s[0] += 1;
            for (dst, src) in s[1..].iter_mut().zip(g.weights()[v].coords()) {
                *dst += *src;
            }
        }
        roots.sort_unstable_by(|&a, &b| {
            sums[b * width..(b + 1) * width].cmp(&sums[a * width..(a + 1) * width])
        });
        key.clear();
        for &root in &roots {
            key.extend_from_slice(&sums[root * width..(root + 1) * width]);
        }
        let c = if signed && mask.count_ones() % 2 == 1 {
            -1
        } else {
            1
        };
        match acc.get_mut(&key) {
            Some(slot) => *slot = c_add(*slot, c),
            None => {
                acc.insert(key.clone(), c);
            }
        }
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(k, c)| {
            let parts = k.chunks(width).map(VectorVec::from).collect();
            (VectorPartition::from_parts_unchecked(width, parts), c)
        })
        .collect()
}

/// CMF of `g` in the power-sum basis, width `r + 1`.
pub fn cmf(g: &WeightedGraph) -> Result<MacMahonElement> {
    cmf_with(g, &Limits::default())
}

pub fn cmf_with(g: &WeightedGraph, limits: &Limits) -> Result<MacMahonElement> {
    limits.check_edges(g)?;
    Ok(MacMahonElement::from_map_unchecked(
        g.r() + 1,
        bitype_sum(g, true),
    ))
}

/// `β_Λ(F) = |{S ⊆ E(F) : bitype(S) = Λ}|` for a forest `F`.
pub fn beta_table(f: &WeightedGraph) -> Result<BTreeMap<VectorPartition, u64>> {
    beta_table_with(f, &Limits::default())
}

pub fn beta_table_with(
    f: &WeightedGraph,
    limits: &Limits,
) -> Result<BTreeMap<VectorPartition, u64>> {
    if !f.is_forest() {
        return Err(Error::NotAForest);
    }
    limits.check_edges(f)?;
    Ok(bitype_sum(f, false)
        .into_iter()
        .map(|(l, c)| (l, c as u64))
        .collect())
}

/// Reassembles a CMF from a forest β-table:
/// `Σ_Λ β_Λ (-1)^{n-ℓ(Λ)} p_Λ`.
pub fn cmf_from_beta(beta: &BTreeMap<VectorPartition, u64>, width: usize) -> MacMahonElement {
    let mut out = MacMahonElement::zero(width);
    for (l, &b) in beta {
        let n = l.grade().coords()[0] as i64;
        let s = crate::algebra::sign(n - l.len() as i64);
        out.add_term(l.clone(), s * b as Coeff);
    }
    out
}

/// Which data a CSF specialization retains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    /// Keep only vertex counts: `y := 1` gives the CSF (width 1).
    Cardinality,
    /// Keep only weights: `x := 1` gives the weighted CSF (width r).
    Weight,
}

/// Projects a CMF onto the CSF (`Keep::Cardinality`) or wCSF
/// (`Keep::Weight`) by deleting coordinates from every part.
pub fn csf_specialize(e: &MacMahonElement, keep: Keep) -> Result<MacMahonElement> {
    let m = e.width();
    if m < 2 {
        return Err(Error::InvalidParameter(
            "specialization needs width ≥ 2".into(),
        ));
    }
    let out_width = match keep {
        Keep::Cardinality => 1,
        Keep::Weight => m - 1,
    };
    let mut out = MacMahonElement::zero(out_width);
    for (l, c) in e.terms() {
        let parts = l
            .parts()
            .iter()
            .map(|p| match keep {
                Keep::Cardinality => VectorVec::new([p.coords()[0]]),
                Keep::Weight => VectorVec::from(&p.coords()[1..]),
            })
            .filter(|p| !p.is_zero())
            .collect();
        out.add_term(VectorPartition::from_parts_unchecked(out_width, parts), c);
    }
    Ok(out)
}

/// EGDP variable names: `w, x, y, z` for r = 1 and `w, x, y1, …, yr, z`
/// otherwise.
pub fn egdp_variables(r: usize) -> Vec<String> {
    let mut v = vec!["w".to_string(), "x".to_string()];
    if r == 1 {
        v.push("y".into());
    } else {
        v.extend((1..=r).map(|i| format!("y{i}")));
    }
    v.push("z".into());
    v
}

/// `Σ_{A ⊆ V} w^{ext(A)} x^{|A|} Π y_i^{wt_i(A)} z^{int(A)}`.
pub fn egdp(g: &WeightedGraph) -> Result<LaurentPolynomial> {
    egdp_with(g, &Limits::default())
}

pub fn egdp_with(g: &WeightedGraph, limits: &Limits) -> Result<LaurentPolynomial> {
    limits.check_vertices(g)?;
    let n = g.n();
    let r = g.r();
    let vars = egdp_variables(r);
    let mut acc: HashMap<Exponents, Coeff> = HashMap::default();
    for mask in 0u64..(1u64 << n) {
        let (ext, int) = g.ext_int_mask(mask);
        let mut e: Exponents = Exponents::from_elem(0, vars.len());
        e[0] = ext as i32;
        e[1] = mask.count_ones() as i32;
        for v in (0..n).filter(|&v| mask >> v & 1 == 1) {
            for (i, &w) in g.weights()[v].coords().iter().enumerate() {
                e[2 + i] += w as i32;
            }
        }
        e[2 + r] = int as i32;
        *acc.entry(e).or_insert(0) += 1;
    }
    Ok(LaurentPolynomial::from_terms(&vars, acc))
}

/// Target of [`egdp_specialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdpKind {
    /// `Σ x^{wt(A)} y^{ext(A)} z^{int(A)}` (needs r = 1).
    Weighted,
    /// `Σ x^{|A|} y^{ext(A)} z^{int(A)}`.
    Plain,
}

/// Specializes an EGDP to the wGDP or GDP.
pub fn egdp_specialize(p: &LaurentPolynomial, kind: GdpKind) -> Result<LaurentPolynomial> {
    let has_multi = p.vars().iter().any(|v| v.starts_with('y') && v.len() > 1);
    match kind {
        GdpKind::Weighted => {
            if has_multi {
                return Err(Error::NotApplicable(
                    "the weighted GDP needs scalar weights (r = 1)".into(),
                ));
            }
            let q = p.set_one("x").rename(&[("y", "x"), ("w", "y")]);
            Ok(q.over(&["x", "y", "z"]))
        }
        GdpKind::Plain => {
            let mut q = p.clone();
            let ys: Vec<String> = p
                .vars()
                .iter()
                .filter(|v| v.starts_with('y'))
                .cloned()
                .collect();
            for y in ys {
                q = q.set_one(&y);
            }
            Ok(q.rename(&[("w", "y")]).over(&["x", "y", "z"]))
        }
    }
}

/// Exhaustive sum over the `k^n` colorings `V → [k]`, keeping the proper
/// ones: `Σ_κ Π_v x_{κ(v)} Π_i y_{i,κ(v)}^{wt_i(v)}`.
///
/// Variables match [`MacMahonElement::truncate`] at width `r + 1`.
pub fn coloring_oracle(g: &WeightedGraph, k: usize) -> Result<LaurentPolynomial> {
    coloring_oracle_with(g, k, &Limits::default())
}

pub fn coloring_oracle_with(
    g: &WeightedGraph,
    k: usize,
    limits: &Limits,
) -> Result<LaurentPolynomial> {
    if k == 0 {
        return Err(Error::NoColors);
    }
    let n = g.n();
    let total = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > limits.max_colorings {
        return Err(Error::CapExceeded {
            what: "coloring count",
            value: total,
            cap: limits.max_colorings,
        });
    }
    let width = g.r() + 1;
    let vars = truncation_variables(width, k);
    let mut acc: HashMap<Exponents, Coeff> = HashMap::default();
    let mut color = vec![0usize; n];
    loop {
        if g.edges().iter().all(|&(a, b)| color[a] != color[b]) {
            let mut e: Exponents = Exponents::from_elem(0, vars.len());
            for (&cv, weight) in color.iter().zip(g.weights()) {
                let base = cv * width;
                e[base] += 1;
                for (i, &w) in weight.coords().iter().enumerate() {
                    e[base + 1 + i] += w as i32;
                }
            }
            *acc.entry(e).or_insert(0) += 1;
        }
        // odometer over colorings
        let mut i = 0;
        while i < n && color[i] + 1 == k {
            color[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        color[i] += 1;
    }
    Ok(LaurentPolynomial::from_terms(&vars, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{binomial, sign, vp_canonicalize};

    fn vp(parts: &[&[u32]]) -> VectorPartition {
        vp_canonicalize(parts.iter().map(|p| VectorVec::from(*p)).collect()).unwrap()
    }

    #[test]
    fn cmf_matches_per_subset_bitypes() {
        let mut graphs: Vec<WeightedGraph> = (0..30)
            .map(|s| {
                crate::graphs::random_forest(1 + s as usize % 7, 3, 1 + s as usize % 3, s).unwrap()
            })
            .collect();
        graphs.push(
            WeightedGraph::with_scalar_weights(
                &[1, 2, 1, 2],
                &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)],
            )
            .unwrap(),
        );
        for g in graphs {
            let mut want = MacMahonElement::zero(g.r() + 1);
            for mask in 0u128..(1 << g.num_edges()) {
                want.add_term(g.bitype_of_mask(mask), sign(mask.count_ones() as i64));
            }
            assert_eq!(cmf(&g).unwrap(), want);
        }
    }

    fn edge12() -> WeightedGraph {
        WeightedGraph::with_scalar_weights(&[1, 2], &[(0, 1)]).unwrap()
    }

    fn single(w: u32) -> WeightedGraph {
        WeightedGraph::with_scalar_weights(&[w], &[]).unwrap()
    }

    fn t1() -> WeightedGraph {
        WeightedGraph::path(&[2, 1, 2, 3, 1])
    }

    fn t2() -> WeightedGraph {
        WeightedGraph::path(&[2, 3, 1, 2, 1])
    }

    #[test]
    fn cmf_examples() {
        assert_eq!(cmf(&single(3)).unwrap().to_string(), "+1 * p[(1,3)]\n");
        let e = cmf(&edge12()).unwrap();
        assert_eq!(e.coeff(&vp(&[&[1, 1], &[1, 2]])), 1);
        assert_eq!(e.coeff(&vp(&[&[2, 3]])), -1);
        assert_eq!(e.num_terms(), 2);
        let t = cmf(&t1()).unwrap().truncate(2).unwrap();
        assert_eq!(t.num_terms(), 2);
        assert_eq!(t.coeff(&[("x1", 3), ("y1", 5), ("x2", 2), ("y2", 4)]), 1);
        assert_eq!(t.coeff(&[("x1", 2), ("y1", 4), ("x2", 3), ("y2", 5)]), 1);
    }

    #[test]
    fn cmf_cap() {
        let g = WeightedGraph::path(&[1; 40]);
        assert!(matches!(cmf(&g), Err(Error::CapExceeded { .. })));
        let small = Limits {
            max_edges: 2,
            ..Limits::default()
        };
        assert!(cmf_with(&t1(), &small).is_err());
    }

    #[test]
    fn beta_examples() {
        let b = beta_table(&edge12()).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[&vp(&[&[1, 1], &[1, 2]])], 1);
        assert_eq!(b[&vp(&[&[2, 3]])], 1);
        let b = beta_table(&single(5)).unwrap();
        assert_eq!(b[&vp(&[&[1, 5]])], 1);
        let bt = beta_table(&t1()).unwrap();
        let three: u64 = bt
            .iter()
            .filter(|(l, _)| l.len() == 3)
            .map(|(_, &c)| c)
            .sum();
        assert_eq!(three, 6);
        let tri =
            WeightedGraph::with_scalar_weights(&[1, 1, 1], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(beta_table(&tri), Err(Error::NotAForest));
    }

    #[test]
    fn forest_sum_identity_on_t1() {
        let bt = beta_table(&t1()).unwrap();
        for ell in 1..=5usize {
            let s: u64 = bt
                .iter()
                .filter(|(l, _)| l.len() == ell)
                .map(|(_, &c)| c)
                .sum();
            assert_eq!(s as i128, binomial(4, 5 - ell as i64));
        }
        assert_eq!(cmf_from_beta(&bt, 2), cmf(&t1()).unwrap());
    }

    #[test]
    fn specialization_examples() {
        let e = cmf(&edge12()).unwrap();
        let w = csf_specialize(&e, Keep::Weight).unwrap();
        assert_eq!(w.to_string(), "-1 * p[(3)]\n+1 * p[(2),(1)]\n");
        let c = csf_specialize(&e, Keep::Cardinality).unwrap();
        assert_eq!(c.to_string(), "-1 * p[(2)]\n+1 * p[(1),(1)]\n");
        let w1 = csf_specialize(&cmf(&t1()).unwrap(), Keep::Weight).unwrap();
        let w2 = csf_specialize(&cmf(&t2()).unwrap(), Keep::Weight).unwrap();
        assert_eq!(w1, w2);
        assert!(csf_specialize(&w1, Keep::Weight).is_err());
    }

    #[test]
    fn egdp_examples() {
        assert_eq!(egdp(&single(3)).unwrap().to_string(), "+1 +1 x y^3");
        let e = egdp(&edge12()).unwrap();
        assert_eq!(e.to_string(), "+1 +1 w x y +1 w x y^2 +1 x^2 y^3 z");
        let m = [("w", 3), ("x", 2), ("y", 4)];
        assert_eq!(egdp(&t1()).unwrap().coeff(&m), 1);
        assert_eq!(egdp(&t2()).unwrap().coeff(&m), 2);
    }

    #[test]
    fn gdp_examples() {
        let e = egdp(&edge12()).unwrap();
        let w = egdp_specialize(&e, GdpKind::Weighted).unwrap();
        assert_eq!(w.to_string(), "+1 +1 x y +1 x^2 y +1 x^3 z");
        let g = egdp_specialize(&egdp(&single(3)).unwrap(), GdpKind::Plain).unwrap();
        assert_eq!(g.to_string(), "+1 +1 x");
        let m = [("x", 4), ("y", 3)];
        let w1 = egdp_specialize(&egdp(&t1()).unwrap(), GdpKind::Weighted).unwrap();
        let w2 = egdp_specialize(&egdp(&t2()).unwrap(), GdpKind::Weighted).unwrap();
        assert_eq!((w1.coeff(&m), w2.coeff(&m)), (1, 2));
        let multi = WeightedGraph::new(2, vec![VectorVec::from([1, 2])], vec![]).unwrap();
        assert!(matches!(
            egdp_specialize(&egdp(&multi).unwrap(), GdpKind::Weighted),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(
            egdp_specialize(&egdp(&multi).unwrap(), GdpKind::Plain)
                .unwrap()
                .to_string(),
            "+1 +1 x"
        );
    }

    #[test]
    fn egdp_cap() {
        let g = WeightedGraph::with_scalar_weights(&[1; 26], &[]).unwrap();
        assert!(matches!(egdp(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn oracle_examples() {
        assert!(coloring_oracle(&edge12(), 1).unwrap().is_zero());
        let s =
            coloring_oracle(&WeightedGraph::with_scalar_weights(&[2], &[]).unwrap(), 2).unwrap();
        assert_eq!(s.to_string(), "+1 x1 y1^2 +1 x2 y2^2");
        let t = coloring_oracle(&t1(), 2).unwrap();
        assert_eq!(t, cmf(&t1()).unwrap().truncate(2).unwrap());
        let t2k = coloring_oracle(&t2(), 2).unwrap();
        assert_eq!(t2k.coeff(&[("x1", 3), ("y1", 4), ("x2", 2), ("y2", 5)]), 1);
        assert_eq!(t2k.coeff(&[("x1", 2), ("y1", 5), ("x2", 3), ("y2", 4)]), 1);
        let big = WeightedGraph::with_scalar_weights(&[1; 12], &[]).unwrap();
        assert!(matches!(
            coloring_oracle(&big, 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn egdp_complement_symmetry_and_weight_enumerator() {
        let g =
            WeightedGraph::with_scalar_weights(&[1, 2, 3, 1], &[(0, 1), (1, 2), (2, 0), (2, 3)])
                .unwrap();
        let p = egdp(&g).unwrap();
        let (n, wt, e) = (4, 7, 4);
        for (ex, c) in p.terms() {
            let (a, b, cc, d) = (ex[0], ex[1], ex[2], ex[3]);
            let mirrored = p.coeff(&[("w", a), ("x", n - b), ("y", wt - cc), ("z", e - a - d)]);
            assert_eq!(mirrored, c);
        }
        // w = z = 1, x := 1 gives Π (1 + y^{wt(v)})
        let q = p.set_one("w").set_one("z").set_one("x");
        let y = LaurentPolynomial::var(&["y"], "y");
        let one = LaurentPolynomial::one(&["y"]);
        let mut prod = one.clone();
        for w in [1, 2, 3, 1] {
            prod = &prod * &(&one + &y.pow(w));
        }
        assert_eq!(q, prod);
        assert_eq!(p.eval_at_ones(), 16);
    }
}
