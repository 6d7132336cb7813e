//! Hopf structure of MacMahon symmetric functions on the power-sum basis,
//! linear functionals and their convolution, and the Hopf-theoretic
//! recovery of forest statistics and the EGDP from a CMF.

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::algebra::{
    binomial, c_add, c_mul, sign, Coeff, Exponents, LaurentPolynomial, MacMahonElement,
    TensorElement, TripleTensor, VectorPartition, VectorVec,
};
use crate::chromatic::egdp_variables;
use crate::error::{Error, Result};

/// `Δ(p_Λ) = Σ_{J ⊆ [ℓ(Λ)]} p_{Λ|J} ⊗ p_{Λ|J̄}`, extended linearly.
///
/// Positions are subsets of the canonical part list; equal keys arising from
/// repeated parts are merged.
pub fn coproduct(e: &MacMahonElement) -> TensorElement {
    let mut out = TensorElement::zero(e.width());
    for (l, c) in e.terms() {
        let len = l.len();
        assert!(len < 64, "partition too long for subset enumeration");
        for mask in 0u64..(1u64 << len) {
            let (a, b) = l.split(mask);
            out.add_term(a, b, c);
        }
    }
    out
}

/// `(Δ ⊗ I) ∘ Δ`.
pub fn coproduct_then_left(e: &MacMahonElement) -> TripleTensor {
    let mut out = TripleTensor::new();
    for (l, r, c) in coproduct(e).terms() {
        for (a, b, k) in coproduct(&MacMahonElement::basis(l.clone())).terms() {
            add_triple(&mut out, (a.clone(), b.clone(), r.clone()), c_mul(c, k));
        }
    }
    out
}

/// `(I ⊗ Δ) ∘ Δ`.
pub fn coproduct_then_right(e: &MacMahonElement) -> TripleTensor {
    let mut out = TripleTensor::new();
    for (l, r, c) in coproduct(e).terms() {
        for (a, b, k) in coproduct(&MacMahonElement::basis(r.clone())).terms() {
            add_triple(&mut out, (l.clone(), a.clone(), b.clone()), c_mul(c, k));
        }
    }
    out
}

fn add_triple(
    t: &mut TripleTensor,
    key: (VectorPartition, VectorPartition, VectorPartition),
    c: Coeff,
) {
    let slot = t.entry(key.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        t.remove(&key);
    }
}

/// `S(p_Λ) = (-1)^{ℓ(Λ)} p_Λ`.
pub fn antipode(e: &MacMahonElement) -> MacMahonElement {
    e.map_coeffs(|l, c| sign(l.len() as i64) * c)
}

type BasisRule = dyn Fn(&VectorPartition) -> LaurentPolynomial + Send + Sync;

/// A linear map from MacMahon functions to Laurent polynomials, given by its
/// values on the power-sum basis.
#[derive(Clone)]
pub struct LinearFunctional {
    rule: Arc<BasisRule>,
}

impl fmt::Debug for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LinearFunctional")
    }
}

impl LinearFunctional {
    pub fn new(
        rule: impl Fn(&VectorPartition) -> LaurentPolynomial + Send + Sync + 'static,
    ) -> Self {
        LinearFunctional {
            rule: Arc::new(rule),
        }
    }

    pub fn on_basis(&self, lambda: &VectorPartition) -> LaurentPolynomial {
        (self.rule)(lambda)
    }

    pub fn apply(&self, e: &MacMahonElement) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::default();
        for (l, c) in e.terms() {
            out.add_scaled(&self.on_basis(l), c);
        }
        out
    }

    /// The counit: 1 on `p_∅`, 0 on every other basis element.
    pub fn counit() -> Self {
        LinearFunctional::new(|l| {
            let c = if l.is_empty() { 1 } else { 0 };
            LaurentPolynomial::constant::<&str>(&[], c)
        })
    }

    /// Sends `p_Λ` to the monomial `Π_i q_{λ^(i)}` in one formal variable per
    /// distinct part. Power sums are algebraically independent, so this is an
    /// injective algebra map: a faithful stand-in for the identity.
    pub fn power_sum_coordinates() -> Self {
        LinearFunctional::new(|l| {
            let mut out = LaurentPolynomial::constant::<&str>(&[], 1);
            for (v, m) in l.multiplicities() {
                let name = format!("q{v}");
                let var = LaurentPolynomial::var(&[name.as_str()], &name);
                out = &out * &var.pow(m as u32);
            }
            out
        })
    }

    /// `f ∘ S`.
    pub fn after_antipode(&self) -> Self {
        let f = self.clone();
        LinearFunctional::new(move |l| f.on_basis(l).scale(sign(l.len() as i64)))
    }

    /// `φ_{t,u,v}`: `p_Λ ↦ t^n (1 - u)^{n - ℓ(Λ)} Π_i v_i^{w_i}` where
    /// `(n, w_1, …, w_r)` is the grade of Λ.
    pub fn phi(t: LaurentPolynomial, u: LaurentPolynomial, v: Vec<LaurentPolynomial>) -> Self {
        let one_minus_u = &LaurentPolynomial::constant(u.vars(), 1) - &u;
        LinearFunctional::new(move |l| {
            let grade = if l.is_empty() {
                VectorVec::zero(v.len() + 1)
            } else {
                l.grade()
            };
            let n = grade.coords()[0];
            let drop = n.checked_sub(l.len() as u32).expect(
                "φ is defined on partitions whose parts all have a positive first coordinate",
            );
            let mut out = t.pow(n);
            out = &out * &one_minus_u.pow(drop);
            for (vi, &wi) in v.iter().zip(&grade.coords()[1..]) {
                out = &out * &vi.pow(wi);
            }
            out
        })
    }
}

/// `(f * g)(e) = Σ f(e_1) g(e_2)` over the coproduct of `e`.
pub fn convolve(
    f: &LinearFunctional,
    g: &LinearFunctional,
    e: &MacMahonElement,
) -> LaurentPolynomial {
    let mut fc: HashMap<&VectorPartition, LaurentPolynomial> = HashMap::default();
    let mut gc: HashMap<&VectorPartition, LaurentPolynomial> = HashMap::default();
    let delta = coproduct(e);
    let mut out = LaurentPolynomial::default();
    for (l, r, c) in delta.terms() {
        let a = fc.entry(l).or_insert_with(|| f.on_basis(l));
        let b = gc.entry(r).or_insert_with(|| g.on_basis(r));
        out.add_scaled(&(&*a * &*b), c);
    }
    out
}

fn check_phi_width(e: &MacMahonElement, v_len: usize) -> Result<()> {
    if e.width() != v_len + 1 {
        return Err(Error::WidthMismatch {
            expected: e.width(),
            found: v_len + 1,
        });
    }
    check_vertex_counts(e)
}

fn check_vertex_counts(e: &MacMahonElement) -> Result<()> {
    let ok = e
        .terms()
        .all(|(l, _)| l.parts().iter().all(|p| p.coords()[0] >= 1));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "φ needs every part to have a positive first coordinate".into(),
        ))
    }
}

/// `φ_{t,u,v}(e)`; `v` must have one entry per weight coordinate.
pub fn phi(
    e: &MacMahonElement,
    t: &LaurentPolynomial,
    u: &LaurentPolynomial,
    v: &[LaurentPolynomial],
) -> Result<LaurentPolynomial> {
    check_phi_width(e, v.len())?;
    Ok(LinearFunctional::phi(t.clone(), u.clone(), v.to_vec()).apply(e))
}

/// Names of the formal variables used by [`phi_symbolic`]: `t, u, v` for
/// width 2 and `t, u, v1, …, vr` otherwise.
pub fn phi_variables(width: usize) -> Vec<String> {
    let mut vars = vec!["t".to_string(), "u".to_string()];
    if width == 2 {
        vars.push("v".into());
    } else {
        vars.extend((1..width).map(|i| format!("v{i}")));
    }
    vars
}

/// `φ_{t,u,v}(e)` with formal variables `t, u, v…`.
pub fn phi_symbolic(e: &MacMahonElement) -> Result<LaurentPolynomial> {
    check_vertex_counts(e)?;
    let vars = phi_variables(e.width().max(1));
    // φ only sees (grade, length); pool first, then expand (1 - u)^{n-ℓ}
    let mut pools: HashMap<(VectorVec, u32), Coeff> = HashMap::default();
    for (l, c) in e.terms() {
        let grade = if l.is_empty() {
            VectorVec::zero(vars.len() - 2 + 1)
        } else {
            l.grade()
        };
        let slot = pools.entry((grade, l.len() as u32)).or_insert(0);
        *slot = c_add(*slot, c);
    }
    let mut terms: Vec<(Exponents, Coeff)> = Vec::new();
    for ((grade, len), c) in pools {
        let n = grade.coords()[0];
        let drop = n - len;
        let mut exps: Exponents = SmallVec::from_elem(0, vars.len());
        exps[0] = n as i32;
        for (dst, &src) in exps[2..].iter_mut().zip(&grade.coords()[1..]) {
            *dst = src as i32;
        }
        for i in 0..=drop {
            exps[1] = i as i32;
            let k = c_mul(c, c_mul(binomial(drop as i64, i as i64), sign(i as i64)));
            terms.push((exps.clone(), k));
        }
    }
    Ok(LaurentPolynomial::from_terms(&vars, terms))
}

/// Vertex count, edge count, total weight and component count of a forest,
/// read off its CMF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestStats {
    pub n: u64,
    pub e: u64,
    pub w: VectorVec,
    pub c: u64,
}

impl fmt::Display for ForestStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} e={} w=", self.n, self.e)?;
        if self.w.width() == 1 {
            write!(f, "{}", self.w.coords()[0])?;
        } else {
            write!(f, "{}", self.w)?;
        }
        write!(f, " c={}", self.c)
    }
}

/// Reads `(n, e, w, c)` from the monomial `φ_{t,u,v}(X̃_F) = t^n u^e v^w`.
pub fn recover_stats(e: &MacMahonElement) -> Result<ForestStats> {
    let image = phi_symbolic(e)?;
    let (exps, coeff) = image
        .as_monomial()
        .filter(|&(_, c)| c == 1)
        .ok_or_else(|| Error::NotMonomial(image.to_string()))?;
    if exps.iter().any(|&k| k < 0) {
        return Err(Error::NotMonomial(image.to_string()));
    }
    debug_assert_eq!(coeff, 1);
    let n = exps[0] as u64;
    let edges = exps[1] as u64;
    if edges > n {
        return Err(Error::NotMonomial(image.to_string()));
    }
    Ok(ForestStats {
        n,
        e: edges,
        w: VectorVec::new(exps[2..].iter().map(|&k| k as u32)),
        c: n - edges,
    })
}

/// `γ = φ_{wx, w⁻¹z, y} * φ_{w, w⁻¹, 1}`, computed from the coproduct alone.
/// For a forest CMF the result is `w^{c(F)}` times the EGDP.
///
/// Both functionals depend only on the grade and length of a basis
/// element, so coproduct terms are first pooled by those and each pool is
/// expanded once:
/// `(wx)^{n₁} (1 - z/w)^{n₁-ℓ₁} y^{w₁} · w^{n₂} (1 - 1/w)^{n₂-ℓ₂}`.
///
/// # Panics
/// If some part has first coordinate 0 (no graph produces such a part).
pub fn gamma(e: &MacMahonElement) -> LaurentPolynomial {
    let r = e.width().saturating_sub(1).max(1);
    let vars = egdp_variables(r);
    // key [n₁, n₂, w₁...] → dense c[a][b] with a = n₁ - ℓ₁, b = n₂ - ℓ₂
    let mut pools: HashMap<SmallVec<[u32; 8]>, Vec<Coeff>> = HashMap::default();
    let mut key: SmallVec<[u32; 8]> = SmallVec::from_elem(0, 2 + r);
    let drop = |n: u32, l: u32| n.checked_sub(l).expect("every part has a vertex") as usize;
    for (lambda, c) in e.terms() {
        let n = lambda.grade().coords().first().copied().unwrap_or(0);
        let len = lambda.len() as u32;
        // the coproduct of p_Λ, with repeated parts merged: p_Ω ⊗ p_{Λ∖Ω} C(Λ,Ω) times
        lambda.for_each_sub_multiset(|grade, len_o, ways| {
            key[0] = grade.first().copied().unwrap_or(0);
            key[1] = n - key[0];
            for (dst, &src) in key[2..].iter_mut().zip(grade.iter().skip(1)) {
                *dst = src;
            }
            let a = drop(key[0], len_o as u32);
            let b = drop(key[1], len - len_o as u32);
            let cols = key[1] as usize + 1;
            let dense = pools
                .entry(key.clone())
                .or_insert_with(|| vec![0; (key[0] as usize + 1) * cols]);
            let slot = &mut dense[a * cols + b];
            *slot = c_add(*slot, c_mul(c, ways));
        });
    }
    let mut terms: Vec<(Exponents, Coeff)> = Vec::new();
    for (k, dense) in pools {
        let (n1, n2) = (k[0] as usize, k[1] as usize);
        let cols = n2 + 1;
        // (1 - z/w)^a (1 - 1/w)^b = Σ_{i,j} C(a,i) C(b,j) (-1)^{i+j} z^i w^{-i-j}
        let mut by_i = vec![0 as Coeff; (n1 + 1) * cols];
        for a in 0..=n1 {
            for b in 0..=n2 {
                let c = dense[a * cols + b];
                if c == 0 {
                    continue;
                }
                for i in 0..=a {
                    let t = c_mul(c, c_mul(binomial(a as i64, i as i64), sign(i as i64)));
                    by_i[i * cols + b] = c_add(by_i[i * cols + b], t);
                }
            }
        }
        let mut exps: Exponents = SmallVec::from_elem(0, vars.len());
        exps[1] = n1 as i32;
        for (dst, &src) in exps[2..2 + r].iter_mut().zip(&k[2..]) {
            *dst = src as i32;
        }
        for i in 0..=n1 {
            let mut by_k = vec![0 as Coeff; n2 + 1];
            for b in 0..=n2 {
                let c = by_i[i * cols + b];
                if c == 0 {
                    continue;
                }
                for (j, slot) in by_k[..=b].iter_mut().enumerate() {
                    let t = c_mul(c, c_mul(binomial(b as i64, j as i64), sign(j as i64)));
                    *slot = c_add(*slot, t);
                }
            }
            exps[2 + r] = i as i32;
            for (j, &c) in by_k.iter().enumerate() {
                if c != 0 {
                    exps[0] = (n1 + n2) as i32 - i as i32 - j as i32;
                    terms.push((exps.clone(), c));
                }
            }
        }
    }
    LaurentPolynomial::from_terms(&vars, terms)
}

/// EGDP of a forest from its CMF: `γ(X̃_F) / w^{c(F)}`.
pub fn recover_egdp_hopf(e: &MacMahonElement) -> Result<LaurentPolynomial> {
    let stats = recover_stats(e)?;
    let g = gamma(e).shift("w", -(stats.c as i32));
    if !g.is_polynomial() {
        return Err(Error::Reconstruction(format!(
            "negative exponent after dividing by w^{}",
            stats.c
        )));
    }
    Ok(g)
}
