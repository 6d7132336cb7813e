use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;

use super::{c_add, c_mul, Coeff, LaurentPolynomial, VectorPartition, VectorVec};
use crate::error::{Error, Result};

/// A finite integer combination of power-sum MacMahon functions `p_Λ` of a
/// fixed width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacMahonElement {
    width: usize,
    terms: BTreeMap<VectorPartition, Coeff>,
}

impl MacMahonElement {
    pub fn zero(width: usize) -> Self {
        MacMahonElement {
            width,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `p_∅ = 1`.
    pub fn one(width: usize) -> Self {
        Self::basis(VectorPartition::empty(width))
    }

    pub fn basis(lambda: VectorPartition) -> Self {
        let mut e = Self::zero(lambda.width());
        e.terms.insert(lambda, 1);
        e
    }

    /// Builds an element from `(Λ, coefficient)` pairs, merging repeated keys.
    pub fn from_terms(
        width: usize,
        terms: impl IntoIterator<Item = (VectorPartition, Coeff)>,
    ) -> Result<Self> {
        let mut e = Self::zero(width);
        for (l, c) in terms {
            if l.width() != width && !l.is_empty() {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: l.width(),
                });
            }
            let l = if l.is_empty() {
                VectorPartition::empty(width)
            } else {
                l
            };
            e.add_term(l, c);
        }
        Ok(e)
    }

    pub(crate) fn add_term(&mut self, l: VectorPartition, c: Coeff) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(l) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = c_add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn from_map_unchecked(
        width: usize,
        terms: BTreeMap<VectorPartition, Coeff>,
    ) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0));
        MacMahonElement { width, terms }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, lambda: &VectorPartition) -> Coeff {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VectorPartition, Coeff)> {
        self.terms.iter().map(|(l, &c)| (l, c))
    }

    fn check_width(&self, other: &MacMahonElement) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MacMahonElement) -> Result<MacMahonElement> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (l, &c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Coeff) -> MacMahonElement {
        if c == 0 {
            return Self::zero(self.width);
        }
        MacMahonElement {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(l, &k)| (l.clone(), c_mul(k, c)))
                .collect(),
        }
    }

    /// Product in the power-sum basis: `p_Λ p_Ω = p_{ΛΩ}`, extended bilinearly.
    pub fn mul(&self, other: &MacMahonElement) -> Result<MacMahonElement> {
        self.check_width(other)?;
        let mut out = Self::zero(self.width);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.concat(b), c_mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Applies a coefficient map to every basis element; used by the sign
    /// twist of the antipode.
    pub(crate) fn map_coeffs(&self, f: impl Fn(&VectorPartition, Coeff) -> Coeff) -> Self {
        let mut out = Self::zero(self.width);
        for (l, &c) in &self.terms {
            out.add_term(l.clone(), f(l, c));
        }
        out
    }

    /// Evaluates at `k` colors: keeps the variables with index `≤ k` and sets
    /// the rest to zero, so `p_λ ↦ Σ_{j≤k} Π_c var(c, j)^{λ_c}`.
    ///
    /// Variables are named as in [`truncation_variables`].
    pub fn truncate(&self, k: usize) -> Result<LaurentPolynomial> {
        if k == 0 {
            return Err(Error::NoColors);
        }
        let vars = truncation_variables(self.width, k);
        let mut cache: HashMap<&VectorVec, LaurentPolynomial> = HashMap::default();
        let mut out = LaurentPolynomial::zero(&vars);
        for (l, &c) in &self.terms {
            let mut prod = LaurentPolynomial::one(&vars);
            for part in l.parts() {
                let f = cache
                    .entry(part)
                    .or_insert_with(|| power_sum_truncated(part, k, &vars));
                prod = &prod * f;
            }
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }
}

/// Variable names used for `k`-color evaluations of width-`m` elements,
/// grouped by color: `x1, y1, x2, y2, …` for width 2, `x1, …` for width 1,
/// and `x1, y1_1, …, y{m-1}_1, x2, …` above width 2.
pub fn truncation_variables(width: usize, k: usize) -> Vec<String> {
    let mut v = Vec::with_capacity(width * k);
    for j in 1..=k {
        for c in 0..width {
            v.push(coloring_var_name(width, c, j));
        }
    }
    v
}

fn coloring_var_name(width: usize, coord: usize, color: usize) -> String {
    match (width, coord) {
        (_, 0) => format!("x{color}"),
        (2, _) => format!("y{color}"),
        (_, i) => format!("y{i}_{color}"),
    }
}

fn power_sum_truncated(part: &VectorVec, k: usize, vars: &[String]) -> LaurentPolynomial {
    let width = part.width();
    let mut out = LaurentPolynomial::zero(vars);
    for j in 0..k {
        let mut e = vec![0i32; vars.len()];
        for (c, &a) in part.coords().iter().enumerate() {
            e[j * width + c] = a as i32;
        }
        out.add_scaled(&LaurentPolynomial::monomial(vars, &e, 1), 1);
    }
    out
}

/// One term per line, `<coeff> * p[(a,b),...]`, ordered by grade, then
/// length, then lexicographically. The zero element prints as `0`.
impl fmt::Display for MacMahonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| a.0.display_cmp(b.0));
        for (l, c) in keys {
            writeln!(f, "{c:+} * p{l}")?;
        }
        Ok(())
    }
}
