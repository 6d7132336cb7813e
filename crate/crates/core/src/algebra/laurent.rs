use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::{c_add, c_mul, Coeff};

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Exponents = SmallVec<[i32; 6]>;

/// Sparse Laurent polynomial with exact integer coefficients over an ordered
/// list of named variables.
///
/// Binary operations on polynomials with different variable lists first
/// extend both to the union of their variables (left operand's variables
/// first), so `x + y` over `[x]` and `[y]` lives over `[x, y]`.
#[derive(Debug, Clone, Default)]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Coeff>,
}

impl LaurentPolynomial {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        LaurentPolynomial {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Coeff) -> Self {
        let mut p = Self::zero(vars);
        if c != 0 {
            p.terms.insert(SmallVec::from_elem(0, p.vars.len()), c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, 1)
    }

    /// The polynomial consisting of the single variable `name`, over `vars`.
    ///
    /// # Panics
    /// If `name` is not one of `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e: Exponents = SmallVec::from_elem(0, p.vars.len());
        e[i] = 1;
        p.terms.insert(e, 1);
        p
    }

    /// `coeff · Π vars^exps`.
    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[i32], coeff: Coeff) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if coeff != 0 {
            p.terms.insert(SmallVec::from_slice(exps), coeff);
        }
        p
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Exponents, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            let slot = p.terms.entry(e).or_insert(0);
            *slot = c_add(*slot, c);
        }
        p.terms.retain(|_, c| *c != 0);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, Coeff)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs;
    /// unnamed variables have exponent 0.
    ///
    /// # Panics
    /// If a named variable is not part of this polynomial.
    pub fn coeff(&self, monomial: &[(&str, i32)]) -> Coeff {
        let mut e: Exponents = SmallVec::from_elem(0, self.vars.len());
        for &(name, k) in monomial {
            let i = self
                .index_of(name)
                .unwrap_or_else(|| panic!("unknown variable {name}"));
            e[i] = k;
        }
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Sum of all coefficients (evaluation at all variables = 1).
    pub fn eval_at_ones(&self) -> Coeff {
        self.terms.values().fold(0, |a, &c| c_add(a, c))
    }

    /// The single term, if this polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Exponents, Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, &c)| (e, c))
        } else {
            None
        }
    }

    /// Smallest exponent of `name` across all terms (0 for the zero
    /// polynomial or an absent variable).
    pub fn min_exponent(&self, name: &str) -> i32 {
        match self.index_of(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    /// `true` when no term has a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    fn add_term(&mut self, e: Exponents, c: Coeff) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = c_add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Re-expresses this polynomial over `vars`, which must contain every
    /// variable appearing with a nonzero exponent.
    ///
    /// # Panics
    /// If a variable carrying a nonzero exponent is missing from `vars`.
    pub fn over<S: AsRef<str>>(&self, vars: &[S]) -> LaurentPolynomial {
        if vars.len() == self.vars.len()
            && vars.iter().zip(&self.vars).all(|(a, b)| a.as_ref() == b)
        {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w.as_ref() == v))
            .collect();
        let mut out = Self::zero(vars);
        for (e, &c) in &self.terms {
            let mut ne: Exponents = SmallVec::from_elem(0, vars.len());
            for (i, &k) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => ne[j] = k,
                    None => assert!(
                        k == 0,
                        "variable {} dropped with nonzero exponent",
                        self.vars[i]
                    ),
                }
            }
            out.add_term(ne, c);
        }
        out
    }

    fn union_vars(&self, other: &LaurentPolynomial) -> Option<Vec<String>> {
        if self.vars == other.vars {
            return None;
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        Some(vars)
    }

    fn aligned<'a>(
        &'a self,
        other: &'a LaurentPolynomial,
    ) -> (
        std::borrow::Cow<'a, LaurentPolynomial>,
        std::borrow::Cow<'a, LaurentPolynomial>,
    ) {
        use std::borrow::Cow;
        match self.union_vars(other) {
            None => (Cow::Borrowed(self), Cow::Borrowed(other)),
            Some(v) => (Cow::Owned(self.over(&v)), Cow::Owned(other.over(&v))),
        }
    }

    pub fn scale(&self, c: Coeff) -> LaurentPolynomial {
        if c == 0 {
            return Self::zero(&self.vars);
        }
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &k)| (e.clone(), c_mul(k, c)))
                .collect(),
        }
    }

    /// In-place `self += c · other`.
    pub fn add_scaled(&mut self, other: &LaurentPolynomial, c: Coeff) {
        if c == 0 || other.is_zero() {
            return;
        }
        if let Some(v) = self.union_vars(other) {
            *self = self.over(&v);
            let o = other.over(&v);
            for (e, &k) in &o.terms {
                self.add_term(e.clone(), c_mul(k, c));
            }
        } else {
            for (e, &k) in &other.terms {
                self.add_term(e.clone(), c_mul(k, c));
            }
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPolynomial {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `name^delta` (a monomial shift).
    pub fn shift(&self, name: &str, delta: i32) -> LaurentPolynomial {
        let i = self
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| {
                    let mut e = e.clone();
                    e[i] += delta;
                    (e, c)
                })
                .collect(),
        }
    }

    /// Substitutes `name := 1` and removes the variable.
    pub fn set_one(&self, name: &str) -> LaurentPolynomial {
        let Some(i) = self.index_of(name) else {
            return self.clone();
        };
        let vars: Vec<String> = self.vars.iter().filter(|v| *v != name).cloned().collect();
        let mut out = Self::zero(&vars);
        for (e, &c) in &self.terms {
            let mut ne = e.clone();
            ne.remove(i);
            out.add_term(ne, c);
        }
        out
    }

    /// Renames variables simultaneously according to `(old, new)` pairs.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> LaurentPolynomial {
        let vars = self
            .vars
            .iter()
            .map(|v| {
                pairs
                    .iter()
                    .find(|(old, _)| old == v)
                    .map_or_else(|| v.clone(), |(_, new)| new.to_string())
            })
            .collect();
        LaurentPolynomial {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Terms in graded lexicographic order: ascending total degree, ties
    /// broken by descending lexicographic order of exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, Coeff)> {
        let mut t: Vec<_> = self.terms.iter().map(|(e, &c)| (e, c)).collect();
        t.sort_by(|(a, _), (b, _)| grlex(a, b));
        t
    }
}

fn grlex(a: &Exponents, b: &Exponents) -> Ordering {
    let da: i64 = a.iter().map(|&k| k as i64).sum();
    let db: i64 = b.iter().map(|&k| k as i64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPolynomial {}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let (a, b) = self.aligned(rhs);
        let mut out = LaurentPolynomial::zero(&a.vars);
        for (ea, &ca) in &a.terms {
            for (eb, &cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(e, c_mul(ca, cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Canonical text form: `<coeff> v^k ...` per term, terms in graded
/// lexicographic order, separated by single spaces. Exponent 1 is written
/// bare and exponent 0 is omitted; the zero polynomial prints as `0`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}")?;
            for (v, &k) in self.vars.iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => write!(f, " {v}")?,
                    _ => write!(f, " {v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
