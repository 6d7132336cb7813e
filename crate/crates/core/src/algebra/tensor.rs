use std::collections::BTreeMap;
use std::fmt;

use super::{c_add, c_mul, Coeff, VectorPartition};

/// Integer combination of pure tensors `p_Λ ⊗ p_Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    width: usize,
    terms: BTreeMap<(VectorPartition, VectorPartition), Coeff>,
}

/// Integer combination of `p_Λ ⊗ p_Ω ⊗ p_Θ`, used for coassociativity.
pub type TripleTensor = BTreeMap<(VectorPartition, VectorPartition, VectorPartition), Coeff>;

impl TensorElement {
    pub fn zero(width: usize) -> Self {
        TensorElement {
            width,
            terms: BTreeMap::new(),
        }
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

    pub fn add_term(&mut self, left: VectorPartition, right: VectorPartition, c: Coeff) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(left.width(), self.width);
        debug_assert_eq!(right.width(), self.width);
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
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

    pub fn coeff(&self, left: &VectorPartition, right: &VectorPartition) -> Coeff {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VectorPartition, &VectorPartition, Coeff)> {
        self.terms.iter().map(|((l, r), &c)| (l, r, c))
    }

    /// Exchanges the two tensor factors.
    pub fn swap(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.width);
        for ((l, r), &c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c);
        }
        out
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), &c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }

    /// Product in `A ⊗ A`: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, i.e. `m_{1,3} ⊗ m_{2,4}`.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.width);
        for ((a, b), &x) in &self.terms {
            for ((c, d), &y) in &other.terms {
                out.add_term(a.concat(c), b.concat(d), c_mul(x, y));
            }
        }
        out
    }
}

/// One term per line: `<coeff> * p[..] ⊗ p[..]`.
impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|((a, b), _), ((c, d), _)| a.display_cmp(c).then_with(|| b.display_cmp(d)));
        for ((l, r), c) in keys {
            writeln!(f, "{c:+} * p{l} ⊗ p{r}")?;
        }
        Ok(())
    }
}
