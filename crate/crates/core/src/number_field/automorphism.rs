//! Automorphisms of a number field, given by the image of the generator.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use serde_json::{json, Value};

use num_bigint::BigInt;

use super::field::clear_denominators;
use super::{FieldError, NFElement, NumberField};
use crate::algebra::Q;

/// Field automorphism determined by `theta -> image`.
#[derive(Clone)]
pub struct NFAutomorphism {
    image: NFElement,
    // column j = image^j on the power basis, as integer numerators over a
    // common denominator, built on first use
    matrix: OnceLock<Arc<(Vec<Vec<BigInt>>, BigInt)>>,
}

impl PartialEq for NFAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for NFAutomorphism {}

impl Hash for NFAutomorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

impl NFAutomorphism {
    /// Checks that `image` is a root of the defining polynomial; any such
    /// image gives an automorphism.
    pub fn new(image: NFElement) -> Result<Self, FieldError> {
        let field = image.parent();
        if !image.eval_poly(field.defining_poly()).is_zero() {
            return Err(FieldError::NotARoot(image.to_string()));
        }
        Ok(Self::unchecked(image))
    }

    fn unchecked(image: NFElement) -> Self {
        Self { image, matrix: OnceLock::new() }
    }

    pub fn identity(field: &NumberField) -> Self {
        Self::unchecked(field.generator())
    }

    fn matrix(&self) -> &(Vec<Vec<BigInt>>, BigInt) {
        self.matrix.get_or_init(|| {
            let n = self.field().degree();
            let mut cols = Vec::with_capacity(n);
            let mut p = self.field().one();
            for _ in 0..n {
                cols.push(p.coords().to_vec());
                p = &p * &self.image;
            }
            let flat: Vec<Q> = cols.iter().flatten().cloned().collect();
            let (nums, den) = clear_denominators(&flat);
            Arc::new((nums.chunks(n).map(<[BigInt]>::to_vec).collect(), den))
        })
    }

    pub fn field(&self) -> &NumberField {
        self.image.parent()
    }

    pub fn image(&self) -> &NFElement {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image == self.field().generator()
    }

    pub fn apply(&self, x: &NFElement) -> NFElement {
        assert!(x.parent() == self.field(), "element of a different number field");
        let n = self.field().degree();
        let (cols, den) = self.matrix();
        let (xs, dx) = clear_denominators(x.coords());
        let mut out = vec![BigInt::zero(); n];
        for (xj, col) in xs.iter().zip(cols) {
            if xj.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                if !c.is_zero() {
                    *o += xj * c;
                }
            }
        }
        self.field().from_scaled(out, &(dx * den))
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &NFAutomorphism) -> NFAutomorphism {
        Self::unchecked(self.apply(&other.image))
    }

    pub fn pow(&self, k: usize) -> NFAutomorphism {
        let mut acc = Self::identity(self.field());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Order in the automorphism group, found by iteration.
    pub fn order(&self) -> Result<usize, FieldError> {
        let n = self.field().degree();
        let mut cur = self.clone();
        for k in 1..=n {
            if cur.is_identity() {
                return Ok(k);
            }
            cur = self.compose(&cur);
        }
        Err(FieldError::OrderExceedsDegree(n))
    }

    pub fn inverse(&self) -> NFAutomorphism {
        let ord = self.order().expect("automorphism of finite order");
        self.pow(ord - 1)
    }

    pub fn to_json(&self) -> Value {
        json!({ "image": self.image.to_json() })
    }

    pub fn from_json(field: &NumberField, v: &Value) -> Result<Self, FieldError> {
        let image = v
            .get("image")
            .ok_or_else(|| FieldError::Parse("automorphism needs \"image\"".into()))?;
        Self::new(NFElement::from_json(field, image)?)
    }
}

impl fmt::Debug for NFAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta -> {}", self.image)
    }
}

/// Finite group of automorphisms with its multiplication table.
/// Index 0 is the identity; `table[i][j]` is the index of `elements[i]`
/// after `elements[j]`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    elements: Vec<NFAutomorphism>,
    table: Vec<Vec<usize>>,
    index: HashMap<NFAutomorphism, usize>,
}

impl AutGroup {
    /// Closure of `generators` under composition. Fails once the closure
    /// exceeds the field degree, which no group of automorphisms can.
    pub fn generate(field: &NumberField, generators: &[NFAutomorphism]) -> Result<Self, FieldError> {
        let n = field.degree();
        let id = NFAutomorphism::identity(field);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        // element i is generators[k] after element p, with p < i
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        // left[k][i] = index of generators[k] after element i
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let h = g.compose(&elements[i]);
                let j = match index.get(&h) {
                    Some(&j) => j,
                    None => {
                        if elements.len() == n {
                            return Err(FieldError::ClosureExceedsDegree(n));
                        }
                        let j = elements.len();
                        index.insert(h.clone(), j);
                        queue.push_back(j);
                        elements.push(h);
                        parent.push((k, i));
                        j
                    }
                };
                left[k].push(j);
            }
        }
        let m = elements.len();
        let mut table: Vec<Vec<usize>> = vec![(0..m).collect()];
        for &(k, p) in &parent[1..] {
            let row = (0..m).map(|j| left[k][table[p][j]]).collect();
            table.push(row);
        }
        Ok(Self { elements, table, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[NFAutomorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &NFAutomorphism {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &NFAutomorphism) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == 0).expect("group element has an inverse")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Indices of the subgroup generated by the given indices, ascending.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for &g in gens {
                let h = self.table[g][i];
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }
}
