//! Fixed fields of automorphism groups, quadratic field comparison and
//! composita.

use num_traits::Zero;

use super::{AutGroup, FieldError, NFAutomorphism, NFElement, NumberField, DEFAULT_PRIME_BUDGET};
use crate::algebra::linalg::{solve_in_span, IncrementalBasis};
use crate::algebra::rational::squarefree_part;
use crate::algebra::{certify_irreducible_over_q, discriminant_int, IrreducibilityCertificate, UniPoly, Verdict, Q};

/// Largest `c` tried in the candidates `theta + c * theta^2` and
/// `theta1 + c * theta2`.
const SHIFT_LIMIT: i64 = 12;

/// A subfield `E` of an ambient field `K`, with the embedding `E -> K`.
#[derive(Clone, Debug)]
pub struct FixedField {
    /// `E` on its own power basis.
    pub field: NumberField,
    /// Image in `K` of the generator of `E`.
    pub generator: NFElement,
    /// Order of the group whose fixed field this is.
    pub group_order: usize,
}

impl FixedField {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Maps an element of `E` into `K`.
    pub fn embed(&self, x: &NFElement) -> NFElement {
        assert!(x.parent() == &self.field, "element of a different number field");
        self.generator.eval_poly(&x.as_poly())
    }

    /// Writes an element of `K` lying in `E` on the power basis of `E`.
    pub fn express(&self, y: &NFElement) -> Result<NFElement, FieldError> {
        let d = self.degree();
        let mut columns = Vec::with_capacity(d);
        let mut p = self.generator.parent().one();
        for _ in 0..d {
            columns.push(p.coords().to_vec());
            p = &p * &self.generator;
        }
        let c = solve_in_span(&columns, y.coords()).ok_or(FieldError::NotInSubfield)?;
        self.field.element(c)
    }
}

fn relative_trace(group: &AutGroup, x: &NFElement) -> NFElement {
    group.elements().iter().fold(x.parent().zero(), |acc, h| &acc + &h.apply(x))
}

/// Fixed field of the group generated by `generators`.
///
/// Candidates for a generator are the relative traces of
/// `theta, theta^2, ..., theta^(n-1)`, then of `theta + c * theta^2` for
/// `c = 1, 2, ...`; the first whose minimal polynomial has degree
/// `n / |H|` is used.
pub fn fixed_field(field: &NumberField, generators: &[NFAutomorphism]) -> Result<FixedField, FieldError> {
    let group = AutGroup::generate(field, generators)?;
    let n = field.degree();
    let target = n / group.order();
    let theta = field.generator();
    let powers = (1..n.max(2)).map(|i| theta.pow(i as u32));
    let shifted = (1..=SHIFT_LIMIT).map(|c| &theta + &theta.pow(2).scale(&Q::from_integer(c.into())));
    for candidate in powers.chain(shifted) {
        let t = relative_trace(&group, &candidate);
        let m = t.minimal_polynomial();
        if m.degree() as usize == target {
            let cert = IrreducibilityCertificate::subfield(
                &m,
                field.defining_poly(),
                field.certificate(),
                t.coords().to_vec(),
            )
            .ok_or_else(|| FieldError::BadCertificate(m.to_string()))?;
            return Ok(FixedField {
                field: NumberField::with_certificate(m, cert)?,
                generator: t,
                group_order: group.order(),
            });
        }
    }
    Err(FieldError::GeneratorSearchExhausted)
}

/// Whether two quadratic fields coincide, by comparing squarefree parts of
/// their discriminants.
pub fn same_quadratic_field(a: &NumberField, b: &NumberField) -> Result<bool, FieldError> {
    for k in [a, b] {
        if k.degree() != 2 {
            return Err(FieldError::WrongDegree { expected: 2, got: k.degree() });
        }
    }
    let da = squarefree_part(&discriminant_int(a.defining_poly())?);
    let db = squarefree_part(&discriminant_int(b.defining_poly())?);
    Ok(da == db)
}

/// `L = K1 K2` with the images of both generators.
#[derive(Clone, Debug)]
pub struct Compositum {
    pub field: NumberField,
    /// Image of the generator of `K1`.
    pub left: NFElement,
    /// Image of the generator of `K2`.
    pub right: NFElement,
    /// The generator of `L` is `theta1 + shift * theta2`.
    pub shift: i64,
}

/// Element of `K1 (x) K2`, as a polynomial in `theta2` with coefficients in `K1`.
struct Tensor<'a> {
    k2: &'a NumberField,
    parts: Vec<NFElement>,
}

impl Tensor<'_> {
    fn mul(&self, other: &Self) -> Self {
        let n2 = self.k2.degree();
        let k1 = self.parts[0].parent();
        let mut wide = vec![k1.zero(); 2 * n2 - 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                wide[i + j] = &wide[i + j] + &(a * b);
            }
        }
        let f2 = self.k2.defining_poly();
        for k in (n2..wide.len()).rev() {
            let c = std::mem::replace(&mut wide[k], k1.zero());
            for i in 0..n2 {
                let fi = f2.coeff(i);
                if !fi.is_zero() {
                    wide[k - n2 + i] = &wide[k - n2 + i] - &c.scale(&fi);
                }
            }
        }
        wide.truncate(n2);
        Tensor { k2: self.k2, parts: wide }
    }

    fn flat(&self) -> Vec<Q> {
        self.parts.iter().flat_map(|p| p.coords().iter().cloned()).collect()
    }
}

/// Compositum of two linearly disjoint fields.
pub fn compositum(k1: &NumberField, k2: &NumberField) -> Result<Compositum, FieldError> {
    let (n1, n2) = (k1.degree(), k2.degree());
    let big_n = n1 * n2;
    let unit = |x: NFElement, at: usize| {
        let mut parts = vec![k1.zero(); n2];
        parts[at] = x;
        Tensor { k2, parts }
    };
    let left = unit(k1.generator(), 0);
    let right = if n2 > 1 { unit(k1.one(), 1) } else { unit(k1.from_poly(&k2.generator().as_poly()), 0) };
    let shifts = (1..=SHIFT_LIMIT).flat_map(|c| [c, -c]);
    for c in shifts {
        let mut gamma = unit(k1.generator(), 0);
        for (g, r) in gamma.parts.iter_mut().zip(&right.parts) {
            *g = &*g + &r.scale(&Q::from_integer(c.into()));
        }
        let mut basis = IncrementalBasis::new();
        let mut columns = Vec::with_capacity(big_n);
        let mut power = unit(k1.one(), 0);
        let m = loop {
            let v = power.flat();
            if let Some(dep) = basis.insert(v.clone()) {
                break UniPoly::new(dep);
            }
            columns.push(v);
            power = power.mul(&gamma);
        };
        if m.degree() as usize != big_n {
            continue;
        }
        let coprime = IrreducibilityCertificate::coprime_compositum(
            &m,
            (k1.defining_poly(), k1.certificate()),
            (k2.defining_poly(), k2.certificate()),
            c,
        );
        let cert = coprime.unwrap_or_else(|| certify_irreducible_over_q(&m, DEFAULT_PRIME_BUDGET));
        match cert.verdict {
            Verdict::Reducible => return Err(FieldError::NotLinearlyDisjoint),
            Verdict::Inconclusive => return Err(FieldError::IrreducibilityInconclusive(cert.to_string())),
            Verdict::Irreducible => {}
        }
        let field = NumberField::with_certificate(m, cert)?;
        let solve = |t: &Tensor| {
            solve_in_span(&columns, &t.flat()).expect("gamma generates the tensor algebra")
        };
        let left_img = field.element(solve(&left))?;
        let right_img = field.element(solve(&right))?;
        return Ok(Compositum { field, left: left_img, right: right_img, shift: c });
    }
    Err(FieldError::NotLinearlyDisjoint)
}

/// Whether `x` is fixed by every automorphism in `group`.
#[cfg(test)]
fn is_fixed(group: &[NFAutomorphism], x: &NFElement) -> bool {
    group.iter().all(|g| g.apply(x) == *x)
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big_f() -> NumberField {
        NumberField::new(UniPoly::from_ints(&[2, 0, -16, 0, 20, 0, -8, 0, 1])).unwrap()
    }

    fn sigma(f: &NumberField) -> NFAutomorphism {
        NFAutomorphism::new(f.from_ints(&[0, -5, 0, 5, 0, -1, 0, 0]).unwrap()).unwrap()
    }

    #[test]
    fn fixed_fields_of_cyclic_octic() {
        let f = big_f();
        let s = sigma(&f);
        // sigma^4 is theta -> -theta, so the fixed field is generated by
        // 2 theta^2, a root of x^4 - 16x^3 + 80x^2 - 128x + 32.
        let e4 = fixed_field(&f, &[s.pow(4)]).unwrap();
        assert_eq!(e4.degree(), 4);
        assert_eq!(e4.generator, f.generator().pow(2).scale(&Q::from_integer(2.into())));
        assert_eq!(e4.field.defining_poly(), &UniPoly::from_ints(&[32, -128, 80, -16, 1]));
        let e2 = fixed_field(&f, &[s.pow(2)]).unwrap();
        assert_eq!(e2.degree(), 2);
        assert!(same_quadratic_field(&e2.field, &NumberField::new(UniPoly::from_ints(&[-2, 0, 1])).unwrap()).unwrap());
        let e1 = fixed_field(&f, std::slice::from_ref(&s)).unwrap();
        assert_eq!(e1.degree(), 1);
        let whole = fixed_field(&f, &[]).unwrap();
        assert_eq!(whole.degree(), 8);
    }

    #[test]
    fn express_and_embed() {
        let f = big_f();
        let s = sigma(&f);
        let e = fixed_field(&f, &[s.pow(4)]).unwrap();
        let y = e.field.from_ints(&[1, 2, 0, -1]).unwrap();
        let img = e.embed(&y);
        assert!(is_fixed(&[s.pow(4)], &img));
        assert_eq!(e.express(&img).unwrap(), y);
        assert_eq!(e.express(&f.generator()), Err(FieldError::NotInSubfield));
    }

    #[test]
    fn quadratic_comparison() {
        let k = |c: &[i64]| NumberField::new(UniPoly::from_ints(c)).unwrap();
        // x^2 + x - 1 and x^2 - 5 both give Q(sqrt 5).
        assert!(same_quadratic_field(&k(&[-1, 1, 1]), &k(&[-5, 0, 1])).unwrap());
        assert!(!same_quadratic_field(&k(&[-2, 0, 1]), &k(&[-5, 0, 1])).unwrap());
        assert!(matches!(
            same_quadratic_field(&big_f(), &k(&[-5, 0, 1])),
            Err(FieldError::WrongDegree { .. })
        ));
    }

    #[test]
    fn compositum_of_quadratics() {
        let k = |c: &[i64]| NumberField::new(UniPoly::from_ints(c)).unwrap();
        let c = compositum(&k(&[-2, 0, 1]), &k(&[-3, 0, 0, 1])).unwrap();
        assert_eq!(c.field.degree(), 6);
        assert!(matches!(c.field.certificate().witness, crate::algebra::Witness::CoprimeCompositum { .. }));
        let two = c.field.from_rational(Q::from_integer(2.into()));
        let three = c.field.from_rational(Q::from_integer(3.into()));
        assert_eq!(&c.left * &c.left, two);
        assert_eq!(c.right.pow(3), three);
        // Q(sqrt 2, sqrt 3): every reduction splits, so no certificate exists.
        assert!(matches!(
            compositum(&k(&[-2, 0, 1]), &k(&[-3, 0, 1])),
            Err(FieldError::IrreducibilityInconclusive(_))
        ));
        // Q(sqrt 2) twice: the tensor algebra is not a field.
        assert!(compositum(&k(&[-2, 0, 1]), &k(&[-8, 0, 1])).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(4))]
        #[test]
        fn fixed_field_degree_law(k in 0usize..8) {
            let f = big_f();
            let h = sigma(&f).pow(k);
            let ord = h.order().unwrap();
            let e = fixed_field(&f, std::slice::from_ref(&h)).unwrap();
            prop_assert_eq!(e.degree() * ord, 8);
            prop_assert!(is_fixed(&[h], &e.generator));
        }
    }
}
