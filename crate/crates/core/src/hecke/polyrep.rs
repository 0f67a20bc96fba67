//! Action of the Hecke algebra on Laurent polynomials in `x1..xn`.
//!
//! `X_j` multiplies by `x_j`; `T_i` acts by the Demazure-Lusztig operator
//! `T_i f = q' s_i(f) + (1 - q') x_{i+1} (f - s_i f) / (x_i - x_{i+1})`.
//! It is built from the divided difference alone, without any of the
//! normal-form push rules, so it can serve as an independent check on
//! multiplication.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{HeckeElement, HeckeGen, HeckeResult};
use crate::ring::VScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, VScalar>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> LaurentPoly {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> LaurentPoly {
        let mut f = LaurentPoly::zero(n);
        f.add_term(vec![0; n], &VScalar::one());
        f
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &VScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: &VScalar) {
        assert_eq!(exps.len(), self.n, "exponent vector has the wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn map_terms(&self, mut f: impl FnMut(&[i32], &VScalar, &mut LaurentPoly)) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for (e, c) in &self.terms {
            f(e, c, &mut out);
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})*x^{e:?}")).collect();
        write!(f, "LaurentPoly[{}]", parts.join(" + "))
    }
}

/// `(x^a y^b - x^b y^a) / (x - y)` as `(a', b', sign)` monomials.
fn divided_difference(a: i32, b: i32) -> Vec<(i32, i32, i64)> {
    let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
    (0..hi - lo).map(|k| (lo + k, lo + (hi - lo - 1 - k), sign)).collect()
}

pub fn poly_rep_apply(g: HeckeGen, f: &LaurentPoly) -> HeckeResult<LaurentPoly> {
    g.check(f.n)?;
    let qp = VScalar::v_power(-2);
    let one_minus = &VScalar::one() - &qp;
    let t = |i: usize, f: &LaurentPoly| {
        f.map_terms(|e, c, out| {
            let mut swapped = e.to_vec();
            swapped.swap(i - 1, i);
            out.add_term(swapped, &(c * &qp));
            for (a, b, sign) in divided_difference(e[i - 1], e[i]) {
                let mut m = e.to_vec();
                m[i - 1] = a;
                m[i] = b + 1;
                out.add_term(m, &(c * &one_minus).scale(sign));
            }
        })
    };
    Ok(match g {
        HeckeGen::T(i) => t(i, f),
        HeckeGen::TInv(i) => {
            // v^2 T + (v^2 - 1)
            let v2 = VScalar::v_power(2);
            let tf = t(i, f);
            let mut out = tf.map_terms(|e, c, out| out.add_term(e.to_vec(), &(c * &v2)));
            for (e, c) in &f.terms {
                out.add_term(e.clone(), &(c * &(&v2 - &VScalar::one())));
            }
            out
        }
        HeckeGen::X(j) | HeckeGen::XInv(j) => {
            let d = if matches!(g, HeckeGen::X(_)) { 1 } else { -1 };
            f.map_terms(|e, c, out| {
                let mut m = e.to_vec();
                m[j - 1] += d;
                out.add_term(m, c);
            })
        }
    })
}

/// Action of a whole element: each `X^λ T_w` acts through the reduced word
/// of `w`, rightmost letter first.
pub fn act(e: &HeckeElement, f: &LaurentPoly) -> HeckeResult<LaurentPoly> {
    let mut out = LaurentPoly::zero(f.n);
    for (key, c) in e.terms() {
        let mut g = f.clone();
        for &i in key.w.reduced_word().iter().rev() {
            g = poly_rep_apply(HeckeGen::T(i), &g)?;
        }
        for (exps, d) in &g.terms {
            let m = exps.iter().zip(&key.lambda).map(|(a, l)| a + l).collect();
            out.add_term(m, &(c * d));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply_all(gens: &[HeckeGen], f: &LaurentPoly) -> LaurentPoly {
        gens.iter().rev().fold(f.clone(), |acc, &g| poly_rep_apply(g, &acc).unwrap())
    }

    fn scaled(f: &LaurentPoly, c: &VScalar) -> LaurentPoly {
        f.map_terms(|e, d, out| out.add_term(e.to_vec(), &(d * c)))
    }

    fn sum(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    use HeckeGen::{TInv, XInv, T, X};

    #[test]
    fn divided_difference_values() {
        assert_eq!(divided_difference(1, 0), vec![(0, 0, 1)]);
        assert_eq!(divided_difference(0, 1), vec![(0, 0, -1)]);
        assert!(divided_difference(2, 2).is_empty());
        // (x^-1 - y^-1)/(x - y) = -x^-1 y^-1
        assert_eq!(divided_difference(-1, 0), vec![(-1, -1, -1)]);
    }

    #[test]
    fn multiplication_action() {
        let one = LaurentPoly::one(2);
        let mut x1 = LaurentPoly::zero(2);
        x1.add_term(vec![1, 0], &VScalar::one());
        assert_eq!(poly_rep_apply(X(1), &one).unwrap(), x1);
        assert_eq!(apply_all(&[X(1), X(2)], &one), apply_all(&[X(2), X(1)], &one));
    }

    #[test]
    fn quadratic_on_unit() {
        let one = LaurentPoly::one(2);
        let tt = apply_all(&[T(1), T(1)], &one);
        let t1 = apply_all(&[T(1)], &one);
        let qp = VScalar::v_power(-2);
        let expected = sum(&scaled(&t1, &(&qp - &VScalar::one())), &scaled(&one, &qp));
        assert_eq!(tt, expected);
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i32..=3, n), -4i64..=4, -2i32..=2), 1..5).prop_map(
            move |terms| {
                let mut f = LaurentPoly::zero(n);
                for (exps, c, e) in terms {
                    f.add_term(exps, &VScalar::monomial(c, e));
                }
                f
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The operators satisfy every defining relation on random inputs.
        #[test]
        fn defining_relations_hold(f in arb_poly(4)) {
            let qp = VScalar::v_power(-2);
            for i in 1..4 {
                prop_assert_eq!(apply_all(&[T(i), TInv(i)], &f), f.clone());
                prop_assert_eq!(apply_all(&[TInv(i), T(i)], &f), f.clone());
                prop_assert_eq!(apply_all(&[X(i), XInv(i)], &f), f.clone());
                prop_assert_eq!(apply_all(&[T(i), X(i), T(i)], &f), scaled(&apply_all(&[X(i + 1)], &f), &qp));
                let tt = apply_all(&[T(i), T(i)], &f);
                let rhs = sum(&scaled(&apply_all(&[T(i)], &f), &(&qp - &VScalar::one())), &scaled(&f, &qp));
                prop_assert_eq!(tt, rhs);
                for j in 1..=4 {
                    prop_assert_eq!(apply_all(&[X(i), X(j)], &f), apply_all(&[X(j), X(i)], &f));
                    if j != i && j != i + 1 {
                        prop_assert_eq!(apply_all(&[T(i), X(j)], &f), apply_all(&[X(j), T(i)], &f));
                    }
                }
                for j in 1..4 {
                    if i.abs_diff(j) >= 2 {
                        prop_assert_eq!(apply_all(&[T(i), T(j)], &f), apply_all(&[T(j), T(i)], &f));
                    }
                }
                if i < 3 {
                    prop_assert_eq!(apply_all(&[T(i), T(i + 1), T(i)], &f), apply_all(&[T(i + 1), T(i), T(i + 1)], &f));
                }
            }
        }
    }
}
