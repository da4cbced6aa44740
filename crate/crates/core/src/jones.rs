//! Jones polynomial from Khovanov homology and, independently, from the
//! Kauffman bracket state sum.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::cube::smooth;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::homology::HomologyTable;
use crate::poly::{LaurentPolynomial, Variable};

pub const DEFAULT_ORACLE_MAX: usize = 20;

fn quantum_two() -> LaurentPolynomial {
    LaurentPolynomial::from_integer_terms(Variable::Q, [(1, 1), (-1, 1)])
}

/// `Σ (-1)^i q^j dim KH^{i,j}`.
pub fn graded_euler(t: &HomologyTable) -> LaurentPolynomial {
    LaurentPolynomial::from_integer_terms(Variable::Q, t.euler_by_q().into_iter().map(|(j, v)| (j as i64, v)))
}

/// Jones polynomial in powers of `t^(1/2)` from a normalized table.
pub fn jones_from_kh(t: &HomologyTable, components: usize) -> Result<LaurentPolynomial> {
    assert!(t.is_normalized(), "expects a normalized table");
    let e = graded_euler(t);
    let v = e
        .div_exact(&quantum_two())
        .ok_or_else(|| Error::NondivisibleEulerCharacteristic(e.to_string()))?;
    let v = v.substitute(Variable::SqrtT, 1, -1);
    debug_assert!(
        components == 0 || v.terms().keys().all(|e| (e.rem_euclid(2) == 0) == (components % 2 == 1)),
        "parity of t-exponents does not match the component count"
    );
    Ok(v)
}

/// Kauffman bracket `<D> = Σ A^{#0 - #1} δ^{k-1}`, `δ = -A² - A⁻²`.
pub fn kauffman_bracket(d: &Diagram, oracle_max: usize) -> Result<LaurentPolynomial> {
    let n = d.crossing_count();
    if n > oracle_max || n >= 40 {
        return Err(Error::ComplexityBudgetExceeded(format!(
            "{n} crossings exceed the state-sum cap of {oracle_max}"
        )));
    }
    let extra = d.extra_unknots() as i64;
    // (#0 - #1, circles) -> number of states
    let counts: HashMap<(i64, i64), u64> = (0..1u64 << n)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, w| {
            let ones = w.count_ones() as i64;
            let (_, k) = smooth(d, w);
            *acc.entry((n as i64 - 2 * ones, k as i64 + extra)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let delta = LaurentPolynomial::from_integer_terms(Variable::A, [(2, -1), (-2, -1)]);
    let max_k = counts.keys().map(|k| k.1).max().unwrap_or(1);
    let powers: Vec<LaurentPolynomial> = {
        let mut v = vec![LaurentPolynomial::one(Variable::A)];
        for _ in 1..max_k {
            let next = v.last().unwrap() * &delta;
            v.push(next);
        }
        v
    };
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    let mut bracket = LaurentPolynomial::zero(Variable::A);
    for ((a, k), count) in keys {
        let term = LaurentPolynomial::monomial(Variable::A, a, count as i64);
        bracket = &bracket + &(&term * &powers[(k - 1) as usize]);
    }
    Ok(bracket)
}

/// Jones polynomial in powers of `t^(1/2)`: `(-A)^{-3w} <D>` at `t = A⁻⁴`.
pub fn jones_oracle(d: &Diagram, oracle_max: usize) -> Result<LaurentPolynomial> {
    let bracket = kauffman_bracket(d, oracle_max)?;
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let f = &LaurentPolynomial::monomial(Variable::A, -3 * w, sign) * &bracket;
    Ok(f.substitute_ratio(Variable::SqrtT, -1, 2, 1).expect("normalized bracket has even A-exponents"))
}

/// Compares `E(q)` with `(q + q⁻¹) V` under `t^(1/2) -> -q`.
pub fn euler_matches(t: &HomologyTable, jones: &LaurentPolynomial) -> bool {
    let v_q = jones.substitute(Variable::Q, 1, -1);
    graded_euler(t) == &quantum_two() * &v_q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_pd, parse_pd, Sign};
    use crate::homology::kh;

    fn sqrt_t(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_integer_terms(Variable::SqrtT, terms.iter().copied())
    }

    #[test]
    fn oracle_small_cases() {
        let one = LaurentPolynomial::one(Variable::SqrtT);
        assert_eq!(jones_oracle(&parse_pd("O").unwrap(), 20).unwrap(), one);
        assert_eq!(jones_oracle(&parse_pd("X(1,1,2,2)").unwrap(), 20).unwrap(), one);
        assert_eq!(jones_oracle(&parse_pd("X(1,2,2,1)").unwrap(), 20).unwrap(), one);
        let trefoil = braid_to_pd(&[1, 1, 1], 2).unwrap();
        assert_eq!(jones_oracle(&trefoil, 20).unwrap(), sqrt_t(&[(8, -1), (6, 1), (2, 1)]));
        // two crossing-free circles: -t^(1/2) - t^(-1/2)
        assert_eq!(jones_oracle(&parse_pd("O O").unwrap(), 20).unwrap(), sqrt_t(&[(1, -1), (-1, -1)]));
    }

    #[test]
    fn from_homology() {
        let trefoil = braid_to_pd(&[1, 1, 1], 2).unwrap();
        let t = kh(&trefoil, 18).unwrap();
        assert_eq!(jones_from_kh(&t, 1).unwrap(), sqrt_t(&[(8, -1), (6, 1), (2, 1)]));
        let u = kh(&braid_to_pd(&[1, 1, -1], 2).unwrap(), 18).unwrap();
        assert_eq!(jones_from_kh(&u, 1).unwrap(), LaurentPolynomial::one(Variable::SqrtT));
    }

    #[test]
    fn both_routes_agree() {
        for d in [
            braid_to_pd(&[1, -2, 1, -2], 3).unwrap(),
            braid_to_pd(&[1, 1], 2).unwrap(),
            braid_to_pd(&[1, 1, 1, 1, 1], 2).unwrap().with_kink(4, Sign::Negative).unwrap(),
        ] {
            let t = kh(&d, 18).unwrap();
            let oracle = jones_oracle(&d, 20).unwrap();
            assert!(euler_matches(&t, &oracle), "{d}");
            assert_eq!(jones_from_kh(&t, d.component_count()).unwrap(), oracle);
        }
    }

    #[test]
    fn nondivisible_is_reported() {
        use crate::homology::{Flavor, HomologyTable};
        let t = HomologyTable::new(Flavor::Normalized { n_plus: 0, n_minus: 0 }, [((0, 1), 1)]);
        assert!(matches!(jones_from_kh(&t, 1), Err(Error::NondivisibleEulerCharacteristic(_))));
    }

    #[test]
    fn oracle_budget() {
        let d = braid_to_pd(&[1; 7], 2).unwrap();
        assert!(matches!(jones_oracle(&d, 6), Err(Error::ComplexityBudgetExceeded(_))));
    }
}
