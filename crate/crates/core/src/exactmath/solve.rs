//! Sequential solution of "this coefficient must vanish" conditions.

use super::mpoly::MPoly;
use super::ring::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("non-linear dependence on u{var} (degree {degree})")]
    NonLinear { var: usize, degree: u32 },
    #[error("inconsistent condition: {0} = 0 has no solution")]
    Inconsistent(String),
    #[error("underdetermined: the condition does not involve u{0}")]
    Underdetermined(usize),
    #[error("condition still depends on unsolved unknown u{0}")]
    DependsOnUnsolved(usize),
}

/// Solves `expr = 0` for unknown `var`; `expr` must be affine in `var` and
/// free of all other unknowns.
pub fn solve_affine<K: Field>(expr: &MPoly<K>, var: usize) -> Result<K, SolveError> {
    if let Some(&other) = expr.vars().iter().find(|&&v| v != var) {
        return Err(SolveError::DependsOnUnsolved(other));
    }
    let degree = expr.degree_in(var);
    if degree > 1 {
        return Err(SolveError::NonLinear { var, degree });
    }
    let a = expr.coeff_of(var, 1).as_constant().unwrap();
    let b = expr.coeff_of(var, 0).as_constant().unwrap();
    if a.is_zero() {
        return Err(if b.is_zero() {
            SolveError::Underdetermined(var)
        } else {
            SolveError::Inconsistent(b.to_string())
        });
    }
    Ok(b.div(&a).neg())
}

/// Solves a chain of conditions in order. Each entry pairs a coefficient
/// expression with the unknown it determines; values found earlier are
/// substituted into later conditions before solving.
pub fn solve_leading<K: Field>(conditions: &[(MPoly<K>, usize)]) -> Result<Vec<(usize, K)>, SolveError> {
    let mut solved: Vec<(usize, K)> = Vec::with_capacity(conditions.len());
    for (expr, var) in conditions {
        let mut e = expr.clone();
        for (v, val) in &solved {
            e = e.substitute(*v, val);
        }
        let value = solve_affine(&e, *var)?;
        solved.push((*var, value));
    }
    Ok(solved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Rational, Ring};

    type P = MPoly<Rational>;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn euler_first_level_b() {
        let e = P::constant(q(-1, 6)).add(&P::var(1));
        assert_eq!(solve_affine(&e, 1).unwrap(), q(1, 6));
    }

    #[test]
    fn euler_second_level_a() {
        let e = P::constant(q(-1, 24)).add(&P::var(0).mul_rational(&q(3, 2)));
        assert_eq!(solve_affine(&e, 0).unwrap(), q(1, 36));
    }

    #[test]
    fn degenerate_conditions() {
        assert_eq!(solve_affine(&P::zero(), 0), Err(SolveError::Underdetermined(0)));
        assert!(matches!(solve_affine(&P::from_int(2), 0), Err(SolveError::Inconsistent(_))));
        let sq = P::var(0).mul(&P::var(0));
        assert_eq!(
            solve_affine(&sq, 0),
            Err(SolveError::NonLinear { var: 0, degree: 2 })
        );
        assert_eq!(solve_affine(&P::var(1), 0), Err(SolveError::DependsOnUnsolved(1)));
    }

    #[test]
    fn chained_substitution() {
        // u0 - 2 = 0, then u0*u1 + 1 = 0
        let c1 = P::var(0).sub(&P::from_int(2));
        let c2 = P::var(0).mul(&P::var(1)).add(&P::one());
        let sol = solve_leading(&[(c1, 0), (c2, 1)]).unwrap();
        assert_eq!(sol, vec![(0, q(2, 1)), (1, q(-1, 2))]);
    }
}
