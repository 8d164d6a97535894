use std::sync::{Mutex, OnceLock};

use rug::Integer;

use crate::exactmath::Rational;

/// `B₀, B₁, …` computed so far; only ever extended.
static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number `B_m` for the generating function `z/(eᶻ − 1)`, so `B₁ = −1/2`.
pub fn bernoulli(m: usize) -> Rational {
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut t = table.lock().expect("bernoulli table poisoned");
    while t.len() <= m {
        let k = t.len();
        if k > 1 && k % 2 == 1 {
            t.push(Rational::default());
            continue;
        }
        // Σ_{j=0}^{k} C(k+1, j) B_j = 0
        let mut acc = Rational::default();
        let mut binom = Integer::from(1);
        for (j, b) in t.iter().enumerate() {
            if j > 0 {
                binom *= k + 2 - j;
                binom /= j;
            }
            acc = acc + b * &Rational::from(binom.clone());
        }
        t.push(-acc / Rational::from(k as i64 + 1));
    }
    t[m].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::new(-1, 2));
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(3), Rational::default());
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
    }
}
