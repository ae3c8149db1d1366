//! Elementary combinatorial primitives: falling/rising factorials, the
//! generalized binomial coefficient, and the binomial inversion transform.

use num_traits::{One, Zero};

use crate::rational::{factorial, rat, Rat};

/// Falling factorial (x)_k = x(x-1)...(x-k+1), with (x)_0 = 1.
pub fn falling_factorial(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= x - rat(i as i64);
    }
    acc
}

/// Rising factorial <a>_k = a(a+1)...(a+k-1), with <a>_0 = 1.
pub fn rising_factorial(a: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= a + rat(i as i64);
    }
    acc
}

/// Generalized binomial coefficient C(x, k) = (x)_k / k! for rational x.
pub fn binomial_general(x: &Rat, k: u32) -> Rat {
    falling_factorial(x, k) / factorial(k)
}

/// C(n, k) for nonnegative integer n, as an exact rational.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    binomial_general(&rat(n as i64), k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionDirection {
    Forward,
    Backward,
}

/// Binomial inversion: forward maps g to f via f_n = sum_j C(n,j) g_j;
/// backward maps f to g via g_n = sum_j (-1)^(n-j) C(n,j) f_j.
/// The two directions are mutually inverse.
pub fn binomial_invert(seq: &[Rat], direction: InversionDirection) -> Vec<Rat> {
    (0..seq.len())
        .map(|n| {
            let mut acc = Rat::zero();
            for (j, g) in seq.iter().enumerate().take(n + 1) {
                let mut term = binomial(n as u32, j as u32) * g;
                if direction == InversionDirection::Backward && (n - j) % 2 == 1 {
                    term = -term;
                }
                acc += term;
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&rat(7), 0), rat(1));
        assert_eq!(falling_factorial(&rat(5), 3), rat(60));
        assert_eq!(falling_factorial(&ratio(1, 2), 2), ratio(-1, 4));
        assert_eq!(falling_factorial(&rat(4), 4), rat(24));
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&rat(1), 4), rat(24));
        assert_eq!(rising_factorial(&rat(3), 2), rat(12));
        assert_eq!(rising_factorial(&rat(-2), 4), rat(0));
    }

    #[test]
    fn binomial_general_examples() {
        assert_eq!(binomial_general(&rat(4), 2), rat(6));
        assert_eq!(binomial_general(&rat(2), 5), rat(0));
        assert_eq!(binomial_general(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn inversion_examples() {
        let ones = vec![rat(1), rat(1), rat(1)];
        let f = binomial_invert(&ones, InversionDirection::Forward);
        assert_eq!(f, vec![rat(1), rat(2), rat(4)]);
        let g = binomial_invert(&f, InversionDirection::Backward);
        assert_eq!(g, ones);
        assert_eq!(
            binomial_invert(&[rat(9)], InversionDirection::Forward),
            vec![rat(9)]
        );
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        // (x)_{i+j} = (x)_i (x-i)_j
        #[test]
        fn falling_factorial_splits(x in arb_rat(), i in 0u32..8, j in 0u32..8) {
            let lhs = falling_factorial(&x, i + j);
            let rhs = falling_factorial(&x, i)
                * falling_factorial(&(x.clone() - rat(i as i64)), j);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inversion_round_trip(seq in prop::collection::vec(arb_rat(), 1..12)) {
            let f = binomial_invert(&seq, InversionDirection::Forward);
            let g = binomial_invert(&f, InversionDirection::Backward);
            prop_assert_eq!(g, seq);
        }

        #[test]
        fn factorial_specializations(k in 0u32..10) {
            let kfact = crate::rational::factorial(k);
            prop_assert_eq!(rising_factorial(&rat(1), k), kfact.clone());
            prop_assert_eq!(falling_factorial(&rat(k as i64), k), kfact);
        }
    }
}
