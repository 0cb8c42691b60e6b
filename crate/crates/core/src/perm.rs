//! Permutation iteration and counting helpers.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;
use crate::Result;

pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::PermutationLength {
            got: perm.len(),
            expected: n,
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation(n));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Calls `visit` once for every permutation of `0..n`, using Heap's algorithm
/// so successive permutations differ by a single swap. The identity comes
/// first; the overall order is otherwise unspecified.
pub fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    let mut items: Vec<usize> = (0..n).collect();
    if n == 0 {
        visit(&items);
        return;
    }
    let mut counters = vec![0usize; n];
    visit(&items);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(counters[i], i);
            }
            visit(&items);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Binomial coefficient as `u128`, saturating at `u128::MAX` on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = (n - i) as u128;
        acc = match acc.checked_mul(num) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    #[test]
    fn heap_iteration_visits_all() {
        for n in 0..=6usize {
            let mut seen = HashSet::new();
            let mut count = 0usize;
            for_each_permutation(n, |perm| {
                seen.insert(perm.to_vec());
                count += 1;
            });
            assert_eq!(count, factorial(n).to_usize().unwrap());
            assert_eq!(seen.len(), count);
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(10), BigUint::from(3_628_800u64));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(45, 6), 8_145_060);
        assert_eq!(binomial(45, 3), 14_190);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn permutation_validation() {
        assert!(check_permutation(&[2, 0, 1], 3).is_ok());
        assert!(check_permutation(&[0, 0, 1], 3).is_err());
        assert!(check_permutation(&[0, 1], 3).is_err());
        assert!(check_permutation(&[0, 3, 1], 3).is_err());
    }
}
