//! Arithmetic in the cyclic group `Z_n`.

use num_integer::Integer;

use crate::error::{Error, Result};

/// An element of `Z_n`, always stored reduced to `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZModN {
    n: u64,
    value: u64,
}

impl ZModN {
    pub fn new(n: u64, value: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(n as i64));
        }
        Ok(ZModN {
            n,
            value: reduce(n, value),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn add(&self, other: ZModN) -> ZModN {
        assert_eq!(self.n, other.n, "mismatched moduli");
        ZModN {
            n: self.n,
            value: (self.value + other.value) % self.n,
        }
    }

    pub fn neg(&self) -> ZModN {
        ZModN {
            n: self.n,
            value: (self.n - self.value) % self.n,
        }
    }

    pub fn sub(&self, other: ZModN) -> ZModN {
        self.add(other.neg())
    }

    pub fn mul(&self, other: ZModN) -> ZModN {
        assert_eq!(self.n, other.n, "mismatched moduli");
        ZModN {
            n: self.n,
            value: (self.value as u128 * other.value as u128 % self.n as u128) as u64,
        }
    }

    /// Order of the element in the additive group: `n / gcd(n, a)`.
    pub fn order(&self) -> u64 {
        element_order(self.n, self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.value.gcd(&self.n) == 1
    }
}

/// Reduce a signed integer into `[0, n)`.
pub fn reduce(n: u64, value: i64) -> u64 {
    let m = n as i64;
    (((value % m) + m) % m) as u64
}

/// Order of `a` in `Z_n`.
pub fn element_order(n: u64, a: u64) -> u64 {
    n / n.gcd(&(a % n))
}

/// The units of `Z_n` in ascending order (empty for n = 1).
pub fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..n).filter(move |m| m.gcd(&n) == 1)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_and_order() {
        let a = ZModN::new(12, -3).unwrap();
        assert_eq!(a.value(), 9);
        assert_eq!(a.order(), 4);
        assert_eq!(ZModN::new(12, 0).unwrap().order(), 1);
        assert_eq!(ZModN::new(12, 6).unwrap().order(), 2);
        assert!(ZModN::new(0, 1).is_err());
    }

    #[test]
    fn units_of_8() {
        assert_eq!(units(8).collect::<Vec<_>>(), vec![1, 3, 5, 7]);
        assert_eq!(units(1).count(), 0);
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    proptest! {
        // order(a) * gcd(n, a) == n
        #[test]
        fn order_times_gcd_is_n(n in 1u64..500, a in 0u64..500) {
            let a = a % n;
            prop_assert_eq!(element_order(n, a) * num_integer::gcd(n, a), n);
        }

        #[test]
        fn add_neg_cancels(n in 1u64..200, a in i64::MIN/4..i64::MAX/4) {
            let x = ZModN::new(n, a).unwrap();
            prop_assert_eq!(x.add(x.neg()).value(), 0);
        }
    }
}
