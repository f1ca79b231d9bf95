//! Modular arithmetic on `u128`.
//!
//! Moduli below 2^64 use the native 128-bit product. Larger odd moduli go
//! through Montgomery multiplication with R = 2^128, which needs a 256-bit
//! intermediate built from 64-bit limbs.

/// Full 128x128 -> 256 bit product as (high, low).
#[inline]
pub fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a_hi, a_lo) = (a >> 64, a & MASK);
    let (b_hi, b_lo) = (b >> 64, b & MASK);

    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;

    let mid = (ll >> 64) + (lh & MASK) + (hl & MASK);
    let lo = (ll & MASK) | (mid << 64);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery form arithmetic for an odd modulus.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    n: u128,
    /// -n^{-1} mod 2^128
    n_neg_inv: u128,
    /// 2^256 mod n
    r2: u128,
    /// 2^128 mod n, the Montgomery image of 1
    one: u128,
}

impl Montgomery {
    pub fn new(n: u128) -> Self {
        assert!(n % 2 == 1 && n > 1, "Montgomery modulus must be odd and > 1");
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let one = (u128::MAX % n + 1) % n;
        let mut r2 = one;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        Montgomery {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2,
            one,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.n
    }

    #[inline]
    pub fn one(&self) -> u128 {
        self.one
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mn_hi, mn_lo) = mul_wide(m, self.n);
        let (_, carry_lo) = lo.overflowing_add(mn_lo);
        let (s, c1) = hi.overflowing_add(mn_hi);
        let (s, c2) = s.overflowing_add(carry_lo as u128);
        if c1 || c2 || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    #[inline]
    pub fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u128) -> u128 {
        self.redc(0, a)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        add_mod(a, b, self.n)
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            self.n - (b - a)
        }
    }

    /// `base^exp` with `base` already in Montgomery form.
    pub fn pow(&self, mut base: u128, mut exp: u128) -> u128 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

#[inline]
pub fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(a < m && b < m);
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

/// `a * b mod m` for any modulus `m >= 1`.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return ((a % m) * (b % m)) % m;
    }
    if m % 2 == 1 {
        let mont = Montgomery::new(m);
        return mont.from_mont(mont.mul(mont.to_mont(a), mont.to_mont(b)));
    }
    // Even modulus above 2^64: shift-and-add.
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

/// `base^exp mod m` for any modulus `m >= 1`.
pub fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    if m % 2 == 1 && m > u64::MAX as u128 {
        let mont = Montgomery::new(m);
        return mont.from_mont(mont.pow(mont.to_mont(base), exp));
    }
    let mut base = base % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. Requires `m < 2^127`.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    assert!(m <= i128::MAX as u128, "inv_mod modulus must be below 2^127");
    let (mut old_r, mut r) = (a % m, m);
    let (mut old_s, mut s): (i128, i128) = (1, 0);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - (q as i128) * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_product_matches_split_check() {
        let a = u128::MAX;
        let (hi, lo) = mul_wide(a, a);
        // (2^128 - 1)^2 = 2^256 - 2^129 + 1
        assert_eq!(lo, 1);
        assert_eq!(hi, u128::MAX - 1);
        assert_eq!(mul_wide(3, 5), (0, 15));
    }

    #[test]
    fn montgomery_agrees_with_slow_path() {
        let m = (1u128 << 127) - 1; // odd, above 2^64
        let a = 0x1234_5678_9abc_def0_1122_3344_5566_7788u128 % m;
        let b = 0x0fed_cba9_8765_4321_8877_6655_4433_2211u128 % m;
        let mont = Montgomery::new(m);
        let fast = mont.from_mont(mont.mul(mont.to_mont(a), mont.to_mont(b)));
        // shift-and-add reference
        let (mut x, mut y, mut acc) = (a, b, 0u128);
        while y > 0 {
            if y & 1 == 1 {
                acc = add_mod(acc, x, m);
            }
            x = add_mod(x, x, m);
            y >>= 1;
        }
        assert_eq!(fast, acc);
    }

    #[test]
    fn montgomery_near_top_of_range() {
        let m = u128::MAX - 158; // odd
        let mont = Montgomery::new(m);
        let a = m - 1;
        // (m-1)^2 = 1 mod m
        assert_eq!(mont.from_mont(mont.mul(mont.to_mont(a), mont.to_mont(a))), 1);
        assert_eq!(mont.from_mont(mont.one()), 1);
    }

    #[test]
    fn fermat_small() {
        assert_eq!(pow_mod(3, 10, 11), 1);
        assert_eq!(pow_mod(2, 1092, 1093 * 1093), 1);
        assert_eq!(pow_mod(5, 0, 7), 1);
        assert_eq!(pow_mod(5, 3, 1), 0);
    }

    #[test]
    fn gcd_and_inverse() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(84, 36), 12);
        assert_eq!(inv_mod(3, 11), Some(4));
        assert_eq!(inv_mod(6, 9), None);
    }
}
