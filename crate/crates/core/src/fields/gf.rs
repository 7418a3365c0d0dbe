//! Arithmetic in the finite fields GF(2^k), 1 <= k <= 16.
//!
//! Elements are stored as `u16` bit patterns: bit `i` is the coefficient of
//! `w^i`, where `w` is the class of `X` modulo the fixed defining polynomial
//! for that `k`. Multiplication goes through log/exp tables that are built
//! once per `k` and shared process-wide.

use std::sync::OnceLock;

/// Largest supported extension degree of the prime field.
pub const MAX_K: u8 = 16;

/// Fixed irreducible polynomials over GF(2), indexed by degree. Bit `i` is
/// the coefficient of `X^i`.
const MODULI: [u32; 17] = [
    0, 0b11, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

pub(crate) struct GfTables {
    order: u32,
    exp: Vec<u16>,
    log: Vec<u32>,
}

fn clmul_reduce(mut a: u32, mut b: u32, k: u8) -> u32 {
    let modulus = MODULI[k as usize];
    let mut r = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> k & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

impl GfTables {
    fn build(k: u8) -> Self {
        let order = (1u32 << k) - 1;
        let size = 1usize << k;
        // Search for a multiplicative generator; finding one of full order
        // also proves the modulus irreducible.
        for g in 1..size as u32 {
            let mut exp = vec![0u16; 2 * order as usize];
            let mut log = vec![u32::MAX; size];
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..order {
                if log[x as usize] != u32::MAX {
                    ok = false;
                    break;
                }
                log[x as usize] = i;
                exp[i as usize] = x as u16;
                x = clmul_reduce(x, g, k);
            }
            if ok && x == 1 {
                for i in order..2 * order {
                    exp[i as usize] = exp[(i - order) as usize];
                }
                return GfTables { order, exp, log };
            }
        }
        panic!("defining polynomial for GF(2^{k}) is not irreducible");
    }
}

fn tables(k: u8) -> &'static GfTables {
    static CELLS: [OnceLock<GfTables>; 17] = [const { OnceLock::new() }; 17];
    assert!((1..=MAX_K).contains(&k), "unsupported GF(2^{k})");
    CELLS[k as usize].get_or_init(|| GfTables::build(k))
}

/// Descriptor of GF(2^k). Cheap to copy; all operations are table lookups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    k: u8,
}

impl Gf {
    pub fn new(k: u8) -> Option<Self> {
        (1..=MAX_K).contains(&k).then_some(Gf { k })
    }

    /// Field with `size` elements, if `size` is a supported power of two.
    pub fn with_size(size: u64) -> Option<Self> {
        if size < 2 || !size.is_power_of_two() {
            return None;
        }
        Gf::new(size.trailing_zeros() as u8)
    }

    pub fn k(self) -> u8 {
        self.k
    }

    pub fn size(self) -> u32 {
        1u32 << self.k
    }

    pub fn modulus(self) -> u32 {
        MODULI[self.k as usize]
    }

    /// The class of `X`, printed as `w`.
    pub fn generator(self) -> u16 {
        if self.k == 1 {
            1
        } else {
            2
        }
    }

    #[inline]
    pub fn add(self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return 1;
        }
        let t = tables(self.k);
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(1);
        }
        let t = tables(self.k);
        let l = t.log[a as usize];
        Some(t.exp[((t.order - l) % t.order) as usize])
    }

    pub fn div(self, a: u16, b: u16) -> Option<u16> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(self, a: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.k == 1 {
            return 1;
        }
        let t = tables(self.k);
        let l = (t.log[a as usize] as u64 * (e % t.order as u64)) % t.order as u64;
        t.exp[l as usize]
    }

    pub fn square(self, a: u16) -> u16 {
        self.mul(a, a)
    }

    /// Square root; Frobenius is bijective on a finite field.
    pub fn sqrt(self, a: u16) -> u16 {
        if a == 0 || self.k == 1 {
            return a;
        }
        let t = tables(self.k);
        let l = t.log[a as usize];
        // l even: l/2; l odd: (l + order)/2, order is odd.
        let h = if l % 2 == 0 { l / 2 } else { (l + t.order) / 2 };
        t.exp[h as usize]
    }

    /// Absolute trace to GF(2).
    pub fn trace(self, a: u16) -> u16 {
        let mut acc = 0u16;
        let mut x = a;
        for _ in 0..self.k {
            acc ^= x;
            x = self.square(x);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Solves `w^2 + w = c`, returning one root when `trace(c) = 0`.
    pub fn solve_wp(self, c: u16) -> Option<u16> {
        if self.trace(c) != 0 {
            return None;
        }
        // The map w -> w^2 + w is GF(2)-linear; eliminate on its matrix.
        let k = self.k as usize;
        let cols: Vec<u16> = (0..k).map(|i| {
            let e = 1u16 << i;
            self.square(e) ^ e
        }).collect();
        solve_gf2_linear(&cols, c, k)
    }

    /// Smallest element (in bit order) of absolute trace one: the fixed
    /// representative of the nontrivial class of GF(2^k)/℘.
    pub fn trace_one(self) -> u16 {
        (1..self.size() as u16).find(|&x| self.trace(x) == 1).expect("trace is onto")
    }

    pub fn elements(self) -> impl Iterator<Item = u16> {
        0..self.size() as u16
    }
}

/// Solves `sum_i x_i * cols[i] = target` over GF(2) where vectors are bit
/// patterns of length `k`. Returns the bit pattern of `x`.
fn solve_gf2_linear(cols: &[u16], target: u16, k: usize) -> Option<u16> {
    // rows of the augmented matrix: row r = (bits of cols at r, target bit r)
    let n = cols.len();
    let mut rows: Vec<(u32, u8)> = (0..k)
        .map(|r| {
            let mut bits = 0u32;
            for (j, c) in cols.iter().enumerate() {
                if c >> r & 1 == 1 {
                    bits |= 1 << j;
                }
            }
            (bits, (target >> r & 1) as u8)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if let Some(p) = (row..rows.len()).find(|&r| rows[r].0 >> col & 1 == 1) {
            rows.swap(row, p);
            for r in 0..rows.len() {
                if r != row && rows[r].0 >> col & 1 == 1 {
                    rows[r].0 ^= rows[row].0;
                    rows[r].1 ^= rows[row].1;
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    if rows[row..].iter().any(|r| r.1 != 0) {
        return None;
    }
    let mut x = 0u16;
    for (r, &col) in pivots.iter().enumerate() {
        if rows[r].1 == 1 {
            x |= 1 << col;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_supported_field_builds() {
        for k in 1..=MAX_K {
            let gf = Gf::new(k).unwrap();
            let g = gf.generator();
            assert_eq!(gf.mul(g, gf.inv(g).unwrap()), 1);
        }
    }

    #[test]
    fn sqrt_and_trace_on_gf16() {
        let gf = Gf::new(4).unwrap();
        for a in gf.elements() {
            assert_eq!(gf.square(gf.sqrt(a)), a);
            let t = gf.trace(a);
            match gf.solve_wp(a) {
                Some(w) => {
                    assert_eq!(t, 0);
                    assert_eq!(gf.square(w) ^ w, a);
                }
                None => assert_eq!(t, 1),
            }
        }
    }

    #[test]
    fn gf4_generator_is_a_square() {
        let gf = Gf::new(2).unwrap();
        let w = gf.generator();
        // w = (w^2)^2 since w^4 = w
        assert_eq!(gf.square(gf.square(w)), w);
        assert_eq!(gf.sqrt(w), gf.square(w));
    }

    #[test]
    fn gf2_has_trace_one_unit() {
        let gf = Gf::new(1).unwrap();
        assert_eq!(gf.trace(1), 1);
        assert_eq!(gf.solve_wp(1), None);
        assert_eq!(gf.trace_one(), 1);
    }
}
