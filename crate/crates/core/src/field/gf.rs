//! Table-driven arithmetic in the finite field F_{p^e}.
//!
//! An element is stored as a `u16` code: the base-p digits of the code are the
//! coefficients of the element as a polynomial in the generator `g`, lowest
//! degree first. The field sizes we target (p ≤ 5, e ≤ 4) keep the full
//! addition and multiplication tables small.

use super::FieldError;

/// Largest supported field order.
pub const MAX_ORDER: usize = 4096;

/// Coefficient field F_{p^e}.
#[derive(Clone)]
pub struct Gf {
    p: u16,
    e: u16,
    q: usize,
    min_poly: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    root: Vec<u16>,
}

impl std::fmt::Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Gf")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("min_poly", &self.min_poly)
            .finish()
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial helpers over F_p, coefficients lowest degree first.
fn trim(mut v: Vec<u16>) -> Vec<u16> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem_fp(a: &[u16], m: &[u16], p: u16) -> Vec<u16> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u32 * lc_inv as u32 % p as u32) as u16;
        let shift = top - dm;
        for (i, &mc) in m.iter().enumerate() {
            let sub = (c as u32 * mc as u32) % p as u32;
            r[shift + i] = ((r[shift + i] as u32 + p as u32 - sub) % p as u32) as u16;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u16, p: u16) -> u16 {
    // p is tiny, brute force is fine
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).unwrap_or(0)
}

pub(crate) fn monic_polys_of_degree(d: usize, p: u16) -> impl Iterator<Item = Vec<u16>> {
    let count = (p as usize).pow(d as u32);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((code % p as usize) as u16);
            code /= p as usize;
        }
        v.push(1);
        v
    })
}

pub(crate) fn is_irreducible_fp(m: &[u16], p: u16) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for f in monic_polys_of_degree(d, p) {
            if poly_rem_fp(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Gf {
    /// Builds F_{p^e} from the coefficient list of a monic irreducible
    /// polynomial of degree e over F_p (lowest degree first).
    pub fn new(p: u32, e: u32, min_poly: &[u32]) -> Result<Self, FieldError> {
        if !is_prime(p) || p > 251 {
            return Err(FieldError::InvalidCharacteristic(p));
        }
        if e == 0 {
            return Err(FieldError::InvalidMinPoly("extension degree must be at least 1".into()));
        }
        let q = (p as usize)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| FieldError::InvalidMinPoly(format!("field of order {p}^{e} is too large")))?;
        let p16 = p as u16;
        let min_poly: Vec<u16> = if e == 1 && min_poly.is_empty() {
            vec![0, 1]
        } else {
            min_poly.iter().map(|&c| (c % p) as u16).collect()
        };
        if min_poly.len() != e as usize + 1 || *min_poly.last().unwrap() != 1 {
            return Err(FieldError::InvalidMinPoly(format!(
                "expected a monic polynomial of degree {e}, got coefficients {min_poly:?}"
            )));
        }
        if !is_irreducible_fp(&min_poly, p16) {
            return Err(FieldError::InvalidMinPoly(format!("{min_poly:?} is reducible over F_{p}")));
        }
        let e_us = e as usize;
        let digits = |mut c: usize| -> Vec<u16> {
            let mut v = vec![0u16; e_us];
            for slot in v.iter_mut() {
                *slot = (c % p as usize) as u16;
                c /= p as usize;
            }
            v
        };
        let encode = |v: &[u16]| -> u16 {
            let mut c = 0usize;
            for &d in v.iter().rev() {
                c = c * p as usize + d as usize;
            }
            c as u16
        };
        let all: Vec<Vec<u16>> = (0..q).map(digits).collect();
        let mut add = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let (mut x, mut y, mut place, mut sum) = (a, b, 1usize, 0usize);
                for _ in 0..e_us {
                    sum += (x % p as usize + y % p as usize) % p as usize * place;
                    x /= p as usize;
                    y /= p as usize;
                    place *= p as usize;
                }
                add[a * q + b] = sum as u16;
            }
        }
        // multiplication by the generator: shift up and reduce by the modulus
        let times_g = |c: usize| -> usize {
            let d = &all[c];
            let top = d[e_us - 1];
            let mut out = vec![0u16; e_us];
            for i in (1..e_us).rev() {
                out[i] = d[i - 1];
            }
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = (*slot + (p16 - top) * min_poly[i] % p16) % p16;
            }
            encode(&out) as usize
        };
        let scalar = |k: u16, c: usize, add: &[u16]| -> usize {
            let mut acc = 0usize;
            for _ in 0..k {
                acc = add[acc * q + c] as usize;
            }
            acc
        };
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            // a·g^i for each digit position
            let mut shifts = Vec::with_capacity(e_us);
            let mut cur = a;
            for _ in 0..e_us {
                shifts.push(cur);
                cur = times_g(cur);
            }
            let parts: Vec<Vec<usize>> = shifts.iter().map(|&s| (0..p16).map(|k| scalar(k, s, &add)).collect()).collect();
            for b in 0..q {
                let mut acc = 0usize;
                for (i, &d) in all[b].iter().enumerate() {
                    if d != 0 {
                        acc = add[acc * q + parts[i][d as usize]] as usize;
                    }
                }
                mul[a * q + b] = acc as u16;
            }
        }
        let neg: Vec<u16> = all
            .iter()
            .map(|d| encode(&d.iter().map(|&x| (p16 - x) % p16).collect::<Vec<_>>()))
            .collect();
        let mut inv = vec![0u16; q];
        for (a, slot) in inv.iter_mut().enumerate().skip(1) {
            // a^(q−2)
            let mut base = a as u16;
            let mut acc = 1u16;
            let mut k = q - 2;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul[acc as usize * q + base as usize];
                }
                base = mul[base as usize * q + base as usize];
                k >>= 1;
            }
            *slot = acc;
        }
        // Frobenius is a bijection, invert it to get p-th roots.
        let mut root = vec![0u16; q];
        for b in 0..q {
            let mut pw = 1u16;
            for _ in 0..p {
                pw = mul[pw as usize * q + b];
            }
            root[pw as usize] = b as u16;
        }
        Ok(Gf {
            p: p16,
            e: e as u16,
            q,
            min_poly,
            add,
            mul,
            neg,
            inv,
            root,
        })
    }

    pub fn prime_field(p: u32) -> Result<Self, FieldError> {
        Gf::new(p, 1, &[0, 1])
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e as u32
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn min_poly(&self) -> Vec<u32> {
        self.min_poly.iter().map(|&c| c as u32).collect()
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// The unique p-th root.
    #[inline]
    pub fn pth_root(&self, a: u16) -> u16 {
        self.root[a as usize]
    }

    pub fn pow(&self, a: u16, mut k: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Image of an integer under Z → F_p ⊂ F_{p^e}.
    pub fn from_int(&self, n: i64) -> u16 {
        n.rem_euclid(self.p as i64) as u16
    }

    /// The generator g (for e = 1 this is the element 0·g + ..., i.e. the code
    /// for "g" only makes sense when e > 1).
    pub fn generator(&self) -> u16 {
        if self.e == 1 {
            // g is a root of the degree-one minimal polynomial g + c0
            self.neg(self.min_poly[0])
        } else {
            self.p
        }
    }

    /// Coefficients of the element as a polynomial in g, lowest degree first.
    pub fn digits(&self, a: u16) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut c = a as usize;
        for _ in 0..self.e {
            v.push((c % self.p as usize) as u16);
            c /= self.p as usize;
        }
        v
    }

    /// Absolute trace to F_p, returned as an integer in `0..p`.
    pub fn trace(&self, a: u16) -> u16 {
        let mut acc = 0u16;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.min_poly == other.min_poly
    }
}

impl Eq for Gf {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        // F_4 = F_2[g]/(g^2 + g + 1)
        let f = Gf::new(2, 2, &[1, 1, 1]).unwrap();
        let g = f.generator();
        let g2 = f.mul(g, g);
        assert_eq!(g2, f.add(g, 1));
        assert_eq!(f.mul(g, g2), 1);
        for a in 1..4u16 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.pow(f.pth_root(a), 2), a);
        }
        assert_eq!(f.trace(g), 1);
        assert_eq!(f.trace(1), 0);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(Gf::new(2, 2, &[1, 0, 1]).is_err());
        assert!(Gf::new(3, 2, &[1, 0, 1]).is_ok());
        assert!(Gf::new(4, 1, &[0, 1]).is_err());
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Gf::new(5, 2, &[2, 0, 1]).unwrap();
        for a in 0..5u16 {
            assert_eq!(f.pow(a, 5), a);
        }
        let fixed = f.elements().filter(|&a| f.pow(a, 5) == a).count();
        assert_eq!(fixed, 5);
    }
}
