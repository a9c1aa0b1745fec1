use smallvec::SmallVec;
use std::fmt;

/// Exponent vector indexed by variable id. Length always equals the ring's
/// variable count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[v] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn exp(&self, v: usize) -> u16 {
        self.0[v]
    }

    pub fn set_exp(&mut self, v: usize, e: u16) {
        self.0[v] = e;
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of variables with nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Bit mask of the support, variables >= 64 fold onto the top bit.
    #[inline]
    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1u64 << i.min(63);
            }
        }
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn div(&self, d: &Monomial) -> Option<Monomial> {
        if d.divides(self) {
            Some(d.quotient_of(self))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drop variable `v` entirely (exponent must be handled by the caller).
    pub fn without(&self, v: usize) -> Monomial {
        let mut m = self.clone();
        m.0[v] = 0;
        m
    }

    /// Re-index into a ring with a different variable list.
    pub fn remap(&self, map: &[Option<usize>], nvars: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                let j = map[i].expect("remap drops a variable in use");
                m.0[j] += e;
            }
        }
        m
    }

    /// Is this a pure power of a single variable? Returns that variable.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
