//! Monomials and monomial orders.
//!
//! A monomial is an exponent vector indexed by ring variable position.
//! Orders are runtime values so Gröbner routines can be steered per call:
//! graded reverse lexicographic (the default everywhere), pure lexicographic
//! (used by zero-dimensional splitting), and block elimination orders (used
//! to erase tag variables and for variable elimination).

use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Exponent vector.  The derived `Ord` is a container order for maps and
/// has no mathematical meaning; term comparisons go through [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_deg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

/// A total order on monomials of a fixed ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: higher total degree wins; on ties the
    /// last variable where the exponents differ decides, smaller exponent
    /// winning.
    GrevLex,
    /// Pure lexicographic in variable index order.
    Lex,
    /// Block elimination: grevlex restricted to the `front` variables first,
    /// ties broken by grevlex on the remaining variables.  Any monomial
    /// containing a front variable beats any monomial free of them, which is
    /// what makes elimination work.
    Elim(BTreeSet<usize>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::GrevLex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Elim(front) => {
                let pick = |m: &Monomial, inside: bool| -> Vec<u32> {
                    (0..m.nvars())
                        .filter(|i| front.contains(i) == inside)
                        .map(|i| m.0[i])
                        .collect()
                };
                grevlex_cmp(&pick(a, true), &pick(b, true))
                    .then_with(|| grevlex_cmp(&pick(a, false), &pick(b, false)))
            }
        }
    }
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // Smaller exponent in the last differing slot is the larger monomial.
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}
