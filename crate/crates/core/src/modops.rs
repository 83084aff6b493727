//! Module-level operations built on Gröbner bases: syzygies, intersections,
//! colon and saturation, annihilators, Fitting ideals, variable elimination,
//! radical membership, and standard-monomial enumeration.
//!
//! Syzygies come from a basis of the graph module R^k ⊕ R^t under a
//! component-elimination order; intersections and colons run through a tag
//! variable that is then eliminated with a term-over-position block order.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::field::Field;
use crate::groebner::{buchberger, ModOrder, Submodule};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyVector, Polynomial, Ring};
use crate::{Error, Result};

/// Append a fresh variable to the ring; returns the extended ring and the
/// index of the new variable.
pub fn extend_ring<F: Field>(ring: &Arc<Ring<F>>, base: &str) -> (Arc<Ring<F>>, usize) {
    let mut name = base.to_string();
    let mut n = 0u32;
    while ring.vars.iter().any(|v| *v == name) {
        n += 1;
        name = format!("{}{}", base, n);
    }
    let mut vars: Vec<String> = ring.vars.clone();
    vars.push(name);
    (Ring::new(ring.field.clone(), vars), ring.nvars())
}

fn embed_vector<F: Field>(
    v: &PolyVector<F>,
    target: &Arc<Ring<F>>,
    var_map: &[usize],
) -> PolyVector<F> {
    v.map_entries(|p| p.embed(target, var_map))
}

/// Generators of the module of relations a_1 g_1 + ... + a_t g_t = 0 among
/// the given vectors; each relation has rank `gens.len()`.
pub fn syzygies<F: Field>(
    ring: &Arc<Ring<F>>,
    k: usize,
    gens: &[PolyVector<F>],
) -> Vec<PolyVector<F>> {
    let t = gens.len();
    if t == 0 {
        return vec![];
    }
    let aug_rank = k + t;
    let mut aug: Vec<PolyVector<F>> = Vec::with_capacity(t);
    for (i, g) in gens.iter().enumerate() {
        let mut entries = g.entries.clone();
        for j in 0..t {
            entries.push(if j == i { Polynomial::one(ring) } else { Polynomial::zero(ring) });
        }
        let _ = aug_rank;
        aug.push(PolyVector::new(entries));
    }
    // Under position-over-term, every term in the first block dominates the
    // relation block, so basis elements with vanishing first block form a
    // basis of the syzygy module.
    let gb = buchberger(ring, &aug, &ModOrder::pot_grevlex());
    gb.elems
        .iter()
        .filter(|v| v.entries[..k].iter().all(|p| p.is_zero()))
        .map(|v| PolyVector::new(v.entries[k..].to_vec()))
        .collect()
}

/// Kernel of the module map R^t -> R^k sending e_i to the i-th column.
pub fn kernel_of_columns<F: Field>(
    ring: &Arc<Ring<F>>,
    k: usize,
    cols: &[PolyVector<F>],
) -> Submodule<F> {
    Submodule::new(ring, cols.len().max(1), syzygies(ring, k, cols))
}

/// Intersection of two submodules of the same R^k via a tag variable.
pub fn intersect<F: Field>(a: &Submodule<F>, b: &Submodule<F>) -> Submodule<F> {
    assert_eq!(a.k(), b.k(), "rank mismatch in intersection");
    let ring = a.ring();
    let k = a.k();
    if a.is_zero_module() || b.is_zero_module() {
        return Submodule::zero(ring, k);
    }
    let (ext, tag) = extend_ring(ring, "tag");
    let idmap: Vec<usize> = (0..ring.nvars()).collect();
    let t = Polynomial::var(&ext, tag);
    let one_minus_t = Polynomial::one(&ext).sub(&t);
    let mut gens: Vec<PolyVector<F>> = Vec::new();
    for g in a.gens() {
        gens.push(embed_vector(g, &ext, &idmap).map_entries(|p| p.mul(&t)));
    }
    for g in b.gens() {
        gens.push(embed_vector(g, &ext, &idmap).map_entries(|p| p.mul(&one_minus_t)));
    }
    // Term-over-position with the tag block leading: a tag-free leading term
    // certifies the whole vector is tag-free.
    let ord = ModOrder::Top(MonomialOrder::Elim([tag].into_iter().collect()));
    let gb = buchberger(&ext, &gens, &ord);
    let kept: Vec<PolyVector<F>> = gb
        .elems
        .iter()
        .filter(|v| v.entries.iter().all(|p| p.deg_in(tag) == 0))
        .map(|v| v.map_entries(|p| p.restrict(ring, &idmap).expect("tag-free vector")))
        .collect();
    Submodule::new(ring, k, kept)
}

/// The module f * R^k.
pub fn scaled_free<F: Field>(ring: &Arc<Ring<F>>, k: usize, f: &Polynomial<F>) -> Submodule<F> {
    let gens = (0..k).map(|j| PolyVector::unit(ring, k, j, f.clone())).collect();
    Submodule::new(ring, k, gens)
}

/// Colon module (M : f) = { v : f v in M }.
pub fn colon_poly<F: Field>(m: &Submodule<F>, f: &Polynomial<F>) -> Submodule<F> {
    let ring = m.ring();
    let k = m.k();
    if f.is_zero() {
        return Submodule::whole(ring, k);
    }
    if f.is_constant() {
        return m.clone();
    }
    let inter = intersect(m, &scaled_free(ring, k, f));
    let gens = inter
        .gens()
        .iter()
        .map(|v| v.map_entries(|p| if p.is_zero() { p.clone() } else { p.try_div_exact(f).expect("divisible by colon scalar") }))
        .collect();
    Submodule::new(ring, k, gens)
}

/// Colon module (M : I) for an ideal I, as the intersection of the colons by
/// the generators of I.
pub fn colon_ideal<F: Field>(m: &Submodule<F>, i: &Ideal<F>) -> Submodule<F> {
    let gens = i.gens_poly();
    if gens.is_empty() {
        return Submodule::whole(m.ring(), m.k());
    }
    let mut acc = colon_poly(m, &gens[0]);
    for f in &gens[1..] {
        acc = intersect(&acc, &colon_poly(m, f));
    }
    acc
}

/// Stable value of (M : f^s); also reports the first stable exponent.
pub fn saturate_poly<F: Field>(
    m: &Submodule<F>,
    f: &Polynomial<F>,
    cap: u32,
) -> Result<(Submodule<F>, u32)> {
    let mut cur = m.clone();
    for s in 0..cap {
        let next = colon_poly(&cur, f);
        if next.equals(&cur) {
            return Ok((cur, s));
        }
        cur = next;
    }
    Err(Error::CapExceeded(format!(
        "saturation did not stabilize within {} colon steps",
        cap
    )))
}

/// Stable value of (M : I^s).
pub fn saturate_ideal<F: Field>(
    m: &Submodule<F>,
    i: &Ideal<F>,
    cap: u32,
) -> Result<(Submodule<F>, u32)> {
    let mut cur = m.clone();
    for s in 0..cap {
        let next = colon_ideal(&cur, i);
        if next.equals(&cur) {
            return Ok((cur, s));
        }
        cur = next;
    }
    Err(Error::CapExceeded(format!(
        "saturation did not stabilize within {} colon steps",
        cap
    )))
}

/// The ideal (M : v) = { f in R : f v in M }.
pub fn colon_by_vector<F: Field>(m: &Submodule<F>, v: &PolyVector<F>) -> Ideal<F> {
    let ring = m.ring();
    let mut cols: Vec<PolyVector<F>> = vec![v.clone()];
    cols.extend(m.gens().iter().cloned());
    let syz = syzygies(ring, m.k(), &cols);
    let gens: Vec<Polynomial<F>> = syz.iter().map(|s| s.entries[0].clone()).collect();
    Ideal::new(ring, gens)
}

/// The submodule I·R^k: every generator of the ideal in every coordinate.
pub fn ideal_times_free<F: Field>(i: &Ideal<F>, k: usize) -> Submodule<F> {
    let ring = i.ring();
    let mut gens = Vec::new();
    for g in i.gens_poly() {
        for j in 0..k {
            gens.push(PolyVector::unit(ring, k, j, g.clone()));
        }
    }
    Submodule::new(ring, k, gens)
}

/// Annihilator of R^k / M.
pub fn annihilator<F: Field>(m: &Submodule<F>) -> Ideal<F> {
    let ring = m.ring();
    let k = m.k();
    let mut acc: Option<Ideal<F>> = None;
    for j in 0..k {
        let e = PolyVector::unit(ring, k, j, Polynomial::one(ring));
        let q = colon_by_vector(m, &e);
        acc = Some(match acc {
            None => q,
            Some(prev) => prev.intersect(&q),
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(ring))
}

/// Ideal of k x k minors of the matrix whose columns are the generators.
pub fn fitting_ideal<F: Field>(m: &Submodule<F>) -> Ideal<F> {
    let ring = m.ring();
    let k = m.k();
    let cols = m.gens();
    if cols.len() < k {
        return Ideal::zero(ring);
    }
    let mut minors: Vec<Polynomial<F>> = Vec::new();
    let mut choose: Vec<usize> = (0..k).collect();
    loop {
        let mat: Vec<Vec<Polynomial<F>>> = (0..k)
            .map(|row| choose.iter().map(|&c| cols[c].entries[row].clone()).collect())
            .collect();
        minors.push(determinant(ring, &mat));
        // Next k-subset of columns in lexicographic order.
        let mut idx = k;
        loop {
            if idx == 0 {
                return Ideal::new(ring, minors);
            }
            idx -= 1;
            if choose[idx] + (k - idx) < cols.len() {
                choose[idx] += 1;
                for p in idx + 1..k {
                    choose[p] = choose[p - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Cofactor-expansion determinant of a square polynomial matrix.
pub fn determinant<F: Field>(ring: &Arc<Ring<F>>, mat: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = mat.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (j, pivot) in mat[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = pivot.mul(&determinant(ring, &minor));
        if j % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// Standard monomials (component, monomial) of R^k / M below the leading-term
/// module, None when there are infinitely many.
pub fn std_monomials<F: Field>(m: &Submodule<F>) -> Option<Vec<(usize, Monomial)>> {
    let ring = m.ring();
    let n = ring.nvars();
    let k = m.k();
    let gb = m.gb();
    let mut out: Vec<(usize, Monomial)> = Vec::new();
    for j in 0..k {
        let leads: Vec<&Monomial> = gb
            .leads
            .iter()
            .filter(|(c, _)| *c == j)
            .map(|(_, mo)| mo)
            .collect();
        if leads.iter().any(|mo| mo.is_one()) {
            continue; // component is entirely in the module
        }
        // Finiteness requires a pure power of every variable among the leads.
        let mut bounds = vec![0u32; n];
        for i in 0..n {
            let mut best: Option<u32> = None;
            for mo in &leads {
                if mo.support().len() == 1 && mo.0[i] > 0 {
                    best = Some(best.map_or(mo.0[i], |b: u32| b.min(mo.0[i])));
                }
            }
            match best {
                Some(b) => bounds[i] = b,
                None => return None,
            }
        }
        let mut cur = Monomial::one(n);
        enumerate_below(&mut cur, 0, &bounds, &leads, &mut |mo| out.push((j, mo.clone())));
    }
    out.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| MonomialOrder::GrevLex.cmp(&a.1, &b.1))
    });
    Some(out)
}

fn enumerate_below(
    cur: &mut Monomial,
    var: usize,
    bounds: &[u32],
    leads: &[&Monomial],
    emit: &mut impl FnMut(&Monomial),
) {
    if var == bounds.len() {
        if !leads.iter().any(|l| l.divides(cur)) {
            emit(cur);
        }
        return;
    }
    for e in 0..bounds[var] {
        cur.0[var] = e;
        enumerate_below(cur, var + 1, bounds, leads, emit);
    }
    cur.0[var] = 0;
}

/// An ideal, stored as a rank-1 submodule.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    pub module: Submodule<F>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Self {
        let vecs = gens.into_iter().map(|p| PolyVector::new(vec![p])).collect();
        Ideal { module: Submodule::new(ring, 1, vecs) }
    }

    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Ideal::new(ring, vec![])
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn principal(ring: &Arc<Ring<F>>, f: &Polynomial<F>) -> Self {
        Ideal::new(ring, vec![f.clone()])
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.module.ring()
    }

    pub fn gens_poly(&self) -> Vec<Polynomial<F>> {
        self.module.gens().iter().map(|v| v.entries[0].clone()).collect()
    }

    /// Canonical reduced basis polynomials, ascending leading term.
    pub fn gb_polys(&self) -> Vec<Polynomial<F>> {
        self.module.gb().elems.iter().map(|v| v.entries[0].clone()).collect()
    }

    pub fn contains_poly(&self, f: &Polynomial<F>) -> bool {
        self.module.contains(&PolyVector::new(vec![f.clone()]))
    }

    pub fn normal_form_poly(&self, f: &Polynomial<F>) -> Polynomial<F> {
        self.module.normal_form(&PolyVector::new(vec![f.clone()])).entries[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero_module()
    }

    pub fn is_proper(&self) -> bool {
        !self.contains_poly(&Polynomial::one(self.ring()))
    }

    pub fn equals(&self, other: &Ideal<F>) -> bool {
        self.module.equals(&other.module)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        self.module.contains_module(&other.module)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        Ideal { module: self.module.sum(&other.module) }
    }

    pub fn intersect(&self, other: &Ideal<F>) -> Ideal<F> {
        Ideal { module: intersect(&self.module, &other.module) }
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let ring = self.ring();
        let mut gens = Vec::new();
        for a in self.gens_poly() {
            for b in other.gens_poly() {
                gens.push(a.mul(&b));
            }
        }
        Ideal::new(ring, gens)
    }

    pub fn power(&self, e: u32) -> Ideal<F> {
        let ring = self.ring();
        if e == 0 {
            return Ideal::unit(ring);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.product(self);
        }
        acc
    }

    pub fn colon(&self, other: &Ideal<F>) -> Ideal<F> {
        Ideal { module: colon_ideal(&self.module, other) }
    }

    pub fn saturate(&self, other: &Ideal<F>, cap: u32) -> Result<(Ideal<F>, u32)> {
        let (m, s) = saturate_ideal(&self.module, other, cap)?;
        Ok((Ideal { module: m }, s))
    }

    /// Generators free of the given variables; the contraction to the
    /// subring they span.
    pub fn eliminate(&self, drop: &BTreeSet<usize>) -> Ideal<F> {
        let ring = self.ring();
        let ord = ModOrder::Pot(MonomialOrder::Elim(drop.clone()));
        let gb = self.module.gb_under(&ord);
        let gens = gb
            .elems
            .iter()
            .map(|v| v.entries[0].clone())
            .filter(|p| p.support().iter().all(|i| !drop.contains(i)))
            .collect();
        Ideal::new(ring, gens)
    }

    /// Membership in the radical, decided by adjoining an inverse.
    pub fn radical_contains(&self, f: &Polynomial<F>) -> bool {
        if f.is_zero() {
            return true;
        }
        let ring = self.ring();
        let (ext, y) = extend_ring(ring, "inv");
        let idmap: Vec<usize> = (0..ring.nvars()).collect();
        let mut gens: Vec<Polynomial<F>> = self.gens_poly().iter().map(|p| p.embed(&ext, &idmap)).collect();
        let witness = Polynomial::one(&ext)
            .sub(&Polynomial::var(&ext, y).mul(&f.embed(&ext, &idmap)));
        gens.push(witness);
        !Ideal::new(&ext, gens).is_proper()
    }

    /// Dimension of R/I as a vector space over the base field, if finite.
    pub fn vector_space_dim(&self) -> Option<usize> {
        std_monomials(&self.module).map(|v| v.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::parse_poly;
    use crate::poly::qring;

    fn pp(ring: &Arc<Ring<Rationals>>, s: &str) -> Polynomial<Rationals> {
        parse_poly(ring, s).unwrap()
    }

    fn ideal(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(ring, gens.iter().map(|s| pp(ring, s)).collect())
    }

    #[test]
    fn syzygies_kill_generators() {
        let r = qring(&["x1", "x2", "x3"]);
        let gens: Vec<PolyVector<Rationals>> = ["x1", "x2", "x3"]
            .iter()
            .map(|s| PolyVector::new(vec![pp(&r, s)]))
            .collect();
        let syz = syzygies(&r, 1, &gens);
        assert!(!syz.is_empty());
        for s in &syz {
            let mut acc = Polynomial::zero(&r);
            for (a, g) in s.entries.iter().zip(&gens) {
                acc = acc.add(&a.mul(&g.entries[0]));
            }
            assert!(acc.is_zero(), "relation must kill the generators");
        }
        // The Koszul relations lie in the computed module.
        let syzmod = Submodule::new(&r, 3, syz);
        let koszul = [
            PolyVector::new(vec![pp(&r, "x2"), pp(&r, "-x1"), pp(&r, "0")]),
            PolyVector::new(vec![pp(&r, "x3"), pp(&r, "0"), pp(&r, "-x1")]),
            PolyVector::new(vec![pp(&r, "0"), pp(&r, "x3"), pp(&r, "-x2")]),
        ];
        for v in &koszul {
            assert!(syzmod.contains(v));
        }
        // And a non-relation does not.
        assert!(!syzmod.contains(&PolyVector::new(vec![
            pp(&r, "1"),
            pp(&r, "0"),
            pp(&r, "0")
        ])));
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let r = qring(&["x1", "x2"]);
        let a = ideal(&r, &["x1"]);
        let b = ideal(&r, &["x2"]);
        let i = a.intersect(&b);
        assert!(i.equals(&ideal(&r, &["x1*x2"])));
        // lcm behaviour with a common factor
        let c = ideal(&r, &["x1*x2"]);
        let d = ideal(&r, &["x1^2"]);
        assert!(c.intersect(&d).equals(&ideal(&r, &["x1^2*x2"])));
    }

    #[test]
    fn module_intersection() {
        let r = qring(&["x1", "x2"]);
        let e0 = |p: &str| PolyVector::new(vec![pp(&r, p), pp(&r, "0")]);
        let e1 = |p: &str| PolyVector::new(vec![pp(&r, "0"), pp(&r, p)]);
        let a = Submodule::new(&r, 2, vec![e0("x1"), e1("1")]);
        let b = Submodule::new(&r, 2, vec![e0("x2"), e1("1")]);
        let i = intersect(&a, &b);
        let expect = Submodule::new(&r, 2, vec![e0("x1*x2"), e1("1")]);
        assert!(i.equals(&expect));
    }

    #[test]
    fn colon_and_saturation() {
        let r = qring(&["x1", "x2"]);
        let m = ideal(&r, &["x1^2*x2"]).module;
        let c1 = colon_poly(&m, &pp(&r, "x1"));
        assert!(Ideal { module: c1 }.equals(&ideal(&r, &["x1*x2"])));
        let (sat, steps) = saturate_poly(&m, &pp(&r, "x1"), 64).unwrap();
        assert!(Ideal { module: sat }.equals(&ideal(&r, &["x2"])));
        assert_eq!(steps, 2);

        let n = ideal(&r, &["x1^2", "x1*x2"]);
        let q = n.colon(&ideal(&r, &["x1", "x2"]));
        assert!(q.equals(&ideal(&r, &["x1"])));
        let (sat2, _) = n.saturate(&ideal(&r, &["x1", "x2"]), 64).unwrap();
        assert!(sat2.equals(&ideal(&r, &["x1"])));
    }

    #[test]
    fn annihilator_of_quotient() {
        let r = qring(&["x1", "x2"]);
        let m = Submodule::new(
            &r,
            2,
            vec![
                PolyVector::new(vec![pp(&r, "x1"), pp(&r, "0")]),
                PolyVector::new(vec![pp(&r, "0"), pp(&r, "x2")]),
            ],
        );
        let ann = annihilator(&m);
        assert!(ann.equals(&ideal(&r, &["x1*x2"])));
        for f in ann.gens_poly() {
            for j in 0..2 {
                let v = PolyVector::unit(&r, 2, j, f.clone());
                assert!(m.contains(&v), "annihilator element must multiply e_j into M");
            }
        }
        // For an ideal, the annihilator of R/I is I itself.
        let i = ideal(&r, &["x1^2 - x2", "x2^3"]);
        assert!(annihilator(&i.module).equals(&i));
    }

    #[test]
    fn elimination_matches_resultant() {
        let r = qring(&["x", "y", "t"]);
        let i = ideal(&r, &["x - t^2", "y - t^3"]);
        let j = i.eliminate(&[2usize].into_iter().collect());
        // Independent checks: every generator is t-free and vanishes under
        // x -> s^2, y -> s^3; and the Sylvester resultant lies in the result.
        let s_ring = qring(&["s"]);
        let images = vec![pp(&s_ring, "s^2"), pp(&s_ring, "s^3"), pp(&s_ring, "s")];
        assert!(!j.gens_poly().is_empty());
        for g in j.gens_poly() {
            assert_eq!(g.deg_in(2), 0);
            let sub = g.map_into(&s_ring, &mut |c| c.clone(), &images);
            assert!(sub.is_zero(), "eliminated generator must vanish on the curve");
        }
        // Sylvester matrix of x - t^2 and y - t^3 with respect to t:
        // rows are shifts of the coefficient sequences (-1, 0, x) and
        // (-1, 0, 0, y), giving a 5 x 5 determinant.
        let zero = pp(&r, "0");
        let a = [pp(&r, "-1"), zero.clone(), pp(&r, "x")];
        let b = [pp(&r, "-1"), zero.clone(), zero.clone(), pp(&r, "y")];
        let mut sylv = vec![vec![zero.clone(); 5]; 5];
        for shift in 0..3 {
            for (pos, c) in a.iter().enumerate() {
                sylv[shift][shift + pos] = c.clone();
            }
        }
        for shift in 0..2 {
            for (pos, c) in b.iter().enumerate() {
                sylv[3 + shift][shift + pos] = c.clone();
            }
        }
        let res = determinant(&r, &sylv);
        assert!(!res.is_zero());
        assert!(j.contains_poly(&res));
        // The contraction is exactly the curve's equation.
        assert!(j.equals(&ideal(&r, &["x^3 - y^2"])));
    }

    #[test]
    fn fitting_ideal_minors() {
        let r = qring(&["x1", "x2", "x3", "x4"]);
        let m = Submodule::new(
            &r,
            2,
            vec![
                PolyVector::new(vec![pp(&r, "x1"), pp(&r, "x3")]),
                PolyVector::new(vec![pp(&r, "x2"), pp(&r, "x4")]),
            ],
        );
        let f = fitting_ideal(&m);
        assert!(f.equals(&ideal(&r, &["x1*x4 - x2*x3"])));
        // Fewer columns than rows: no minors.
        let thin = Submodule::new(&r, 2, vec![PolyVector::new(vec![pp(&r, "x1"), pp(&r, "x2")])]);
        assert!(fitting_ideal(&thin).is_zero());
    }

    #[test]
    fn radical_membership() {
        let r = qring(&["x1", "x2", "x3"]);
        let i = ideal(&r, &["x1^2", "x2^3"]);
        for f in ["x1", "x2", "x1 + x2", "x1*x3"] {
            let p = pp(&r, f);
            assert!(i.radical_contains(&p), "{} is in the radical", f);
            // Independent witness: some small power lies in the ideal.
            let mut seen = false;
            let mut power = Polynomial::one(&r);
            for _ in 0..8 {
                power = power.mul(&p);
                if i.contains_poly(&power) {
                    seen = true;
                    break;
                }
            }
            assert!(seen, "explicit power of {} found in the ideal", f);
        }
        assert!(!i.radical_contains(&pp(&r, "x3")));
        assert!(!i.radical_contains(&pp(&r, "x1 + x3")));
    }

    #[test]
    fn standard_monomials_and_dimension() {
        let r = qring(&["x1", "x2"]);
        let i = ideal(&r, &["x1^2", "x2^3"]);
        let std = std_monomials(&i.module).expect("finite quotient");
        assert_eq!(std.len(), 6);
        for (_, m) in &std {
            assert!(!i.contains_poly(&Polynomial::monomial(&r, m.clone(), crate::field::rat(1))));
        }
        assert_eq!(i.vector_space_dim(), Some(6));
        let inf = ideal(&r, &["x1"]);
        assert_eq!(std_monomials(&inf.module), None);
        // Mixed leading terms still finite: <x1^2, x1*x2, x2^2> has dim 3.
        let mixed = ideal(&r, &["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(mixed.vector_space_dim(), Some(3));
        // Unit ideal: empty set of standard monomials.
        assert_eq!(Ideal::unit(&r).vector_space_dim(), Some(0));
    }

    #[test]
    fn ideal_power_and_product() {
        let r = qring(&["x1", "x2"]);
        let m = ideal(&r, &["x1", "x2"]);
        let sq = m.power(2);
        assert!(sq.equals(&ideal(&r, &["x1^2", "x1*x2", "x2^2"])));
        assert!(m.power(0).equals(&Ideal::unit(&r)));
        let pr = m.product(&ideal(&r, &["x1"]));
        assert!(pr.equals(&ideal(&r, &["x1^2", "x1*x2"])));
    }
}
