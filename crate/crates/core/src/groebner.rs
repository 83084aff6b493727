//! Gröbner bases for submodules of free modules R^k.
//!
//! Everything downstream — normal forms, syzygies, intersections, colons,
//! annihilators, elimination — runs through the Buchberger loop here.  The
//! selection strategy is sugar-degree with ties broken by the term order on
//! pair lcms; the coprimality criterion is applied in the ideal case and the
//! lcm chain criterion in general.  Reduced bases are monic and sorted, so
//! they are canonical for a fixed order.

use std::collections::HashSet;
use std::sync::Arc;
use std::sync::OnceLock;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyVector, Polynomial, Ring};

/// Order on module terms (component, monomial).
#[derive(Clone, PartialEq, Debug)]
pub enum ModOrder {
    /// Position over term: lower component index wins, monomial order breaks
    /// ties.  The default for all module computations.
    Pot(MonomialOrder),
    /// Term over position: monomial order first, lower component on ties.
    /// Required when eliminating a ring variable from a module, so that a
    /// tag-free leading term certifies a tag-free vector.
    Top(MonomialOrder),
}

impl ModOrder {
    pub fn pot_grevlex() -> Self {
        ModOrder::Pot(MonomialOrder::GrevLex)
    }

    pub fn mono(&self) -> &MonomialOrder {
        match self {
            ModOrder::Pot(m) | ModOrder::Top(m) => m,
        }
    }

    pub fn cmp_term(&self, a: &(usize, Monomial), b: &(usize, Monomial)) -> std::cmp::Ordering {
        match self {
            ModOrder::Pot(m) => b.0.cmp(&a.0).then_with(|| m.cmp(&a.1, &b.1)),
            ModOrder::Top(m) => m.cmp(&a.1, &b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }
}

/// Leading term of a vector under a module order.
pub fn lead_term<F: Field>(v: &PolyVector<F>, ord: &ModOrder) -> Option<(usize, Monomial, F::Elem)> {
    if let ModOrder::Pot(MonomialOrder::GrevLex) = ord {
        // Fast path: storage order is grevlex, components rank by index.
        for (j, p) in v.entries.iter().enumerate() {
            if let Some((m, c)) = p.lt() {
                return Some((j, m.clone(), c.clone()));
            }
        }
        return None;
    }
    let mut best: Option<(usize, Monomial, F::Elem)> = None;
    for (j, p) in v.entries.iter().enumerate() {
        if let Some((m, c)) = p.lt_under(ord.mono()) {
            let cand = (j, m.clone(), c.clone());
            best = match best {
                None => Some(cand),
                Some(cur) => {
                    if ord.cmp_term(&(cand.0, cand.1.clone()), &(cur.0, cur.1.clone()))
                        == std::cmp::Ordering::Greater
                    {
                        Some(cand)
                    } else {
                        Some(cur)
                    }
                }
            };
        }
    }
    best
}

/// A computed Gröbner basis: monic elements sorted by ascending leading
/// term, together with the order it was computed under.
#[derive(Clone, Debug)]
pub struct Gb<F: Field> {
    pub order: ModOrder,
    pub elems: Vec<PolyVector<F>>,
    pub leads: Vec<(usize, Monomial)>,
}

/// Full normal form of `v` against basis elements with precomputed leading
/// terms: every term of the result lies outside the leading-term module.
pub fn normal_form_with<F: Field>(
    elems: &[PolyVector<F>],
    leads: &[(usize, Monomial)],
    ord: &ModOrder,
    v: &PolyVector<F>,
) -> PolyVector<F> {
    let ring = v.ring().clone();
    let mut rem = v.clone();
    let mut out = PolyVector::zero(&ring, v.rank());
    'outer: while let Some((j, m, c)) = lead_term(&rem, ord) {
        for (idx, (lj, lm)) in leads.iter().enumerate() {
            if *lj == j && lm.divides(&m) {
                let q = lm.quotient(&m);
                rem = rem.sub(&elems[idx].mul_term(&q, &c));
                continue 'outer;
            }
        }
        // Move the irreducible leading term to the output.
        let t = PolyVector::unit(&ring, v.rank(), j, Polynomial::monomial(&ring, m.clone(), c.clone()));
        out = out.add(&t);
        rem = rem.sub(&t);
    }
    out
}

impl<F: Field> Gb<F> {
    pub fn normal_form(&self, v: &PolyVector<F>) -> PolyVector<F> {
        normal_form_with(&self.elems, &self.leads, &self.order, v)
    }

    pub fn reduces_to_zero(&self, v: &PolyVector<F>) -> bool {
        self.normal_form(v).is_zero()
    }
}

fn monic<F: Field>(v: &PolyVector<F>, ord: &ModOrder) -> PolyVector<F> {
    match lead_term(v, ord) {
        None => v.clone(),
        Some((_, _, c)) => {
            let ring = v.ring();
            let inv = ring.field.inv(&c).expect("leading coefficient in a field");
            v.map_entries(|p| p.scale(&inv))
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    sugar: u32,
}

/// Buchberger's algorithm; returns the reduced basis.
pub fn buchberger<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[PolyVector<F>],
    ord: &ModOrder,
) -> Gb<F> {
    let mut basis: Vec<PolyVector<F>> = Vec::new();
    let mut leads: Vec<(usize, Monomial)> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut in_queue: HashSet<(usize, usize)> = HashSet::new();
    let k = gens.first().map(|g| g.rank()).unwrap_or(1);

    let push_elem = |v: PolyVector<F>,
                         sugar: u32,
                         basis: &mut Vec<PolyVector<F>>,
                         leads: &mut Vec<(usize, Monomial)>,
                         sugars: &mut Vec<u32>,
                         pending: &mut Vec<Pair>,
                         in_queue: &mut HashSet<(usize, usize)>| {
        let (comp, mono, _) = lead_term(&v, ord).expect("nonzero element");
        let t = basis.len();
        for s in 0..t {
            if leads[s].0 != comp {
                continue;
            }
            let lcm = leads[s].1.lcm(&mono);
            let sug = (sugars[s] + lcm.total_deg() - leads[s].1.total_deg())
                .max(sugar + lcm.total_deg() - mono.total_deg());
            pending.push(Pair { i: s, j: t, lcm, comp, sugar: sug });
            in_queue.insert((s, t));
        }
        basis.push(v);
        leads.push((comp, mono));
        sugars.push(sugar);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let sugar = g.entries.iter().filter_map(|p| p.total_deg()).max().unwrap_or(0);
        push_elem(
            monic(g, ord),
            sugar,
            &mut basis,
            &mut leads,
            &mut sugars,
            &mut pending,
            &mut in_queue,
        );
    }

    while !pending.is_empty() {
        // Normal selection: minimal sugar, then smallest lcm in the order.
        let mut sel = 0;
        for idx in 1..pending.len() {
            let a = &pending[idx];
            let b = &pending[sel];
            let better = match a.sugar.cmp(&b.sugar) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => {
                    ord.cmp_term(&(a.comp, a.lcm.clone()), &(b.comp, b.lcm.clone()))
                        == std::cmp::Ordering::Less
                }
            };
            if better {
                sel = idx;
            }
        }
        let pair = pending.swap_remove(sel);
        in_queue.remove(&(pair.i, pair.j));

        let (mi, mj) = (&leads[pair.i].1, &leads[pair.j].1);
        // Coprimality criterion, sound for ideals.
        if k == 1 && mi.coprime(mj) {
            continue;
        }
        // Chain criterion: a third element whose lead divides the lcm, with
        // both linking pairs already handled.
        let mut chained = false;
        for l in 0..basis.len() {
            if l == pair.i || l == pair.j || leads[l].0 != pair.comp {
                continue;
            }
            if leads[l].1.divides(&pair.lcm) {
                let a = (pair.i.min(l), pair.i.max(l));
                let b = (pair.j.min(l), pair.j.max(l));
                if !in_queue.contains(&a) && !in_queue.contains(&b) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            continue;
        }

        let fi = &basis[pair.i];
        let fj = &basis[pair.j];
        let one = ring.field.one();
        let sp = fi
            .mul_term(&mi.quotient(&pair.lcm), &one)
            .sub(&fj.mul_term(&mj.quotient(&pair.lcm), &one));
        let nf = normal_form_with(&basis, &leads, ord, &sp);
        if !nf.is_zero() {
            push_elem(
                monic(&nf, ord),
                pair.sugar,
                &mut basis,
                &mut leads,
                &mut sugars,
                &mut pending,
                &mut in_queue,
            );
        }
    }

    reduce_basis(ring, basis, ord)
}

/// Minimalize and tail-reduce a basis into the canonical reduced form.
fn reduce_basis<F: Field>(
    ring: &Arc<Ring<F>>,
    basis: Vec<PolyVector<F>>,
    ord: &ModOrder,
) -> Gb<F> {
    let _ = ring;
    let mut elems: Vec<(PolyVector<F>, (usize, Monomial))> = basis
        .into_iter()
        .filter(|v| !v.is_zero())
        .map(|v| {
            let (c, m, _) = lead_term(&v, ord).unwrap();
            (v, (c, m))
        })
        .collect();
    // Minimal generators of the leading module only.
    let mut keep: Vec<bool> = vec![true; elems.len()];
    for a in 0..elems.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..elems.len() {
            if a == b || !keep[b] || !keep[a] {
                continue;
            }
            let (ca, ma) = &elems[a].1;
            let (cb, mb) = &elems[b].1;
            if ca == cb && ma.divides(mb) && (ma != mb || a < b) {
                keep[b] = false;
            }
        }
    }
    let mut minimal: Vec<(PolyVector<F>, (usize, Monomial))> =
        elems.drain(..).zip(keep).filter_map(|(e, k)| k.then_some(e)).collect();
    minimal.sort_by(|a, b| ord.cmp_term(&a.1, &b.1));
    // Tail-reduce each element against all the others.
    let mut reduced: Vec<PolyVector<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let elems: Vec<PolyVector<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (v, _))| v.clone())
            .collect();
        let leads: Vec<(usize, Monomial)> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (_, l))| l.clone())
            .collect();
        reduced.push(monic(&normal_form_with(&elems, &leads, ord, &minimal[i].0), ord));
    }
    let leads = reduced
        .iter()
        .map(|v| {
            let (c, m, _) = lead_term(v, ord).unwrap();
            (c, m)
        })
        .collect();
    Gb { order: ord.clone(), elems: reduced, leads }
}

/// A finitely generated submodule of R^k with a cached canonical basis.
#[derive(Clone, Debug)]
pub struct Submodule<F: Field> {
    ring: Arc<Ring<F>>,
    k: usize,
    gens: Vec<PolyVector<F>>,
    cache: Arc<OnceLock<Arc<Gb<F>>>>,
}

impl<F: Field> Submodule<F> {
    pub fn new(ring: &Arc<Ring<F>>, k: usize, gens: Vec<PolyVector<F>>) -> Self {
        assert!(k >= 1, "rank must be positive");
        for g in &gens {
            assert_eq!(g.rank(), k, "generator rank mismatch");
            assert!(**g.ring() == **ring, "generator ring mismatch");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Submodule { ring: ring.clone(), k, gens, cache: Arc::new(OnceLock::new()) }
    }

    pub fn zero(ring: &Arc<Ring<F>>, k: usize) -> Self {
        Self::new(ring, k, vec![])
    }

    /// The whole module R^k.
    pub fn whole(ring: &Arc<Ring<F>>, k: usize) -> Self {
        let gens = (0..k).map(|j| PolyVector::unit(ring, k, j, Polynomial::one(ring))).collect();
        Self::new(ring, k, gens)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gens(&self) -> &[PolyVector<F>] {
        &self.gens
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.is_empty()
    }

    /// Canonical reduced basis under position-over-term grevlex, cached.
    pub fn gb(&self) -> Arc<Gb<F>> {
        self.cache
            .get_or_init(|| Arc::new(buchberger(&self.ring, &self.gens, &ModOrder::pot_grevlex())))
            .clone()
    }

    /// Reduced basis under an arbitrary order (not cached).
    pub fn gb_under(&self, ord: &ModOrder) -> Gb<F> {
        buchberger(&self.ring, &self.gens, ord)
    }

    pub fn normal_form(&self, v: &PolyVector<F>) -> PolyVector<F> {
        self.gb().normal_form(v)
    }

    pub fn contains(&self, v: &PolyVector<F>) -> bool {
        self.gb().reduces_to_zero(v)
    }

    pub fn contains_module(&self, other: &Submodule<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Submodule<F>) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }

    /// Does the module contain every basis vector e_j?
    pub fn is_whole(&self) -> bool {
        (0..self.k).all(|j| {
            self.contains(&PolyVector::unit(&self.ring, self.k, j, Polynomial::one(&self.ring)))
        })
    }

    pub fn sum(&self, other: &Submodule<F>) -> Submodule<F> {
        assert_eq!(self.k, other.k);
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Submodule::new(&self.ring, self.k, gens)
    }

    /// Generators taken from the canonical reduced basis.
    pub fn minimal_gens(&self) -> Vec<PolyVector<F>> {
        self.gb().elems.clone()
    }
}
