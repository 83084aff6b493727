//! Associated primes of R^k / M over the rationals.
//!
//! The route goes through the annihilators of the dual cohomology modules:
//! the associated primes of codimension c are exactly the minimal primes of
//! codimension c over the c-th annihilator.  Minimal primes themselves are
//! found by recursive splitting — factoring generators, branching on factors,
//! cutting positive-dimensional ideals along the locus where their
//! rational-function-coefficient basis degenerates — with primality
//! certified either structurally (linear generators), through a univariate
//! minimal polynomial in shape position, or by a degree-preserving rational
//! specialization that stays irreducible.  Leaves that resist certification
//! are reported as such rather than silently assumed prime.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::factor::factor_univariate;
use crate::field::{Field, Rationals};
use crate::groebner::{ModOrder, Submodule};
use crate::modops::{saturate_poly, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};
use crate::ratfunc::RatFuncField;
use crate::resolution::{dual_cohomology, free_resolution};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Independent sets and dimension.
// ---------------------------------------------------------------------------

/// All leading monomial supports of the canonical reduced basis.
fn lead_supports<F: Field>(i: &Ideal<F>) -> Vec<Vec<usize>> {
    i.module.gb().leads.iter().map(|(_, m)| m.support()).collect()
}

/// The lexicographically first maximum-size subset S of the variables such
/// that no leading monomial is supported inside S; None for the unit ideal.
pub fn max_independent_set<F: Field>(i: &Ideal<F>) -> Option<Vec<usize>> {
    let n = i.ring().nvars();
    assert!(n <= 24, "independent-set search limited to 24 variables");
    let supports = lead_supports(i);
    if supports.iter().any(|s| s.is_empty()) {
        return None; // a constant leads: unit ideal
    }
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let can_win = match &best {
            None => true,
            Some(b) => set.len() > b.len() || (set.len() == b.len() && set < *b),
        };
        if !can_win {
            continue;
        }
        let independent = supports.iter().all(|s| !s.iter().all(|v| set.contains(v)));
        if independent {
            best = Some(set);
        }
    }
    best
}

/// Krull dimension of R / I read off the leading-term ideal.
pub fn ideal_dim<F: Field>(i: &Ideal<F>) -> Option<usize> {
    max_independent_set(i).map(|s| s.len())
}

/// Height of the ideal; None for the unit ideal.
pub fn ideal_codim<F: Field>(i: &Ideal<F>) -> Option<usize> {
    ideal_dim(i).map(|d| i.ring().nvars() - d)
}

// ---------------------------------------------------------------------------
// Minimal primes.
// ---------------------------------------------------------------------------

/// How the primality of a reported component was established.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimeCertificate {
    /// Proven prime: linear generators, or an irreducible univariate minimal
    /// polynomial in shape position (possibly after specialization).
    Certified,
    /// The splitting search could not refine further nor certify primality.
    Uncertified,
    /// Supplied by the caller and taken on trust.
    Provided,
}

#[derive(Clone, Debug)]
pub struct MinimalPrime<F: Field> {
    pub ideal: Ideal<F>,
    pub certificate: PrimeCertificate,
}

const MAX_DEPTH: usize = 64;
const SPECIALIZE_ATTEMPTS: u32 = 8;

/// Minimal primes of an ideal over the rationals.
pub fn minimal_primes(i: &Ideal<Rationals>) -> Result<Vec<MinimalPrime<Rationals>>> {
    let mut out: Vec<MinimalPrime<Rationals>> = Vec::new();
    split_rec(i.clone(), 0, &mut out)?;
    // Keep only the minimal members, deduplicated.
    let mut kept: Vec<MinimalPrime<Rationals>> = Vec::new();
    'cand: for c in out {
        let mut replace: Vec<usize> = Vec::new();
        for (idx, k) in kept.iter().enumerate() {
            if k.ideal.contains_ideal(&c.ideal) && c.ideal.contains_ideal(&k.ideal) {
                continue 'cand; // duplicate
            }
            if c.ideal.contains_ideal(&k.ideal) {
                continue 'cand; // candidate lies above an existing component
            }
            if k.ideal.contains_ideal(&c.ideal) {
                replace.push(idx);
            }
        }
        for idx in replace.into_iter().rev() {
            kept.remove(idx);
        }
        kept.push(c);
    }
    kept.sort_by_key(|p| sort_key(&p.ideal));
    Ok(kept)
}

/// Deterministic ordering: codimension first, then the printed basis.
pub fn sort_key<F: Field>(i: &Ideal<F>) -> (usize, Vec<String>) {
    let codim = ideal_codim(i).unwrap_or(usize::MAX);
    let gens: Vec<String> = i.gb_polys().iter().map(|p| p.to_string()).collect();
    (codim, gens)
}

fn split_rec(
    i: Ideal<Rationals>,
    depth: usize,
    out: &mut Vec<MinimalPrime<Rationals>>,
) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(Error::CapExceeded(
            "prime decomposition exceeded the splitting depth cap".into(),
        ));
    }
    if !i.is_proper() {
        return Ok(());
    }
    if i.is_zero() {
        out.push(MinimalPrime { ideal: i, certificate: PrimeCertificate::Certified });
        return Ok(());
    }
    let ring = i.ring().clone();
    let gb = i.gb_polys();

    // Generators that visibly factor: split on each irreducible piece.  A
    // factor already inside the ideal cannot occur for a reduced basis; the
    // filter below guards the recursion against it regardless.
    for g in &gb {
        if let Some(factors) = generator_factors(&ring, g)? {
            let branches: Vec<Ideal<Rationals>> = factors
                .iter()
                .filter(|q| !i.contains_poly(q))
                .map(|q| i.sum(&Ideal::principal(&ring, q)))
                .collect();
            if !branches.is_empty() {
                for b in branches {
                    split_rec(b, depth + 1, out)?;
                }
                return Ok(());
            }
        }
    }

    // Purely linear generators present no further structure: prime.
    if gb.iter().all(|g| g.total_deg().unwrap_or(0) <= 1) {
        out.push(MinimalPrime { ideal: i, certificate: PrimeCertificate::Certified });
        return Ok(());
    }

    match max_independent_set(&i) {
        None => Ok(()), // unit (already excluded), defensive
        Some(s) if s.is_empty() => zero_dim_split(i, depth, out),
        Some(s) => positive_dim_split(i, &s, depth, out),
    }
}

/// Nontrivial factorization of a generator, when one is visible: monomial
/// content, or a univariate generator factored over Q.  Returns the distinct
/// irreducible pieces.
fn generator_factors(
    ring: &Arc<Ring<Rationals>>,
    g: &Polynomial<Rationals>,
) -> Result<Option<Vec<Polynomial<Rationals>>>> {
    // Monomial content: gcd of the exponent vectors.
    let mut content = match g.terms().first() {
        None => return Ok(None),
        Some((m, _)) => m.clone(),
    };
    for (m, _) in g.terms().iter().skip(1) {
        content = content.gcd(m);
    }
    if !content.is_one() {
        let mut parts: Vec<Polynomial<Rationals>> = content
            .support()
            .into_iter()
            .map(|v| Polynomial::var(ring, v))
            .collect();
        // The cofactor after removing the content.
        let cof = g
            .try_div_exact(&Polynomial::monomial(ring, content.clone(), crate::field::rat(1)))
            .expect("content divides");
        if !cof.is_constant() {
            parts.push(cof);
        }
        if parts.len() > 1 || g.terms().len() > 1 || content.total_deg() > 1 {
            return Ok(Some(parts));
        }
        return Ok(None); // g is a single variable: already irreducible
    }
    // Univariate generator of degree >= 2: try the rational factorization.
    let support = g.support();
    if support.len() == 1 && g.deg_in(support[0]) >= 2 {
        let v = support[0];
        let (_, factors) = factor_univariate(g, v)?;
        let distinct: Vec<Polynomial<Rationals>> = factors.iter().map(|(q, _)| q.clone()).collect();
        if distinct.len() > 1 || factors.iter().any(|(_, m)| *m > 1) {
            return Ok(Some(distinct));
        }
    }
    Ok(None)
}

/// Shape-position data of a reduced basis of a zero-dimensional ideal over
/// an arbitrary coefficient field: one univariate minimal polynomial and a
/// polynomial expression for every other variable.
struct ShapeData<F: Field> {
    z: usize,
    min_poly: Polynomial<F>,
}

fn shape_position<F: Field>(ring: &Arc<Ring<F>>, gb: &[Polynomial<F>]) -> Option<ShapeData<F>> {
    let n = ring.nvars();
    // Candidate primitive variables: those carrying a univariate generator.
    'zloop: for z in 0..n {
        let mut min_poly: Option<Polynomial<F>> = None;
        let mut seen = vec![false; n];
        seen[z] = true;
        for g in gb {
            let sup = g.support();
            if sup.iter().all(|&v| v == z) {
                if min_poly.is_some() {
                    continue 'zloop; // two univariate elements in z
                }
                min_poly = Some(g.clone());
                continue;
            }
            // Must be c*x_j - stuff(z) with j unique and c constant.
            let extras: Vec<usize> = sup.iter().copied().filter(|&v| v != z).collect();
            if extras.len() != 1 {
                continue 'zloop;
            }
            let j = extras[0];
            if g.deg_in(j) != 1 || seen[j] {
                continue 'zloop;
            }
            let c = g.coeff_wrt(j, 1);
            if !c.is_constant() || c.is_zero() {
                continue 'zloop;
            }
            seen[j] = true;
        }
        if let Some(p) = min_poly {
            if seen.iter().all(|&b| b) && p.deg_in(z) >= 1 {
                return Some(ShapeData { z, min_poly: p });
            }
        }
    }
    None
}

/// Minimal polynomial of a single variable inside a zero-dimensional ideal:
/// the generator of the contraction to that variable's subring.
fn minimal_polynomial(
    i: &Ideal<Rationals>,
    v: usize,
) -> Option<Polynomial<Rationals>> {
    let ring = i.ring();
    let drop: BTreeSet<usize> = (0..ring.nvars()).filter(|&w| w != v).collect();
    let elim = i.eliminate(&drop);
    let gens = elim.gb_polys();
    gens.into_iter().find(|g| !g.is_constant())
}

/// Apply the substitution x_target -> x_target + c * x_helper to every
/// generator (c may be negative through `sub`).
fn substitute_linear(
    i: &Ideal<Rationals>,
    target: usize,
    helper: usize,
    c: i64,
) -> Ideal<Rationals> {
    let ring = i.ring().clone();
    let images: Vec<Polynomial<Rationals>> = (0..ring.nvars())
        .map(|v| {
            if v == target {
                let shift = Polynomial::var(&ring, helper).scale(&crate::field::rat(c));
                Polynomial::var(&ring, target).add(&shift)
            } else {
                Polynomial::var(&ring, v)
            }
        })
        .collect();
    let gens = i
        .gens_poly()
        .iter()
        .map(|g| g.map_into(&ring, &mut |q| q.clone(), &images))
        .collect();
    Ideal::new(&ring, gens)
}

fn zero_dim_split(
    i: Ideal<Rationals>,
    depth: usize,
    out: &mut Vec<MinimalPrime<Rationals>>,
) -> Result<()> {
    let ring = i.ring().clone();
    let n = ring.nvars();
    // Per-variable minimal polynomials: factor each; any split refines the
    // ideal, and a repeated factor sharpens it toward its radical.
    for v in 0..n {
        if let Some(p) = minimal_polynomial(&i, v) {
            let (_, factors) = factor_univariate(&p, v)?;
            let nontrivial = factors.len() > 1 || factors.iter().any(|(_, m)| *m > 1);
            if nontrivial {
                let branches: Vec<Ideal<Rationals>> = factors
                    .iter()
                    .filter(|(q, _)| !i.contains_poly(q))
                    .map(|(q, _)| i.sum(&Ideal::principal(&ring, q)))
                    .collect();
                if !branches.is_empty() {
                    for b in branches {
                        split_rec(b, depth + 1, out)?;
                    }
                    return Ok(());
                }
            }
        }
    }
    // All minimal polynomials irreducible.  A shape-position basis makes the
    // quotient a field.
    let lex_gb = lex_basis(&i);
    if shape_position(&ring, &lex_gb).is_some() {
        out.push(MinimalPrime { ideal: i, certificate: PrimeCertificate::Certified });
        return Ok(());
    }
    // Sweep small linear coordinate changes looking for a primitive element.
    for c in 1..=3i64 {
        for target in 0..n {
            for helper in 0..n {
                if helper == target {
                    continue;
                }
                let j = substitute_linear(&i, target, helper, c);
                let Some(p) = minimal_polynomial(&j, target) else { continue };
                let (_, factors) = factor_univariate(&p, target)?;
                if factors.len() > 1 || factors.iter().any(|(_, m)| *m > 1) {
                    // Split in the new coordinates, then undo the change.
                    let mut branches = Vec::new();
                    for (q, _) in &factors {
                        let back = substitute_linear(
                            &Ideal::principal(&ring, q),
                            target,
                            helper,
                            -c,
                        );
                        let qb = back.gens_poly().remove(0);
                        if !i.contains_poly(&qb) {
                            branches.push(i.sum(&Ideal::principal(&ring, &qb)));
                        }
                    }
                    if !branches.is_empty() {
                        for b in branches {
                            split_rec(b, depth + 1, out)?;
                        }
                        return Ok(());
                    }
                } else {
                    let jgb = lex_basis(&j);
                    if shape_position(&ring, &jgb).is_some() {
                        // The transformed ideal is prime, hence so is i.
                        out.push(MinimalPrime {
                            ideal: i,
                            certificate: PrimeCertificate::Certified,
                        });
                        return Ok(());
                    }
                }
            }
        }
    }
    out.push(MinimalPrime { ideal: i, certificate: PrimeCertificate::Uncertified });
    Ok(())
}

fn lex_basis(i: &Ideal<Rationals>) -> Vec<Polynomial<Rationals>> {
    i.module
        .gb_under(&ModOrder::Pot(MonomialOrder::Lex))
        .elems
        .iter()
        .map(|v| v.entries[0].clone())
        .collect()
}

/// The coefficient field Q(x_S) together with the polynomial ring in the
/// remaining variables, plus the index maps between the two worlds.
struct DepSetting {
    params: Arc<Ring<Rationals>>,
    dep_ring: Arc<Ring<RatFuncField>>,
    /// original index of each dependent variable
    dep_vars: Vec<usize>,
    /// original index of each parameter
    par_vars: Vec<usize>,
}

fn dep_setting(ring: &Arc<Ring<Rationals>>, s: &[usize]) -> DepSetting {
    let par_vars: Vec<usize> = s.to_vec();
    let dep_vars: Vec<usize> = (0..ring.nvars()).filter(|v| !s.contains(v)).collect();
    let params = Ring::new(
        Rationals,
        par_vars.iter().map(|&v| ring.vars[v].clone()).collect(),
    );
    let field = RatFuncField::new(params.clone());
    let dep_ring = Ring::new(field, dep_vars.iter().map(|&v| ring.vars[v].clone()).collect());
    DepSetting { params, dep_ring, dep_vars, par_vars }
}

fn to_dep(setting: &DepSetting, g: &Polynomial<Rationals>) -> Polynomial<RatFuncField> {
    let ring = g.ring();
    let field = &setting.dep_ring.field;
    let images: Vec<Polynomial<RatFuncField>> = (0..ring.nvars())
        .map(|v| {
            if let Some(pos) = setting.dep_vars.iter().position(|&d| d == v) {
                Polynomial::var(&setting.dep_ring, pos)
            } else {
                let pos = setting.par_vars.iter().position(|&p| p == v).unwrap();
                Polynomial::constant(&setting.dep_ring, field.param(pos))
            }
        })
        .collect();
    g.map_into(&setting.dep_ring, &mut |c| field.from_rat(c), &images)
}

/// Clear denominators of a rational-function-coefficient polynomial into the
/// original ring; the result generates the same ideal after saturation.
fn clear_denominators(
    setting: &DepSetting,
    full: &Arc<Ring<Rationals>>,
    g: &Polynomial<RatFuncField>,
) -> Polynomial<Rationals> {
    // lcm of the denominators in the parameter ring.
    let mut l = Polynomial::one(&setting.params);
    for (_, c) in g.terms() {
        l = crate::gcd::lcm(&l, c.den());
    }
    let par_map: Vec<usize> = setting.par_vars.clone();
    let mut acc = Polynomial::zero(full);
    for (m, c) in g.terms() {
        let scale = l.try_div_exact(c.den()).expect("lcm divisible");
        let coef = c.num().mul(&scale); // in the parameter ring
        let lifted = coef.embed(full, &par_map);
        // monomial in the dependent variables, re-indexed.
        let mut mono = crate::monomial::Monomial::one(full.nvars());
        for (pos, &e) in m.0.iter().enumerate() {
            mono.0[setting.dep_vars[pos]] = e;
        }
        acc = acc.add(&lifted.mul_term(&mono, &crate::field::rat(1)));
    }
    acc
}

/// Specialize the parameter variables of q (an element of the full ring,
/// univariate in z over the parameters) at small rational points; returns
/// the specialized univariate polynomial when the degree is preserved.
fn specialize(
    full: &Arc<Ring<Rationals>>,
    q: &Polynomial<Rationals>,
    z: usize,
    attempt: u32,
) -> Option<Polynomial<Rationals>> {
    let one_var = Ring::new(Rationals, vec![full.vars[z].clone()]);
    let images: Vec<Polynomial<Rationals>> = (0..full.nvars())
        .map(|v| {
            if v == z {
                Polynomial::var(&one_var, 0)
            } else {
                let val = 1 + (v as i64 + 1) * attempt as i64;
                Polynomial::constant(&one_var, crate::field::rat(val))
            }
        })
        .collect();
    let spec = q.map_into(&one_var, &mut |c| c.clone(), &images);
    if spec.deg_in(0) == q.deg_in(z) {
        Some(spec)
    } else {
        None
    }
}

fn positive_dim_split(
    i: Ideal<Rationals>,
    s: &[usize],
    depth: usize,
    out: &mut Vec<MinimalPrime<Rationals>>,
) -> Result<()> {
    let ring = i.ring().clone();
    let setting = dep_setting(&ring, s);
    // Basis over the rational-function field: zero-dimensional there.
    let dep_gens: Vec<Polynomial<RatFuncField>> =
        i.gens_poly().iter().map(|g| to_dep(&setting, g)).collect();
    let dep_ideal = Ideal::new(&setting.dep_ring, dep_gens);
    let dep_gb: Vec<Polynomial<RatFuncField>> = dep_ideal
        .module
        .gb_under(&ModOrder::Pot(MonomialOrder::Lex))
        .elems
        .iter()
        .map(|v| v.entries[0].clone())
        .collect();
    // The extension to the rational-function field is proper: a unit there
    // would clear into a nonzero element of Q[x_S] inside the ideal,
    // contradicting the independence of S.
    // Product of all cleared denominators: outside its zero locus the basis
    // stays a basis.
    let mut h = Polynomial::one(&ring);
    for g in &dep_gb {
        let mut l = Polynomial::one(&setting.params);
        for (_, c) in g.terms() {
            l = crate::gcd::lcm(&l, c.den());
        }
        h = h.mul(&l.embed(&ring, &setting.par_vars));
    }
    let (sat, _) = saturate_poly(&i.module, &h, 64)?;
    let sat_ideal = Ideal { module: sat };
    if !sat_ideal.equals(&i) {
        // Exact cover: components off the locus of h, and components on it.
        split_rec(sat_ideal, depth + 1, out)?;
        split_rec(i.sum(&Ideal::principal(&ring, &h)), depth + 1, out)?;
        return Ok(());
    }
    // Saturated: primality reduces to the zero-dimensional part over Q(x_S).
    if let Some(shape) = shape_position(&setting.dep_ring, &dep_gb) {
        let cleared = clear_denominators(&setting, &ring, &shape.min_poly);
        let z = setting.dep_vars[shape.z];
        for attempt in 0..SPECIALIZE_ATTEMPTS {
            let Some(spec) = specialize(&ring, &cleared, z, attempt) else { continue };
            if spec.deg_in(0) >= 1 && crate::factor::is_irreducible_univariate(&spec, 0)? {
                out.push(MinimalPrime { ideal: i, certificate: PrimeCertificate::Certified });
                return Ok(());
            }
        }
    }
    out.push(MinimalPrime { ideal: i, certificate: PrimeCertificate::Uncertified });
    Ok(())
}

// ---------------------------------------------------------------------------
// Associated primes through the dualized resolution.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct AssociatedPrime<F: Field> {
    pub prime: Ideal<F>,
    pub codim: usize,
    pub certificate: PrimeCertificate,
}

/// Associated primes of R^k / M, sorted by codimension and then by the
/// printed basis.  When `provided` is given, those ideals replace the
/// decomposition step: each annihilator picks the provided ideals lying
/// over it that are minimal among the provided family.
pub fn associated_primes(
    m: &Submodule<Rationals>,
    provided: Option<&[Ideal<Rationals>]>,
) -> Result<Vec<AssociatedPrime<Rationals>>> {
    let ring = m.ring().clone();
    let n = ring.nvars();
    if m.is_whole() {
        return Ok(vec![]);
    }
    let res = free_resolution(m, n + 3)?;
    let mut found: Vec<AssociatedPrime<Rationals>> = Vec::new();
    for codim in 0..=n {
        let coh = dual_cohomology(&res, m, codim);
        if coh.is_zero() {
            continue;
        }
        let ann = coh.annihilator();
        if !ann.is_proper() {
            continue;
        }
        let candidates: Vec<MinimalPrime<Rationals>> = match provided {
            Some(list) => {
                let over: Vec<&Ideal<Rationals>> =
                    list.iter().filter(|p| p.contains_ideal(&ann)).collect();
                (0..over.len())
                    .filter(|&a| {
                        !over.iter().enumerate().any(|(b, q)| {
                            b != a && over[a].contains_ideal(q) && !q.contains_ideal(over[a])
                        })
                    })
                    .map(|a| MinimalPrime {
                        ideal: over[a].clone(),
                        certificate: PrimeCertificate::Provided,
                    })
                    .collect()
            }
            None => minimal_primes(&ann)?,
        };
        for mp in candidates {
            if ideal_codim(&mp.ideal) != Some(codim) {
                continue;
            }
            if found
                .iter()
                .any(|f| f.prime.contains_ideal(&mp.ideal) && mp.ideal.contains_ideal(&f.prime))
            {
                continue;
            }
            found.push(AssociatedPrime {
                prime: mp.ideal,
                codim,
                certificate: mp.certificate,
            });
        }
    }
    found.sort_by_key(|a| sort_key(&a.prime));
    Ok(found)
}
