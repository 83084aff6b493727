//! Exact solver for homogeneous linear constant-coefficient PDE systems.
//!
//! A system is presented as a submodule M ⊆ R^k over R = ℚ[x1..xn], each
//! generator row being one equation in the k unknown functions, with x_i
//! standing for ∂/∂z_i.  The solution space is described one support
//! component at a time: for every associated prime P of R^k/M the solver
//! produces a finite set of vector polynomials B (the multipliers) such that
//! the span of { B(x, z)·e^{⟨x,z⟩} : x ∈ V(P) } recovers exactly the
//! P-primary part of the solution space.  Multiplicities, the slice of
//! polynomial solutions, characteristic varieties, and pointwise exponential
//! tests all derive from the same data.
//!
//! Per prime the computation runs:
//!   1. a separator f vanishing on every other incomparable support, giving
//!      U = (M : f^∞), the part of M co-supported at P;
//!   2. V = (U : P^∞), the same with the P-primary layer stripped;
//!   3. the smallest degree bound r with V ∩ P^{r+1}·R^k ⊆ U;
//!   4. kernels of the differential pairing matrices of U and V over the
//!      residue field K = Frac(R/P), using columns of degree ≤ r;
//!   5. a basis of ker(U-pairing) modulo ker(V-pairing), lifted to integer
//!      polynomial vectors — the multipliers; their count is the
//!      multiplicity of P.
//!
//! Every multiplier is re-verified symbolically before it is returned: the
//! twisted operator identity Σ_j g_j(∂+x)·B_j ≡ 0 (mod P) must hold for
//! every generator g of the system.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::assoc::{
    associated_primes, minimal_primes, sort_key, AssociatedPrime, MinimalPrime, PrimeCertificate,
};
use crate::field::{rat, Field, Rationals};
use crate::groebner::Submodule;
use crate::linalg::{complement_basis, kernel_basis};
use crate::modops::{
    annihilator, colon_ideal, ideal_times_free, intersect, saturate_ideal, saturate_poly, Ideal,
};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, PolyVector, Ring};
use crate::residue::{gamma, lift_ring, lift_vector, multiplier_ring, ResidueFieldData};
use crate::{Error, Result};

/// Colon-stabilization cap shared by every saturation in the solver.
const SAT_CAP: u32 = 64;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Upper bound for the multiplier degree search at each prime.
    pub max_r: u32,
    /// Candidate support primes supplied by the caller.  When present they
    /// replace the prime search; each one must turn out to be genuinely
    /// associated or the solve fails with `NotAssociated`.
    pub provided_primes: Option<Vec<Ideal<Rationals>>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_r: 32, provided_primes: None }
    }
}

/// Everything the solver knows about one support component.
pub struct Component {
    /// The associated prime: the ideal of the support variety.
    pub prime: Ideal<Rationals>,
    pub codim: usize,
    pub certificate: PrimeCertificate,
    /// Number of multipliers: the length of the P-primary layer.
    pub multiplicity: usize,
    /// Residue-field description shared with the lifted presentation.
    pub field: Arc<ResidueFieldData>,
    /// Primitive integer multiplier vectors in ℚ[x1..xn, d&lt;dep&gt;..]: the
    /// d-variables are placeholders for the z-coordinates paired with the
    /// dependent x-directions.
    pub multipliers: Vec<PolyVector<Rationals>>,
    /// The degree bound r used for the multiplier columns.
    pub degree_bound: u32,
}

/// A solved system: the input module plus one `Component` per associated
/// prime, ordered by codimension and then by the rendered generators.
pub struct Solution {
    pub module: Submodule<Rationals>,
    pub components: Vec<Component>,
}

impl Solution {
    /// Total arithmetic length: the sum of the component multiplicities.
    pub fn amult(&self) -> usize {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    /// Dimension of the solution space over ℚ counted with residue-field
    /// degrees; `None` as soon as any component has positive-dimensional
    /// support (the space is then infinite-dimensional).
    pub fn dim_over_q(&self) -> Option<usize> {
        let mut total = 0usize;
        for c in &self.components {
            total += c.multiplicity * c.field.degree_over_q()?;
        }
        Some(total)
    }
}

/// Solve the system given by `m`.
pub fn solve_pde(m: &Submodule<Rationals>, opts: &SolveOptions) -> Result<Solution> {
    if m.is_whole() {
        return Ok(Solution { module: m.clone(), components: Vec::new() });
    }
    let ass = associated_primes(m, opts.provided_primes.as_deref())?;
    if let Some(provided) = &opts.provided_primes {
        for q in provided {
            if !ass.iter().any(|ap| ap.prime.equals(q)) {
                return Err(Error::NotAssociated(format!(
                    "{} is not an associated prime of the system",
                    ideal_label(q)
                )));
            }
        }
    }
    let mut components = Vec::new();
    for (idx, ap) in ass.iter().enumerate() {
        let sep = separator(&ass, idx);
        let comp = local_component(m, ap, &sep, opts)?;
        if comp.multiplicity == 0 {
            return Err(Error::NotAssociated(format!(
                "{} carries no layer of the system's solutions",
                ideal_label(&ap.prime)
            )));
        }
        verify_component(m, &comp)?;
        components.push(comp);
    }
    // Deterministic order: coarsest strata first; within a stratum the
    // heaviest layer leads, then rational points before extensions, ties
    // broken by the rendered generators.
    components.sort_by(|a, b| {
        a.codim
            .cmp(&b.codim)
            .then(b.multiplicity.cmp(&a.multiplicity))
            .then_with(|| {
                let da = a.field.degree_over_q().unwrap_or(0);
                let db = b.field.degree_over_q().unwrap_or(0);
                da.cmp(&db)
            })
            .then_with(|| sort_key(&a.prime).1.cmp(&sort_key(&b.prime).1))
    });
    Ok(Solution { module: m.clone(), components })
}

/// Product of one generator from every incomparable co-associated prime;
/// saturating by it isolates the P-co-supported part of the module.
fn separator(ass: &[AssociatedPrime<Rationals>], idx: usize) -> Polynomial<Rationals> {
    let p = &ass[idx].prime;
    let mut f = Polynomial::one(p.ring());
    for (j, other) in ass.iter().enumerate() {
        if j == idx || p.contains_ideal(&other.prime) {
            // A prime inside P cannot be separated from it by a polynomial
            // outside P, and does not need to be.
            continue;
        }
        let g = other
            .prime
            .gb_polys()
            .into_iter()
            .find(|g| !p.contains_poly(g))
            .expect("a prime not inside P has a generator outside P");
        f = f.mul(&g);
    }
    f
}

/// One product step P^e → P^{e+1} that keeps the generating set reduced; the
/// naive power would multiply generator counts together at every step.
fn next_power(pk: &Ideal<Rationals>, p: &Ideal<Rationals>) -> Ideal<Rationals> {
    let ring = p.ring();
    let mut gens = Vec::new();
    for a in pk.gb_polys() {
        for b in p.gb_polys() {
            gens.push(a.mul(&b));
        }
    }
    Ideal::new(ring, gens)
}

/// The two saturation layers at one prime: U = (M : sep^∞), V = (U : P^∞),
/// and the smallest r with V ∩ P^{r+1}·R^k ⊆ U.
fn layers(
    m: &Submodule<Rationals>,
    prime: &Ideal<Rationals>,
    sep: &Polynomial<Rationals>,
    opts: &SolveOptions,
) -> Result<(Submodule<Rationals>, Submodule<Rationals>, u32)> {
    let k = m.k();
    let (u, _) = saturate_poly(m, sep, SAT_CAP)?;
    let (v, _) = saturate_ideal(&u, prime, SAT_CAP)?;
    // Smallest r with V ∩ P^{r+1}·R^k ⊆ U: beyond it the P-primary layer of
    // U inside V is entirely visible to columns of degree ≤ r.
    let mut bound = None;
    let mut pk = prime.clone();
    for cand in 0..=opts.max_r {
        let inter = intersect(&v, &ideal_times_free(&pk, k));
        if u.contains_module(&inter) {
            bound = Some(cand);
            break;
        }
        pk = next_power(&pk, prime);
    }
    let Some(r) = bound else {
        return Err(Error::CapExceeded(format!(
            "multiplier degree search at {} passed {} without closing; raise max_r",
            ideal_label(prime),
            opts.max_r
        )));
    };
    Ok((u, v, r))
}

/// Solve the system locally at one associated prime.
fn local_component(
    m: &Submodule<Rationals>,
    ap: &AssociatedPrime<Rationals>,
    sep: &Polynomial<Rationals>,
    opts: &SolveOptions,
) -> Result<Component> {
    let k = m.k();
    let (u, v, r) = layers(m, &ap.prime, sep, opts)?;
    let data = ResidueFieldData::new(&ap.prime)?;
    let t_ring = multiplier_ring(&data);
    let cols = monomials_up_to(data.dep.len(), r);
    let ku = pairing_kernel(&t_ring, &data, &u.gb().elems, k, &cols)?;
    let kv = pairing_kernel(&t_ring, &data, &v.gb().elems, k, &cols)?;
    let basis = complement_basis(&t_ring.field, &kv, &ku)?;
    let l = cols.len();
    let multipliers: Vec<PolyVector<Rationals>> = basis
        .iter()
        .map(|coords| {
            let entries: Vec<Polynomial<_>> = (0..k)
                .map(|j| {
                    let terms = cols
                        .iter()
                        .enumerate()
                        .map(|(a, mono)| (mono.clone(), coords[j * l + a].clone()))
                        .collect();
                    Polynomial::from_terms(&t_ring, terms)
                })
                .collect();
            lift_vector(&data, &PolyVector::new(entries))
        })
        .collect();
    Ok(Component {
        prime: ap.prime.clone(),
        codim: ap.codim,
        certificate: ap.certificate,
        multiplicity: multipliers.len(),
        field: data,
        multipliers,
        degree_bound: r,
    })
}

/// Every monomial in `d` variables of total degree ≤ r, ascending grevlex.
fn monomials_up_to(d: usize, r: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
            cur[pos] = 0;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    rec(0, r, &mut cur, &mut out);
    let ord = MonomialOrder::GrevLex;
    out.sort_by(|a, b| ord.cmp(a, b));
    out
}

/// Π_i α_i!/γ_i!, the weight attached to the pairing entry in row γ and
/// column α.  The column weights are load-bearing: rescaling a column would
/// rescale the corresponding coefficient of every multiplier.
fn pair_factor(alpha: &Monomial, gamma: &Monomial) -> BigRational {
    let mut f = BigInt::one();
    for i in 0..alpha.nvars() {
        for t in (gamma.0[i] + 1)..=alpha.0[i] {
            f *= BigInt::from(t as i64);
        }
    }
    BigRational::from_integer(f)
}

/// Kernel of the differential pairing matrix of a submodule against the
/// column monomials, over the residue field.  One row per (generator w,
/// multi-index γ with |γ| ≤ r): entry at column (j, α) is
/// coeff(γ(w_j), α−γ) · Π α_i!/γ_i!.  Rows for y-multiples of generators
/// are scalar multiples of deeper-γ rows and rows of degree beyond the
/// column range pair to zero, so generator rows span everything needed.
fn pairing_kernel(
    t_ring: &Arc<Ring<crate::residue::ResField>>,
    data: &Arc<ResidueFieldData>,
    gens: &[PolyVector<Rationals>],
    k: usize,
    cols: &[Monomial],
) -> Result<Vec<Vec<<crate::residue::ResField as Field>::Elem>>> {
    let field = &t_ring.field;
    let l = cols.len();
    let mut rows = Vec::new();
    for w in gens {
        let gw: Vec<Polynomial<crate::residue::ResField>> =
            w.entries.iter().map(|p| gamma(data, t_ring, p)).collect();
        for g in cols {
            let mut row = vec![field.zero(); k * l];
            let mut nonzero = false;
            for (j, gwj) in gw.iter().enumerate() {
                for (a, alpha) in cols.iter().enumerate() {
                    if !g.divides(alpha) {
                        continue;
                    }
                    let beta = g.quotient(alpha);
                    let c = gwj.coeff(&beta);
                    if field.is_zero(&c) {
                        continue;
                    }
                    row[j * l + a] = field.mul(&c, &field.from_rat(&pair_factor(alpha, g)));
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    kernel_basis(field, &rows, k * l)
}

/// Check Σ_j g_j(∂+x)·B_j ≡ 0 (mod P) for every generator g and multiplier
/// B of the component.  The twist replaces each ∂/∂z_i by ∂/∂z_i + x_i; in
/// the lift ring the d-variable paired with a dependent x_i plays the role
/// of z_i, and independent directions carry no z at all.
fn verify_component(m: &Submodule<Rationals>, comp: &Component) -> Result<()> {
    for g in m.gens() {
        if !annihilates(g, comp) {
            return Err(Error::NotAssociated(format!(
                "a computed multiplier at {} fails the operator identity; \
                 the candidate support is likely reducible — supply its prime components",
                ideal_label(&comp.prime)
            )));
        }
    }
    Ok(())
}

/// True when the twisted action of `w` kills every multiplier of the
/// component: Σ_j w_j(∂+x)·B_j ≡ 0 (mod P) for each multiplier B.  This is
/// the local membership criterion for the layer of the module at the
/// component's prime.
pub(crate) fn annihilates(w: &PolyVector<Rationals>, comp: &Component) -> bool {
    let data = &comp.field;
    let target = lift_ring(data);
    let orig = comp.prime.ring();
    let n = orig.nvars();
    for b in &comp.multipliers {
        let mut total = Polynomial::zero(&target);
        for (wj, bj) in w.entries.iter().zip(&b.entries) {
            total = total.add(&apply_shifted(wj, bj, data, &target));
        }
        // Bucket by the d-part; every x-coefficient must lie in the prime.
        let mut buckets: BTreeMap<Vec<u32>, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (mono, c) in total.terms() {
            let head = Monomial(mono.0[..n].to_vec());
            let tail = mono.0[n..].to_vec();
            buckets.entry(tail).or_default().push((head, c.clone()));
        }
        for terms in buckets.into_values() {
            let p = Polynomial::from_terms(orig, terms);
            if !comp.prime.contains_poly(&p) {
                return false;
            }
        }
    }
    true
}

/// g(∂+x) applied to b inside the lift ring.  For each original variable,
/// multiplication by x_i always contributes; the derivative contributes
/// through the d-partner when x_i is a dependent direction and vanishes
/// otherwise (b never involves the other z-coordinates).
fn apply_shifted(
    g: &Polynomial<Rationals>,
    b: &Polynomial<Rationals>,
    data: &ResidueFieldData,
    target: &Arc<Ring<Rationals>>,
) -> Polynomial<Rationals> {
    let n = g.ring().nvars();
    let mut out = Polynomial::zero(target);
    for (m, c) in g.terms() {
        let mut acc = b.clone();
        for i in 0..n {
            let xi = Monomial::var(target.nvars(), i);
            let partner = data.dep.iter().position(|&d| d == i).map(|pos| n + pos);
            for _ in 0..m.0[i] {
                let shifted = acc.mul_term(&xi, &rat(1));
                acc = match partner {
                    Some(p) => shifted.add(&acc.differentiate(p)),
                    None => shifted,
                };
            }
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Canonical one-line rendering of an ideal for error messages.
fn ideal_label(i: &Ideal<Rationals>) -> String {
    let gens: Vec<String> = i.gb_polys().iter().map(|g| g.to_string()).collect();
    format!("ideal({})", gens.join(", "))
}

// ---------------------------------------------------------------------------
// Span comparison for multiplier sets.
// ---------------------------------------------------------------------------

type KElem = <crate::residue::ResField as Field>::Elem;

/// Coordinates of a multiplier vector in the pairing column space of a
/// component: the entry at column (j, α) is the residue-field image of the
/// coefficient of z^α in entry j.  Accepts vectors over the component's lift
/// ring or over the plain x-ring (empty z-part).
fn vectorize_in_columns(
    data: &Arc<ResidueFieldData>,
    cols: &[Monomial],
    k: usize,
    v: &PolyVector<Rationals>,
) -> Result<Vec<KElem>> {
    let orig = data.prime.ring();
    let n = orig.nvars();
    let d = data.dep.len();
    let nv = v.entries.first().map(|p| p.ring().nvars()).unwrap_or(n);
    if nv != n && nv != n + d {
        return Err(Error::ArityMismatch(format!(
            "multiplier candidate lives in {} variables; expected {} or {}",
            nv,
            n,
            n + d
        )));
    }
    let index: BTreeMap<&Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let l = cols.len();
    let mut out = vec![Polynomial::zero(&data.dep_ring); k * l];
    for (j, p) in v.entries.iter().enumerate() {
        let mut buckets: BTreeMap<Vec<u32>, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let head = Monomial(m.0[..n].to_vec());
            let tail = if nv == n { vec![0; d] } else { m.0[n..].to_vec() };
            buckets.entry(tail).or_default().push((head, c.clone()));
        }
        for (tail, terms) in buckets {
            let alpha = Monomial(tail);
            let Some(&pos) = index.get(&alpha) else {
                return Err(Error::Input(
                    "candidate z-degree exceeds the component's pairing radius".into(),
                ));
            };
            let xpoly = Polynomial::from_terms(orig, terms);
            out[j * l + pos] = data.project(&xpoly);
        }
    }
    Ok(out)
}

/// Kernel of the V-pairing plus vectorized multipliers of one component at a
/// radius wide enough for the supplied candidates.
fn span_rows(
    sol: &Solution,
    idx: usize,
    cands: &[PolyVector<Rationals>],
) -> Result<(crate::residue::ResField, Vec<Vec<KElem>>, Vec<Vec<KElem>>, Vec<Vec<KElem>>)> {
    let comp = sol
        .components
        .get(idx)
        .ok_or_else(|| Error::Input(format!("no component {idx} in this solution")))?;
    let k = sol.module.k();
    let n = sol.module.ring().nvars();
    let ass: Vec<AssociatedPrime<Rationals>> = sol
        .components
        .iter()
        .map(|c| AssociatedPrime {
            prime: c.prime.clone(),
            codim: c.codim,
            certificate: c.certificate,
        })
        .collect();
    let sep = separator(&ass, idx);
    let opts = SolveOptions { max_r: comp.degree_bound, provided_primes: None };
    let (u, v, r) = layers(&sol.module, &comp.prime, &sep, &opts)?;
    let _ = u;
    let data = comp.field.clone();
    let z_deg = |pv: &PolyVector<Rationals>| -> u32 {
        pv.entries
            .iter()
            .flat_map(|p| {
                p.terms()
                    .iter()
                    .map(|(m, _)| m.0[n.min(m.nvars())..].iter().sum::<u32>())
                    .collect::<Vec<_>>()
            })
            .max()
            .unwrap_or(0)
    };
    let radius = cands.iter().map(&z_deg).fold(r, u32::max);
    let cols = monomials_up_to(data.dep.len(), radius);
    let field = crate::residue::ResField(data.clone());
    let t_ring = multiplier_ring(&data);
    let kv = pairing_kernel(&t_ring, &data, &v.gb().elems, k, &cols)?;
    let mine = comp
        .multipliers
        .iter()
        .map(|b| vectorize_in_columns(&data, &cols, k, b))
        .collect::<Result<Vec<_>>>()?;
    let theirs = cands
        .iter()
        .map(|b| vectorize_in_columns(&data, &cols, k, b))
        .collect::<Result<Vec<_>>>()?;
    Ok((field, kv, mine, theirs))
}

/// Does the multiplier span of component `idx`, taken modulo the trivial
/// layer (solutions of the deeper saturation), contain the candidate?
pub fn multiplier_span_contains(
    sol: &Solution,
    idx: usize,
    cand: &PolyVector<Rationals>,
) -> Result<bool> {
    let (field, kv, mine, theirs) = span_rows(sol, idx, std::slice::from_ref(cand))?;
    let mut base = kv;
    base.extend(mine);
    let r0 = crate::linalg::rank(&field, &base)?;
    base.extend(theirs);
    let r1 = crate::linalg::rank(&field, &base)?;
    Ok(r0 == r1)
}

/// Do the candidates span exactly the multiplier space of component `idx`
/// modulo the trivial layer?
pub fn multiplier_span_equals(
    sol: &Solution,
    idx: usize,
    cands: &[PolyVector<Rationals>],
) -> Result<bool> {
    let (field, kv, mine, theirs) = span_rows(sol, idx, cands)?;
    let mut a = kv.clone();
    a.extend(mine.iter().cloned());
    let ra = crate::linalg::rank(&field, &a)?;
    let mut b = kv;
    b.extend(theirs.iter().cloned());
    let rb = crate::linalg::rank(&field, &b)?;
    a.extend(theirs);
    let rc = crate::linalg::rank(&field, &a)?;
    Ok(ra == rb && rb == rc)
}

// ---------------------------------------------------------------------------
// Derived queries.
// ---------------------------------------------------------------------------

/// Minimal primes of the annihilator: the support of the solution sheaf,
/// i.e. the frequencies x admitting a solution B·e^{⟨x,z⟩}.
pub fn characteristic_variety(m: &Submodule<Rationals>) -> Result<Vec<MinimalPrime<Rationals>>> {
    if m.is_whole() {
        return Ok(Vec::new());
    }
    minimal_primes(&annihilator(m))
}

/// Constant vectors c with g(u)·c = 0 for every generator: the coefficients
/// for which c·e^{⟨u,z⟩} solves the system.
pub fn exponential_point_test(
    m: &Submodule<Rationals>,
    point: &[BigRational],
) -> Result<Vec<Vec<BigRational>>> {
    let rows: Vec<Vec<BigRational>> = m
        .gens()
        .iter()
        .map(|g| g.entries.iter().map(|p| p.eval(point)).collect())
        .collect();
    kernel_basis(&Rationals, &rows, m.k())
}

/// Ring ℚ[d&lt;v&gt;..] with one placeholder variable per original variable,
/// hosting polynomial solutions (d&lt;v&gt; stands for the z-coordinate paired
/// with v).
pub fn partner_ring(ring: &Arc<Ring<Rationals>>) -> Arc<Ring<Rationals>> {
    Ring::new(Rationals, ring.vars.iter().map(|v| format!("d{}", v)).collect())
}

/// The space of polynomial solutions of the system.
pub enum PolySolutions {
    /// A basis of the finite-dimensional space, entries in the partner ring.
    Finite(Vec<PolyVector<Rationals>>),
    /// The space is infinite-dimensional; the witness is an associated prime
    /// with positive-dimensional support through the origin.
    Infinite { witness: Ideal<Rationals> },
}

/// Polynomial solutions, read off the component supported at the origin.
pub fn polynomial_solutions(
    m: &Submodule<Rationals>,
    opts: &SolveOptions,
) -> Result<PolySolutions> {
    let ring = m.ring();
    let n = ring.nvars();
    let origin = Ideal::new(ring, (0..n).map(|i| Polynomial::var(ring, i)).collect());
    let sol = solve_pde(m, opts)?;
    for c in &sol.components {
        if origin.contains_ideal(&c.prime) && !c.prime.equals(&origin) {
            return Ok(PolySolutions::Infinite { witness: c.prime.clone() });
        }
    }
    let target = partner_ring(ring);
    let var_map: Vec<usize> = (n..2 * n).collect();
    for c in &sol.components {
        if c.prime.equals(&origin) {
            let mut basis = Vec::new();
            for b in &c.multipliers {
                let mut entries = Vec::new();
                for p in &b.entries {
                    entries.push(p.restrict(&target, &var_map)?);
                }
                basis.push(PolyVector::new(entries));
            }
            return Ok(PolySolutions::Finite(basis));
        }
    }
    Ok(PolySolutions::Finite(Vec::new()))
}

/// Basis of the polynomial solutions of total degree ≤ d, computed by plain
/// linear algebra over ℚ straight from the generators.  Independent of the
/// decomposition pipeline, hence usable as a cross-check against it.
pub fn polynomial_solutions_up_to(
    m: &Submodule<Rationals>,
    d: u32,
) -> Result<Vec<PolyVector<Rationals>>> {
    let ring = m.ring();
    let f = Rationals;
    let n = ring.nvars();
    let k = m.k();
    let cols = monomials_up_to(n, d);
    let l = cols.len();
    let mut rows = Vec::new();
    for g in m.gens() {
        for a in &cols {
            let mut row = vec![f.zero(); k * l];
            let mut nonzero = false;
            for j in 0..k {
                for (ci, alpha) in cols.iter().enumerate() {
                    if !a.divides(alpha) {
                        continue;
                    }
                    let beta = a.quotient(alpha);
                    let c = g.entries[j].coeff(&beta);
                    if f.is_zero(&c) {
                        continue;
                    }
                    row[j * l + ci] = f.mul(&c, &pair_factor(alpha, a));
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let ker = kernel_basis(&f, &rows, k * l)?;
    let target = partner_ring(ring);
    Ok(ker
        .into_iter()
        .map(|coords| {
            let entries = (0..k)
                .map(|j| {
                    let terms = cols
                        .iter()
                        .enumerate()
                        .map(|(ci, mono)| (mono.clone(), coords[j * l + ci].clone()))
                        .collect();
                    Polynomial::from_terms(&target, terms)
                })
                .collect();
            PolyVector::new(entries)
        })
        .collect())
}

/// The smallest submodule containing `m` with the same polynomial
/// solutions: strip everything co-supported away from the origin by passing
/// to M : Ann(R^k/(M : 𝔪^∞)).
pub fn polynomial_closure(m: &Submodule<Rationals>) -> Result<Submodule<Rationals>> {
    let ring = m.ring();
    let n = ring.nvars();
    let origin = Ideal::new(ring, (0..n).map(|i| Polynomial::var(ring, i)).collect());
    let (sat, _) = saturate_ideal(m, &origin, SAT_CAP)?;
    Ok(colon_ideal(m, &annihilator(&sat)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::parse::parse_poly;
    use crate::poly::qring;

    fn ideal(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(ring, gens.iter().map(|s| parse_poly(ring, s).unwrap()).collect())
    }

    fn module(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Submodule<Rationals> {
        let vecs = gens
            .iter()
            .map(|s| PolyVector::new(vec![parse_poly(ring, s).unwrap()]))
            .collect();
        Submodule::new(ring, 1, vecs)
    }

    fn module2(ring: &Arc<Ring<Rationals>>, gens: &[[&str; 2]]) -> Submodule<Rationals> {
        let vecs = gens
            .iter()
            .map(|row| {
                PolyVector::new(row.iter().map(|s| parse_poly(ring, s).unwrap()).collect())
            })
            .collect();
        Submodule::new(ring, 2, vecs)
    }

    fn multiplier_strings(c: &Component) -> Vec<Vec<String>> {
        c.multipliers
            .iter()
            .map(|b| b.entries.iter().map(|p| p.to_string()).collect())
            .collect()
    }

    #[test]
    fn univariate_operator_splits_into_point_components() {
        let ring = qring(&["x"]);
        // (x - 1)^2 (x + 5)
        let m = module(&ring, &["x^3 + 3*x^2 - 9*x + 5"]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 3);
        assert_eq!(sol.dim_over_q(), Some(3));
        assert_eq!(sol.components.len(), 2);
        // Within one codimension the heavier layer is listed first.
        let a = &sol.components[0];
        assert!(a.prime.equals(&ideal(&ring, &["x - 1"])));
        assert_eq!(a.multiplicity, 2);
        assert_eq!(
            multiplier_strings(a),
            vec![vec!["1".to_string()], vec!["dx".to_string()]]
        );
        assert_eq!(a.degree_bound, 1);
        let b = &sol.components[1];
        assert!(b.prime.equals(&ideal(&ring, &["x + 5"])));
        assert_eq!(b.multiplicity, 1);
        assert_eq!(multiplier_strings(b), vec![vec!["1".to_string()]]);
    }

    #[test]
    fn embedded_origin_contributes_a_derivative_multiplier() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1^2", "x1*x2"]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 2);
        assert_eq!(sol.dim_over_q(), None);
        let line = &sol.components[0];
        assert!(line.prime.equals(&ideal(&ring, &["x1"])));
        assert_eq!(line.codim, 1);
        assert_eq!(multiplier_strings(line), vec![vec!["1".to_string()]]);
        let origin = &sol.components[1];
        assert!(origin.prime.equals(&ideal(&ring, &["x1", "x2"])));
        assert_eq!(origin.codim, 2);
        assert_eq!(multiplier_strings(origin), vec![vec!["dx1".to_string()]]);
    }

    #[test]
    fn line_with_double_structure_gets_a_normal_derivative() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1^2"]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 2);
        assert_eq!(sol.components.len(), 1);
        let c = &sol.components[0];
        assert!(c.prime.equals(&ideal(&ring, &["x1"])));
        assert_eq!(
            multiplier_strings(c),
            vec![vec!["1".to_string()], vec!["dx1".to_string()]]
        );
        assert_eq!(c.degree_bound, 1);
    }

    #[test]
    fn cone_support_carries_a_single_multiplier() {
        let ring = qring(&["x1", "x2", "x3"]);
        let m = module(&ring, &["x1*x3 - x2^2"]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 1);
        let c = &sol.components[0];
        assert!(c.prime.equals(&ideal(&ring, &["x1*x3 - x2^2"])));
        assert_eq!(c.codim, 1);
        assert_eq!(c.certificate, PrimeCertificate::Certified);
        assert_eq!(multiplier_strings(c), vec![vec!["1".to_string()]]);
    }

    #[test]
    fn independent_equations_on_separate_unknowns() {
        let ring = qring(&["x1", "x2"]);
        let m = module2(&ring, &[["x1", "0"], ["0", "x2"]]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 2);
        let a = &sol.components[0];
        assert!(a.prime.equals(&ideal(&ring, &["x1"])));
        assert_eq!(multiplier_strings(a), vec![vec!["1".to_string(), "0".to_string()]]);
        let b = &sol.components[1];
        assert!(b.prime.equals(&ideal(&ring, &["x2"])));
        assert_eq!(multiplier_strings(b), vec![vec!["0".to_string(), "1".to_string()]]);
    }

    #[test]
    fn mixed_free_and_torsion_components() {
        let ring = qring(&["x"]);
        let m = module2(&ring, &[["0", "x"]]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 2);
        let free = &sol.components[0];
        assert!(free.prime.is_zero());
        assert_eq!(free.codim, 0);
        assert_eq!(multiplier_strings(free), vec![vec!["1".to_string(), "0".to_string()]]);
        let point = &sol.components[1];
        assert!(point.prime.equals(&ideal(&ring, &["x"])));
        assert_eq!(multiplier_strings(point), vec![vec!["0".to_string(), "1".to_string()]]);
        assert_eq!(sol.dim_over_q(), None);
    }

    #[test]
    fn unconstrained_system_counts_free_unknowns() {
        let ring = qring(&["x1", "x2"]);
        let m = Submodule::zero(&ring, 2);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.amult(), 2);
        assert_eq!(sol.components.len(), 1);
        let c = &sol.components[0];
        assert!(c.prime.is_zero());
        assert_eq!(c.multiplicity, 2);
        assert_eq!(
            multiplier_strings(c),
            vec![
                vec!["1".to_string(), "0".to_string()],
                vec!["0".to_string(), "1".to_string()]
            ]
        );
    }

    #[test]
    fn supplying_the_support_skips_the_search() {
        let ring = qring(&["x"]);
        let m = module(&ring, &["x^3 + 3*x^2 - 9*x + 5"]);
        let opts = SolveOptions {
            provided_primes: Some(vec![ideal(&ring, &["x - 1"]), ideal(&ring, &["x + 5"])]),
            ..SolveOptions::default()
        };
        let sol = solve_pde(&m, &opts).unwrap();
        assert_eq!(sol.amult(), 3);
        for c in &sol.components {
            assert_eq!(c.certificate, PrimeCertificate::Provided);
        }
    }

    #[test]
    fn unrelated_candidate_prime_is_rejected() {
        let ring = qring(&["x"]);
        let m = module(&ring, &["x^2"]);
        let opts = SolveOptions {
            provided_primes: Some(vec![ideal(&ring, &["x - 1"])]),
            ..SolveOptions::default()
        };
        match solve_pde(&m, &opts) {
            Err(Error::NotAssociated(_)) => {}
            other => panic!("expected NotAssociated, got {:?}", other.map(|s| s.amult())),
        }
    }

    #[test]
    fn polynomial_solutions_match_the_direct_kernel() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1^2", "x2^2"]);
        let sol = polynomial_solutions(&m, &SolveOptions::default()).unwrap();
        let basis = match sol {
            PolySolutions::Finite(b) => b,
            PolySolutions::Infinite { .. } => panic!("space is finite-dimensional"),
        };
        assert_eq!(basis.len(), 4);
        let oracle = polynomial_solutions_up_to(&m, 2).unwrap();
        assert_eq!(oracle.len(), 4);
        assert!(same_span(&basis, &oracle));
    }

    #[test]
    fn infinite_polynomial_family_is_reported_with_a_witness() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1^2", "x1*x2"]);
        match polynomial_solutions(&m, &SolveOptions::default()).unwrap() {
            PolySolutions::Infinite { witness } => {
                assert!(witness.equals(&ideal(&ring, &["x1"])));
            }
            PolySolutions::Finite(_) => panic!("space is infinite-dimensional"),
        }
        // Degree-truncated slices stay computable: 1, x2, x2^2, x2^3, x1.
        let slice = polynomial_solutions_up_to(&m, 3).unwrap();
        assert_eq!(slice.len(), 5);
    }

    #[test]
    fn closure_keeps_only_origin_supported_solutions() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1^2", "x1*x2"]);
        let c = polynomial_closure(&m).unwrap();
        assert!(c.equals(&module(&ring, &["x1", "x2"])));
        // A system already co-supported at the origin is its own closure.
        let primary = module(&ring, &["x1^2", "x2^2"]);
        let cc = polynomial_closure(&primary).unwrap();
        assert!(cc.equals(&primary));
    }

    #[test]
    fn characteristic_variety_lists_the_supports() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1*x2"]);
        let cv = characteristic_variety(&m).unwrap();
        assert_eq!(cv.len(), 2);
        assert!(cv[0].ideal.equals(&ideal(&ring, &["x1"])));
        assert!(cv[1].ideal.equals(&ideal(&ring, &["x2"])));
        let free = Submodule::zero(&ring, 1);
        let cv0 = characteristic_variety(&free).unwrap();
        assert_eq!(cv0.len(), 1);
        assert!(cv0[0].ideal.is_zero());
    }

    #[test]
    fn frequencies_on_the_support_pass_the_point_test() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1*x2"]);
        let on = exponential_point_test(&m, &[rat(0), rat(5)]).unwrap();
        assert_eq!(on.len(), 1);
        let off = exponential_point_test(&m, &[rat(1), rat(1)]).unwrap();
        assert!(off.is_empty());
        // With two unknowns only the matching coordinate survives.
        let m2 = module2(&ring, &[["x1", "0"], ["0", "x2"]]);
        let ker = exponential_point_test(&m2, &[rat(0), rat(3)]).unwrap();
        assert_eq!(ker, vec![vec![rat(1), rat(0)]]);
    }

    /// Span equality of two sets of polynomial vectors over ℚ, via
    /// coordinates in the union of their supports.
    fn same_span(a: &[PolyVector<Rationals>], b: &[PolyVector<Rationals>]) -> bool {
        let mut coords: Vec<(usize, Monomial)> = Vec::new();
        for v in a.iter().chain(b) {
            for (j, e) in v.entries.iter().enumerate() {
                for (m, _) in e.terms() {
                    if !coords.contains(&(j, m.clone())) {
                        coords.push((j, m.clone()));
                    }
                }
            }
        }
        let to_rows = |set: &[PolyVector<Rationals>]| -> Vec<Vec<BigRational>> {
            set.iter()
                .map(|v| {
                    coords
                        .iter()
                        .map(|(j, m)| v.entries[*j].coeff(m))
                        .collect()
                })
                .collect()
        };
        let ra = to_rows(a);
        let rb = to_rows(b);
        let f = Rationals;
        complement_basis(&f, &ra, &rb).unwrap().is_empty()
            && complement_basis(&f, &rb, &ra).unwrap().is_empty()
    }

    fn lift_vec(c: &Component, entries: &[&str]) -> PolyVector<Rationals> {
        let lr = lift_ring(&c.field);
        PolyVector::new(entries.iter().map(|s| parse_poly(&lr, s).unwrap()).collect())
    }

    #[test]
    fn span_comparison_works_modulo_the_trivial_layer() {
        let ring = qring(&["x1", "x2"]);
        let m = module(&ring, &["x1^2", "x1*x2"]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        // Component 1 is the embedded origin with multiplier dx1.
        let c = &sol.components[1];
        assert_eq!(c.codim, 2);
        assert!(multiplier_span_contains(&sol, 1, &lift_vec(c, &["dx1"])).unwrap());
        assert!(multiplier_span_contains(&sol, 1, &lift_vec(c, &["3*dx1"])).unwrap());
        // Adding an element of the trivial layer does not leave the span:
        // constants and dx2 already solve the deeper saturation (x1).
        assert!(multiplier_span_contains(&sol, 1, &lift_vec(c, &["dx1 + 5"])).unwrap());
        assert!(multiplier_span_contains(&sol, 1, &lift_vec(c, &["dx2"])).unwrap());
        assert!(multiplier_span_equals(&sol, 1, &[lift_vec(c, &["7*dx1 + dx2"])]).unwrap());
        // The line component's span is K·{1} over K = ℚ(x2): the independent
        // variable acts as a scalar, so x2 stays inside while any genuine
        // z-direction leaves.
        let line = &sol.components[0];
        assert_eq!(line.codim, 1);
        assert!(multiplier_span_contains(&sol, 0, &lift_vec(line, &["1"])).unwrap());
        assert!(multiplier_span_contains(&sol, 0, &lift_vec(line, &["x2"])).unwrap());
        assert!(!multiplier_span_contains(&sol, 0, &lift_vec(line, &["dx1"])).unwrap());
    }

    #[test]
    fn quartic_layer_span_matches_the_classical_multipliers() {
        // One supported line {(0,t,0)} with four layers; the relative
        // weights inside the degree-2 and degree-3 multipliers are rigid.
        let ring = qring(&["x1", "x2", "x3"]);
        let m = module(&ring, &["x1^2 - x2*x3", "x3^2"]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(sol.components.len(), 1);
        let c = &sol.components[0];
        assert!(c.prime.equals(&ideal(&ring, &["x1", "x3"])));
        assert_eq!(c.multiplicity, 4);
        let expected = [
            lift_vec(c, &["1"]),
            lift_vec(c, &["dx1"]),
            lift_vec(c, &["x2*dx1^2 + 2*dx3"]),
            lift_vec(c, &["x2*dx1^3 + 6*dx1*dx3"]),
        ];
        assert!(multiplier_span_equals(&sol, 0, &expected).unwrap());
        // Perturbing a relative weight must break the equality.
        let wrong = [
            lift_vec(c, &["1"]),
            lift_vec(c, &["dx1"]),
            lift_vec(c, &["x2*dx1^2 + dx3"]),
            lift_vec(c, &["x2*dx1^3 + 6*dx1*dx3"]),
        ];
        assert!(!multiplier_span_equals(&sol, 0, &wrong).unwrap());
        assert!(multiplier_span_contains(&sol, 0, &expected[2]).unwrap());
        assert!(!multiplier_span_contains(&sol, 0, &lift_vec(c, &["x2*dx1^2 + dx3"])).unwrap());
    }
}
