//! Closed-form display of solution spaces.
//!
//! Each support component contributes one summand per multiplier.  When the
//! variety is the graph of an affine map over a subset of coordinates the
//! summand becomes an arbitrary function of the combined arguments, with
//! powers of the parameter turning into derivatives; a zero-dimensional
//! rational point degenerates to constants times an exponential.  Components
//! outside those classes are kept as explicit integral kernels, so the
//! printed formula never claims more than what was computed.
//!
//! The exponential mode writes `a(z1) + z2*b'(z1)*exp(z3)`-style formulas.
//! The logarithmic mode is used for Euler-operator systems: coordinates are
//! logarithms, so `exp` factors fold into power products, multiplier
//! z-factors become `log(z)` factors, and the chain rule replaces each
//! derivative d/dw by the scaled derivative z*d/dz.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

use crate::field::Rationals;
use crate::net::integer_scaled;
use crate::poly::{Polynomial, Ring};
use crate::solver::{Component, Solution};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RenderMode {
    /// Classical exponential summands `B(x, z)*exp(x.z)`.
    Exponential,
    /// Torus coordinates: powers of `z`, `log(z)` factors, Euler derivatives.
    Logarithmic,
}

/// Names for the arbitrary constants/functions: `a, b, ..., z, a2, b2, ...`
/// in exponential mode, upper-case in logarithmic mode.
struct Names {
    upper: bool,
    idx: usize,
}

impl Names {
    fn new(mode: RenderMode) -> Self {
        Names { upper: mode == RenderMode::Logarithmic, idx: 0 }
    }

    fn next(&mut self) -> String {
        let base = if self.upper { b'A' } else { b'a' };
        let letter = (base + (self.idx % 26) as u8) as char;
        let round = self.idx / 26;
        self.idx += 1;
        if round == 0 {
            letter.to_string()
        } else {
            format!("{}{}", letter, round + 1)
        }
    }
}

/// Coordinate names for the solution side: `x1 -> z1`, plain `x -> z`,
/// anything else positional.
pub fn z_names(ring: &Arc<Ring<Rationals>>) -> Vec<String> {
    ring.vars
        .iter()
        .enumerate()
        .map(|(i, v)| match v.strip_prefix('x') {
            Some(rest) => format!("z{}", rest),
            None => format!("z{}", i + 1),
        })
        .collect()
}

/// Join product factors with `*`, returning `1` for an empty product.
fn join_product(parts: &[String]) -> String {
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Join summands, folding a leading minus into the separator.
fn join_sum(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// `z^e` with the exponent written plainly when it is a positive integer.
fn power_factor(name: &str, e: &BigRational) -> Option<String> {
    if e.is_zero() {
        return None;
    }
    if e.is_one() {
        return Some(name.to_string());
    }
    if e.denom().is_one() && e.numer() > &BigInt::zero() {
        return Some(format!("{}^{}", name, e.numer()));
    }
    Some(format!("{}^({})", name, e))
}

fn int_power_factor(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{}^{}", name, e)),
    }
}

/// Stirling numbers of the second kind, for expanding `(z d/dz)^e`.
fn stirling2(e: u32, j: u32) -> BigRational {
    let (e, j) = (e as usize, j as usize);
    let mut row = vec![BigRational::one()];
    for _ in 1..=e {
        let mut next = vec![BigRational::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k] += v * BigRational::from(BigInt::from(k));
            next[k + 1] += v;
        }
        row = next;
    }
    row.get(j).cloned().unwrap_or_else(BigRational::zero)
}

/// Everything needed to print one component whose variety is the graph of
/// an affine-linear map over the independent coordinates.
struct Graph {
    /// Independent original variable indices (the parameters).
    params: Vec<usize>,
    /// For each dependent variable: (original index, constant, coefficient
    /// per parameter).
    dep: Vec<(usize, BigRational, Vec<BigRational>)>,
}

/// Recognize the affine-graph shape, including rational points (`params`
/// empty).  `None` means the component must be kept in integral form.
fn graph_shape(comp: &Component) -> Option<Graph> {
    let data = &comp.field;
    if data.degree_over_base() != 1 {
        return None;
    }
    let np = data.indep.len();
    let mut dep = Vec::new();
    for &v in &data.dep {
        let img = data.var_image(v);
        if !img.is_constant() {
            return None;
        }
        let rf = img.constant_term();
        if !rf.den().is_constant() {
            return None;
        }
        let dc = rf.den().constant_term();
        let num = rf.num();
        let mut c = BigRational::zero();
        let mut a = vec![BigRational::zero(); np];
        for (m, coeff) in num.terms() {
            let deg: u32 = m.0.iter().sum();
            if deg == 0 {
                c = coeff / &dc;
            } else if deg == 1 {
                let j = m.0.iter().position(|&e| e > 0).unwrap();
                a[j] = coeff / &dc;
            } else {
                return None;
            }
        }
        dep.push((v, c, a));
    }
    Some(Graph { params: data.indep.clone(), dep })
}

/// Substitute one multiplier entry into the working ring whose variables are
/// the parameters followed by the full set of z-coordinates.
fn substitute_entry(
    entry: &Polynomial<Rationals>,
    g: &Graph,
    work: &Arc<Ring<Rationals>>,
    n: usize,
) -> Polynomial<Rationals> {
    let np = g.params.len();
    let mut images: Vec<Polynomial<Rationals>> = Vec::new();
    for v in 0..n {
        if let Some(j) = g.params.iter().position(|&p| p == v) {
            images.push(Polynomial::var(work, j));
        } else {
            let (_, c, a) = g.dep.iter().find(|(dv, _, _)| *dv == v).unwrap();
            let mut img = Polynomial::constant(work, c.clone());
            for (j, coeff) in a.iter().enumerate() {
                img = img.add(&Polynomial::var(work, j).scale(coeff));
            }
            images.push(img);
        }
    }
    for d in &g.dep {
        images.push(Polynomial::var(work, np + d.0));
    }
    entry.map_into(work, &mut |c: &BigRational| c.clone(), &images)
}

/// The trailing factor shared by every piece of a component's summands: an
/// exponential `exp(...)` in exponential mode, a product of coordinate
/// powers in logarithmic mode.  `None` when the factor is trivial.
fn tail_factor(
    g: &Graph,
    zn: &[String],
    zring: &Arc<Ring<Rationals>>,
    mode: RenderMode,
) -> Option<String> {
    match mode {
        RenderMode::Exponential => {
            let mut e = Polynomial::zero(zring);
            for (v, c, _) in &g.dep {
                e = e.add(&Polynomial::var(zring, *v).scale(c));
            }
            if e.is_zero() {
                None
            } else {
                Some(format!("exp({})", e))
            }
        }
        RenderMode::Logarithmic => {
            let mut parts = Vec::new();
            for (v, c, _) in &g.dep {
                if let Some(f) = power_factor(&zn[*v], c) {
                    parts.push(f);
                }
            }
            if parts.is_empty() {
                None
            } else {
                Some(parts.join("*"))
            }
        }
    }
}

/// The argument each arbitrary function takes, per parameter: a combined
/// linear form `z_s + sum a*z_dep` in exponential mode, the corresponding
/// power product in logarithmic mode.
fn function_args(
    g: &Graph,
    zn: &[String],
    zring: &Arc<Ring<Rationals>>,
    mode: RenderMode,
) -> Option<Vec<String>> {
    let mut args = Vec::new();
    for (j, &s) in g.params.iter().enumerate() {
        match mode {
            RenderMode::Exponential => {
                let mut arg = Polynomial::var(zring, s);
                for (v, _, a) in &g.dep {
                    arg = arg.add(&Polynomial::var(zring, *v).scale(&a[j]));
                }
                args.push(arg.to_string());
            }
            RenderMode::Logarithmic => {
                let mut parts = vec![zn[s].clone()];
                for (v, _, a) in &g.dep {
                    let coeff = &a[j];
                    if coeff.is_zero() {
                        continue;
                    }
                    if !coeff.denom().is_one() || coeff.numer() < &BigInt::zero() {
                        return None;
                    }
                    parts.push(
                        int_power_factor(&zn[*v], coeff.numer().try_into().unwrap()).unwrap(),
                    );
                }
                args.push(parts.join("*"));
            }
        }
    }
    Some(args)
}

/// A function symbol with `e` primes: `b''(args)`.
fn func_ref(name: &str, e: u32, args: &[String]) -> String {
    format!("{}{}({})", name, "'".repeat(e as usize), args.join(", "))
}

/// One multiplier entry as a sum of printable product pieces (the shared
/// tail factor is appended later).  `fname` is empty for point components,
/// whose name is attached outside.
fn entry_pieces(
    q: &Polynomial<Rationals>,
    g: &Graph,
    zn: &[String],
    mode: RenderMode,
    fname: Option<(&str, &[String])>,
) -> Vec<String> {
    let np = g.params.len();
    let n = zn.len();
    let mut pieces = Vec::new();
    for (m, c) in q.terms() {
        let e: u32 = m.0[..np].iter().sum();
        let zexp = &m.0[np..np + n];
        let log_parts: Vec<String> = match mode {
            RenderMode::Exponential => zexp
                .iter()
                .enumerate()
                .filter_map(|(v, &g_)| int_power_factor(&zn[v], g_))
                .collect(),
            RenderMode::Logarithmic => zexp
                .iter()
                .enumerate()
                .filter_map(|(v, &g_)| {
                    int_power_factor(&format!("log({})", zn[v]), g_)
                })
                .collect(),
        };
        // A product piece reads [coefficient][scaled-derivative powers]
        // [z or log(z) factors][function symbol].
        let emit =
            |pieces: &mut Vec<String>, coeff: &BigRational, pre: Vec<String>, post: Vec<String>| {
                let neg = coeff < &BigRational::zero();
                let mag = coeff.abs();
                let mut parts = Vec::new();
                if !mag.is_one() {
                    if mag.denom().is_one() {
                        parts.push(mag.numer().to_string());
                    } else {
                        parts.push(format!("({})", mag));
                    }
                }
                parts.extend(pre);
                parts.extend(log_parts.iter().cloned());
                parts.extend(post);
                let body = join_product(&parts);
                pieces.push(if neg { format!("-{}", body) } else { body });
            };
        match (fname, mode) {
            (None, _) => emit(&mut pieces, c, vec![], vec![]),
            (Some((name, args)), RenderMode::Exponential) => {
                emit(&mut pieces, c, vec![], vec![func_ref(name, e, args)]);
            }
            (Some((name, args)), RenderMode::Logarithmic) => {
                if e == 0 {
                    emit(&mut pieces, c, vec![], vec![func_ref(name, 0, args)]);
                } else {
                    // (P d/dP)^e F = sum_j S(e, j) P^j F^(j)(P).
                    for j in 1..=e {
                        let s = stirling2(e, j);
                        if s.is_zero() {
                            continue;
                        }
                        let arg = &args[0];
                        let p_pow = if arg.contains('*') {
                            int_power_factor(&format!("({})", arg), j).unwrap()
                        } else {
                            int_power_factor(arg, j).unwrap()
                        };
                        emit(&mut pieces, &(c * &s), vec![p_pow], vec![func_ref(name, j, args)]);
                    }
                }
            }
        }
    }
    if pieces.is_empty() {
        pieces.push("0".to_string());
    }
    pieces
}

/// Attach the component tail to an entry already reduced to `pieces`.
fn finish_scalar(pieces: Vec<String>, tail: &Option<String>) -> String {
    match tail {
        None => join_sum(&pieces),
        Some(t) => {
            if pieces.len() == 1 {
                let p = &pieces[0];
                if p == "1" {
                    t.clone()
                } else if let Some(rest) = p.strip_prefix('-') {
                    if rest == "1" {
                        format!("-{}", t)
                    } else {
                        format!("{}*{}", p, t)
                    }
                } else {
                    format!("{}*{}", p, t)
                }
            } else {
                format!("({})*{}", join_sum(&pieces), t)
            }
        }
    }
}

fn render_graph_component(
    comp: &Component,
    g: &Graph,
    zn: &[String],
    zring: &Arc<Ring<Rationals>>,
    mode: RenderMode,
    names: &mut Names,
    out: &mut Vec<String>,
) -> bool {
    let n = zn.len();
    let np = g.params.len();
    let args = match function_args(g, zn, zring, mode) {
        Some(a) => a,
        None => return false,
    };
    let tail = tail_factor(g, zn, zring, mode);
    // Working ring: parameters first, then the z-coordinates.
    let mut wvars: Vec<String> = g.params.iter().map(|&s| format!("t{}", s)).collect();
    wvars.extend(zn.iter().cloned());
    let work = Ring::new(Rationals, wvars);
    // Substitute every entry first so the parameter-degree test can reject
    // shapes that have no one-parameter derivative notation.
    let mut subst: Vec<Vec<Polynomial<Rationals>>> = Vec::new();
    for mult in &comp.multipliers {
        let entries: Vec<Polynomial<Rationals>> = mult
            .entries
            .iter()
            .map(|entry| substitute_entry(entry, g, &work, n))
            .collect();
        subst.push(entries);
    }
    let max_t_deg = subst
        .iter()
        .flatten()
        .flat_map(|q| q.terms().iter().map(|(m, _)| m.0[..np].iter().sum::<u32>()))
        .max()
        .unwrap_or(0);
    if max_t_deg > 0 && np != 1 {
        return false;
    }
    for entries in &subst {
        let name = names.next();
        let summand = if np == 0 {
            // Rational point: a constant symbol scales each multiplier.
            if entries.len() == 1 {
                let pieces = entry_pieces(&entries[0], g, zn, mode, None);
                let inner = finish_scalar(pieces.clone(), &None);
                let mut parts = vec![name.clone()];
                if inner != "1" {
                    if pieces.len() > 1 {
                        parts.push(format!("({})", inner));
                    } else {
                        parts.push(inner);
                    }
                }
                if let Some(t) = &tail {
                    parts.push(t.clone());
                }
                join_product(&parts)
            } else {
                let rendered: Vec<String> = entries
                    .iter()
                    .map(|q| join_sum(&entry_pieces(q, g, zn, mode, None)))
                    .collect();
                let mut s = format!("{}*({})", name, rendered.join(", "));
                if let Some(t) = &tail {
                    s.push('*');
                    s.push_str(t);
                }
                s
            }
        } else if entries.len() == 1 {
            let pieces = entry_pieces(&entries[0], g, zn, mode, Some((&name, &args)));
            finish_scalar(pieces, &tail)
        } else {
            let rendered: Vec<String> = entries
                .iter()
                .map(|q| join_sum(&entry_pieces(q, g, zn, mode, Some((&name, &args)))))
                .collect();
            let mut s = format!("({})", rendered.join(", "));
            if let Some(t) = &tail {
                s.push('*');
                s.push_str(t);
            }
            s
        };
        out.push(summand);
    }
    true
}

/// Verbatim integral kernels for components outside the graph classes.
fn render_integral_component(
    comp: &Component,
    zn: &[String],
    names: &mut Names,
    out: &mut Vec<String>,
) {
    let ring = comp.prime.ring();
    let n = ring.nvars();
    let mut vars = ring.vars.clone();
    vars.extend(comp.field.dep.iter().map(|&v| zn[v].clone()));
    let display = Ring::new(Rationals, vars);
    let idmap: Vec<usize> = (0..n + comp.field.dep.len()).collect();
    let gens: Vec<String> = {
        let mut gs: Vec<Polynomial<Rationals>> =
            comp.prime.gb_polys().iter().map(integer_scaled).collect();
        gs.retain(|p| !p.is_zero());
        gs.sort_by(|a, b| {
            crate::monomial::MonomialOrder::GrevLex.cmp(&a.terms()[0].0, &b.terms()[0].0)
        });
        gs.iter().map(|p| p.to_string()).collect()
    };
    for mult in &comp.multipliers {
        let name = names.next();
        let entries: Vec<String> = mult
            .entries
            .iter()
            .map(|e| e.embed(&display, &idmap).to_string())
            .collect();
        out.push(format!(
            "int[V({})] ({})*exp(x.z) dmu_{}",
            gens.join(", "),
            entries.join(", "),
            name
        ));
    }
}

/// The general solution as one formula: a sum over components and
/// multipliers of function/constant summands, integral kernels included.
pub fn render_solution(sol: &Solution, mode: RenderMode) -> String {
    if sol.components.is_empty() {
        return "0".to_string();
    }
    let ring = sol.module.ring();
    let zn = z_names(ring);
    let zring = Ring::new(Rationals, zn.clone());
    let mut names = Names::new(mode);
    let mut out = Vec::new();
    for comp in &sol.components {
        let done = match graph_shape(comp) {
            Some(g) => {
                render_graph_component(comp, &g, &zn, &zring, mode, &mut names, &mut out)
            }
            None => false,
        };
        if !done {
            render_integral_component(comp, &zn, &mut names, &mut out);
        }
    }
    join_sum(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Submodule;
    use crate::parse::parse_poly;
    use crate::poly::{qring, PolyVector};
    use crate::solver::{solve_pde, SolveOptions};

    fn module(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Submodule<Rationals> {
        let vecs = gens
            .iter()
            .map(|s| PolyVector::new(vec![parse_poly(ring, s).unwrap()]))
            .collect();
        Submodule::new(ring, 1, vecs)
    }

    fn solved(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Solution {
        solve_pde(&module(ring, gens), &SolveOptions::default()).unwrap()
    }

    #[test]
    fn point_components_render_as_exponentials() {
        let r = qring(&["x"]);
        let sol = solved(&r, &["x^3 + 3*x^2 - 9*x + 5"]);
        assert_eq!(
            render_solution(&sol, RenderMode::Exponential),
            "a*exp(z) + b*z*exp(z) + c*exp(-5*z)"
        );
    }

    #[test]
    fn a_line_component_renders_with_arbitrary_functions() {
        let r = qring(&["x1", "x2", "x3"]);
        let sol = solved(&r, &["x2^2", "x3^2", "x2 - x1*x3"]);
        assert_eq!(
            render_solution(&sol, RenderMode::Exponential),
            "a(z1) + z2*b'(z1) + z3*b(z1)"
        );
        assert_eq!(
            render_solution(&sol, RenderMode::Logarithmic),
            "A(z1) + z1*log(z2)*B'(z1) + log(z3)*B(z1)"
        );
    }

    #[test]
    fn a_quartic_layer_renders_with_derivative_orders() {
        let r = qring(&["x1", "x2", "x3"]);
        let sol = solved(&r, &["x1^2 - x2*x3", "x3^2"]);
        assert_eq!(
            render_solution(&sol, RenderMode::Exponential),
            "a(z2) + z1*b(z2) + z1^2*c'(z2) + 2*z3*c(z2) + z1^3*d'(z2) + 6*z1*z3*d(z2)"
        );
    }

    #[test]
    fn polynomial_solutions_have_no_exponential_factor() {
        let r = qring(&["x1", "x2"]);
        let sol = solved(&r, &["x1^2", "x1*x2", "x2^2"]);
        // Origin with multiplicity three: 1, z1, z2 as polynomial solutions.
        assert_eq!(
            render_solution(&sol, RenderMode::Exponential),
            "a + b*z2 + c*z1"
        );
    }

    #[test]
    fn curved_supports_fall_back_to_integral_kernels() {
        let r = qring(&["x1", "x2", "x3"]);
        let sol = solved(&r, &["x2^2 - x1*x3"]);
        let text = render_solution(&sol, RenderMode::Exponential);
        assert!(text.starts_with("int[V(x2^2 - x1*x3)] ("), "got: {}", text);
        assert!(text.contains("*exp(x.z) dmu_a"), "got: {}", text);
    }

    #[test]
    fn shifted_euler_point_renders_with_powers_and_logs() {
        // Distraction of (theta - 2)^2: double point at exponent 2.
        let r = qring(&["x"]);
        let sol = solved(&r, &["x^2 - 4*x + 4"]);
        assert_eq!(
            render_solution(&sol, RenderMode::Logarithmic),
            "A*z^2 + B*log(z)*z^2"
        );
        assert_eq!(
            render_solution(&sol, RenderMode::Exponential),
            "a*exp(2*z) + b*z*exp(2*z)"
        );
    }
}
