//! Aligned multi-row text layout for solver output.
//!
//! Solutions are printed in a two-dimensional style familiar from
//! computer-algebra sessions: exponents are raised onto their own row above
//! the baseline, module elements appear as bracketed columns, and long
//! component lists wrap at a fixed width with a one-space hanging indent.
//! Every builder here is deterministic, so repeated runs over the same
//! solution produce byte-identical text.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Rationals;
use crate::modops::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::{PolyVector, Polynomial};
use crate::solver::{Component, Solution};

/// A rectangular block of text with a distinguished baseline row.
///
/// Horizontal concatenation aligns baselines, growing the result upward
/// (superscript rows) and downward (lower vector rows) as needed.
#[derive(Clone, Debug)]
pub struct Net {
    rows: Vec<String>,
    baseline: usize,
}

impl Net {
    pub fn text(s: &str) -> Net {
        Net { rows: vec![s.to_string()], baseline: 0 }
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn baseline(&self) -> usize {
        self.baseline
    }

    pub fn width(&self) -> usize {
        self.rows.iter().map(|r| r.chars().count()).max().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    fn above(&self) -> usize {
        self.baseline
    }

    fn below(&self) -> usize {
        self.rows.len() - self.baseline
    }

    /// Concatenate blocks left to right with baselines aligned.
    pub fn hcat(parts: &[Net]) -> Net {
        let above = parts.iter().map(|p| p.above()).max().unwrap_or(0);
        let below = parts.iter().map(|p| p.below()).max().unwrap_or(1);
        let mut rows = vec![String::new(); above + below];
        for part in parts {
            let w = part.width();
            let offset = above - part.above();
            let target = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
            for (i, row) in rows.iter_mut().enumerate() {
                let cur = row.chars().count();
                if cur < target {
                    row.push_str(&" ".repeat(target - cur));
                }
                let add = if i >= offset && i - offset < part.rows.len() {
                    &part.rows[i - offset]
                } else {
                    ""
                };
                row.push_str(add);
                let cur = row.chars().count();
                if cur < target + w {
                    row.push_str(&" ".repeat(target + w - cur));
                }
            }
        }
        Net { rows, baseline: above }
    }

    /// The finished text: rows joined by newlines, trailing blanks removed.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.trim_end())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Scale to coprime integer coefficients with a positive leading one.  The
/// result generates the same ideal (resp. spans the same line), so printed
/// generators never carry fractions.
pub(crate) fn integer_scaled(p: &Polynomial<Rationals>) -> Polynomial<Rationals> {
    if p.is_zero() {
        return p.clone();
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        den = num_integer::lcm(den, c.denom().clone());
        num = num_integer::gcd(num, c.numer().clone());
    }
    let mut scale = BigRational::new(den, num);
    if p.terms()[0].1.clone() * &scale < BigRational::zero() {
        scale = -scale;
    }
    p.scale(&scale)
}

/// Append `text` on the baseline row, blank above.
fn push_base(upper: &mut String, base: &mut String, text: &str) {
    base.push_str(text);
    upper.push_str(&" ".repeat(text.chars().count()));
}

/// Append `text` on the superscript row, blank below.
fn push_upper(upper: &mut String, base: &mut String, text: &str) {
    upper.push_str(text);
    base.push_str(&" ".repeat(text.chars().count()));
}

/// Lay out one polynomial.  `spaced` switches between the roomy form used
/// for ideal generators (`x1 + x2 + 1`) and the compact form used inside
/// vector entries (`x2+1`).  Exponents of two or more go on the row above.
fn poly_net(p: &Polynomial<Rationals>, spaced: bool) -> Net {
    if p.is_zero() {
        return Net::text("0");
    }
    let vars = &p.ring().vars;
    let mut upper = String::new();
    let mut base = String::new();
    let mut used_upper = false;
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let neg = c < &BigRational::zero();
        if idx == 0 {
            if neg {
                push_base(&mut upper, &mut base, "-");
            }
        } else {
            let sep = match (spaced, neg) {
                (true, true) => " - ",
                (true, false) => " + ",
                (false, true) => "-",
                (false, false) => "+",
            };
            push_base(&mut upper, &mut base, sep);
        }
        let mag = c.abs();
        let trivial_mono = m.0.iter().all(|&e| e == 0);
        let show_coeff = trivial_mono || !mag.is_one();
        if show_coeff {
            let cs = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("({})", mag)
            };
            push_base(&mut upper, &mut base, &cs);
        }
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            push_base(&mut upper, &mut base, &vars[v]);
            if e >= 2 {
                push_upper(&mut upper, &mut base, &e.to_string());
                used_upper = true;
            }
        }
    }
    if used_upper {
        Net { rows: vec![upper, base], baseline: 1 }
    } else {
        Net { rows: vec![base], baseline: 0 }
    }
}

/// `ideal(f)` for one generator, `ideal (f, g, ...)` for several; the
/// canonical reduced basis is printed in increasing leading-term order.
pub fn ideal_net(i: &Ideal<Rationals>) -> Net {
    let mut gens: Vec<Polynomial<Rationals>> =
        i.gb_polys().iter().map(integer_scaled).collect();
    gens.retain(|g| !g.is_zero());
    if gens.is_empty() {
        return Net::text("ideal()");
    }
    let ord = MonomialOrder::GrevLex;
    gens.sort_by(|a, b| ord.cmp(&a.terms()[0].0, &b.terms()[0].0));
    let mut parts = Vec::new();
    parts.push(Net::text(if gens.len() == 1 { "ideal(" } else { "ideal (" }));
    for (idx, g) in gens.iter().enumerate() {
        if idx > 0 {
            parts.push(Net::text(", "));
        }
        parts.push(poly_net(g, true));
    }
    parts.push(Net::text(")"));
    Net::hcat(&parts)
}

/// A module element as a bracketed column: one row block per entry, each
/// centred (left-biased) in the common width, bars on every row.
pub fn vector_net(v: &PolyVector<Rationals>) -> Net {
    let cells: Vec<Net> = v.entries.iter().map(|e| poly_net(e, false)).collect();
    let w = cells.iter().map(|c| c.width()).max().unwrap_or(1);
    let mut rows = Vec::new();
    for cell in &cells {
        let cw = cell.width();
        let left = (w - cw + 1) / 2;
        let right = w - cw - left;
        for row in cell.rows() {
            let len = row.chars().count();
            let mut line = String::from("| ");
            line.push_str(&" ".repeat(left));
            line.push_str(row);
            line.push_str(&" ".repeat(cw - len + right));
            line.push_str(" |");
            rows.push(line);
        }
    }
    let baseline = cells.first().map(|c| c.baseline()).unwrap_or(0);
    Net { rows, baseline }
}

/// One support component: `{ideal(...), {| b1 |, | b2 |, ...}}`.
pub fn component_net(c: &Component) -> Net {
    let mut parts = vec![Net::text("{"), ideal_net(&c.prime), Net::text(", {")];
    for (idx, m) in c.multipliers.iter().enumerate() {
        if idx > 0 {
            parts.push(Net::text(", "));
        }
        parts.push(vector_net(m));
    }
    parts.push(Net::text("}}"));
    Net::hcat(&parts)
}

/// The component list wrapped at `width` columns.  Breaks happen between
/// components only; continuation lines hang with a one-space indent.
pub fn solution_text_width(sol: &Solution, width: usize) -> String {
    if sol.components.is_empty() {
        return "{}".to_string();
    }
    let comps: Vec<Net> = sol.components.iter().map(component_net).collect();
    let last = comps.len() - 1;
    let mut lines: Vec<Net> = Vec::new();
    let mut cur: Option<Net> = None;
    for (i, comp) in comps.into_iter().enumerate() {
        let close = if i == last { "}" } else { "," };
        match cur.take() {
            None => {
                cur = Some(Net::hcat(&[Net::text("{"), comp, Net::text(close)]));
            }
            Some(line) => {
                let want = line.width() + 1 + comp.width() + close.chars().count();
                if want <= width {
                    cur = Some(Net::hcat(&[line, Net::text(" "), comp, Net::text(close)]));
                } else {
                    lines.push(line);
                    cur = Some(Net::hcat(&[Net::text(" "), comp, Net::text(close)]));
                }
            }
        }
    }
    if let Some(line) = cur {
        lines.push(line);
    }
    lines
        .iter()
        .map(|l| l.render())
        .collect::<Vec<_>>()
        .join("\n")
}

/// The standard 80-column display of a solved system.
pub fn solution_text(sol: &Solution) -> String {
    solution_text_width(sol, 80)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Submodule;
    use crate::parse::parse_poly;
    use crate::poly::{qring, Ring};
    use crate::solver::{solve_pde, SolveOptions};
    use std::sync::Arc;

    fn vector(ring: &Arc<Ring<Rationals>>, entries: &[&str]) -> PolyVector<Rationals> {
        PolyVector::new(entries.iter().map(|s| parse_poly(ring, s).unwrap()).collect())
    }

    fn module2(ring: &Arc<Ring<Rationals>>, gens: &[[&str; 2]]) -> Submodule<Rationals> {
        let vecs = gens.iter().map(|row| vector(ring, row)).collect();
        Submodule::new(ring, 2, vecs)
    }

    #[test]
    fn exponents_sit_above_the_baseline() {
        let r = qring(&["x1", "x2"]);
        let p = parse_poly(&r, "x2^2 + x2 + 1").unwrap();
        let net = poly_net(&p, true);
        assert_eq!(net.rows(), &["  2         ".to_string(), "x2  + x2 + 1".to_string()]);
        assert_eq!(net.baseline(), 1);
        let q = parse_poly(&r, "x1^2*x2 - 3").unwrap();
        let net = poly_net(&q, false);
        assert_eq!(net.rows(), &["  2    ".to_string(), "x1 x2-3".to_string()]);
    }

    #[test]
    fn hcat_aligns_baselines() {
        let r = qring(&["x1", "x2"]);
        let sq = poly_net(&parse_poly(&r, "x1^2").unwrap(), true);
        let lin = Net::text("u");
        let net = Net::hcat(&[lin, sq]);
        assert_eq!(net.rows(), &["   2".to_string(), "ux1 ".to_string()]);
        assert_eq!(net.baseline(), 1);
    }

    #[test]
    fn ideal_layout_matches_session_conventions() {
        let r = qring(&["x1", "x2"]);
        let single = Ideal::new(&r, vec![parse_poly(&r, "x1 - 1").unwrap()]);
        assert_eq!(ideal_net(&single).render(), "ideal(x1 - 1)");
        // Several generators: space after `ideal`, increasing leading terms.
        let pair = Ideal::new(
            &r,
            vec![parse_poly(&r, "x1").unwrap(), parse_poly(&r, "x2").unwrap()],
        );
        assert_eq!(ideal_net(&pair).render(), "ideal (x2, x1)");
        // Fractions are scaled away without changing the ideal.
        let frac = Ideal::new(&r, vec![parse_poly(&r, "x1 - 1/2").unwrap()]);
        assert_eq!(ideal_net(&frac).render(), "ideal(2x1 - 1)");
    }

    #[test]
    fn vectors_centre_their_entries() {
        let r = qring(&["x1", "x2"]);
        let v = vector(&r, &["-x1", "x2 + 1"]);
        let net = vector_net(&v);
        assert_eq!(net.rows(), &["|  -x1 |".to_string(), "| x2+1 |".to_string()]);
        let w = vector(&r, &["-1", "1"]);
        let net = vector_net(&w);
        assert_eq!(net.rows(), &["| -1 |".to_string(), "|  1 |".to_string()]);
    }

    #[test]
    fn cubic_ode_display_is_the_classical_line() {
        let r = qring(&["x"]);
        let gens = vec![PolyVector::new(vec![
            parse_poly(&r, "x^3 + 3*x^2 - 9*x + 5").unwrap(),
        ])];
        let m = Submodule::new(&r, 1, gens);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert_eq!(
            solution_text(&sol),
            "{{ideal(x - 1), {| 1 |, | dx |}}, {ideal(x + 5), {| 1 |}}}"
        );
    }

    #[test]
    fn rank_two_solution_wraps_and_aligns() {
        let r = qring(&["x1", "x2"]);
        let m = module2(&r, &[["x1", "x2"], ["x1*x2", "x1"], ["x2", "x1*x2"]]);
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        let text = solution_text(&sol);
        // The third column spans the same line as the classical (x2+1, 1):
        // over the quadratic residue field, (x2+1)*(1, -x2) = (x2+1, 1).
        let expected = "\
{{ideal (x2, x1), {| 1 |, | 0 |, |  dx1 |}}, {ideal (x2 - 1, x1 - 1), {|  1 |}},
                   | 0 |  | 1 |  | -dx2 |                              | -1 |
                        2
 {ideal (x1 + x2 + 1, x2  + x2 + 1), {|  1  |}}}
                                      | -x2 |";
        assert_eq!(text, expected);
    }
}
