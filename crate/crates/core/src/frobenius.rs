//! Logarithmic presentation of solutions for Euler-type systems.
//!
//! When each variable x_i is read as the Euler operator θ_i = t_i·∂/∂t_i,
//! the exponential solutions of a system transform under z_i = log(t_i):
//! the frequency factor e^{⟨u,z⟩} becomes the monomial Π t_i^{u_i} and the
//! multiplier's z-coordinates become logarithms.  For systems whose support
//! is a finite set of rational points this yields closed-form bases of
//! monomials times log-polynomials — the classical series-free case of the
//! Frobenius method.
//!
//! The distraction bridges in the other direction: substituting the falling
//! factorial x(x−1)…(x−e+1) for each power x^e turns a monomial system of
//! plain derivatives into its Euler form, moving its staircase of monomial
//! solutions onto integer frequency points.

use num_rational::BigRational;

use crate::field::{rat, Field, Rationals};
use crate::modops::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
#[cfg(test)]
use crate::poly::PolyVector;
use crate::solver::{partner_ring, Solution};
use crate::{Error, Result};

/// Falling factorial of one variable: x_v (x_v − 1) ⋯ (x_v − e + 1).
pub fn falling_factorial(
    ring: &std::sync::Arc<crate::poly::Ring<Rationals>>,
    v: usize,
    e: u32,
) -> Polynomial<Rationals> {
    let x = Polynomial::var(ring, v);
    let mut acc = Polynomial::one(ring);
    for j in 0..e {
        acc = acc.mul(&x.sub(&Polynomial::constant(ring, rat(j as i64))));
    }
    acc
}

/// Product of falling factorials, one per variable: Π_i x_i(x_i−1)⋯(x_i−b_i+1).
pub fn falling_factorial_monomial(
    ring: &std::sync::Arc<crate::poly::Ring<Rationals>>,
    b: &Monomial,
) -> Polynomial<Rationals> {
    let mut acc = Polynomial::one(ring);
    for (v, &e) in b.0.iter().enumerate() {
        if e > 0 {
            acc = acc.mul(&falling_factorial(ring, v, e));
        }
    }
    acc
}

/// One generator of a torus-fixed system of polynomial-coefficient
/// operators: x^a · p(θ) · ∂^b, with θ_i = x_i·∂_i and p a polynomial whose
/// variables are read as the θ_i.
pub struct TorusFixedGenerator {
    pub a: Monomial,
    pub p: Polynomial<Rationals>,
    pub b: Monomial,
}

impl TorusFixedGenerator {
    /// The commutative image [θ_b]·p(θ−b) of this operator; it equals the
    /// normal-ordered expansion of x^b·p(θ)·∂^b read as a polynomial in the
    /// commuting θ_i (the left factor x^a contributes a unit on the torus
    /// and is dropped).
    pub fn distraction(&self) -> Polynomial<Rationals> {
        let ring = self.p.ring();
        let n = ring.nvars();
        let shifted: Vec<Polynomial<Rationals>> = (0..n)
            .map(|i| {
                let e = if i < self.b.nvars() { self.b.0[i] } else { 0 };
                Polynomial::var(ring, i).sub(&Polynomial::constant(ring, rat(e as i64)))
            })
            .collect();
        let p_shift = self.p.map_into(ring, &mut |c: &num_rational::BigRational| c.clone(), &shifted);
        falling_factorial_monomial(ring, &self.b).mul(&p_shift)
    }
}

/// The distraction of a torus-fixed system: the commutative ideal generated
/// by the images of all its generators.
pub fn distraction_system(gens: &[TorusFixedGenerator]) -> Ideal<Rationals> {
    let ring = gens
        .first()
        .map(|g| g.p.ring().clone())
        .expect("at least one generator");
    Ideal::new(&ring, gens.iter().map(|g| g.distraction()).collect())
}

/// The distraction of a polynomial: every power x_i^{e} in every monomial
/// is replaced by the falling factorial of length e.
pub fn distraction(p: &Polynomial<Rationals>) -> Polynomial<Rationals> {
    let ring = p.ring();
    let mut out = Polynomial::zero(ring);
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(ring, c.clone());
        for i in 0..m.nvars() {
            if m.0[i] > 0 {
                term = term.mul(&falling_factorial(ring, i, m.0[i]));
            }
        }
        out = out.add(&term);
    }
    out
}

/// Generator-wise distraction of an ideal.
pub fn distraction_ideal(i: &Ideal<Rationals>) -> Ideal<Rationals> {
    Ideal::new(i.ring(), i.gens_poly().iter().map(distraction).collect())
}

/// One closed-form solution of an Euler-type system: the monomial prefactor
/// Π t_i^{u_i} times a vector of polynomials in the logarithms log(t_i),
/// encoded in the partner ring (d&lt;v&gt; standing for log of the coordinate
/// paired with v).
pub struct FrobeniusForm {
    pub exponent: Vec<BigRational>,
    pub log_poly: Vec<Polynomial<Rationals>>,
}

/// Closed-form basis for a solved Euler-type system.  Requires every
/// component to be a rational point; a positive-dimensional support or an
/// irrational point has no finite monomial-times-log basis and is reported
/// as unsupported.
pub fn frobenius_basis(sol: &Solution) -> Result<Vec<FrobeniusForm>> {
    let ring = sol.module.ring();
    let n = ring.nvars();
    let target = partner_ring(ring);
    let mut out = Vec::new();
    for comp in &sol.components {
        if comp.codim != n || comp.field.degree_over_q() != Some(1) {
            return Err(Error::Unsupported(format!(
                "the support component of codimension {} with residue degree {:?} \
                 is not a rational point; only the exponential presentation exists",
                comp.codim,
                comp.field.degree_over_q()
            )));
        }
        // The frequency: residue class of each variable, a rational number.
        let exponent: Vec<BigRational> = (0..n)
            .map(|i| {
                let c = comp.field.project(&Polynomial::var(ring, i)).constant_term();
                c.num().constant_term() / c.den().constant_term()
            })
            .collect();
        for b in &comp.multipliers {
            let log_poly = b
                .entries
                .iter()
                .map(|p| {
                    // Evaluate the x-part at the point; keep the d-part.
                    let f = Rationals;
                    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
                    for (m, c) in p.terms() {
                        let mut coef = c.clone();
                        for i in 0..n {
                            for _ in 0..m.0[i] {
                                coef = f.mul(&coef, &exponent[i]);
                            }
                        }
                        if !f.is_zero(&coef) {
                            terms.push((Monomial(m.0[n..].to_vec()), coef));
                        }
                    }
                    Polynomial::from_terms(&target, terms)
                })
                .collect();
            out.push(FrobeniusForm { exponent: exponent.clone(), log_poly });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Submodule;
    use crate::modops::std_monomials;
    use crate::parse::parse_poly;
    use crate::poly::qring;
    use crate::solver::{solve_pde, SolveOptions};

    #[test]
    fn falling_factorial_expands_to_stirling_signs() {
        let ring = qring(&["x"]);
        assert_eq!(falling_factorial(&ring, 0, 3).to_string(), "x^3 - 3*x^2 + 2*x");
        assert_eq!(falling_factorial(&ring, 0, 0).to_string(), "1");
    }

    #[test]
    fn distraction_acts_per_variable() {
        let ring = qring(&["x1", "x2"]);
        let p = parse_poly(&ring, "x1^2*x2").unwrap();
        assert_eq!(distraction(&p).to_string(), "x1^2*x2 - x1*x2");
        // Linear polynomials are untouched.
        let l = parse_poly(&ring, "x1 + 3*x2 - 2").unwrap();
        assert_eq!(distraction(&l), l);
    }

    #[test]
    fn distraction_moves_the_staircase_onto_frequency_points() {
        let ring = qring(&["x1", "x2"]);
        let monomials = ["x1^2", "x2^2"];
        let plain = Submodule::new(
            &ring,
            1,
            monomials
                .iter()
                .map(|s| PolyVector::new(vec![parse_poly(&ring, s).unwrap()]))
                .collect(),
        );
        let staircase = std_monomials(&plain).unwrap();
        let euler = Submodule::new(
            &ring,
            1,
            monomials
                .iter()
                .map(|s| {
                    PolyVector::new(vec![distraction(&parse_poly(&ring, s).unwrap())])
                })
                .collect(),
        );
        let sol = solve_pde(&euler, &SolveOptions::default()).unwrap();
        let forms = frobenius_basis(&sol).unwrap();
        assert_eq!(forms.len(), staircase.len());
        let mut got: Vec<Vec<BigRational>> =
            forms.iter().map(|f| f.exponent.clone()).collect();
        let mut want: Vec<Vec<BigRational>> = staircase
            .iter()
            .map(|(_, m)| m.0.iter().map(|&e| rat(e as i64)).collect())
            .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        for f in &forms {
            assert_eq!(f.log_poly.len(), 1);
            assert_eq!(f.log_poly[0].to_string(), "1");
        }
    }

    #[test]
    fn squared_euler_operator_brings_a_logarithm() {
        let ring = qring(&["x"]);
        let m = Submodule::new(
            &ring,
            1,
            vec![PolyVector::new(vec![parse_poly(&ring, "x^2").unwrap()])],
        );
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        let forms = frobenius_basis(&sol).unwrap();
        assert_eq!(forms.len(), 2);
        for f in &forms {
            assert_eq!(f.exponent, vec![rat(0)]);
        }
        let printed: Vec<String> =
            forms.iter().map(|f| f.log_poly[0].to_string()).collect();
        assert_eq!(printed, vec!["1".to_string(), "dx".to_string()]);
    }

    #[test]
    fn shifted_double_point_scales_the_log_layer() {
        let ring = qring(&["x"]);
        // (θ − 2)²: solutions t² and t²·log t.
        let m = Submodule::new(
            &ring,
            1,
            vec![PolyVector::new(vec![
                parse_poly(&ring, "x^2 - 4*x + 4").unwrap()
            ])],
        );
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        let forms = frobenius_basis(&sol).unwrap();
        assert_eq!(forms.len(), 2);
        for f in &forms {
            assert_eq!(f.exponent, vec![rat(2)]);
        }
    }

    #[test]
    fn generator_images_expand_the_falling_factorials() {
        let ring = qring(&["x1", "x2"]);
        // ∂2² alone: [θ_(0,2)] = θ2(θ2−1).
        let g = TorusFixedGenerator {
            a: Monomial(vec![0, 0]),
            p: Polynomial::one(&ring),
            b: Monomial(vec![0, 2]),
        };
        assert_eq!(g.distraction().to_string(), "x2^2 - x2");
        // ∂1 alone: θ1.  A bare p(θ) stays itself.
        let g1 = TorusFixedGenerator {
            a: Monomial(vec![0, 0]),
            p: Polynomial::one(&ring),
            b: Monomial(vec![1, 0]),
        };
        assert_eq!(g1.distraction().to_string(), "x1");
        let p = parse_poly(&ring, "x1^2 - 3*x2 + 1").unwrap();
        let g2 = TorusFixedGenerator {
            a: Monomial(vec![2, 1]),
            p: p.clone(),
            b: Monomial(vec![0, 0]),
        };
        assert_eq!(g2.distraction(), p);
        assert_eq!(
            falling_factorial_monomial(&ring, &Monomial(vec![1, 1])).to_string(),
            "x1*x2"
        );
        // Plain-derivative polynomials distract term by term.
        let q = parse_poly(&ring, "x1^2*x2 - 3*x2^2 + 5").unwrap();
        let mut by_gens = Polynomial::zero(&ring);
        for (m, c) in q.terms() {
            let g = TorusFixedGenerator {
                a: Monomial(vec![0, 0]),
                p: Polynomial::constant(&ring, c.clone()),
                b: m.clone(),
            };
            by_gens = by_gens.add(&g.distraction());
        }
        assert_eq!(distraction(&q), by_gens);
    }

    #[test]
    fn distraction_agrees_with_normal_ordering_in_the_weyl_algebra() {
        use crate::duality::{weyl_ring, WeylOperator};
        let base = qring(&["x1", "x2"]);
        let wring = weyl_ring(&base);
        let n = 2usize;
        let mono_op = |xs: &Monomial, ds: &Monomial| {
            let mut e = xs.0.clone();
            e.extend(ds.0.iter().copied());
            WeylOperator::from_rep(
                n,
                Polynomial::from_terms(&wring, vec![(Monomial(e), rat(1))]),
            )
            .unwrap()
        };
        let theta: Vec<WeylOperator> = (0..n)
            .map(|i| {
                let mut e = vec![0u32; 2 * n];
                e[i] = 1;
                e[n + i] = 1;
                WeylOperator::from_rep(
                    n,
                    Polynomial::from_terms(&wring, vec![(Monomial(e), rat(1))]),
                )
                .unwrap()
            })
            .collect();
        let id = mono_op(&Monomial(vec![0, 0]), &Monomial(vec![0, 0]));
        // A polynomial in the commuting θ_i as a Weyl-algebra element.
        let theta_op = |p: &Polynomial<Rationals>| -> WeylOperator {
            let mut out = WeylOperator::zero(&wring);
            for (m, c) in p.terms() {
                let mut term =
                    WeylOperator::from_rep(n, id.rep().mul_term(&Monomial(vec![0; 2 * n]), c))
                        .unwrap();
                for (i, &e) in m.0.iter().enumerate() {
                    for _ in 0..e {
                        term = term.mul(&theta[i]);
                    }
                }
                out = out.add(&term);
            }
            out
        };
        let ps = [
            "1", "x1", "x2", "x1*x2", "x1^2", "x1 + 3", "x2^2 - x1", "x1^2*x2^2",
        ];
        let bs = [
            Monomial(vec![0, 0]),
            Monomial(vec![1, 0]),
            Monomial(vec![0, 1]),
            Monomial(vec![2, 0]),
            Monomial(vec![1, 1]),
            Monomial(vec![0, 2]),
        ];
        let asweep = [Monomial(vec![0, 0]), Monomial(vec![1, 0])];
        let zero_b = Monomial(vec![0, 0]);
        for ps in &ps {
            let p = parse_poly(&base, ps).unwrap();
            for b in &bs {
                let p_deg: u32 = p
                    .terms()
                    .iter()
                    .map(|(m, _)| m.0.iter().sum::<u32>())
                    .max()
                    .unwrap_or(0);
                if p_deg + b.0.iter().sum::<u32>() > 4 {
                    continue;
                }
                for a in &asweep {
                    let g = TorusFixedGenerator { a: a.clone(), p: p.clone(), b: b.clone() };
                    let lhs = mono_op(a, &zero_b)
                        .mul(&mono_op(b, &zero_b))
                        .mul(&theta_op(&p))
                        .mul(&mono_op(&zero_b, b));
                    let rhs = mono_op(a, &zero_b).mul(&theta_op(&g.distraction()));
                    assert_eq!(lhs, rhs, "p = {ps}, b = {:?}, a = {:?}", b.0, a.0);
                }
            }
        }
    }

    #[test]
    fn non_point_supports_are_refused_honestly() {
        let ring = qring(&["x1", "x2", "x3"]);
        let m = Submodule::new(
            &ring,
            1,
            vec![PolyVector::new(vec![
                parse_poly(&ring, "x1*x3 - x2^2").unwrap()
            ])],
        );
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        assert!(matches!(frobenius_basis(&sol), Err(Error::Unsupported(_))));
        // An irrational point is just as far from a closed form.
        let r1 = qring(&["x"]);
        let irr = Submodule::new(
            &r1,
            1,
            vec![PolyVector::new(vec![parse_poly(&r1, "x^2 - 2").unwrap()])],
        );
        let sol2 = solve_pde(&irr, &SolveOptions::default()).unwrap();
        assert!(matches!(frobenius_basis(&sol2), Err(Error::Unsupported(_))));
    }
}
