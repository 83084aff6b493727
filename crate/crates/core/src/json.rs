//! JSON schemas for batch input and output.
//!
//! A problem names its ring, the rank `k`, and the generator columns; the
//! emitted solution lists one entry per support component together with the
//! pretty text display.  Every expression uses the same grammar the parser
//! accepts, so printing and re-parsing round-trips.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::field::Rationals;
use crate::groebner::{ModOrder, Submodule};
use crate::modops::Ideal;
use crate::monomial::MonomialOrder;
use crate::net::integer_scaled;
use crate::parse::parse_poly;
use crate::poly::{PolyVector, Polynomial, Ring};
use crate::solver::Solution;
use crate::{Error, Result};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub variables: Vec<String>,
}

/// Options carried inside the problem document; command-line flags override
/// any value given here.
#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq, Eq)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(default, alias = "primes-file", skip_serializing_if = "Option::is_none")]
    pub primes_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_r: Option<u32>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ProblemInput {
    pub ring: RingSpec,
    pub k: usize,
    pub generators: Vec<Vec<String>>,
    /// Extra vector for the membership command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ComponentOut {
    pub prime: Vec<String>,
    pub multiplicity: usize,
    pub multipliers: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SolutionOut {
    pub amult: usize,
    pub components: Vec<ComponentOut>,
    pub rendered: String,
}

/// Parse the problem document, reporting position information on failure.
pub fn read_problem(text: &str) -> Result<ProblemInput> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}

/// Validate the document and build the ring and generator module.
pub fn build_module(p: &ProblemInput) -> Result<(Arc<Ring<Rationals>>, Submodule<Rationals>)> {
    let vars = &p.ring.variables;
    if vars.is_empty() {
        return Err(Error::Input("the ring needs at least one variable".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
            return Err(Error::Input(format!("invalid variable name {:?}", v)));
        }
        if vars[..i].contains(v) {
            return Err(Error::Input(format!("duplicate variable name {:?}", v)));
        }
    }
    if p.k == 0 {
        return Err(Error::Input("k must be a positive integer".into()));
    }
    let ring = Ring::new(Rationals, vars.clone());
    let mut vecs = Vec::new();
    for (gi, row) in p.generators.iter().enumerate() {
        if row.len() != p.k {
            return Err(Error::Input(format!(
                "generator {} has {} coordinates, expected k = {}",
                gi,
                row.len(),
                p.k
            )));
        }
        let entries = row
            .iter()
            .map(|s| parse_poly(&ring, s))
            .collect::<Result<Vec<_>>>()?;
        vecs.push(PolyVector::new(entries));
    }
    let module = Submodule::new(&ring, p.k, vecs);
    Ok((ring, module))
}

/// The membership candidate, parsed in the problem's ring.
pub fn candidate_vector(
    p: &ProblemInput,
    ring: &Arc<Ring<Rationals>>,
) -> Result<Option<PolyVector<Rationals>>> {
    match &p.candidate {
        None => Ok(None),
        Some(row) => {
            if row.len() != p.k {
                return Err(Error::Input(format!(
                    "candidate has {} coordinates, expected k = {}",
                    row.len(),
                    p.k
                )));
            }
            let entries = row
                .iter()
                .map(|s| parse_poly(ring, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(PolyVector::new(entries)))
        }
    }
}

/// A primes file: a JSON list of generator lists, parsed in `ring`.
pub fn parse_primes(ring: &Arc<Ring<Rationals>>, text: &str) -> Result<Vec<Ideal<Rationals>>> {
    let lists: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    lists
        .iter()
        .map(|gens| {
            let ps = gens
                .iter()
                .map(|s| parse_poly(ring, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(Ideal::new(ring, ps))
        })
        .collect()
}

/// Reduced basis of an ideal under the reporting order, as expression
/// strings scaled to integer coefficients.
pub fn ideal_strings(i: &Ideal<Rationals>, order: MonomialOrder) -> Vec<String> {
    let mut polys: Vec<Polynomial<Rationals>> = match order {
        MonomialOrder::GrevLex => i.gb_polys(),
        _ => i
            .module
            .gb_under(&ModOrder::Pot(order.clone()))
            .elems
            .iter()
            .map(|v| v.entries[0].clone())
            .collect(),
    };
    polys.retain(|p| !p.is_zero());
    let mut scaled: Vec<Polynomial<Rationals>> = polys.iter().map(integer_scaled).collect();
    scaled.sort_by(|a, b| order.cmp(&a.terms()[0].0, &b.terms()[0].0));
    scaled.iter().map(|p| p.to_string()).collect()
}

/// The emitted document for a solved system.
pub fn solution_output(sol: &Solution, order: MonomialOrder, rendered: String) -> SolutionOut {
    let components = sol
        .components
        .iter()
        .map(|c| ComponentOut {
            prime: ideal_strings(&c.prime, order.clone()),
            multiplicity: c.multiplicity,
            multipliers: c
                .multipliers
                .iter()
                .map(|b| b.entries.iter().map(|p| p.to_string()).collect())
                .collect(),
        })
        .collect();
    SolutionOut { amult: sol.amult(), components, rendered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::solution_text;
    use crate::residue::lift_ring;
    use crate::solver::{solve_pde, SolveOptions};

    fn problem_json() -> &'static str {
        r#"{
            "ring": {"variables": ["x"]},
            "k": 1,
            "generators": [["x^3 + 3*x^2 - 9*x + 5"]]
        }"#
    }

    #[test]
    fn problem_documents_round_trip() {
        let p = read_problem(problem_json()).unwrap();
        assert_eq!(p.k, 1);
        let printed = serde_json::to_string(&p).unwrap();
        let again = read_problem(&printed).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn schema_violations_are_input_errors() {
        let bad = read_problem("{\"ring\": 3}").unwrap_err();
        assert!(!bad.is_math());
        let p = read_problem(
            r#"{"ring": {"variables": ["x", "x"]}, "k": 1, "generators": []}"#,
        )
        .unwrap();
        assert!(matches!(build_module(&p), Err(Error::Input(_))));
        let p = read_problem(
            r#"{"ring": {"variables": ["x"]}, "k": 2, "generators": [["x"]]}"#,
        )
        .unwrap();
        assert!(matches!(build_module(&p), Err(Error::Input(_))));
        let p = read_problem(
            r#"{"ring": {"variables": ["x"]}, "k": 0, "generators": []}"#,
        )
        .unwrap();
        assert!(matches!(build_module(&p), Err(Error::Input(_))));
    }

    #[test]
    fn emitted_expressions_parse_back_to_the_same_objects() {
        let p = read_problem(problem_json()).unwrap();
        let (ring, m) = build_module(&p).unwrap();
        let sol = solve_pde(&m, &SolveOptions::default()).unwrap();
        let out = solution_output(&sol, MonomialOrder::GrevLex, solution_text(&sol));
        assert_eq!(out.amult, 3);
        // Solution documents round-trip as JSON.
        let printed = serde_json::to_string_pretty(&out).unwrap();
        let again: SolutionOut = serde_json::from_str(&printed).unwrap();
        assert_eq!(out, again);
        // Every emitted expression re-parses to the same object: the prime
        // strings regenerate the prime, the multiplier strings reproduce the
        // exact vectors.
        for (c, comp) in sol.components.iter().enumerate() {
            let parsed: Vec<_> = out.components[c]
                .prime
                .iter()
                .map(|s| parse_poly(&ring, s).unwrap())
                .collect();
            assert!(Ideal::new(&ring, parsed).equals(&comp.prime));
            let lr = lift_ring(&comp.field);
            for (b, mult) in comp.multipliers.iter().enumerate() {
                for (e, s) in out.components[c].multipliers[b].iter().enumerate() {
                    let back = parse_poly(&lr, s).unwrap();
                    assert!(back.sub(&mult.entries[e]).is_zero());
                }
            }
        }
    }

    #[test]
    fn reporting_order_switches_the_basis() {
        let r = crate::poly::qring(&["x1", "x2"]);
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x1^2 + x2^2 - 1").unwrap(),
                parse_poly(&r, "x1 - x2").unwrap(),
            ],
        );
        let grev = ideal_strings(&i, MonomialOrder::GrevLex);
        let lex = ideal_strings(&i, MonomialOrder::Lex);
        // Lex eliminates x1 from the quadric; grevlex keeps both leading
        // terms in degree pattern order.
        assert!(lex.iter().any(|s| !s.contains("x1")), "lex basis: {:?}", lex);
        assert_eq!(grev.len(), 2);
        for s in grev.iter().chain(lex.iter()) {
            assert!(parse_poly(&r, s).is_ok());
        }
    }
}
