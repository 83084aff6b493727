//! Free resolutions and the annihilators of the dual cohomology modules.
//!
//! The resolution of R^k / M comes from iterated syzygy computations on
//! reduced bases, with redundant generators pruned at every stage; for
//! homogeneous input this yields a minimal resolution, and a hard cap keeps
//! the loop honest otherwise.  Dualizing the resolution and taking
//! kernel-modulo-image at each spot presents the cohomology of the
//! transposed complex, whose annihilator ideals drive the search for
//! associated primes by codimension.

use crate::field::Field;
use crate::groebner::Submodule;
use crate::modops::{colon_by_vector, syzygies, Ideal};
use crate::poly::PolyVector;
use crate::{Error, Result};

/// A chain of free-module maps resolving R^k / M: `maps[0]` holds the
/// generators of M as columns into R^k, and `maps[i]` the relations among
/// the columns of `maps[i-1]`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    /// ranks[i] is the rank of the i-th free module; ranks[0] = k.
    pub ranks: Vec<usize>,
    pub maps: Vec<Vec<PolyVector<F>>>,
}

/// Drop generators that already lie in the span of the others, scanning from
/// the back so the output stays deterministic.
fn prune_redundant<F: Field>(
    ring: &std::sync::Arc<crate::poly::Ring<F>>,
    k: usize,
    gens: &[PolyVector<F>],
) -> Vec<PolyVector<F>> {
    let mut kept: Vec<PolyVector<F>> = gens.to_vec();
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let candidate = kept[i].clone();
        let rest: Vec<PolyVector<F>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if Submodule::new(ring, k, rest.clone()).contains(&candidate) {
            kept = rest;
        }
    }
    kept
}

/// Resolve R^k / M by iterated syzygies; errors if the chain does not
/// terminate within `cap` stages.
pub fn free_resolution<F: Field>(m: &Submodule<F>, cap: usize) -> Result<FreeResolution<F>> {
    let ring = m.ring().clone();
    let k = m.k();
    let mut ranks = vec![k];
    let mut maps: Vec<Vec<PolyVector<F>>> = Vec::new();
    // Start from the reduced basis so the first syzygy stage is small.
    let mut cols: Vec<PolyVector<F>> = prune_redundant(&ring, k, &m.gb().elems);
    loop {
        if cols.is_empty() {
            break;
        }
        ranks.push(cols.len());
        maps.push(cols.clone());
        if maps.len() > cap {
            return Err(Error::CapExceeded(format!(
                "free resolution did not terminate within {} stages",
                cap
            )));
        }
        let rank_here = cols.len();
        let syz = syzygies(&ring, *ranks.get(ranks.len() - 2).unwrap(), &cols);
        cols = prune_redundant(&ring, rank_here, &syz);
    }
    Ok(FreeResolution { ranks, maps })
}

/// Kernel-modulo-image presentation at spot i of the transposed complex:
/// both submodules live in the dual of the i-th free module.
#[derive(Clone, Debug)]
pub struct DualCohomology<F: Field> {
    pub rank: usize,
    pub kernel: Submodule<F>,
    pub image: Submodule<F>,
}

impl<F: Field> DualCohomology<F> {
    pub fn is_zero(&self) -> bool {
        self.image.contains_module(&self.kernel)
    }

    /// Annihilator of kernel / image.
    pub fn annihilator(&self) -> Ideal<F> {
        let ring = self.kernel.ring();
        let mut acc: Option<Ideal<F>> = None;
        for g in self.kernel.gens() {
            let q = colon_by_vector(&self.image, g);
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(ring))
    }
}

/// Rows of a column-major matrix, as vectors of rank = number of columns.
fn transpose_columns<F: Field>(rows: usize, cols: &[PolyVector<F>]) -> Vec<PolyVector<F>> {
    (0..rows)
        .map(|r| PolyVector::new(cols.iter().map(|c| c.entries[r].clone()).collect()))
        .collect()
}

/// The cohomology presentation of the dualized resolution at spot i.
pub fn dual_cohomology<F: Field>(
    res: &FreeResolution<F>,
    m: &Submodule<F>,
    i: usize,
) -> DualCohomology<F> {
    let ring = m.ring().clone();
    let len = res.maps.len(); // maps are d_1 .. d_len
    let rank_i = if i < res.ranks.len() { res.ranks[i] } else { 0 };
    if i > len {
        // Beyond the resolution: zero module.
        let z = Submodule::zero(&ring, 1);
        return DualCohomology { rank: 0, kernel: z.clone(), image: z };
    }
    // Kernel of the transpose of d_{i+1}: rows of d_{i+1} are its columns.
    let kernel = if i == len {
        Submodule::whole(&ring, rank_i)
    } else {
        let dnext = &res.maps[i]; // d_{i+1}: columns of rank ranks[i]
        let tcols = transpose_columns(rank_i, dnext);
        // v in R^{rank_i} is in the kernel iff sum v_r * row_r = 0.
        Submodule::new(&ring, rank_i, syzygies(&ring, dnext.len(), &tcols))
    };
    // Image of the transpose of d_i: its columns are the rows of d_i,
    // living in R^{rank_i}.
    let image = if i == 0 {
        Submodule::zero(&ring, rank_i)
    } else {
        let dthis = &res.maps[i - 1]; // d_i: columns of rank ranks[i-1]
        Submodule::new(&ring, rank_i, transpose_columns(res.ranks[i - 1], dthis))
    };
    DualCohomology { rank: rank_i, kernel, image }
}

/// Annihilator of the i-th dual cohomology of R^k / M.
pub fn ext_annihilator<F: Field>(m: &Submodule<F>, i: usize, cap: usize) -> Result<Ideal<F>> {
    let res = free_resolution(m, cap)?;
    Ok(dual_cohomology(&res, m, i).annihilator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::parse_poly;
    use crate::poly::{qring, Polynomial, Ring};
    use std::sync::Arc;

    fn pp(ring: &Arc<Ring<Rationals>>, s: &str) -> Polynomial<Rationals> {
        parse_poly(ring, s).unwrap()
    }

    fn ideal_mod(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Submodule<Rationals> {
        let gs = gens.iter().map(|s| PolyVector::new(vec![pp(ring, s)])).collect();
        Submodule::new(ring, 1, gs)
    }

    fn compose_is_zero(res: &FreeResolution<Rationals>, stage: usize) -> bool {
        // d_stage . d_{stage+1} = 0 as matrices.
        let d1 = &res.maps[stage - 1];
        let d2 = &res.maps[stage];
        for col in d2 {
            let ring = col.ring().clone();
            let mut acc = PolyVector::zero(&ring, res.ranks[stage - 1]);
            for (c, g) in col.entries.iter().zip(d1) {
                acc = acc.add(&g.scale_poly(c));
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    #[test]
    fn maximal_ideal_resolution_has_binomial_ranks() {
        let r = qring(&["x1", "x2", "x3"]);
        let m = ideal_mod(&r, &["x1", "x2", "x3"]);
        let res = free_resolution(&m, 8).unwrap();
        assert_eq!(res.ranks, vec![1, 3, 3, 1]);
        for stage in 1..res.maps.len() {
            assert!(compose_is_zero(&res, stage), "complex property at stage {}", stage);
        }
    }

    #[test]
    fn top_dual_cohomology_of_maximal_ideal() {
        let r = qring(&["x1", "x2", "x3"]);
        let m = ideal_mod(&r, &["x1", "x2", "x3"]);
        let res = free_resolution(&m, 8).unwrap();
        // Below the top spot everything vanishes.
        for i in 0..3 {
            let h = dual_cohomology(&res, &m, i);
            assert!(h.is_zero(), "spot {} must vanish", i);
            assert!(!h.annihilator().is_proper());
        }
        let top = dual_cohomology(&res, &m, 3);
        assert!(!top.is_zero());
        let ann = top.annihilator();
        let expect = Ideal::new(&r, vec![pp(&r, "x1"), pp(&r, "x2"), pp(&r, "x3")]);
        assert!(ann.equals(&expect));
    }

    #[test]
    fn complete_intersection_is_self_dual() {
        let r = qring(&["x1", "x2", "x3"]);
        let m = ideal_mod(&r, &["x1^2 - x2*x3", "x3^2"]);
        let res = free_resolution(&m, 8).unwrap();
        assert_eq!(res.ranks, vec![1, 2, 1]);
        let h1 = dual_cohomology(&res, &m, 1);
        assert!(h1.is_zero(), "a regular sequence has no middle cohomology");
        let h2 = dual_cohomology(&res, &m, 2);
        assert!(!h2.is_zero());
        let ann = h2.annihilator();
        let expect = Ideal::new(&r, vec![pp(&r, "x1^2 - x2*x3"), pp(&r, "x3^2")]);
        assert!(ann.equals(&expect));
    }

    #[test]
    fn rank_two_module_resolution() {
        let r = qring(&["x1", "x2"]);
        let m = Submodule::new(
            &r,
            2,
            vec![
                PolyVector::new(vec![pp(&r, "x1"), pp(&r, "0")]),
                PolyVector::new(vec![pp(&r, "0"), pp(&r, "x2")]),
                PolyVector::new(vec![pp(&r, "x2"), pp(&r, "x1")]),
            ],
        );
        let res = free_resolution(&m, 8).unwrap();
        assert_eq!(res.ranks[0], 2);
        for stage in 1..res.maps.len() {
            assert!(compose_is_zero(&res, stage));
        }
        // Spot 0 of the dual complex: vectors killed by every generator row;
        // here the generators span full rank at generic points, so the dual
        // hom module vanishes.
        let h0 = dual_cohomology(&res, &m, 0);
        assert!(h0.is_zero());
    }

    #[test]
    fn zero_module_resolves_trivially() {
        let r = qring(&["x1", "x2"]);
        let m = Submodule::<Rationals>::zero(&r, 2);
        let res = free_resolution(&m, 8).unwrap();
        assert_eq!(res.ranks, vec![2]);
        assert!(res.maps.is_empty());
        let h0 = dual_cohomology(&res, &m, 0);
        // Hom(R^2, R) = R^2, nothing divides it out: annihilator is zero.
        assert!(!h0.is_zero());
        assert!(h0.annihilator().is_zero());
    }
}
