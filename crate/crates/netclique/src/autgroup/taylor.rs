//! The automorphism group of the Taylor extension of a Paley graph.
//!
//! The extension Σ of Γ = P(q) is an antipodal 2-cover of K_{q+1} whose
//! fibers sit over the projective line {∞} ∪ GF(q). Its full group is the
//! antipodal flip together with a lift of PΣL(2, q) acting on the base
//! line; order e·q(q²-1). A Möbius base map μ lifts to the cover exactly
//! when it preserves the coherence function
//!     c(P, Q) = 0 iff (P,+) ~ (Q,+)
//! up to switching, and the switching function η is forced once η(∞) is
//! fixed: η(Q) = c(∞, Q) ⊕ c(μ∞, μQ). The solver below computes η and then
//! verifies the lift condition on every base pair, so an inadmissible map
//! is rejected rather than silently mis-lifted.

use super::{ExplicitGroup, GroupError, Perm};
use crate::gf::{Fe, FieldSpec};
use crate::netgraph::{Graph, TaylorLayout};

/// A base point of the cover: the projective line over GF(q).
type Point = Option<Fe>; // None = ∞

/// Möbius transformation with a Frobenius twist:
/// z ↦ (a·z^(p^frob) + b) / (c·z^(p^frob) + d).
#[derive(Copy, Clone, Debug)]
struct Mobius {
    a: Fe,
    b: Fe,
    c: Fe,
    d: Fe,
    frob: u32,
}

impl Mobius {
    fn apply(&self, f: &FieldSpec, z: Point) -> Point {
        match z {
            None => {
                if self.c.is_zero() {
                    None
                } else {
                    Some(f.div(self.a, self.c).expect("c != 0"))
                }
            }
            Some(z) => {
                let w = f.frobenius(z, self.frob);
                let den = f.add(f.mul(self.c, w), self.d);
                if den.is_zero() {
                    None
                } else {
                    let num = f.add(f.mul(self.a, w), self.b);
                    Some(f.div(num, den).expect("den != 0"))
                }
            }
        }
    }
}

fn point_of_index(idx: usize) -> Point {
    if idx == 0 {
        None
    } else {
        Some(Fe(idx as u32 - 1))
    }
}

/// Builds the full automorphism group (as generators) of the Taylor
/// extension of P(q), acting on the vertex layout of
/// [`crate::netgraph::build_taylor`]. The local graph `gamma` must be the
/// Paley graph the cover was built from.
pub fn taylor_paley_group(
    field: &FieldSpec,
    gamma: &Graph,
    sigma: &Graph,
) -> Result<ExplicitGroup, GroupError> {
    let q = field.q();
    if gamma.n() as u32 != q || sigma.n() as u32 != 2 * (q + 1) {
        return Err(GroupError::Precondition(format!(
            "layout mismatch: base {} vertices, cover {} vertices, q = {q}",
            gamma.n(),
            sigma.n()
        )));
    }
    let layout = TaylorLayout { base_n: q };

    // coherence function on base pairs
    let coherent = |p: Point, r: Point| -> bool {
        match (p, r) {
            (None, Some(_)) | (Some(_), None) => true,
            (Some(x), Some(y)) => gamma.adjacent(x.code(), y.code()),
            (None, None) => unreachable!("distinct points"),
        }
    };

    let mut base_maps = vec![
        // z + 1
        Mobius { a: Fe::ONE, b: Fe::ONE, c: Fe::ZERO, d: Fe::ONE, frob: 0 },
        // β²·z
        Mobius { a: field.exp(2), b: Fe::ZERO, c: Fe::ZERO, d: Fe::ONE, frob: 0 },
        // -1/z
        Mobius { a: Fe::ZERO, b: field.neg(Fe::ONE), c: Fe::ONE, d: Fe::ZERO, frob: 0 },
    ];
    if field.e() > 1 {
        base_maps.push(Mobius { a: Fe::ONE, b: Fe::ZERO, c: Fe::ZERO, d: Fe::ONE, frob: 1 });
    }

    let mut generators: Vec<Perm> = Vec::new();
    for mu in &base_maps {
        generators.push(lift(field, &layout, &coherent, mu)?);
    }
    // the antipodal flip, the deck transformation of the 2-cover
    generators.push((0..sigma.n() as u32).map(|v| layout.antipode(v)).collect());

    // |2 × PΣL(2, q)| = e·q(q²-1)
    let e = field.e() as u128;
    let qq = q as u128;
    let order = e * qq * (qq * qq - 1);
    Ok(ExplicitGroup {
        n: sigma.n() as u32,
        generators,
        elements: None,
        order: Some(order),
        known_full: true,
    })
}

/// Lifts a base Möbius map to the 2-cover, solving for the switching
/// function η and verifying the coherence condition on all base pairs.
fn lift(
    field: &FieldSpec,
    layout: &TaylorLayout,
    coherent: &impl Fn(Point, Point) -> bool,
    mu: &Mobius,
) -> Result<Perm, GroupError> {
    let q = field.q();
    let points: Vec<Point> = (0..=q as usize).map(point_of_index).collect();
    let mu_of: Vec<Point> = points.iter().map(|&p| mu.apply(field, p)).collect();

    // η(∞) = 0; η(Q) = c(∞,Q) ⊕ c(μ∞, μQ)
    let mut eta = vec![false; q as usize + 1];
    for idx in 1..=q as usize {
        eta[idx] = coherent(points[0], points[idx]) != coherent(mu_of[0], mu_of[idx]);
    }
    for i in 0..=q as usize {
        for j in i + 1..=q as usize {
            let lhs = coherent(mu_of[i], mu_of[j]);
            let rhs = coherent(points[i], points[j]) != (eta[i] != eta[j]);
            if lhs != rhs {
                return Err(GroupError::Precondition(
                    "base map does not lift to the cover".to_string(),
                ));
            }
        }
    }

    let n = layout.n();
    let mut perm = vec![0u32; n as usize];
    for v in 0..n {
        let (base, plus) = layout.decode(v);
        let src_idx = match base {
            None => 0,
            Some(code) => 1 + code as usize,
        };
        let dst = mu_of[src_idx];
        let dst_plus = plus != eta[src_idx];
        let img = match dst {
            None => layout.infinity(dst_plus),
            Some(z) => layout.vertex(z.code(), dst_plus),
        };
        perm[v as usize] = img;
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::brute_force_automorphisms;
    use crate::netgraph::{build_paley, build_taylor};

    fn setup(p: u32, e: u32) -> (FieldSpec, Graph, Graph) {
        let f = FieldSpec::new(p, e).unwrap();
        let (gamma, _) = build_paley(&f).unwrap();
        let sigma = build_taylor(&gamma).unwrap();
        (f, gamma, sigma)
    }

    #[test]
    fn lifted_generators_are_automorphisms() {
        for (p, e) in [(3u32, 2u32), (5, 2)] {
            let (f, gamma, sigma) = setup(p, e);
            let grp = taylor_paley_group(&f, &gamma, &sigma).unwrap();
            for perm in &grp.generators {
                for u in 0..sigma.n() as u32 {
                    for v in u + 1..sigma.n() as u32 {
                        assert_eq!(
                            sigma.adjacent(u, v),
                            sigma.adjacent(perm[u as usize], perm[v as usize])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn order_formula_matches_brute_force_on_small_covers() {
        // q = 9: 2(q+1) = 20 vertices
        let (f, gamma, sigma) = setup(3, 2);
        let lifted = taylor_paley_group(&f, &gamma, &sigma).unwrap();
        let brute = brute_force_automorphisms(&sigma).unwrap();
        assert_eq!(lifted.order, brute.order);
        assert_eq!(lifted.order, Some(2 * 9 * 80));
    }
}
