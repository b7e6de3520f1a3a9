//! Canonical images of cliques under affine semilinear groups.
//!
//! The canonical image of a set C under the group G is the
//! lexicographically least sorted image g(C) over g in G; two cliques have
//! the same canonical image exactly when they lie in one G-orbit, so the
//! classifier only ever stores one key per orbit.
//!
//! For the Paley and Peisert groups the minimum can be found by pair
//! normalization. Every group contains all translations, and for any two
//! clique elements u, w the difference w - u is an edge difference, whose
//! inverse is an admissible multiplier; the orbit therefore contains
//! images with 0 and 1 as the two least elements, and every such image is
//! z ↦ ((z - u)/(w - u))^(p^i) for a pair (u, w) and an admissible i. The
//! minimum over those n(n-1)·|i| candidates is the canonical image. All
//! work happens on exponents: codes of nonzero elements are exponent + 1,
//! so exponent order is code order.
//!
//! Net-linear and full-semilinear groups fall back to a direct minimum
//! over translations u ∈ C and all admissible linear parts, which is fine
//! at the scales those groups are used.

use super::{AffineGroup, AffineKind};

pub(crate) struct CanonContext<'a> {
    grp: &'a AffineGroup,
    /// q - 1
    m: u32,
    /// frob_tbl[i][k] = k·p^i mod (q-1)
    frob_tbl: Vec<Vec<u32>>,
    pair_mode: bool,
}

pub(crate) struct CanonScratch {
    dlog: Vec<u32>,
    cand: Vec<u32>,
    best: Vec<u32>,
}

impl CanonScratch {
    pub(crate) fn new() -> CanonScratch {
        CanonScratch { dlog: Vec::new(), cand: Vec::new(), best: Vec::new() }
    }
}

impl<'a> CanonContext<'a> {
    pub(crate) fn new(grp: &'a AffineGroup) -> CanonContext<'a> {
        let f = &grp.field;
        let m = f.group_order();
        let e = f.e();
        let mut frob_tbl = Vec::with_capacity(e as usize);
        for i in 0..e {
            let pi = {
                let mut acc = 1u64;
                for _ in 0..i {
                    acc = acc * f.p() as u64 % m as u64;
                }
                acc
            };
            frob_tbl.push((0..m).map(|k| (k as u64 * pi % m as u64) as u32).collect());
        }
        let pair_mode = matches!(grp.kind, AffineKind::Paley | AffineKind::Peisert);
        CanonContext { grp, m, frob_tbl, pair_mode }
    }

    /// Least sorted image of the clique over the group; the slice borrows
    /// the scratch buffer.
    pub(crate) fn canonical_image<'s>(
        &self,
        clique: &[u32],
        scratch: &'s mut CanonScratch,
    ) -> &'s [u32] {
        let n = clique.len();
        scratch.best.clear();
        match n {
            0 => return &scratch.best,
            1 => {
                scratch.best.push(0);
                return &scratch.best;
            }
            _ => {}
        }
        if self.pair_mode {
            self.pair_canon(clique, scratch);
        } else {
            self.generic_canon(clique, scratch);
        }
        &scratch.best
    }

    fn fill_dlogs(&self, clique: &[u32], scratch: &mut CanonScratch) {
        let f = &self.grp.field;
        let n = clique.len();
        scratch.dlog.clear();
        scratch.dlog.resize(n * n, 0);
        for ui in 0..n {
            for ci in 0..n {
                if ci == ui {
                    continue;
                }
                let d = f.sub(super::Fe(clique[ci]), super::Fe(clique[ui]));
                debug_assert!(!d.is_zero(), "clique vertices must be distinct");
                scratch.dlog[ui * n + ci] = d.code() - 1;
            }
        }
    }

    fn pair_canon(&self, clique: &[u32], scratch: &mut CanonScratch) {
        let n = clique.len();
        let m = self.m;
        let e = self.grp.field.e();
        self.fill_dlogs(clique, scratch);
        let peisert = self.grp.kind == AffineKind::Peisert;

        let CanonScratch { dlog, cand, best } = scratch;
        for ui in 0..n {
            let row = &dlog[ui * n..(ui + 1) * n];
            for wi in 0..n {
                if wi == ui {
                    continue;
                }
                let base = row[wi];
                let (start, step) = if peisert {
                    let parity = base % 4;
                    debug_assert!(parity <= 1, "clique pair difference not an edge class");
                    (parity, 2)
                } else {
                    (0, 1)
                };
                let mut i = start;
                while i < e {
                    let tbl = &self.frob_tbl[i as usize];
                    // quick reject on the third element
                    if n > 2 && !best.is_empty() {
                        let mut min3 = u32::MAX;
                        for (ci, &dl) in row.iter().enumerate() {
                            if ci == ui || ci == wi {
                                continue;
                            }
                            let delta = if dl >= base { dl - base } else { dl + m - base };
                            let code = tbl[delta as usize] + 1;
                            if code < min3 {
                                min3 = code;
                            }
                        }
                        if min3 > best[2] {
                            i += step;
                            continue;
                        }
                    }
                    cand.clear();
                    cand.push(0);
                    cand.push(1);
                    for (ci, &dl) in row.iter().enumerate() {
                        if ci == ui || ci == wi {
                            continue;
                        }
                        let delta = if dl >= base { dl - base } else { dl + m - base };
                        cand.push(tbl[delta as usize] + 1);
                    }
                    cand[2..].sort_unstable();
                    if best.is_empty() || &cand[..] < &best[..] {
                        std::mem::swap(best, cand);
                    }
                    i += step;
                }
            }
        }
    }

    fn generic_canon(&self, clique: &[u32], scratch: &mut CanonScratch) {
        let n = clique.len();
        let m = self.m;
        let f = &self.grp.field;
        let modulus = self.grp.allowed.modulus;
        let cosets = m / modulus;
        self.fill_dlogs(clique, scratch);
        let CanonScratch { dlog, cand, best } = scratch;
        for ui in 0..n {
            let row = &dlog[ui * n..(ui + 1) * n];
            for (i, classes) in self.grp.allowed.classes_by_frob.iter().enumerate() {
                let tbl = &self.frob_tbl[i];
                for &v in classes {
                    for t in 0..cosets {
                        let la = v + modulus * t;
                        cand.clear();
                        cand.push(0);
                        for (ci, &dl) in row.iter().enumerate() {
                            if ci == ui {
                                continue;
                            }
                            let ex = (la as u64 + tbl[dl as usize] as u64) % m as u64;
                            cand.push(ex as u32 + 1);
                        }
                        cand[1..].sort_unstable();
                        if best.is_empty() || &cand[..] < &best[..] {
                            std::mem::swap(best, cand);
                        }
                    }
                }
            }
        }
        let _ = f;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{
        full_semilinear_group, net_linear_group, paley_group, peisert_group, AffineGroup,
        GroupSpec,
    };
    use super::*;
    use crate::cliques::{maximal_cliques, EnumOpts};
    use crate::gf::FieldSpec;
    use crate::netgraph::{build_net_graph, build_paley, build_peisert, NetSpec};
    use std::sync::Arc;

    /// Reference canonical image: literal minimum over all group elements.
    fn canon_by_full_scan(grp: &AffineGroup, clique: &[u32]) -> Vec<u32> {
        let f = &grp.field;
        let mut best: Option<Vec<u32>> = None;
        for g in grp.elements() {
            let img = g.apply_to_set(f, clique);
            if best.as_ref().is_none_or(|b| &img < b) {
                best = Some(img);
            }
        }
        best.unwrap()
    }

    #[test]
    fn pair_canon_matches_full_scan_on_paley() {
        let f = Arc::new(FieldSpec::new(5, 2).unwrap());
        let (g, _) = build_paley(&f).unwrap();
        let grp = paley_group(&f).unwrap();
        let ctx = CanonContext::new(&grp);
        let mut scratch = CanonScratch::new();
        for clique in maximal_cliques(&g, &EnumOpts::default()).unwrap() {
            let fast = ctx.canonical_image(&clique, &mut scratch).to_vec();
            let slow = canon_by_full_scan(&grp, &clique);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn pair_canon_matches_full_scan_on_peisert() {
        let f = Arc::new(FieldSpec::new(7, 2).unwrap());
        let g = build_peisert(&f).unwrap();
        let grp = peisert_group(&f).unwrap();
        let ctx = CanonContext::new(&grp);
        let mut scratch = CanonScratch::new();
        for clique in maximal_cliques(&g, &EnumOpts::default())
            .unwrap()
            .into_iter()
            .take(400)
        {
            let fast = ctx.canonical_image(&clique, &mut scratch).to_vec();
            let slow = canon_by_full_scan(&grp, &clique);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn generic_canon_matches_full_scan_on_net() {
        let f = Arc::new(FieldSpec::new(3, 2).unwrap());
        let net = NetSpec::canonical(3, 2).unwrap();
        let g = build_net_graph(&f, &net).unwrap();
        let grp = net_linear_group(&f, &net).unwrap();
        let ctx = CanonContext::new(&grp);
        let mut scratch = CanonScratch::new();
        for clique in maximal_cliques(&g, &EnumOpts::default()).unwrap() {
            let fast = ctx.canonical_image(&clique, &mut scratch).to_vec();
            let slow = canon_by_full_scan(&grp, &clique);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn canon_is_orbit_invariant() {
        let f = Arc::new(FieldSpec::new(5, 2).unwrap());
        let (g, _) = build_paley(&f).unwrap();
        let grp = paley_group(&f).unwrap();
        let ctx = CanonContext::new(&grp);
        let mut scratch = CanonScratch::new();
        let cliques = maximal_cliques(&g, &EnumOpts::default()).unwrap();
        for clique in cliques.iter().take(30) {
            let key = ctx.canonical_image(clique, &mut scratch).to_vec();
            for map in grp.elements().step_by(17) {
                let img = map.apply_to_set(&f, clique);
                let key2 = ctx.canonical_image(&img, &mut scratch).to_vec();
                assert_eq!(key, key2);
            }
        }
        let _ = GroupSpec::Affine(grp);
    }

    #[test]
    fn full_semilinear_canon_runs() {
        let f = Arc::new(FieldSpec::new(3, 2).unwrap());
        let grp = full_semilinear_group(&f);
        let ctx = CanonContext::new(&grp);
        let mut scratch = CanonScratch::new();
        let line: Vec<u32> = f.subfield_elements().unwrap().iter().map(|x| x.code()).collect();
        let key = ctx.canonical_image(&line, &mut scratch).to_vec();
        let slow = canon_by_full_scan(&grp, &line);
        assert_eq!(key, slow);
    }
}
