use std::sync::Arc;
use netclique::autgroup::{classify_maximal_cliques, paley_group, peisert_group, brute_force_automorphisms, GroupSpec};
use netclique::cliques::EnumOpts;
use netclique::gf::FieldSpec;
use netclique::netgraph::{build_paley, build_peisert};

fn main() {
    for (p, e) in [(3u32, 2u32), (3, 4), (11, 2), (5, 2), (13, 1)] {
        let f = Arc::new(FieldSpec::new(p, e).unwrap());
        if f.q() % 4 != 1 { continue; }
        let (g, _) = build_paley(&f).unwrap();
        let grp = GroupSpec::Affine(paley_group(&f).unwrap());
        let t0 = std::time::Instant::now();
        let cls = classify_maximal_cliques(&g, &grp, &EnumOpts::default()).unwrap();
        println!("P({}) orbits: {:?} cliques: {:?} total {} [{:?}]", f.q(), cls.orbit_counts, cls.clique_counts, cls.total_cliques, t0.elapsed());
    }
    let f = Arc::new(FieldSpec::new(7, 2).unwrap());
    let g = build_peisert(&f).unwrap();
    let sub = peisert_group(&f).unwrap();
    println!("P*(49) subgroup order {} (flag {:?})", sub.order, sub.full_order_factor);
    let t0 = std::time::Instant::now();
    let full = brute_force_automorphisms(&g).unwrap();
    println!("P*(49) brute order {:?} [{:?}]", full.order, t0.elapsed());
    let cls = classify_maximal_cliques(&g, &GroupSpec::Explicit(full), &EnumOpts::default()).unwrap();
    println!("P*(49) orbits: {:?}", cls.orbit_counts);
}
