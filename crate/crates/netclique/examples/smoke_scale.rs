use std::sync::Arc;
use netclique::autgroup::{classify_maximal_cliques, paley_group, GroupSpec};
use netclique::cliques::EnumOpts;
use netclique::gf::FieldSpec;
use netclique::netgraph::build_paley;

fn main() {
    for (p, e) in [(17u32, 1u32), (19, 1)] {
        let f = Arc::new(FieldSpec::new(p, 2 * e).unwrap());
        let (g, _) = build_paley(&f).unwrap();
        let grp = GroupSpec::Affine(paley_group(&f).unwrap());
        let t0 = std::time::Instant::now();
        let cls = classify_maximal_cliques(&g, &grp, &EnumOpts::default()).unwrap();
        println!("P({}) orbits: {:?} total {} [{:?}]", f.q(), cls.orbit_counts, cls.total_cliques, t0.elapsed());
    }
}
