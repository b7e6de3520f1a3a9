use std::sync::Arc;
use netclique::cliques::{par_maximal_cliques, EnumOpts};
use netclique::gf::FieldSpec;
use netclique::netgraph::build_paley;

fn main() {
    for (p, e) in [(17u32, 2u32), (19, 2)] {
        let f = Arc::new(FieldSpec::new(p, e).unwrap());
        let (g, _) = build_paley(&f).unwrap();
        let t0 = std::time::Instant::now();
        let (sum, total) = par_maximal_cliques(
            &g,
            &EnumOpts::default(),
            || 0u64,
            |acc, c| *acc += c.len() as u64,
            |a, b| a + b,
        )
        .unwrap();
        println!("P({}) cliques {} sum {} [{:?}]", f.q(), total, sum, t0.elapsed());
    }
}
