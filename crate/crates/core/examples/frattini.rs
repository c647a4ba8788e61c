//! G = H·N_G(C) for every normal solvable H and Carter subgroup C of H, over
//! the groups of order at most 16 and S₄.

use cohomoforge::catalog::{small_groups, symmetric};
use cohomoforge::limits::Limits;
use cohomoforge::theorems::frattini_instances;

fn main() {
    let limits = Limits::default();
    let mut groups: Vec<(String, _)> = small_groups().into_iter().map(|g| (g.name, g.group)).collect();
    groups.push(("S4".into(), symmetric(4)));
    for (name, g) in &groups {
        let reports = frattini_instances(g, &limits).unwrap();
        let holds = reports.iter().filter(|r| r.conclusion_holds == Some(true)).count();
        println!("{name:<12} {holds}/{} triples (H, C) with G = H N_G(C)", reports.len());
    }
}
