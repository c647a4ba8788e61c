//! Subgroup lattice of S₄: every subgroup with its order, normality and
//! nilpotency.

use cohomoforge::catalog::symmetric;
use cohomoforge::groups::enumerate_subgroups;

fn main() {
    let g = symmetric(4);
    let subs = enumerate_subgroups(&g).unwrap();
    println!("S4 has {} subgroups", subs.len());
    for h in &subs {
        println!(
            "order {:>2}  normal {:<5}  nilpotent {:<5}  {:?}",
            h.order(),
            h.is_normal(&g),
            h.is_nilpotent(&g),
            h.elements()
        );
    }
}
