//! Exactness of 0 → H¹(G/H, A^H) → H¹(G, A) → H¹(H, A) for every normal
//! subgroup of the dihedral group of order 8 acting on (Z/2)² by its permutation representation.

use cohomoforge::catalog::by_name;
use cohomoforge::cohomology::{check_inf_res_exact, faithful_reduction_check};
use cohomoforge::theorems::action_modules;
use cohomoforge::abelian::FiniteAbelianGroup;
use cohomoforge::groups::enumerate_subgroups;

fn main() {
    let g = by_name("D8").expect("D8 is in the catalog");
    let a = FiniteAbelianGroup::from_cyclic(vec![2, 2]).unwrap();
    let m = action_modules(&g, &a).into_iter().find(|m| !m.is_trivial_action()).unwrap();
    for h in enumerate_subgroups(&g).unwrap().into_iter().filter(|h| h.is_normal(&g)) {
        let r = check_inf_res_exact(&m, &h).unwrap();
        println!("|H| = {}: exact = {}", h.order(), r.all_exact());
        for node in &r.nodes {
            println!("  {:<28} ker {:>3}  im {:>3}", node.label, node.ker_order, node.im_order);
        }
        if let Some(f) = faithful_reduction_check(&m, &h).unwrap() {
            println!("  inflation iso: {}, H1(H,A)^(G/H) = 0: {}", f.inflation_is_iso, f.fixed_is_zero);
        }
    }
}
