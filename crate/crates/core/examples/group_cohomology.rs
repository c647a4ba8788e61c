//! H⁰, H¹ and H² of S₃ acting on Z/3 through the sign character.

use cohomoforge::abelian::FiniteAbelianGroup;
use cohomoforge::catalog::symmetric;
use cohomoforge::cohomology::{check_dd_zero, cohomology_group};
use cohomoforge::gmodule::GModule;

fn main() {
    let g = symmetric(3);
    let a = FiniteAbelianGroup::from_cyclic(vec![3]).unwrap();
    // the transpositions, of order 2, act by −1
    let sign: Vec<Vec<Vec<i64>>> = (0..g.order())
        .map(|x| vec![vec![if g.element_order(x) == 2 { 2 } else { 1 }]])
        .collect();
    let m = GModule::from_matrices(&g, &a, sign).unwrap();
    for n in 0..=2 {
        assert!(check_dd_zero(&m, n));
        let h = cohomology_group(&m, n).unwrap();
        println!("H{n}(S3, Z/3 sign) = {}", h.group);
    }
}
