//! The long exact sequence of 0 → Z/2 → Z/4 → Z/2 → 0 with Z/2 acting by
//! negation on Z/4, and the connecting map H⁰(C) → H¹(A).

use cohomoforge::abelian::{AbelianHom, FiniteAbelianGroup};
use cohomoforge::cohomology::{check_long_exact, connecting_map, ShortExactSequence};
use cohomoforge::gmodule::GModule;
use cohomoforge::groups::FiniteGroup;
use cohomoforge::limits::Limits;

fn main() {
    let g = FiniteGroup::cyclic(2);
    let z2 = FiniteAbelianGroup::from_cyclic(vec![2]).unwrap();
    let z4 = FiniteAbelianGroup::from_cyclic(vec![4]).unwrap();
    let left = GModule::trivial_action(&g, &z2);
    let right = GModule::trivial_action(&g, &z2);
    let middle = GModule::from_matrices(&g, &z4, vec![vec![vec![1]], vec![vec![3]]]).unwrap();
    let inj = AbelianHom::from_images(&z2, &z4, &[vec![2]]).unwrap();
    let surj = AbelianHom::from_images(&z4, &z2, &[vec![1]]).unwrap();
    let s = ShortExactSequence::new(left, middle, right, inj, surj).unwrap();
    let r = check_long_exact(&s, 1, &Limits::default()).unwrap();
    for node in &r.nodes {
        println!("{:<24} ker {:>3}  im {:>3}  {}", node.label, node.ker_order, node.im_order, if node.exact { "exact" } else { "NOT EXACT" });
    }
    let delta = connecting_map(&s).unwrap();
    println!("connecting map matrix: {:?}", delta.matrix());
}
