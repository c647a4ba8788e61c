//! H¹ through derivations modulo inner derivations, next to the cochain
//! computation, for Z/4 acting on Z/5 by x ↦ 2x.

use cohomoforge::abelian::FiniteAbelianGroup;
use cohomoforge::cohomology::{cohomology_group, h1_der};
use cohomoforge::gmodule::GModule;
use cohomoforge::groups::FiniteGroup;

fn main() {
    let g = FiniteGroup::cyclic(4);
    let a = FiniteAbelianGroup::from_cyclic(vec![5]).unwrap();
    let m = GModule::from_matrices(&g, &a, vec![vec![vec![1]], vec![vec![2]], vec![vec![4]], vec![vec![3]]]).unwrap();
    let d = h1_der(&m);
    println!("|Der| = {}, |IDer| = {}", d.der.order(), d.ider.order());
    println!("Der/IDer = {}", d.h1.group);
    println!("Z1/B1    = {}", cohomology_group(&m, 1).unwrap().group);
}
