//! Schur's lemma and the explicit coboundary for C₃ acting on Z/7.

use cohomoforge::abelian::FiniteAbelianGroup;
use cohomoforge::gmodule::GModule;
use cohomoforge::groups::FiniteGroup;
use cohomoforge::limits::Limits;
use cohomoforge::theorems::schur_check;

fn main() {
    let g = FiniteGroup::cyclic(3);
    let a = FiniteAbelianGroup::from_cyclic(vec![7]).unwrap();
    let m = GModule::from_matrices(&g, &a, vec![vec![vec![1]], vec![vec![2]], vec![vec![4]]]).unwrap();
    let r = schur_check(&m, &Limits::default()).unwrap();
    println!("conclusion holds: {:?}", r.conclusion_holds);
    for h in &r.hypotheses {
        println!("  {}: {}", h.name, h.holds);
    }
    println!("{}", serde_json::to_string_pretty(&r.data).unwrap());
}
