//! Decomposition of Z/4 acting on 𝔽₅² by a rotation of order 4 into
//! irreducible summands.

use cohomoforge::abelian::FiniteAbelianGroup;
use cohomoforge::gmodule::GModule;
use cohomoforge::groups::FiniteGroup;
use cohomoforge::theorems::maschke_decompose;

fn main() {
    let g = FiniteGroup::cyclic(4);
    let a = FiniteAbelianGroup::from_cyclic(vec![5, 5]).unwrap();
    let r = vec![vec![0, 4], vec![1, 0]];
    let mut mats = vec![vec![vec![1, 0], vec![0, 1]]];
    for _ in 1..4 {
        let last = mats.last().unwrap();
        mats.push(cohomoforge::fp::mat_mul(&r, last, 5));
    }
    let m = GModule::from_matrices(&g, &a, mats).unwrap();
    let d = maschke_decompose(&m).unwrap();
    println!("certified: {}", d.certified);
    for s in &d.summands {
        println!("summand of order {} generated by {:?}", s.order(), s.generators());
    }
}
