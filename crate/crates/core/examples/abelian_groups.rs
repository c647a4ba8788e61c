//! Invariant factors of quotients of Z/4 ⊕ Z/8 ⊕ Z/2.

use cohomoforge::abelian::{quotient_by, FiniteAbelianGroup};

fn main() {
    let a = FiniteAbelianGroup::from_cyclic(vec![4, 8, 2]).unwrap();
    println!("A = {a}");
    for gens in [vec![vec![2, 4, 0]], vec![vec![1, 2, 1]], vec![vec![0, 4, 1], vec![2, 0, 0]]] {
        let q = quotient_by(&a, &gens);
        println!("A / <{gens:?}> = {}", q.group);
    }
}
