//! Chevalley–Eilenberg cohomology of the Heisenberg algebra over 𝔽₅ with
//! adjoint and trivial coefficients.

use cohomoforge::liering::{ce_cohomology, heisenberg, lie_h1_der, LieModule};

fn main() {
    let h = heisenberg(5);
    for (name, m) in [("adjoint", LieModule::adjoint(&h)), ("trivial", LieModule::trivial(&h, 1))] {
        let dims: Vec<usize> = (0..=3).map(|n| ce_cohomology(&m, n).unwrap().dim).collect();
        println!("{name:<8} dim H^0..H^3 = {dims:?}, Der/IDer = {}", lie_h1_der(&m).dim);
    }
}
