//! The p-map of gl₂(𝔽₃) and the semisimple elements it singles out.

use cohomoforge::liering::{gl_restricted, is_semisimple_element};

fn main() {
    let r = gl_restricted(2, 3);
    let mut semisimple = 0;
    for code in 0..81 {
        let v: Vec<i64> = (0..4).map(|i| code / 3i64.pow(i) % 3).collect();
        if is_semisimple_element(&r, &v).semisimple {
            semisimple += 1;
        }
    }
    println!("{semisimple} of 81 elements of gl2(F3) are semisimple");
    let x = vec![0, 1, 0, 0];
    let c = is_semisimple_element(&r, &x);
    println!("{x:?}: x^[p] = {:?}, semisimple {}", r.pmap(&x), c.semisimple);
}
