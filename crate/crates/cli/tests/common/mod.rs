#![allow(dead_code)]

use randers_core::hypercomplex::{verify_complex_structure, verify_hypercomplex};
use randers_core::scalar::int;
use randers_core::{ComplexStructureTriple, LieAlgebra, Matrix};

/// All 4x4 signed permutation matrices.
pub fn signed_permutations() -> Vec<Matrix> {
    let mut perms = Vec::new();
    let mut idx = [0usize, 1, 2, 3];
    permute(&mut idx, 0, &mut perms);
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..16u32 {
            let mut m = Matrix::zeros(4, 4);
            for (from, &to) in p.iter().enumerate() {
                m[(to, from)] = int(if signs >> from & 1 == 1 { -1 } else { 1 });
            }
            out.push(m);
        }
    }
    out
}

fn permute(idx: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == idx.len() {
        out.push(*idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// Integrable complex structures among the signed permutations.
pub fn integrable_structures(algebra: &LieAlgebra) -> Vec<Matrix> {
    signed_permutations()
        .into_iter()
        .filter(|j| verify_complex_structure(algebra, j).unwrap().passed())
        .collect()
}

/// Hypercomplex triples `(J1, J2, J1 J2)` built from signed permutations.
pub fn hypercomplex_triples(algebra: &LieAlgebra) -> Vec<ComplexStructureTriple> {
    let js = integrable_structures(algebra);
    let mut out = Vec::new();
    for j1 in &js {
        for j2 in &js {
            let t = ComplexStructureTriple::new(j1.clone(), j2.clone(), j1 * j2).unwrap();
            if verify_hypercomplex(algebra, &t).unwrap().passed() {
                out.push(t);
            }
        }
    }
    out
}
