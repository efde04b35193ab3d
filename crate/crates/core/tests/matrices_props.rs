use proptest::prelude::*;

use glo2::canonical::matrix_from_code;
use glo2::matrices::{block_toeplitz_space, span_elements, Matrix};
use glo2::oracle::centralizer_algebra_basis;
use glo2::polyq::rat;
use glo2::rings::{Elem, Ring};
use glo2::typegen::centralizer_order;
use glo2::{Partition, PolyQ};

fn rings() -> Vec<Ring> {
    ["F2", "F3", "F4", "Z/4", "Z/9", "F2[t]/t^2", "GR(4,2)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn matrix(r: &Ring, n: usize, seed: &[u32]) -> Matrix {
    let data: Vec<Elem> = seed.iter().take(n * n).map(|x| x % r.size()).collect();
    Matrix::from_vec(r, n, n, data)
}

fn nilpotent(f: &Ring, lambda: &Partition) -> Matrix {
    let blocks: Vec<Matrix> = lambda
        .parts()
        .iter()
        .map(|&k| Matrix::principal_nilpotent(f, k as usize))
        .collect();
    Matrix::direct_sum(&blocks)
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(
        i in 0..rings().len(),
        n in 1usize..=4,
        a in prop::collection::vec(any::<u32>(), 16),
        b in prop::collection::vec(any::<u32>(), 16),
    ) {
        let r = &rings()[i];
        let (a, b) = (matrix(r, n, &a), matrix(r, n, &b));
        prop_assert_eq!(a.mul(&b).det(), r.mul(a.det(), b.det()));
        if b.is_invertible() {
            let c = a.conjugate(&b).unwrap();
            prop_assert_eq!(c.det(), a.det());
            prop_assert_eq!(c.trace(), a.trace());
            prop_assert_eq!(b.mul(&b.inv().unwrap()), Matrix::identity(r, n));
        } else {
            prop_assert!(b.inv().is_err());
        }
    }
}

/// Brute-force centralizer of `⊕ N_λ` over `F_q` equals the block Toeplitz
/// span. Exhaustive where `q^{n²}` is small; otherwise the Toeplitz basis is
/// checked to be independent, to commute, and to match the dimension of the
/// solution space of `XA = AX`.
#[test]
fn nilpotent_centralizers_are_block_toeplitz() {
    for q in [2, 3] {
        let f = Ring::field_of_size(q).unwrap();
        for n in 1..=4 {
            for lambda in Partition::all(n) {
                let a = nilpotent(&f, &lambda);
                let basis = block_toeplitz_space(&f, &lambda);
                let space = (q as u64).pow(n * n);
                if space <= 1 << 16 {
                    let mut toeplitz = span_elements(&f, &basis);
                    toeplitz.sort_by(|x, y| x.data().cmp(y.data()));
                    let mut brute: Vec<Matrix> = (0..space)
                        .map(|c| matrix_from_code(&f, n as usize, c))
                        .filter(|x| x.commutes_with(&a))
                        .collect();
                    brute.sort_by(|x, y| x.data().cmp(y.data()));
                    assert_eq!(brute, toeplitz, "q = {q}, λ = {lambda}");
                } else {
                    let rows: Vec<Vec<Elem>> = basis.iter().map(|m| m.data().to_vec()).collect();
                    assert_eq!(Matrix::from_rows(&f, &rows).rank(), basis.len());
                    assert!(basis.iter().all(|m| m.commutes_with(&a)));
                    assert_eq!(centralizer_algebra_basis(&a).len(), basis.len(), "q = {q}, λ = {lambda}");
                }
            }
        }
    }
}

#[test]
fn toeplitz_units_have_the_centralizer_order() {
    for q in [2i64, 3] {
        let f = Ring::field_of_size(q as u32).unwrap();
        for n in 1..=4 {
            for lambda in Partition::all(n) {
                let basis = block_toeplitz_space(&f, &lambda);
                if (q as u64).pow(basis.len() as u32) > 1 << 16 {
                    continue;
                }
                let units = span_elements(&f, &basis).iter().filter(|m| m.is_invertible()).count();
                let want = centralizer_order(&lambda, &PolyQ::q()).eval_int(q);
                assert_eq!(rat(units as i64), want, "q = {q}, λ = {lambda}");
            }
        }
    }
}

/// `XA = BX` forces `X = 0` when `A`, `B` are upper triangular with
/// constant diagonals `a ≠ b`.
#[test]
fn intertwiners_of_distinct_eigenvalues_vanish() {
    for q in [2u32, 3] {
        let f = Ring::field_of_size(q).unwrap();
        for n in 1..=3usize {
            let strict = n * (n - 1) / 2;
            for a in f.elements() {
                for b in f.elements().filter(|&b| b != a) {
                    for code in 0..(q as u64).pow(2 * strict as u32).min(81) {
                        let (ma, mb) = triangular_pair(&f, n, a, b, code);
                        let space = (q as u64).pow((n * n) as u32);
                        let hit = (1..space)
                            .map(|c| matrix_from_code(&f, n, c))
                            .find(|x| x.mul(&ma) == mb.mul(x));
                        assert!(hit.is_none(), "A = {ma}, B = {mb}, X = {}", hit.unwrap());
                    }
                }
            }
        }
    }
}

fn triangular_pair(f: &Ring, n: usize, a: Elem, b: Elem, mut code: u64) -> (Matrix, Matrix) {
    let q = f.q() as u64;
    let mut ma = Matrix::scalar(f, n, a);
    let mut mb = Matrix::scalar(f, n, b);
    for m in [&mut ma, &mut mb] {
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, (code % q) as Elem);
                code /= q;
            }
        }
    }
    (ma, mb)
}
