//! Derived values checked against brute-force enumeration and matrix products.

use eaoaqec::catalog::catalog;
use eaoaqec::constructions::{clean_qubits, ConstructionError, Options};
use eaoaqec::correct::{ea_correctable, eacq_correctable, eaoqec_correctable, exact_distance, oaqec_correctable, DistanceMode};
use eaoaqec::eacq::{coset_set_is_group, is_eacq_representable, quantum_stabilizer_subgroup, sq_distance_bound_check};
use eaoaqec::gf2::BitVec;
use eaoaqec::pauli::p;
use eaoaqec::symplectic::{in_centralizer, independent_generators};
use eaoaqec::{CodeBuilder, EaoaqecCode, Pauli1, PauliOperator};
use std::collections::HashSet;

type C = (i64, i64);
type M = [[C; 2]; 2];

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn mmul(a: &M, b: &M) -> M {
    let mut out = [[(0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let t = cmul(a[i][k], b[k][j]);
                out[i][j] = (out[i][j].0 + t.0, out[i][j].1 + t.1);
            }
        }
    }
    out
}

const I2: M = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
const X2: M = [[(0, 0), (1, 0)], [(1, 0), (0, 0)]];
const Z2: M = [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]];
const Y2: M = [[(0, 0), (0, -1)], [(0, 1), (0, 0)]];

fn i_pow(p: u8) -> C {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][(p & 3) as usize]
}

fn scale(c: C, m: &M) -> M {
    let mut out = *m;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v = cmul(c, *v);
        }
    }
    out
}

/// `X^x Z^z` on one qubit.
fn xz(x: bool, z: bool) -> M {
    let mx = if x { X2 } else { I2 };
    let mz = if z { Z2 } else { I2 };
    mmul(&mx, &mz)
}

/// Per-qubit matrices of an operator, with the global phase folded into qubit 0.
fn matrices(o: &PauliOperator) -> Vec<M> {
    let mut out: Vec<M> = (0..o.num_qubits()).map(|q| xz(o.x_bits().get(q), o.z_bits().get(q))).collect();
    out[0] = scale(i_pow(o.phase()), &out[0]);
    out
}

/// Tensor products are equal iff the per-qubit factors agree after moving
/// every scalar onto the first factor.
fn same_operator(a: &[M], b: &[M]) -> bool {
    let mut scal_a = (1, 0);
    let mut scal_b = (1, 0);
    for q in 0..a.len() {
        let na = normalise(&a[q]);
        let nb = normalise(&b[q]);
        if na.1 != nb.1 {
            return false;
        }
        scal_a = cmul(scal_a, na.0);
        scal_b = cmul(scal_b, nb.0);
    }
    scal_a == scal_b
}

/// Writes `m = c * P` with `P` having its first non-zero entry equal to 1.
fn normalise(m: &M) -> (C, M) {
    let c = m.iter().flatten().copied().find(|v| *v != (0, 0)).expect("non-zero");
    // c is a power of i, so its inverse is its conjugate
    let inv = (c.0, -c.1);
    (c, scale(inv, m))
}

fn all_paulis(n: usize) -> impl Iterator<Item = PauliOperator> {
    (0u64..(1 << (2 * n))).map(move |m| {
        let bits: Vec<bool> = (0..2 * n).map(|i| m >> i & 1 == 1).collect();
        PauliOperator::from_symplectic(&BitVec::from_bools(&bits))
    })
}

fn span(gens: &[PauliOperator], width: usize) -> HashSet<BitVec> {
    let mut out = HashSet::from([BitVec::zeros(2 * width)]);
    for g in gens {
        let add: Vec<BitVec> = out.iter().map(|v| v.xor(&g.to_symplectic())).collect();
        out.extend(add);
    }
    out
}

fn commutes_with_all(o: &PauliOperator, gens: &[PauliOperator]) -> bool {
    gens.iter().all(|g| g.commutes(o))
}

/// Dressed distance straight from its definition, by enumerating all `4^n` operators.
fn brute_dressed_distance(code: &EaoaqecCode) -> Option<usize> {
    let n = code.n();
    let h = code.h_group().generators();
    let mut allowed = code.h_isotropic().to_vec();
    allowed.extend(code.gauge_n());
    let allowed = span(&allowed, n);
    let t = code.transversal_n();
    all_paulis(n)
        .filter(|e| !e.is_identity())
        .filter(|e| {
            let cent = commutes_with_all(e, h) && !allowed.contains(&e.to_symplectic());
            let coset = (0..t.len())
                .any(|i| (i + 1..t.len()).any(|j| commutes_with_all(&t[i].mul(&t[j]).mul(e), h)));
            cent || coset
        })
        .map(|e| e.weight())
        .min()
}

#[test]
fn y_is_i_x_z() {
    let y = p("Y");
    assert_eq!((y.x_bits().get(0), y.z_bits().get(0), y.phase()), (true, true, 1));
    assert_eq!(scale(i_pow(1), &mmul(&X2, &Z2)), Y2);
    assert_eq!(matrices(&y)[0], Y2);
    assert_eq!(y.to_string(), "Y");
}

#[test]
fn xz_products_match_matrices() {
    let x = p("X");
    let z = p("Z");
    let xz_op = x.mul(&z);
    let zx_op = z.mul(&x);
    assert_eq!((xz_op.x_bits().get(0), xz_op.z_bits().get(0), xz_op.phase()), (true, true, 0));
    assert!(zx_op.same_bits(&xz_op));
    assert_eq!(zx_op.phase(), 2);
    assert_eq!(matrices(&zx_op)[0], mmul(&Z2, &X2));
}

#[test]
fn multiplication_matches_matrices_on_two_qubits() {
    for phase_a in 0..4u8 {
        for a in all_paulis(2) {
            let a = PauliOperator::from_bits(a.x_bits().clone(), a.z_bits().clone(), phase_a);
            for b in all_paulis(2) {
                let prod = a.mul(&b);
                let (ma, mb) = (matrices(&a), matrices(&b));
                let expect: Vec<M> = (0..2).map(|q| mmul(&ma[q], &mb[q])).collect();
                assert!(same_operator(&matrices(&prod), &expect), "{a} * {b} = {prod}");
            }
        }
    }
}

#[test]
fn color_rows_product_by_symbol_table() {
    let c = catalog("subsystem_color_code").unwrap();
    let s = c.s_group().generators();
    let prod = s[4].mul(&s[5]);
    let (a, b) = (s[4].to_string(), s[5].to_string());
    let mut expect = String::new();
    for (x, y) in a.chars().zip(b.chars()) {
        expect.push(match (x, y) {
            ('I', o) | (o, 'I') => o,
            (x, y) if x == y => 'I',
            _ => unreachable!("Z-type rows"),
        });
    }
    assert_eq!(prod.to_string(), expect);
    assert_eq!(prod.weight(), expect.chars().filter(|&c| c != 'I').count());
    assert_eq!(expect, "IZZIIZZIIZZIIZZ");
}

#[test]
fn dependent_third_generator() {
    let ops = vec![p("X"), p("Z"), p("Y")];
    assert_eq!(independent_generators(&ops).unwrap().len(), 2);
    let products = span(&ops[..2], 1);
    assert_eq!(products.len(), 4);
    assert!(products.contains(&p("Y").to_symplectic()));
}

#[test]
fn same_coset_representative_still_validates() {
    let c = catalog("six_qubit_example").unwrap();
    let s5 = c.s_group().generators()[4].clone();
    let mut t = c.transversal().to_vec();
    let t1 = t[1].clone();
    t[1] = s5.mul(&t1).hermitian();
    assert!(in_centralizer(&t1.mul(&t[1]), c.s_group()));
    let moved = c.with_transversal(t.clone()).unwrap();
    assert!(moved.validate().is_valid());
    t[2] = t[1].clone();
    assert!(!c.with_transversal(t).map(|c| c.validate().is_valid()).unwrap_or(false));
}

#[test]
fn logical_is_uncorrectable_against_identity() {
    let c = catalog("six_qubit_example").unwrap();
    let lx = c.logical_n()[0].clone();
    let lx_ext = c.logical_flat()[0].clone();
    assert!(commutes_with_all(&lx_ext, c.s_group().generators()));
    let mut sg = c.s_group().generators().to_vec();
    sg.extend(c.gauge_flat());
    assert!(!span(&sg, c.total_qubits()).contains(&lx_ext.to_symplectic()));
    let id = PauliOperator::identity(c.total_qubits());
    assert!(!oaqec_correctable(&c.extended(), &[id, lx_ext]).unwrap().correctable);

    let sub = CodeBuilder::new()
        .h(c.h_group().generators().to_vec())
        .gauge(c.gauge_n())
        .logical(c.logical_n())
        .build()
        .unwrap();
    let mut gauge_and_iso = sub.h_isotropic().to_vec();
    gauge_and_iso.extend(sub.gauge_n());
    assert!(commutes_with_all(&lx, sub.h_group().generators()));
    assert!(!span(&gauge_and_iso, 6).contains(&lx.to_symplectic()));
    let id = PauliOperator::identity(6);
    assert!(!eaoqec_correctable(&sub, &[id, lx]).unwrap().correctable);
}

#[test]
fn eacq_test_agrees_on_low_weight_singletons() {
    let c = catalog("canonical_eacq_small").unwrap();
    let rep = is_eacq_representable(&c).unwrap();
    let split = rep.split.unwrap();
    let id = PauliOperator::identity(5);
    let mut checked = 0;
    for e in all_paulis(5).filter(|e| e.weight() <= 2) {
        let set = [id.clone(), e];
        assert_eq!(
            eacq_correctable(&c, Some(&split), &set).unwrap().correctable,
            ea_correctable(&c, &set).unwrap().correctable,
            "{}",
            set[1]
        );
        checked += 1;
    }
    assert_eq!(checked, 1 + 15 + 90);
}

#[test]
fn quantum_subgroup_of_canonical_code_by_enumeration() {
    let c = catalog("canonical_eacq_small").unwrap();
    let t = c.transversal_n();
    let brute: HashSet<BitVec> = span(c.h_group().generators(), 5)
        .into_iter()
        .filter(|v| commutes_with_all(&PauliOperator::from_symplectic(v), &t))
        .collect();
    let sq = quantum_stabilizer_subgroup(&c).unwrap();
    assert_eq!(span(&sq, 5), brute);
    assert_eq!(brute, span(&[p("IZIII")], 5));

    let split = is_eacq_representable(&c).unwrap().split.unwrap();
    assert_eq!(span(&split.quantum, 5), brute);
    let mut all = split.quantum.clone();
    all.extend(split.classical.clone());
    assert_eq!(span(&all, 5), span(c.h_group().generators(), 5));
}

#[test]
fn missing_product_coset() {
    let c = catalog("six_qubit_example").unwrap();
    assert!(!coset_set_is_group(&c));
    let t = c.transversal();
    let syn: Vec<BitVec> = t.iter().map(|o| c.s_group().syndrome(o)).collect();
    let x3x4 = t[1].mul(&t[2]);
    let s = c.s_group().syndrome(&x3x4);
    assert!(syn.iter().all(|v| *v != s));
}

/// Minimum weight of `Z(S_Q)` outside the center of `S_Q`, by enumeration.
fn brute_sq_distance(code: &EaoaqecCode) -> Option<usize> {
    let n = code.n();
    let t = code.transversal_n();
    let sq_elems: Vec<PauliOperator> = span(code.h_group().generators(), n)
        .into_iter()
        .map(|v| PauliOperator::from_symplectic(&v))
        .filter(|o| commutes_with_all(o, &t))
        .collect();
    let center: HashSet<BitVec> =
        sq_elems.iter().filter(|o| commutes_with_all(o, &sq_elems)).map(|o| o.to_symplectic()).collect();
    all_paulis(n)
        .filter(|e| commutes_with_all(e, &sq_elems) && !center.contains(&e.to_symplectic()))
        .map(|e| e.weight())
        .min()
}

#[test]
fn sq_bound_by_enumeration() {
    for name in ["seven_qubit_non_eacq", "canonical_eacq_small"] {
        let c = catalog(name).unwrap();
        let b = sq_distance_bound_check(&c, None).unwrap();
        let dc = brute_dressed_distance(&c);
        let dq = brute_sq_distance(&c);
        assert_eq!(b.code_distance, dc, "{name}");
        assert_eq!(b.sq_distance, dq, "{name}");
        assert!(dc.unwrap() >= dq.unwrap(), "{name}");
        assert_eq!(b.holds, Some(true));
    }
}

#[test]
fn trivial_transversal_gives_equal_distances() {
    let c = catalog("seven_qubit_non_eacq").unwrap();
    let plain = CodeBuilder::new().h(c.h_group().generators().to_vec()).build().unwrap();
    let b = sq_distance_bound_check(&plain, None).unwrap();
    assert_eq!(b.code_distance, b.sq_distance);
}

#[test]
fn distances_match_enumeration() {
    for name in ["six_qubit_example", "seven_qubit_non_eacq", "canonical_eacq_small"] {
        let c = catalog(name).unwrap();
        let d = exact_distance(&c, DistanceMode::Dressed).unwrap();
        assert_eq!(d.distance, brute_dressed_distance(&c), "{name}");
    }
}

#[test]
fn weight_one_centralizer_blocks_clean_qubit() {
    let code = CodeBuilder::new().h(vec![p("ZZI"), p("IZZ")]).build().unwrap();
    let h = code.h_group().generators();
    let weight_one: Vec<PauliOperator> = Pauli1::NONTRIVIAL
        .iter()
        .map(|&s| PauliOperator::single(3, 0, s))
        .filter(|o| commutes_with_all(o, h))
        .collect();
    assert_eq!(weight_one, vec![p("ZII")]);
    match clean_qubits(&code, &[0], &Options::structural()) {
        Err(ConstructionError::DependentColumns { qubits, witness }) => {
            assert_eq!(qubits, vec![0]);
            assert!(witness.same_bits(&p("ZII")));
        }
        other => panic!("{other:?}"),
    }
}
