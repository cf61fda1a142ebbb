//! Built-in codes: the worked examples, stored as generator tables.

use crate::code::{CodeBuilder, CodeError, EaoaqecCode};
use crate::pauli::PauliOperator;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog code {0:?} (known: {known})", known = NAMES.join(", "))]
    Unknown(String),
    #[error("catalog code {name} is malformed: {source}")]
    Malformed { name: &'static str, source: CodeError },
}

pub const NAMES: &[&str] = &[
    "six_qubit_example",
    "subsystem_color_code",
    "color_code_hybrid_z",
    "color_code_hybrid_xz",
    "color_code_cq_input",
    "seven_qubit_non_eacq",
    "shortened_hamming_ea_subsystem",
    "canonical_eacq_small",
];

fn ops(rows: &[&str]) -> Vec<PauliOperator> {
    rows.iter()
        .map(|r| PauliOperator::parse(&r.replace('|', " "), None).expect("catalog row"))
        .collect()
}

const COLOR_S: [&str; 8] = [
    "XIXIXIXIXIXIXIX",
    "XXIIXXIIXXIIXXI",
    "IIIXXXXIIIIXXXX",
    "IIIIIIIXXXXXXXX",
    "ZIZIZIZIZIZIZIZ",
    "ZZIIZZIIZZIIZZI",
    "IIIZZZZIIIIZZZZ",
    "IIIIIIIZZZZZZZZ",
];

/// `G_X1, G_Z1, ..., G_X6, G_Z6`.
const COLOR_G: [&str; 12] = [
    "IIXIIIXIIIXIIIX",
    "IIIIIIIIIIIZZZZ",
    "IIIIIIIIIIIXXXX",
    "IIZIIIZIIIZIIIZ",
    "IIIIXIXIIIIIXIX",
    "IIIIIIIIIZZIIZZ",
    "IIIIIIIIIXXIIXX",
    "IIIIZIZIIIIIZIZ",
    "IIIIIXXIIIIIIXX",
    "IIIIIIIIZIZIZIZ",
    "IIIIIIIIXIXIXIX",
    "IIIIIZZIIIIIIZZ",
];

fn color_code(name: &str, t: &[&str]) -> Result<EaoaqecCode, CodeError> {
    CodeBuilder::new()
        .name(name)
        .num_qubits(15)
        .h(ops(&COLOR_S))
        .s(ops(&COLOR_S))
        .gauge(ops(&COLOR_G))
        .transversal(ops(t))
        .build()
}

fn six_qubit_example() -> Result<EaoaqecCode, CodeError> {
    CodeBuilder::new()
        .name("six_qubit_example")
        .num_qubits(6)
        .s(ops(&[
            "Z I I I I I | Z I",
            "X I I I I I | X I",
            "I Z I I I I | I Z",
            "I X I I I I | I X",
            "I I Z I I I | I I",
            "I I I Z I I | I I",
        ]))
        .gauge(ops(&["IIIIXI", "IIIIZI"]))
        .logical(ops(&["IIIIIX", "IIIIIZ"]))
        .transversal(ops(&["IIXIII", "IIIXII"]))
        .build()
}

fn seven_qubit_non_eacq() -> Result<EaoaqecCode, CodeError> {
    let t1 = PauliOperator::parse("ZIIZIIZ", None).expect("row");
    let t2 = PauliOperator::parse("XIXXIXI", None).expect("row");
    let t12 = crate::symplectic::herm_mul(&t1, &t2);
    CodeBuilder::new()
        .name("seven_qubit_non_eacq")
        .h(ops(&["ZZZZIXX", "IIYXYIZ", "IIXXXII"]))
        .transversal(vec![t1, t2, t12])
        .build()
}

/// The H order follows the generator table of the shortened Hamming
/// construction: `Z1, Z2, X1, X2` (symplectic) then `S7, S8, S4, S3`.
fn shortened_hamming() -> Result<EaoaqecCode, CodeError> {
    CodeBuilder::new()
        .name("shortened_hamming_ea_subsystem")
        .num_qubits(10)
        .s(ops(&[
            "Z I I Z Z I I Z Z I | Z I",
            "I Z I Z I Z I Z I Z | I Z",
            "X I I X X I I X X I | X I",
            "I X I X I X I X I X | I X",
            "I I I I I I X X X X | I I",
            "I I X X X X I I I I | I I",
            "I I I I I I Z Z Z Z | I I",
            "I I Z Z Z Z I I I I | I I",
        ]))
        .gauge(ops(&[
            "IXIIIIXIIX",
            "ZZZZIIIIII",
            "XIXIXIIIII",
            "IIIZZIIZZI",
            "IXIXXIIIII",
            "ZIZZIIIZZI",
        ]))
        .logical(ops(&["IXXIXIXXII", "IZZIZIZZII"]))
        .build()
}

fn canonical_eacq_small() -> Result<EaoaqecCode, CodeError> {
    let mut t = Vec::new();
    for mask in 1u32..8 {
        let mut o = PauliOperator::identity(5);
        if mask & 1 != 0 {
            o = o.mul(&PauliOperator::parse("XIIII", None).expect("row"));
        }
        if mask & 2 != 0 {
            o = o.mul(&PauliOperator::parse("IIZII", None).expect("row"));
        }
        if mask & 4 != 0 {
            o = o.mul(&PauliOperator::parse("IIXII", None).expect("row"));
        }
        t.push(o.hermitian());
    }
    CodeBuilder::new()
        .name("canonical_eacq_small")
        .h(ops(&["ZIIII", "IIZII", "IIXII", "IZIII"]))
        .transversal(t)
        .build()
}

pub fn catalog(name: &str) -> Result<EaoaqecCode, CatalogError> {
    let (key, built) = match name {
        "six_qubit_example" => ("six_qubit_example", six_qubit_example()),
        "subsystem_color_code" => ("subsystem_color_code", color_code(name, &[])),
        "color_code_hybrid_z" => ("color_code_hybrid_z", color_code(name, &["IIIIIIIIIIIIZZZ"])),
        "color_code_hybrid_xz" => (
            "color_code_hybrid_xz",
            color_code(name, &["IIIIXZIIIIIIIII", "IIIIIIIIXIZIIII"]),
        ),
        "color_code_cq_input" => (
            "color_code_cq_input",
            color_code(name, &["I I XZ Z Z I I I I I I I I I I", "I I X XZ XZ I I I I I I I I I I"]),
        ),
        "seven_qubit_non_eacq" => ("seven_qubit_non_eacq", seven_qubit_non_eacq()),
        "shortened_hamming_ea_subsystem" => ("shortened_hamming_ea_subsystem", shortened_hamming()),
        "canonical_eacq_small" => ("canonical_eacq_small", canonical_eacq_small()),
        other => return Err(CatalogError::Unknown(other.to_string())),
    };
    built.map_err(|source| CatalogError::Malformed { name: key, source })
}

/// Every catalog code, in `NAMES` order.
pub fn all() -> Vec<EaoaqecCode> {
    NAMES.iter().map(|n| catalog(n).expect("catalog entries build")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        for name in NAMES {
            let code = catalog(name).unwrap();
            let report = code.validate();
            assert!(report.is_valid(), "{name}: {:?}", report.failures());
        }
    }

    #[test]
    fn published_parameters() {
        let expect = [
            ("six_qubit_example", "[[6,1;1,2,3]]"),
            ("subsystem_color_code", "[[15,1;6,0,1]]"),
            ("color_code_hybrid_z", "[[15,1;6,0,2]]"),
            ("color_code_hybrid_xz", "[[15,1;6,0,3]]"),
            ("color_code_cq_input", "[[15,1;6,0,3]]"),
            ("seven_qubit_non_eacq", "[[7,5;0,1,4]]"),
            ("shortened_hamming_ea_subsystem", "[[10,1;3,2,1]]"),
            ("canonical_eacq_small", "[[5,2;0,1,8]]"),
        ];
        for (name, params) in expect {
            assert_eq!(catalog(name).unwrap().parameters().to_string(), params, "{name}");
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(catalog("nope"), Err(CatalogError::Unknown(_))));
    }
}
