use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kronecker_core::ffpoly::BigPrimeField;
use kronecker_core::io::{DecodedRepresentation, Document, DocumentError, FieldDescriptor, FORMAT};
use kronecker_core::padic::{solve_modular, solve_over_rationals, SolveConfig};
use kronecker_core::slp::parse_system;
use kronecker_core::verify::{check_rational_exact, check_representation};

const SYSTEM: &str = "vars x, y;\nx^2 + y^2 - 5;\nx*y - 2;";

#[test]
fn rational_document_round_trip() {
    let program = parse_system(SYSTEM).unwrap();
    let sol = solve_over_rationals(&program, &SolveConfig { seed: 21, ..Default::default() }).unwrap();
    let doc = Document::from_rational(&program, &sol, true);
    assert_eq!(doc.format, FORMAT);
    assert_eq!(doc.field, FieldDescriptor::Rational);
    assert_eq!(doc.primitive_variable, 1);
    assert_eq!(doc.parametrizations.variables, vec![2]);
    assert!(doc.univariate.is_some());
    let json = doc.to_json();
    let back = Document::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    let DecodedRepresentation::Rational(rep) = back.representation().unwrap() else {
        panic!("expected a rational representation");
    };
    assert_eq!(rep, sol.rep);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(check_rational_exact(&program, &rep, &mut rng).passed());
}

#[test]
fn modular_document_round_trip() {
    let program = parse_system(SYSTEM).unwrap();
    let config = SolveConfig { prime: Some(BigUint::from(10007u32)), ..Default::default() };
    let sol = solve_modular(&program, &config).unwrap();
    let doc = Document::from_modular(&program, &sol, 0, false);
    assert_eq!(doc.mode, "modular");
    let back = Document::from_json(&doc.to_json()).unwrap();
    let DecodedRepresentation::Modular { prime, rep } = back.representation().unwrap() else {
        panic!("expected a modular representation");
    };
    assert_eq!(prime, BigUint::from(10007u32));
    assert!(check_representation(&program, &BigPrimeField::new(prime), &rep).passed());
}

#[test]
fn rejects_foreign_documents() {
    assert!(matches!(Document::from_json("{"), Err(DocumentError::Json(_))));
    let program = parse_system(SYSTEM).unwrap();
    let sol = solve_over_rationals(&program, &SolveConfig::default()).unwrap();
    let mut doc = Document::from_rational(&program, &sol, false);
    doc.format = "other/2".into();
    assert!(matches!(Document::from_json(&doc.to_json()), Err(DocumentError::Format(_))));
    let mut doc = Document::from_rational(&program, &sol, false);
    doc.lifting_point.clear();
    assert!(matches!(doc.representation(), Err(DocumentError::Malformed(_))));
}
