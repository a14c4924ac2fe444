use amlowl_core::caex::write_xml;
use amlowl_core::owl_expr::{nnf, print};
use amlowl_core::testkit::{gen_proper_class, gen_proper_document, GenConfig};
use amlowl_core::translator::{canonicalize, normalize, trans_b, trans_f};

#[test]
fn class_round_trip_on_generated_classes() {
    let mut failures = Vec::new();
    for seed in 0..1000 {
        let ce = gen_proper_class(&GenConfig::with_seed(seed));
        let outcome = trans_f(&ce)
            .and_then(|doc| trans_b(&doc))
            .and_then(|back| Ok((canonicalize(&back)?, canonicalize(&ce)?, back)));
        match outcome {
            Ok((a, b, _)) if a == b => {}
            Ok((_, _, back)) => {
                failures.push(format!("{seed}: {} -> {}", print(&ce), print(&back)))
            }
            Err(e) => failures.push(format!("{seed}: {} : {e}", print(&ce))),
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures:\n{}",
        failures.len(),
        failures[..failures.len().min(15)].join("\n")
    );
}

#[test]
fn document_round_trip_is_byte_exact() {
    let mut failures = Vec::new();
    for seed in 0..500 {
        let doc = gen_proper_document(&GenConfig::with_seed(seed));
        let expected = String::from_utf8(write_xml(&normalize(&doc)).unwrap()).unwrap();
        let got = trans_b(&doc)
            .and_then(|ce| Ok((trans_f(&ce)?, ce)))
            .map(|(d, ce)| (String::from_utf8(write_xml(&d).unwrap()).unwrap(), ce));
        match got {
            Ok((xml, _)) if xml == expected => {}
            Ok((xml, ce)) => failures.push(format!(
                "{seed}: {}\nexpected:\n{expected}\ngot:\n{xml}",
                print(&ce)
            )),
            Err(e) => failures.push(format!("{seed}: {e}\n{}", doc)),
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures:\n{}",
        failures.len(),
        failures[..failures.len().min(3)].join("\n")
    );
}

#[test]
fn generated_classes_are_in_nnf() {
    for seed in 0..200 {
        let ce = gen_proper_class(&GenConfig::with_seed(seed));
        assert_eq!(nnf(&ce).unwrap(), ce, "seed {seed}");
    }
}
