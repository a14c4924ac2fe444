//! One line per acceptance criterion: `criterion N ... PASS|FAIL (time)`.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use amlowl_core::caex::{read_xml, write_xml, CaexElement, ElementKind};
use amlowl_core::concept_tree::{construct, construct_d, remove_inverse_property, NodeKind};
use amlowl_core::owl_expr::{check_proper, nnf, parse, print, ViolationKind};
use amlowl_core::testkit::{
    dnf_count, gen_class, gen_proper_class, gen_proper_document, gen_world, match_element,
    model_check, model_members, GenConfig,
};
use amlowl_core::translator::{canonicalize, normalize, trans_b, trans_f, TranslateError};

const CLASS_A: &str = "Robot and not (hasIE some (not IOController))";
const CLASS_B: &str = "isIEOf some (Robot and hasManufacturer value \"KUKA\")";
const CLASS_C: &str = "Robot and (hasIE some (IOController and (hasEI min 3 IOInterface)))";
const CLASS_D: &str = "IOInterface and (isEIOf some (hasEI min 3 IOInterface))";
const UNION_CLASS: &str = "Robot and (hasIE some (IOController or IODevice))";

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn window(e: &CaexElement) -> (u32, Option<u32>) {
    (e.concept.min_cardinality, e.concept.max_cardinality)
}

fn golden_corpus() {
    for (name, text) in [
        ("A", CLASS_A),
        ("B", CLASS_B),
        ("C", CLASS_C),
        ("D", CLASS_D),
    ] {
        let source = std::fs::read_to_string(golden(&format!("class{name}.owlx"))).unwrap();
        assert_eq!(parse(&source).unwrap(), parse(text).unwrap());
        let expected =
            read_xml(&std::fs::read(golden(&format!("class{name}.aml"))).unwrap()).unwrap();
        let got = trans_f(&parse(text).unwrap()).unwrap();
        assert_eq!(got.models, expected.models, "class {name}");
    }
    let a = &trans_f(&parse(CLASS_A).unwrap()).unwrap().models[0];
    assert!(a.concept.primary);
    let ctrl = &a.internal_elements[0];
    assert!(ctrl.concept.negated && window(ctrl) == (0, Some(0)));
    assert_eq!(ctrl.class_ref.as_ref().unwrap().path, "IOController");

    let b = &trans_f(&parse(CLASS_B).unwrap()).unwrap().models[0];
    assert!(!b.concept.primary && b.internal_elements[0].concept.primary);
    assert_eq!(b.attributes[0].required_value.as_deref(), Some("KUKA"));

    let c = &trans_f(&parse(CLASS_C).unwrap()).unwrap().models[0];
    let io = &c.internal_elements[0].external_interfaces[0];
    assert!(c.concept.primary && window(io) == (3, None));

    let d = &trans_f(&parse(CLASS_D).unwrap()).unwrap().models[0];
    assert!(!d.concept.primary && d.class_ref.is_none());
    let eis = &d.external_interfaces;
    assert!(eis[0].concept.primary && window(&eis[0]) == (1, None));
    assert!(!eis[1].concept.primary && window(&eis[1]) == (3, None));
    assert!(eis.iter().all(|e| e.kind == ElementKind::ExternalInterface));
}

fn nnf_check() {
    let a = nnf(&parse(CLASS_A).unwrap()).unwrap();
    assert_eq!(print(&a), "Robot and (hasIE only IOController)");
}

fn disjunction_multiplexing() {
    let forest = construct_d(&nnf(&parse(UNION_CLASS).unwrap()).unwrap()).unwrap();
    let roots: Vec<String> = forest.trees.iter().map(|t| print(&t.expr)).collect();
    assert_eq!(
        roots,
        [
            "Robot and (hasIE some IOController)",
            "Robot and (hasIE some IODevice)"
        ]
    );
    let mut split = 0;
    for seed in 0..500 {
        let cfg = GenConfig {
            max_depth: 4,
            allow_disjunction: true,
            ..GenConfig::with_seed(seed)
        };
        let ce = nnf(&gen_proper_class(&cfg)).unwrap();
        let forest = construct_d(&ce).unwrap();
        assert_eq!(
            forest.len() as u64,
            dnf_count(&ce),
            "seed {seed}: {}",
            print(&ce)
        );
        split += usize::from(forest.len() > 1);
    }
    assert!(split > 50, "only {split} classes had disjunctions");
}

fn inverse_elimination() {
    let tree = construct(&nnf(&parse(CLASS_D).unwrap()).unwrap()).unwrap();
    let lifted = remove_inverse_property(tree).unwrap();
    assert_eq!(lifted.kind, NodeKind::Intersection);
    assert_eq!(
        print(&lifted.expr),
        "(hasEI some IOInterface) and (hasEI min 3 IOInterface)"
    );
    assert!(lifted.children[0].primary);
    assert_eq!(print(&lifted.children[0].expr), "hasEI some IOInterface");
    assert!(!lifted.children[1].primary);
    assert_eq!(lifted.primary_count(), 1);

    let mut checked = 0;
    let mut seed = 0;
    while checked < 1000 {
        let ce = nnf(&gen_proper_class(&GenConfig::with_seed(seed))).unwrap();
        seed += 1;
        if !ce.contains_inverse() {
            continue;
        }
        for tree in construct_d(&ce).unwrap().trees {
            let lifted = remove_inverse_property(tree).unwrap();
            assert_eq!(
                lifted.primary_count(),
                1,
                "seed {}: {}",
                seed - 1,
                print(&ce)
            );
            assert!(!lifted.has_inverse());
        }
        checked += 1;
    }
}

fn round_trips() {
    for text in [CLASS_A, CLASS_B, CLASS_C, CLASS_D, UNION_CLASS] {
        let ce = parse(text).unwrap();
        let back = trans_b(&trans_f(&ce).unwrap()).unwrap();
        assert_eq!(
            canonicalize(&back).unwrap(),
            canonicalize(&ce).unwrap(),
            "{text}"
        );
    }
    for seed in 0..1000 {
        let ce = gen_proper_class(&GenConfig::with_seed(seed));
        let back = trans_b(&trans_f(&ce).unwrap()).unwrap();
        assert_eq!(
            canonicalize(&back).unwrap(),
            canonicalize(&ce).unwrap(),
            "seed {seed}: {} -> {}",
            print(&ce),
            print(&back)
        );
    }
    for seed in 0..500 {
        let doc = gen_proper_document(&GenConfig::with_seed(seed));
        let back = trans_f(&trans_b(&doc).unwrap()).unwrap();
        assert_eq!(
            write_xml(&back).unwrap(),
            write_xml(&normalize(&doc)).unwrap(),
            "seed {seed}"
        );
    }
}

fn properness_gate() {
    for (text, tag) in [
        ("hasIE some (isIEOf some Robot)", ViolationKind::C1),
        ("isIEOf min 3 Robot", ViolationKind::C2),
        ("hasEI some (isIEOf some Robot)", ViolationKind::C3),
        ("isIEOf some (isEIOf some Robot)", ViolationKind::C4),
    ] {
        match trans_f(&parse(text).unwrap()) {
            Err(TranslateError::ImproperClass(v)) => {
                assert_eq!(v[0].kind, tag, "{text}");
                assert_eq!(v[0].kind.tag(), format!("{tag:?}"));
            }
            other => panic!("{text}: {other:?}"),
        }
    }
    let v = check_proper(&parse("(not A1) and A2").unwrap());
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].kind, ViolationKind::MixedSignAtomicConjunction);
    assert!(
        v[0].message.contains("complement case (a)"),
        "{}",
        v[0].message
    );
    assert!(matches!(
        trans_f(&parse("(not A1) and A2").unwrap()),
        Err(TranslateError::ImproperClass(_))
    ));
}

fn semantics_oracle() {
    for seed in 0..200 {
        let ce = gen_class(&GenConfig::with_seed(seed));
        let world = gen_world(&GenConfig::with_seed(seed + 10_000));
        let normal = nnf(&ce).unwrap();
        assert_eq!(
            model_check(&ce, &world),
            model_check(&normal, &world),
            "seed {seed}: {}",
            print(&ce)
        );
    }
    for seed in 0..100 {
        let ce = gen_proper_class(&GenConfig::with_seed(seed));
        let world = gen_world(&GenConfig::with_seed(seed + 20_000));
        let doc = trans_f(&ce).unwrap();
        assert_eq!(
            model_members(&doc, &world),
            model_check(&ce, &world),
            "seed {seed}: {}",
            print(&ce)
        );
    }
    // The matcher on its own: class C against a robot with a controller
    // carrying three interfaces.
    let doc = trans_f(&parse(CLASS_C).unwrap()).unwrap();
    let mut world = amlowl_core::testkit::World::default();
    let robot = world.add(ElementKind::InternalElement, None);
    world.objects[robot].labels.insert("Robot".into());
    let ctrl = world.add(ElementKind::InternalElement, Some(robot));
    world.objects[ctrl].labels.insert("IOController".into());
    for i in 0..3 {
        let ei = world.add(ElementKind::ExternalInterface, Some(ctrl));
        world.objects[ei].labels.insert("IOInterface".into());
        assert_eq!(match_element(&doc.models[0], &world, robot, None), i == 2);
    }
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn(),
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            number: 1,
            name: "golden corpus",
            budget: Some(Duration::from_secs(1)),
            run: golden_corpus,
        },
        Criterion {
            number: 2,
            name: "NNF check",
            budget: None,
            run: nnf_check,
        },
        Criterion {
            number: 3,
            name: "disjunction multiplexing",
            budget: Some(Duration::from_secs(30)),
            run: disjunction_multiplexing,
        },
        Criterion {
            number: 4,
            name: "inverse elimination",
            budget: None,
            run: inverse_elimination,
        },
        Criterion {
            number: 5,
            name: "round-trip identities",
            budget: Some(Duration::from_secs(120)),
            run: round_trips,
        },
        Criterion {
            number: 6,
            name: "properness gate",
            budget: None,
            run: properness_gate,
        },
        Criterion {
            number: 7,
            name: "semantics oracle",
            budget: None,
            run: semantics_oracle,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let over = c.budget.is_some_and(|b| elapsed > b);
        let pass = outcome.is_ok() && !over;
        // Straight to the stream so the lines survive libtest's capture.
        let _ = writeln!(
            std::io::stderr(),
            "criterion {} {:<26} {} ({:.3}s{})",
            c.number,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if over { ", over budget" } else { "" }
        );
        if !pass {
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
