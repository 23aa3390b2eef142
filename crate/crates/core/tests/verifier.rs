mod common;

use std::sync::OnceLock;

use ebsd::exact_arith::rat;
use ebsd::s3_algebra::{CentralVector, Character, Verdict};
use ebsd::verifier::*;
use ebsd::Error;

fn config() -> VerificationConfig {
    VerificationConfig { assume_sha_trivial: true, ..VerificationConfig::with_data_dir(&common::data("")) }
}

fn verifier() -> &'static Verifier {
    static V: OnceLock<Verifier> = OnceLock::new();
    V.get_or_init(|| Verifier::new(config()).unwrap())
}

fn torsion() -> &'static Torsion {
    static T: OnceLock<Torsion> = OnceLock::new();
    T.get_or_init(|| verifier().torsion().unwrap())
}

fn assembly(l: u64) -> XiAssembly {
    assemble_xi(&verifier().inputs(torsion()), l).unwrap()
}

fn factor<'a>(xi: &'a XiAssembly, name: &str) -> &'a XiFactor {
    xi.factors.iter().find(|f| f.name == name).unwrap_or_else(|| panic!("no factor {} at l = {}", name, xi.l))
}

fn target() -> CentralVector {
    CentralVector::new(rat(1, 5), rat(5, 1), rat(25, 1))
}

#[test]
fn residue_field_classes() {
    let k = &verifier().field;
    for l in [2u64, 5, 7, 13, 31] {
        let li = l as i64;
        assert_eq!(epsilon_residue_fields(k, l).unwrap().value, CentralVector::from_ints(li, li, li * li));
    }
    assert_eq!(epsilon_residue_fields(k, 229).unwrap().value, CentralVector::from_ints(229, 1, 229));
}

#[test]
fn factors_at_five() {
    let xi = assembly(5);
    assert_eq!(factor(&xi, "residue_fields").epsilon, CentralVector::from_ints(5, 5, 25));
    assert_eq!(factor(&xi, "torsion").epsilon, CentralVector::from_ints(25, 1, 1));
    assert_eq!(factor(&xi, "phi_l").epsilon, CentralVector::from_ints(5, 5, 1));
    assert_eq!(factor(&xi, "components_11").epsilon, CentralVector::from_ints(5, 5, 25));
    let inputs = verifier().inputs(torsion());
    assert_eq!(component_term_extended(&inputs, 5, 11).unwrap(), CentralVector::from_ints(25, 25, 25));
    assert_eq!(xi.valuations, [1, -1, -2]);
}

#[test]
fn factors_at_three_and_two() {
    let xi3 = assembly(3);
    assert!(factor(&xi3, "phi_l").epsilon.is_one());
    assert!(factor(&xi3, "local_finite_11").epsilon.is_one());
    assert!(factor(&xi3, "local_finite_229").epsilon.is_one());

    let xi2 = assembly(2);
    assert_eq!(factor(&xi2, "residue_fields").epsilon, CentralVector::from_ints(2, 2, 4));
    for q in [2, 11, 229] {
        factor(&xi2, &format!("local_l_{}", q));
    }
    assert!(xi2.factors.iter().all(|f| f.name != "local_l_3"));
}

#[test]
fn every_verdict_passes() {
    let verdicts = verifier().verdicts(torsion(), &target()).unwrap();
    assert_eq!(verdicts.len(), 26);
    for v in &verdicts {
        assert!(v.verdict.passed(), "l = {}: {}", v.l, v.verdict);
        assert!(v.twist_invariant, "l = {}", v.l);
        assert!(v.xi.double_entry.holds, "l = {}: {:?}", v.l, v.xi.double_entry);
        if v.l > 5 {
            assert_eq!(v.beta_valuations, [0, 0, 0], "l = {}", v.l);
            assert_eq!(v.verdict, Verdict::Pass);
        }
    }
    let at = |l: u64| verdicts.iter().find(|v| v.l == l).unwrap();
    assert_eq!(at(3).verdict, Verdict::PassViaTorsionUnit("r".into()));
    assert_eq!(at(5).verdict, Verdict::Pass);
    assert!(!at(2).odd);
}

#[test]
fn missing_unit_is_inconclusive() {
    let inputs = verifier().inputs(torsion());
    let off = CentralVector::new(rat(1, 1), rat(5, 1), rat(25, 1));
    let v = verifier().verdict(&inputs, 5, &off).unwrap();
    assert!(matches!(v.verdict, Verdict::Inconclusive(_)));
}

#[test]
fn configuration_errors() {
    let low = VerificationConfig { precision: 20, ..config() };
    assert!(matches!(Verifier::new(low), Err(Error::Config(_))));
    let tol = VerificationConfig { tolerance: 2.0, ..config() };
    assert!(matches!(Verifier::new(tol), Err(Error::Config(_))));
    let composite = VerificationConfig { include_l: vec![91], ..config() };
    assert!(matches!(Verifier::new(composite), Err(Error::Config(_))));
    let no_sha = VerificationConfig { assume_sha_trivial: false, ..config() };
    let v = Verifier::new(no_sha).unwrap();
    assert!(matches!(v.run(), Err(Error::Config(_))));
    let inputs = XiInputs { assume_sha_trivial: false, ..verifier().inputs(torsion()) };
    assert!(matches!(assemble_xi(&inputs, 7), Err(Error::Config(_))));
    assert!(Verifier::new(VerificationConfig { field_path: common::data("missing.cfg"), ..config() }).is_err());
    assert_eq!(config().psi_digits(), 12);
}

#[test]
fn table1_cells() {
    let t = verifier().table1().unwrap();
    assert_eq!(t.cells.len(), 15);
    assert_eq!(t.exact_matches, 14);
    assert!(t.passed);
    let c = t.cell(11, Character::Psi).unwrap();
    assert_eq!((c.computed.as_str(), c.reference.as_str()), ("133/121", "17689/14641"));
    assert!(!c.matches && c.flag.is_some());
    assert_eq!(t.cell(5, Character::Psi).unwrap().computed, "28/25");
    assert_eq!(t.cell(229, Character::Chi0).unwrap().computed, "215/229");
    assert_eq!(t.cell(2, Character::Chi).unwrap().computed, "1/2");
}

#[test]
fn full_report() {
    let r = verifier().run().unwrap();
    assert_eq!(r.exit_code(), 0);
    assert!(r.summary.all_passed);
    let json = r.to_json().unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in [
        "tool", "version", "config", "curve", "field", "summary", "hypotheses", "torsion", "table1", "resolvents",
        "lvalues", "rationality", "verdicts", "discrepancy_flags",
    ] {
        assert!(value.get(key).is_some(), "missing {}", key);
    }
    assert!(value.get("timings").is_none());
    assert_eq!(value["verdicts"].as_array().unwrap().len(), 26);
    assert_eq!(value["config"]["precision"], 60);
    let components = value["rationality"]["components"].as_array().unwrap();
    let values: Vec<&str> = components.iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1/5", "5", "25"]);

    let md = r.to_markdown();
    assert!(md.contains("## Table 1"));
    assert!(md.contains("| 11 | psi | 133/121 | 17689/14641 | flagged"));
    assert!(md.contains("## Verdicts"));
    assert!(md.contains("| 3 | PASS_VIA_TORSION_UNIT(r) |"));
    assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
    assert!("xml".parse::<Format>().is_err());
}
