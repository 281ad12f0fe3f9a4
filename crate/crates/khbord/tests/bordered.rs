use std::collections::BTreeSet;

use khbord::algebra::ChainComplex;
use khbord::bordered::{box_a_d, box_a_da, box_da_d, box_da_da, BoxOptions, ModuleDefinition};
use khbord::paperdata::catalog::TRANSCRIPTIONS;
use khbord::paperdata::{default_max_arity, run_all, Built, Catalog};

const BIMODULES: &[&str] = &["id_bimodule", "az", "azbar"];
const D_MODULES: &[&str] = &["cfd_dblbar_infty", "cfd_infty", "cfd_zero", "cfd_minus1"];
const A_MODULES: &[&str] = &["cfa_K", "cfa_U"];

fn arrows(c: &ChainComplex) -> BTreeSet<(String, String)> {
    c.differential().entries().map(|(x, y)| (c.names()[x].clone(), c.names()[y].clone())).collect()
}

#[test]
fn box_products_associate() {
    let cat = Catalog::builtin();
    let opts = BoxOptions::default();
    for p in BIMODULES {
        for r in BIMODULES {
            let (pm, rm) = (cat.type_da(p).unwrap(), cat.type_da(r).unwrap());
            let pr = box_da_da(&pm, &rm, opts).unwrap();
            for n in D_MODULES {
                let nm = cat.type_d(n).unwrap();
                let left = box_da_d(&pr, &nm, opts).unwrap();
                let right = box_da_d(&pm, &box_da_d(&rm, &nm, opts).unwrap(), opts).unwrap();
                assert_eq!(left.to_definition("x"), right.to_definition("x"), "({p}*{r})*{n}");
                assert!(left.check_structure().is_empty(), "{p}*{r}*{n}");
            }
        }
    }
    for m in A_MODULES {
        for p in BIMODULES {
            for n in D_MODULES {
                let (mm, pm, nm) = (cat.type_a(m).unwrap(), cat.type_da(p).unwrap(), cat.type_d(n).unwrap());
                let left = box_a_d(&box_a_da(&mm, &pm, opts).unwrap(), &nm, opts).unwrap();
                let right = box_a_d(&mm, &box_da_d(&pm, &nm, opts).unwrap(), opts).unwrap();
                let names = |c: &ChainComplex| c.names().iter().cloned().collect::<BTreeSet<_>>();
                assert_eq!(names(&left), names(&right), "{m}*{p}*{n}");
                assert_eq!(arrows(&left), arrows(&right), "{m}*{p}*{n}");
                assert_eq!(left.homology_dim(), right.homology_dim());
            }
        }
    }
}

#[test]
fn identity_bimodule_is_a_unit() {
    let cat = Catalog::builtin();
    for n in D_MODULES {
        let boxed = cat.type_d(&format!("id_bimodule*{n}")).unwrap();
        let plain = cat.type_d(n).unwrap();
        assert_eq!(boxed.len(), plain.len());
        let strip = |d: ModuleDefinition| {
            let mut d = serde_json::to_value(d).unwrap();
            let s = d.to_string();
            d = serde_json::from_str(&s.replace("i0|", "").replace("i1|", "")).unwrap();
            d
        };
        assert_eq!(strip(boxed.to_definition("x")), strip(plain.to_definition("x")), "{n}");
    }
}

#[test]
fn definitions_round_trip_through_json() {
    let cat = Catalog::builtin();
    for name in cat.module_names() {
        if TRANSCRIPTIONS.contains(&name) {
            continue;
        }
        let (built, _) = cat.load(name).unwrap();
        let def = built.to_definition(name);
        let again = ModuleDefinition::from_json(&def.to_json()).unwrap();
        let rebuilt = match built {
            Built::D(_) => Built::D(again.to_type_d(cat.algebra()).unwrap()),
            Built::A(_) => Built::A(again.to_type_a(cat.algebra()).unwrap()),
            Built::DA(_) => Built::DA(again.to_type_da(cat.algebra()).unwrap()),
        };
        assert_eq!(rebuilt.to_definition(name), def, "{name}");
    }
}

fn failed_checks(cat: &Catalog) -> Vec<String> {
    run_all(cat, default_max_arity()).unwrap().into_iter().filter(|r| !r.passed()).map(|r| r.check).collect()
}

#[test]
fn pristine_catalog_passes() {
    assert!(failed_checks(&Catalog::builtin()).is_empty());
}

#[test]
fn dropping_a_completion_row_fails_omega_only() {
    let mut cat = Catalog::builtin();
    cat.morphism_definition_mut("omega_arity4").unwrap().terms.pop();
    assert_eq!(failed_checks(&cat), ["omega"]);
}

#[test]
fn damaged_pairing_transcription_fails() {
    let mut cat = Catalog::builtin();
    let def = cat.module_definition_mut("azbar_box_az").unwrap();
    let i = def.ops.iter().position(|o| o.arity == 1 && o.in_gen == "r12*|r24").unwrap();
    def.ops.remove(i);
    assert!(failed_checks(&cat).contains(&"az-pairing".to_string()));
}

#[test]
fn damaged_psi_fails_its_case() {
    let mut cat = Catalog::builtin();
    cat.morphism_definition_mut("psi_U").unwrap().terms.remove(0);
    let failed = failed_checks(&cat);
    assert!(failed.contains(&"gprime-U".to_string()), "{failed:?}");
    assert!(!failed.contains(&"gprime-K".to_string()));
}

#[test]
fn damaged_map_g_fails_both_cases() {
    let mut cat = Catalog::builtin();
    cat.morphism_definition_mut("map_G").unwrap().terms.clear();
    let failed = failed_checks(&cat);
    assert!(failed.contains(&"gprime-U".to_string()), "{failed:?}");
}

#[test]
fn damaged_solid_torus_fails_catalog() {
    let mut cat = Catalog::builtin();
    let def = cat.module_definition_mut("cfd_minus1").unwrap();
    def.ops.pop();
    assert!(failed_checks(&cat).contains(&"catalog".to_string()));
}
