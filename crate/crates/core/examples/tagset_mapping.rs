//! CATTEX to Morphalou categories, Morphalou flexions back to CATTEX codes,
//! and the canonical morph strings.

use classica::tagset::{cattex_to_morphalou, flexion_to_cattex, MappingTables, MorphBundle, PosTag};

fn main() {
    for tag in [PosTag::VerCjg, PosTag::ProOrd, PosTag::ProCom, PosTag::AdjCar, PosTag::NomPro] {
        match cattex_to_morphalou(tag) {
            Ok(c) => println!("{tag:<8} -> {c}"),
            Err(e) => println!("{tag:<8} -> {e}"),
        }
    }
    for value in ["present", "thirdPerson", "infinitive", "invariable", "1036442"] {
        println!("{value:<12} -> {}", flexion_to_cattex(value));
    }
    let tables = MappingTables::builtin();
    for analysis in [
        &["indicative", "present", "thirdPerson", "singular"][..],
        &["masculine", "feminine", "singular"],
        &["invariable"],
        &["1036442", "singular"],
    ] {
        let bundle = tables.bundle_from_flexions(analysis.iter().copied());
        println!("{analysis:?} -> {bundle}");
        assert_eq!(MorphBundle::parse(&bundle.serialize()).unwrap(), bundle);
    }
}
