//! The committed fixture files must match what the library produces, byte for byte.

use std::path::PathBuf;

use persist_lift::io::fixtures::{builtin, expected_reports, FIXTURE_NAMES};
use persist_lift::io::{load_instance, save_instance};
use persist_lift::rng::DEFAULT_SEED;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(path: &PathBuf) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn instances_match_builtins() {
    for name in FIXTURE_NAMES {
        let path = fixtures_dir().join(format!("{name}.json"));
        assert_eq!(read(&path), builtin(name).unwrap().to_canonical_string(), "{name}");
    }
}

#[test]
fn expected_reports_match() {
    for name in FIXTURE_NAMES {
        let inst = load_instance(&fixtures_dir().join(format!("{name}.json"))).unwrap();
        let reports = expected_reports(&inst, DEFAULT_SEED).unwrap();
        let dir = fixtures_dir().join("expected").join(name);
        let mut on_disk: Vec<String> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        on_disk.sort();
        let mut produced: Vec<String> = reports.iter().map(|(f, _)| f.clone()).collect();
        produced.sort();
        assert_eq!(on_disk, produced, "{name}: report set");
        for (file, text) in reports {
            assert_eq!(read(&dir.join(&file)), text, "{name}/{file}");
        }
    }
}

#[test]
fn load_then_save_is_identity() {
    let tmp = std::env::temp_dir().join(format!("persist-lift-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    for name in FIXTURE_NAMES {
        let path = fixtures_dir().join(format!("{name}.json"));
        let out = tmp.join(format!("{name}.json"));
        save_instance(&load_instance(&path).unwrap(), &out).unwrap();
        assert_eq!(read(&out), read(&path), "{name}");
    }
    std::fs::remove_dir_all(&tmp).unwrap();
}
