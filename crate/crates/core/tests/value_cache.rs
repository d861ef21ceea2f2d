//! The on-disk value cache: `t,k,twoS` records, additive and idempotent.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};

use mtsym::{Error, SymbolEngine};

#[test]
fn cache_file_round_trip() {
    let source = SymbolEngine::build().unwrap();
    for t in [2, 4, 8, 16, 32, 217] {
        for k in 1..t {
            let _ = source.twice_s(k, t);
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.csv");
    source
        .save_cache(BufWriter::new(File::create(&path).unwrap()))
        .unwrap();

    let target = SymbolEngine::build().unwrap();
    let added = target
        .load_cache(BufReader::new(File::open(&path).unwrap()))
        .unwrap();
    assert_eq!(added, source.cache_len());
    assert_eq!(target.cache_entries(), source.cache_entries());
    // Loading again adds nothing.
    let again = target
        .load_cache(BufReader::new(File::open(&path).unwrap()))
        .unwrap();
    assert_eq!(again, 0);
    assert_eq!(
        target.s_value(11, 32).unwrap(),
        source.s_value(11, 32).unwrap()
    );
}

#[test]
fn malformed_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let mut f = File::create(&path).unwrap();
    writeln!(f, "32,11,-2").unwrap();
    writeln!(f, "32,eleven,-2").unwrap();
    drop(f);
    let engine = SymbolEngine::build().unwrap();
    let err = engine
        .load_cache(BufReader::new(File::open(&path).unwrap()))
        .unwrap_err();
    assert!(matches!(err, Error::CacheFormat { line: 2, .. }), "{err}");
}

#[test]
fn wrong_cached_value_is_rejected() {
    let engine = SymbolEngine::build().unwrap();
    let _ = engine.twice_s(11, 32).unwrap();
    let err = engine.load_cache("32,11,5\n".as_bytes()).unwrap_err();
    assert!(matches!(err, Error::CacheFormat { .. }), "{err}");
}
