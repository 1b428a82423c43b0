//! Replays the fuzz seed corpora through the parsers on stable.

use std::fs;
use std::path::PathBuf;

use denniston::arcs::ArcDocument;
use denniston::funcode::{GeneratorMatrix, MonomialSpace};
use denniston::gf::{parse_hex, FieldContext, FieldSpec};

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .collect();
    assert!(!out.is_empty());
    out.sort();
    out
}

#[test]
fn field_spec_seeds() {
    let mut built = 0;
    for data in corpus("field_spec") {
        let text = String::from_utf8(data).unwrap();
        let mut lines = text.lines();
        let head = lines.next().unwrap();
        let spec = serde_json::from_str::<FieldSpec>(head).ok().or_else(|| {
            let (m, modulus) = head.split_once(' ')?;
            Some(FieldSpec::new(
                m.trim().parse().ok()?,
                parse_hex(modulus).ok()?,
            ))
        });
        let Some(Ok(f)) = spec.map(FieldContext::new) else {
            continue;
        };
        built += 1;
        for line in lines {
            let e = f.parse_elem(line).unwrap();
            assert_eq!(f.parse_elem(&e.to_string()).unwrap(), e);
        }
    }
    assert_eq!(built, 3);
}

#[test]
fn arc_document_seeds() {
    let mut ok = 0;
    for data in corpus("arc_document") {
        let text = String::from_utf8(data).unwrap();
        if let Ok(arc) = ArcDocument::from_json(&text).and_then(|d| d.into_arc()) {
            assert_eq!(arc.len(), arc.expected_len());
            ok += 1;
        }
    }
    assert_eq!(ok, 3);
}

#[test]
fn generator_text_seeds() {
    let mut ok = 0;
    for data in corpus("generator_text") {
        let (&m, rest) = data.split_first().unwrap();
        let f = FieldContext::with_degree(1 + (m as u32) % 8).unwrap();
        if let Ok(g) = GeneratorMatrix::from_text(&f, std::str::from_utf8(rest).unwrap()) {
            let back = GeneratorMatrix::from_text(&f, &g.to_text()).unwrap();
            assert_eq!(back.rows(), g.rows());
            ok += 1;
        }
    }
    assert_eq!(ok, 2);
}

#[test]
fn monomial_space_seeds() {
    let parsed: Vec<bool> = corpus("monomial_space")
        .into_iter()
        .map(|d| {
            String::from_utf8(d)
                .unwrap()
                .parse::<MonomialSpace>()
                .is_ok()
        })
        .collect();
    assert_eq!(parsed.iter().filter(|&&p| p).count(), 5);
}
