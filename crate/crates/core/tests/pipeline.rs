use std::io::Write;

use d4_core::analytic::{ev_split_count, ingest_class_groups};
use d4_core::context::BiquadraticContext;
use d4_core::family::enumerate_context;
use d4_core::frobenius::scan_primes;
use d4_core::group::ConjugacyClass;
use d4_core::lseries::chebotarev_report;
use d4_core::Error;
use proptest::prelude::*;

#[test]
fn enumerate_scan_and_report() {
    let ctx = BiquadraticContext::new(2, 7).unwrap();
    let slice = enumerate_context(&ctx, 1e10).unwrap();
    assert_eq!(slice.members.len(), 43);
    for k in slice.members.iter().step_by(7) {
        let recs = scan_primes(k, 5e3).unwrap();
        let rep = chebotarev_report(k, 5e3).unwrap();
        let ids = recs.iter().filter(|r| r.class == Some(ConjugacyClass::Id)).count() as u64;
        assert_eq!(rep.counts[&ConjugacyClass::Id], ids);
        let ev = ev_split_count(k, 1, 0.16).unwrap();
        let brute = recs
            .iter()
            .filter(|r| r.p <= ev.cutoff && r.class == Some(ConjugacyClass::Id))
            .count() as u64;
        assert_eq!(ev.split_count, brute);
    }
}

#[test]
fn ingest_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "a,b,g,h,disc_exact,invariant_factors,provenance").unwrap();
    writeln!(f, "2,7,3,1,1792,2;6,\"hand, 2026\"").unwrap();
    writeln!(f, "2,7,15,5,44800,3,hand").unwrap();
    f.flush().unwrap();
    let r = ingest_class_groups(f.path(), 2).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert_eq!(r.rows[0].torsion, 4);
    assert_eq!(r.rows[0].provenance, "hand, 2026");
    assert_eq!(r.rows[1].field.m, Some(5));
    assert_eq!(r.target_exponent, "5/12");
    let missing = ingest_class_groups(&f.path().with_extension("absent"), 2);
    assert!(matches!(missing, Err(Error::Io(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ev_count_is_monotone(m in 1u64..2000, e1 in 0.01f64..0.16, e2 in 0.01f64..0.16) {
        let ctx = BiquadraticContext::new(2, 7).unwrap();
        let triple = d4_core::normcond::phi(&ctx).unwrap();
        let Ok(k) = d4_core::quartic::build_field(&ctx, &triple, m) else { return Ok(()) };
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let a = ev_split_count(&k, 1, lo).unwrap();
        let b = ev_split_count(&k, 1, hi).unwrap();
        prop_assert!(a.split_count <= b.split_count);
    }
}
