use nearkahler::fiber::{verify_fiber_identities, FiberForm, SU3Structure};
use nearkahler::linalg::{q, Q};
use nearkahler::report::VerificationCertificate;
use nearkahler::report::Section;
use nearkahler::spectra::{BlockCache, SpectraConfig, SpectralBundle, SpectralEngine};

/// ψ⁺ with the sign of the e125 term flipped.
fn corrupted() -> SU3Structure {
    let s = SU3Structure::standard();
    let terms: [(&[usize], Q); 4] = [
        (&[0, 2, 4], q(1)),
        (&[0, 3, 5], q(-1)),
        (&[1, 2, 5], q(1)),
        (&[1, 3, 4], q(-1)),
    ];
    SU3Structure::new(s.j().clone(), FiberForm::from_terms(3, &terms))
}

#[test]
fn flipped_sign_is_pinpointed() {
    let cert = VerificationCertificate::new(vec![Section::Fiber], verify_fiber_identities(&corrupted()).unwrap());
    assert!(!cert.passed);
    let first = cert.failures().next().unwrap();
    assert_eq!(first.id, "a_sum_wedge");
    // |A_X|² is blind to the sign; the ψ⁺ identity names the first bad vector
    assert!(cert.find("a_sum_squares").unwrap().passed());
    let psi = cert.find("a_star_psi_plus").unwrap();
    assert!(!psi.passed());
    assert_eq!(psi.witness.as_deref(), Some("X = e0"));
    let text = cert.to_text();
    assert!(text.contains("FAIL  a_star_psi_plus"));
    assert!(text.contains("witness: X = e0"));
    // the pristine structure passes the same suite
    assert!(verify_fiber_identities(&SU3Structure::standard()).unwrap().iter().all(|c| c.passed()));
}

#[test]
fn corrupted_cache_entry_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cutoff = q(13);
    let e1 = SpectralEngine::new(SpectraConfig::default(), Some(dir.path().to_path_buf())).unwrap();
    let before = e1.spectrum(SpectralBundle::Lambda2, cutoff).unwrap().to_json();
    assert_eq!(e1.cache_stats().built, 7);

    let cache = BlockCache::new(dir.path()).unwrap();
    let l = nearkahler::spectra::IrrepLabel::new([0, 1, 1]);
    std::fs::write(cache.path(l), "{\"schema\": 1}").unwrap();

    let e2 = SpectralEngine::new(SpectraConfig::default(), Some(dir.path().to_path_buf())).unwrap();
    let after = e2.spectrum(SpectralBundle::Lambda2, cutoff).unwrap().to_json();
    let s = e2.cache_stats();
    assert_eq!((s.hits, s.rejected, s.built), (6, 1, 1));
    assert_eq!(before, after);
}
