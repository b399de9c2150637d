//! Loading from a directory. Kept to one test because it sets a process
//! environment variable.

use duval_fixtures::{
    fixture_ids, fixture_source, replay, replay_all, FixtureError, FIXTURE_DIR_ENV,
};

#[test]
fn directory_replaces_the_builtin_set() {
    let builtin = replay_all().unwrap();
    assert!(builtin.iter().all(|r| r.passed()));
    let again: Vec<String> = replay_all()
        .unwrap()
        .iter()
        .map(|r| r.to_string())
        .collect();
    let first: Vec<String> = builtin.iter().map(|r| r.to_string()).collect();
    assert_eq!(first, again, "reruns must be identical");
    let copied = fixture_source("ex2.1").unwrap();

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ex2.1.fix"), &copied).unwrap();
    std::fs::write(
        dir.path().join("broken.fix"),
        "id: broken\nvars: x y\nequation: x*y\npipeline:\n  A = blowup equation center=x,y chart=x\nexpect:\n  A.strict = x  @computed\n",
    )
    .unwrap();
    std::fs::write(dir.path().join("renamed.fix"), "id: other\nvars: x\n").unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    std::env::set_var(FIXTURE_DIR_ENV, dir.path());

    assert_eq!(fixture_ids().unwrap(), ["broken", "ex2.1", "renamed"]);
    assert!(replay("ex2.1").unwrap().passed());
    let broken = replay("broken").unwrap();
    assert!(!broken.passed());
    assert!(
        broken.to_string().starts_with("FAIL broken: line 7"),
        "{broken}"
    );
    assert!(matches!(
        replay("renamed"),
        Err(FixtureError::IdMismatch { .. })
    ));
    assert!(matches!(replay("ex2.16"), Err(FixtureError::Unknown(_))));

    std::env::remove_var(FIXTURE_DIR_ENV);
    assert_eq!(replay("ex2.16").unwrap().to_string(), first[8]);
}
