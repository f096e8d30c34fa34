from k3degen import verify


def test_sub_seeds_are_deterministic_and_distinct():
    assert verify.suite_seed(0, "field") == verify.suite_seed(0, "field")
    assert verify.suite_seed(0, "field") != verify.suite_seed(0, "lattice")
    assert verify.suite_seed(0, "field") != verify.suite_seed(1, "field")


def test_parallel_run_matches_serial_and_is_sorted():
    cfg = verify.VerifyConfig(p_list=[2, 3], sigma0_list=[1, 2], trials=5, seed=3)
    serial = verify.run(cfg, modules=["hodge", "degeneracy"])
    parallel = verify.run(cfg, modules=["hodge", "degeneracy"], jobs=2)
    assert [r.name for r in serial] == sorted(r.name for r in serial)
    assert [(r.name, r.checked, r.failures) for r in serial] == [(r.name, r.checked, r.failures) for r in parallel]
    assert all(r.passed for r in serial)


def test_failures_are_capped():
    res = verify.SuiteResult("x")
    for i in range(50):
        res.check(False, lambda i=i: f"bad {i}")
    assert res.checked == 50 and not res.passed
    assert len(res.failures) == 21 and res.failures[-1] == "..."
