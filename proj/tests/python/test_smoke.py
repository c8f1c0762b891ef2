import math

import pytest

import minkflow as mf


def test_exceptions_are_exported():
    for exc in (mf.ConvexityError, mf.ClosingConditionError, mf.ConfigError):
        assert issubclass(exc, Exception)


def test_ball_area_euclidean():
    fam = mf.PlaneFamily.fixed(mf.GaugeProfile(1.0))
    g = fam.sample(mf.AngleGrid(64), 0.0)
    assert mf.ball_area(g) == pytest.approx(math.pi, rel=1e-12)


def test_convexity_guard():
    fam = mf.PlaneFamily.fixed(mf.GaugeProfile(1.0, [(2, 0.6, 0.0)]))
    with pytest.raises(mf.ConvexityError):
        g = fam.sample(mf.AngleGrid(64), 0.0)
        mf.unit_ball_boundary(g)


def test_median_and_extinction_bound():
    # max over cyclic windows of n/2 + 1 samples of the window minimum;
    # here the best window is [8, 7, 6, 3, 4]
    assert mf.median_curvature([5.0, 1.0, 2.0, 8.0, 7.0, 6.0, 3.0, 4.0]) == 3.0
    assert mf.extinction_bound(2.0 * math.pi, math.pi / 2.0) == pytest.approx(2.0)


def test_evolve_circle_to_t_max():
    n = 64
    fam = mf.PlaneFamily.homothetic(mf.GaugeProfile(1.0), mf.FSpec.constant())
    state = mf.CurvatureState(mf.AngleGrid(n), [1.0] * n)
    cfg = mf.SolverConfig()
    cfg.n = n
    cfg.t_max = 0.2
    trace = mf.evolve(state, fam, cfg)
    assert trace.reason == "t_max"
    assert trace.t_final == 0.2
    want = 1.0 / math.sqrt(1.0 - 2.0 * 0.2)
    last = trace.records[-1]
    assert last.k_min == pytest.approx(want, rel=1e-8)
    assert last.k_max == pytest.approx(want, rel=1e-8)

    reports = mf.run_all_checks(trace, fam)
    assert [r.name for r in reports] == [
        "qlength_evolution",
        "gronwall",
        "entropy_identity",
        "entropy_lower_bound",
        "median_bound",
        "area_law",
        "isoperimetric_evolution",
    ]
    assert all(r.passed for r in reports), [(r.name, r.detail) for r in reports]


def test_initial_from_support_and_reconstruct():
    fam = mf.PlaneFamily.homothetic(
        mf.GaugeProfile(1.0, [(2, 0.3, 0.0)]), mf.FSpec.constant()
    )
    s = mf.initial_from_support(mf.FourierSeries(1.0), fam, 64)
    g = fam.sample(mf.AngleGrid(64), 0.0)
    assert s.k == pytest.approx(g.conv)
    snap = mf.reconstruct(s, fam)
    assert snap.closed
    assert mf.curve_area(snap) > 0.0
    assert len(snap.points) == 64
    assert snap.lambda_ == pytest.approx(g.a)  # lambda = a*conv/k = a when k = conv


def test_blowup_study_unit_disk():
    cfg = mf.SolverConfig()
    cfg.n = 64
    fs = [mf.FSpec.constant(), mf.FSpec.exponential(1.0)]
    report = mf.blowup_study(mf.GaugeProfile(1.0), mf.FourierSeries(1.0), fs, cfg)
    assert report.passed
    assert report.bound_t == pytest.approx(0.5, rel=1e-10)
    assert [row.f_desc for row in report.rows] == ["constant", "exponential:1"]
    assert report.rows[0].t_terminal == pytest.approx(0.5, rel=1e-4)
    assert report.rows[1].t_terminal == pytest.approx(math.log(2.0) / 2.0, rel=1e-4)
