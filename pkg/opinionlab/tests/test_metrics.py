from .. import metrics
from ..graph import weightedgraph


def _random_instance(n, seed, density=0.5, wmax=3.):
    import numpy as np
    rng = np.random.default_rng(seed)
    w = rng.uniform(0, wmax, size=(n, n)) * (rng.random((n, n)) < density)
    w = np.triu(w, 1)
    s = rng.uniform(-1, 1, n)
    return weightedgraph(w + w.T), s


def test_polarization():
    import numpy as np
    assert (metrics.polarization([1, -1]) == 2)
    assert (metrics.polarization([0.3, 0.3, 0.3]) == 0)
    assert (np.isclose(metrics.polarization([1, 0, -1]), 2))
    assert (metrics.polarization([1] * 5 + [-1] * 5) == 10)


def test_polarization_translation_invariant():
    # dyadic values keep every operation exact
    z = [0.5, -0.25, 1.0, -0.75]
    shifted = [v + 2.0 for v in z]
    assert (metrics.polarization(z) == metrics.polarization(shifted))


def test_local_disagreement():
    import pytest
    g = weightedgraph([[0, 3, 0], [3, 0, 0], [0, 0, 0]])
    z = [1, -1, 0.5]
    assert (metrics.local_disagreement(g, z, 0) == 12)
    assert (metrics.local_disagreement(g, z, 2) == 0)
    for i in range(3):
        assert (metrics.local_disagreement(g, [0.2] * 3, i) == 0)
    with pytest.raises(IndexError):
        metrics.local_disagreement(g, z, 3)
    with pytest.raises(IndexError):
        metrics.local_disagreement(g, z, -1)


def test_global_disagreement():
    import numpy as np
    g = weightedgraph([[0, 3], [3, 0]])
    assert (np.isclose(metrics.global_disagreement(g, [1, -1]), 12))
    assert (metrics.global_disagreement(g, [0.4, 0.4]) == 0)
    gr, z = _random_instance(7, 3)
    total = sum(metrics.local_disagreement(gr, z, i) for i in range(7)) / 2
    assert (abs(total - metrics.global_disagreement(gr, z)) <= 1e-12)
    zc = z - z.mean()
    dc = metrics.global_disagreement(gr, zc)
    assert (abs(dc - metrics.global_disagreement(gr, z)) <= 1e-12)


def test_internal_conflict():
    import numpy as np
    import pytest
    s = np.array([0.1, -0.3])
    assert (metrics.internal_conflict(s, s) == 0)
    assert (metrics.internal_conflict([0, 0], [1, -1]) == 2)
    rng = np.random.default_rng(4)
    z, s = rng.uniform(-1, 1, 9), rng.uniform(-1, 1, 9)
    total = sum(metrics.local_internal_conflict(z, s, i) for i in range(9))
    assert (abs(total - metrics.internal_conflict(z, s)) <= 1e-12)
    with pytest.raises(ValueError):
        metrics.internal_conflict([0, 0], [1, -1, 0])
    with pytest.raises(IndexError):
        metrics.local_internal_conflict(z, s, 9)


def test_conservation_check_closed_forms():
    import numpy as np
    s = np.array([0.5, -0.1, 0.8, 0.2])
    rep = metrics.conservation_check(weightedgraph.empty(4), s)
    sc = s - s.mean()
    assert (rep.conservation_residual == 0)
    assert (rep.global_disagreement == 0)
    assert (rep.global_internal_conflict == 0)
    assert (np.isclose(rep.polarization, sc @ sc))

    g = weightedgraph([[0, 1], [1, 0]])
    rep = metrics.conservation_check(g, [1, -1])
    assert (np.isclose(rep.polarization, 2 / 9))
    assert (np.isclose(rep.global_disagreement, 4 / 9))
    assert (np.isclose(rep.global_internal_conflict, 8 / 9))
    assert (abs(rep.conservation_residual) <= 1e-12)
    assert (abs(rep.mean_opinion) <= 1e-15)


def test_conservation_law():
    import numpy as np
    for seed in range(200):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 101))
        g, s = _random_instance(n, seed)
        rep = metrics.conservation_check(g, s)
        sc = s - s.mean()
        bound = 1e-8 * max(1., sc @ sc)
        assert (abs(rep.conservation_residual) <= bound)
        assert (rep.polarization >= 0 and rep.global_disagreement >= 0)
        assert (rep.polarization <= n)


def test_equilibrium_polarization_quadform():
    import numpy as np
    from ..dynamics import fj_equilibrium
    s = np.array([0.5, -0.1, 0.8])
    pol = metrics.equilibrium_polarization_quadform(weightedgraph.empty(3), s)
    assert (np.isclose(pol, metrics.polarization(s)))
    g = weightedgraph([[0, 1], [1, 0]])
    pol = metrics.equilibrium_polarization_quadform(g, [1, -1])
    assert (np.isclose(pol, 2 / 9))
    for seed in range(20):
        g, s = _random_instance(30, seed)
        pol = metrics.equilibrium_polarization_quadform(g, s)
        zpol = metrics.polarization(fj_equilibrium(g, s))
        assert (abs(pol - zpol) <= 1e-8)


def test_equilibrium_polarization_plus_disagreement():
    # at z*, P + D = sbar.sbar - (D + I), and z* minimizes D + I
    import numpy as np
    from ..dynamics import fj_equilibrium
    g, s = _random_instance(12, 9)
    s = s - s.mean()
    z = fj_equilibrium(g, s)
    pd_star = metrics.polarization(z) + metrics.global_disagreement(g, z)
    rng = np.random.default_rng(1)
    for k in range(100):
        zp = z + rng.uniform(-0.01, 0.01, 12)
        budget = s @ s - metrics.global_disagreement(g, zp)
        budget -= metrics.internal_conflict(zp, s)
        assert (pd_star >= budget - 1e-12)


def test_metrics_report_and_frame():
    import numpy as np
    g = weightedgraph([[0, 1], [1, 0]])
    z = np.array([1 / 3, -1 / 3])
    rep = metrics.metrics_report(g, z, [1, -1])
    assert (rep.to_row(4)[0] == 4)
    # s itself is not an equilibrium, so the residual does not vanish
    off = metrics.metrics_report(g, [1, -1], [1, -1])
    assert (np.isclose(off.conservation_residual, 8))
    df = metrics.report_frame([rep, off])
    assert (list(df.columns) == metrics.report_columns)
    assert (df['round'].tolist() == [0, 1])
    assert (np.isclose(df['disagreement'][1], 4))
