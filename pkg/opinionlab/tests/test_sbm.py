from .. import sbm


def test_params_validation():
    import pytest
    with pytest.raises(ValueError):
        sbm.SbmParams(0, 0.1, 0.1)
    with pytest.raises(ValueError):
        sbm.SbmParams(10, 1.5, 0.1)
    with pytest.raises(ValueError):
        sbm.SbmParams(10, 0.1, -0.1)
    prm = sbm.SbmParams(10, 0.3, 0.5)
    assert (prm.num_nodes == 20)
    with pytest.raises(ValueError):
        prm.check_theorem_regime()
    with pytest.raises(ValueError):
        sbm.SbmParams(10, 0.3, 0.05).check_theorem_regime()
    sbm.SbmParams(10, 0.3, 0.1).check_theorem_regime()


def test_polarized_opinions():
    s = sbm.polarized_opinions(7)
    assert (s.shape == (14,))
    assert (s.sum() == 0 and s @ s == 14)
    assert (s[6] == 1 and s[7] == -1)


def test_generate_extremes():
    import numpy as np
    g = sbm.sbm_generate(sbm.SbmParams(6, 1., 1.))
    assert (np.array_equal(g.weights, np.ones((12, 12)) - np.eye(12)))
    g = sbm.sbm_generate(sbm.SbmParams(6, 0., 0.))
    assert (g.num_edges == 0)


def test_generate_deterministic():
    import numpy as np
    prm = sbm.SbmParams(30, 0.2, 0.05, seed=11)
    g1 = sbm.sbm_generate(prm)
    g2 = sbm.sbm_generate(prm)
    assert (np.array_equal(g1.weights, g2.weights))
    assert (set(np.unique(g1.weights)) <= {0., 1.})
    g3 = sbm.sbm_generate(prm, trial=1)
    assert (not np.array_equal(g1.weights, g3.weights))
    g4 = sbm.sbm_generate(sbm.SbmParams(30, 0.2, 0.05, seed=12))
    assert (not np.array_equal(g1.weights, g4.weights))


def test_generate_nested_in_q():
    import numpy as np
    g1 = sbm.sbm_generate(sbm.SbmParams(20, 0.2, 0.05, seed=3))
    g2 = sbm.sbm_generate(sbm.SbmParams(20, 0.2, 0.1, seed=3))
    assert (np.all(g2.weights >= g1.weights))


def test_cross_edge_concentration():
    import numpy as np
    n, q = 100, 0.02
    bound = 3 * np.sqrt(n * n * q * (1 - q))
    hits = 0
    for seed in range(100):
        g = sbm.sbm_generate(sbm.SbmParams(n, 0.1, q, seed=seed))
        count = g.weights[:n, n:].sum()
        hits += abs(count - n * n * q) <= bound
    assert (hits >= 99)


def test_expected_polarization():
    import numpy as np
    import pytest
    assert (np.isclose(sbm.expected_sbm_polarization(500, 0.01), 1000 / 121))
    assert (sbm.expected_sbm_polarization(40, 0.) == 80)
    # no p argument at all
    assert (np.isclose(sbm.expected_sbm_polarization(20, 0.05), 40 / 9))
    with pytest.raises(ValueError):
        sbm.expected_sbm_polarization(0, 0.1)
    with pytest.raises(ValueError):
        sbm.expected_sbm_polarization(10, -0.1)


def test_expected_graph_oracle():
    import numpy as np
    for n, p, q in [(20, 0.3, 0.05), (50, 0.2, 0.1), (100, 0.5, 0.02)]:
        g = sbm.expected_sbm_adjacency(n, p, q)
        assert (np.all(np.diag(g.weights) == 0))
        s = sbm.polarized_opinions(n)
        m = g.laplacian() + np.eye(2 * n)
        z = np.linalg.solve(m, s)
        pol = z @ z
        assert (abs(pol - sbm.expected_sbm_polarization(n, q)) <= 1e-10)


def test_thin_cross_edges():
    import numpy as np
    import pytest
    n = 40
    g = sbm.sbm_generate(sbm.SbmParams(n, 0.3, 0.2, seed=5))
    same = sbm.thin_cross_edges(g, n, 1.)
    assert (np.array_equal(same.weights, g.weights))
    cut = sbm.thin_cross_edges(g, n, 0.)
    assert (cut.weights[:n, n:].sum() == 0)
    assert (np.array_equal(cut.weights[:n, :n], g.weights[:n, :n]))
    assert (np.array_equal(cut.weights[n:, n:], g.weights[n:, n:]))
    half = sbm.thin_cross_edges(g, n, 0.5, seed=2)
    assert (np.all(half.weights <= g.weights))
    assert (0 < half.weights[:n, n:].sum() < g.weights[:n, n:].sum())
    with pytest.raises(ValueError):
        sbm.thin_cross_edges(g, n + 1, 0.5)
    with pytest.raises(ValueError):
        sbm.thin_cross_edges(g, n, 1.5)


def test_verify_expected_graph():
    import numpy as np
    prm = sbm.SbmParams(50, 0.2, 0.05)
    report = sbm.verify_fragile_consensus(prm, trials=30, expected=True)
    assert (report.trials == 30)
    assert (np.allclose(report.ratios, 1, atol=1e-8))
    assert (report.passed)
    df = report.to_frame()
    assert (list(df.columns) == [
        'trial', 'n', 'p', 'q', 'expected', 'polarization', 'lemma_value',
        'ratio', 'within'
    ])
    assert (df['within'].all())


def test_verify_sampled():
    prm = sbm.SbmParams(250, 0.1, 0.02, seed=0)
    report = sbm.verify_fragile_consensus(prm, trials=50, workers=1)
    assert (report.fraction_within >= 0.95)
    assert (report.passed)
    assert (0.2 <= report.median_ratio <= 5)


def test_verify_p_independence():
    import itertools
    medians = []
    for p in (0.08, 0.16, 0.32):
        prm = sbm.SbmParams(250, p, 0.02, seed=1)
        report = sbm.verify_fragile_consensus(prm, trials=30)
        medians.append(report.median_ratio)
    for a, b in itertools.combinations(medians, 2):
        assert (max(a, b) / min(a, b) < 2)


def test_verify_errors():
    import pytest
    with pytest.raises(ValueError):
        sbm.verify_fragile_consensus(sbm.SbmParams(50, 0.2, 0.05), trials=29)
    with pytest.raises(ValueError):
        sbm.verify_fragile_consensus(sbm.SbmParams(50, 0.2, 0.01))


def test_sweep_disconnected():
    import numpy as np
    df = sbm.fragile_consensus_sweep(15, 0., [0.], trials=4)
    assert (list(df.columns) == sbm.sweep_columns)
    assert (np.isclose(df['mean_polarization'][0], 30))
    assert (df['std_polarization'][0] == 0)
    assert (df['lemma_value'][0] == 30)


def test_sweep_decay():
    import numpy as np
    n = 250
    q_grid = [0.02, 0.03, 0.04, 0.06, 0.08]
    df = sbm.fragile_consensus_sweep(n, 0.1, q_grid, trials=20, seed=0)
    assert (df['q'].tolist() == q_grid)
    assert (np.allclose(df['nq'], n * np.array(q_grid)))
    pol = df['mean_polarization'].values
    assert (np.all(pol[1:] <= pol[:-1] * 1.05))
    slope = np.polyfit(np.log(df['nq']), np.log(pol), 1)[0]
    assert (-2.5 <= slope <= -1.5)


def test_sweep_errors():
    import pytest
    with pytest.raises(ValueError):
        sbm.fragile_consensus_sweep(10, 0.1, [])
    with pytest.raises(ValueError):
        sbm.fragile_consensus_sweep(10, 0.1, [0.1, 1.2])
    with pytest.raises(ValueError):
        sbm.fragile_consensus_sweep(10, 0.1, [0.1], trials=0)
