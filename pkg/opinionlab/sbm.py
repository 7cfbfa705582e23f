__all__ = [
    'SbmParams', 'polarized_opinions', 'block_labels', 'sbm_generate',
    'expected_sbm_adjacency', 'expected_sbm_polarization',
    'thin_cross_edges', 'fragileconsensusreport', 'verify_fragile_consensus',
    'fragile_consensus_sweep', 'sweep_columns'
]

__doc__ = """
Two-community stochastic block models
=====================================

Nodes 0..n-1 form the first community and n..2n-1 the second. Pairs in the
same community are joined with probability p and pairs across communities
with probability q. With the completely polarized innate opinions (+1 in the
first community, -1 in the second), the expected graph has equilibrium
polarization 2n / (2nq + 1)**2, which does not depend on p; sampled graphs
concentrate around that value when p is not too small.

Random streams are Philox generators keyed by (seed, trial) through
numpy.random.SeedSequence (see opinionlab.utils.trial_rng), so every trial
is reproducible and independent of the number of workers.
"""

from dataclasses import dataclass
import numpy as np

from .graph import weightedgraph
from .utils import trial_rng

sweep_columns = [
    'n', 'p', 'q', 'nq', 'trials', 'mean_polarization', 'std_polarization',
    'lemma_value'
]


@dataclass(frozen=True)
class SbmParams:
    """
    n is the size of each community (the graph has 2n nodes); p and q are
    the in- and cross-community edge probabilities.
    """
    n: int
    p: float
    q: float
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f'n must be a positive integer; got {self.n}')
        for key in ('p', 'q'):
            val = getattr(self, key)
            if not 0 <= val <= 1:
                raise ValueError(f'{key} must be in [0, 1]; got {val}')

    @property
    def num_nodes(self):
        return 2 * int(self.n)

    def check_theorem_regime(self):
        """
        Raise ValueError unless 1/n <= q <= p.
        """
        if not (1 / self.n <= self.q <= self.p):
            raise ValueError(
                f'fragile consensus needs 1/n <= q <= p; got n={self.n},'
                + f' p={self.p}, q={self.q}'
            )


def block_labels(n):
    return np.repeat([0, 1], int(n))


def polarized_opinions(n):
    """
    s_i = 1 for i < n and s_i = -1 for n <= i < 2n; mean 0 and s.s = 2n.
    """
    n = int(n)
    return np.concatenate([np.ones(n), -np.ones(n)])


def _pair_probabilities(n, p, q):
    iu, ju = np.triu_indices(2 * n, 1)
    same = (iu < n) == (ju < n)
    return iu, ju, np.where(same, p, q)


def sbm_generate(params, trial=None):
    """
    Sample an unweighted two-community SBM.

    Every unordered pair is decided by exactly one uniform draw, taken in
    np.triu_indices order, so the same (seed, trial) always gives the same
    graph and a larger p or q only adds edges.

    Arguments
    ---------
    params : SbmParams
    trial : int or None
        Trial index used to key the random stream.

    Returns
    -------
    g : weightedgraph
        Weights in {0, 1}
    """
    n = int(params.n)
    iu, ju, prob = _pair_probabilities(n, params.p, params.q)
    rng = trial_rng(params.seed, trial)
    keep = rng.random(iu.shape[0]) < prob
    w = np.zeros((2 * n, 2 * n))
    w[iu[keep], ju[keep]] = 1.
    w[ju[keep], iu[keep]] = 1.
    return weightedgraph(w)


def expected_sbm_adjacency(n, p, q):
    """
    Deterministic expected adjacency: p within a community, q across, and
    a zero diagonal.

    Returns
    -------
    g : weightedgraph
    """
    n = int(n)
    labels = block_labels(n)
    w = np.where(labels[:, None] == labels[None, :], float(p), float(q))
    np.fill_diagonal(w, 0.)
    return weightedgraph(w)


def expected_sbm_polarization(n, q):
    """
    2n / (2nq + 1)**2
    """
    if n < 1:
        raise ValueError(f'n must be >= 1; got {n}')
    if not q >= 0:
        raise ValueError(f'q must be >= 0; got {q}')
    return 2 * n / (2 * n * q + 1) ** 2


def thin_cross_edges(g, n, keep, seed=0):
    """
    Keep each cross-community edge independently with probability keep.

    Applied to an SBM(n, p, q) sample this gives an SBM(n, p, keep * q)
    sample, which is how random removal of cross-community ties raises
    polarization.

    Arguments
    ---------
    g : weightedgraph
        Graph on 2n nodes ordered by community
    n : int
        Community size
    keep : float
        Retention probability in [0, 1]
    seed : int

    Returns
    -------
    gout : weightedgraph
    """
    n = int(n)
    if g.n != 2 * n:
        raise ValueError(f'graph has {g.n} nodes; expected {2 * n}')
    if not 0 <= keep <= 1:
        raise ValueError(f'keep must be in [0, 1]; got {keep}')
    iu, ju = np.nonzero(g.weights[:n, n:] != 0)
    ju = ju + n
    rng = trial_rng(seed)
    drop = rng.random(iu.shape[0]) >= keep
    w = g.weights.copy()
    w[iu[drop], ju[drop]] = 0.
    w[ju[drop], iu[drop]] = 0.
    return weightedgraph(w)


def _trial_polarization(task):
    # module level so multiprocessing can pickle it
    from .dynamics import fj_equilibrium
    from .metrics import polarization
    n, p, q, seed, trial, expected, fjcfg = task
    if expected:
        g = expected_sbm_adjacency(n, p, q)
    else:
        g = sbm_generate(SbmParams(n, p, q, seed), trial=trial)
    z = fj_equilibrium(g, polarized_opinions(n), cfg=fjcfg)
    return polarization(z)


def _map_trials(tasks, workers):
    if workers is None:
        import os
        workers = os.cpu_count() or 1
    if workers <= 1 or len(tasks) <= 1:
        return [_trial_polarization(task) for task in tasks]
    from multiprocessing import Pool
    with Pool(min(int(workers), len(tasks))) as pool:
        # Pool.map returns results in task order
        return pool.map(_trial_polarization, tasks)


class fragileconsensusreport:
    __doc__ = """
    Monte Carlo check of the fragile-consensus bound.

    ratios[k] is the equilibrium polarization of trial k divided by
    2n / (2nq + 1)**2. passed is True when at least pass_fraction of the
    ratios lie in [low, high].
    """

    def __init__(
        self, params, polarizations, expected=False, low=0.2, high=5.,
        pass_fraction=0.95
    ):
        self.params = params
        self.expected = expected
        self.polarizations = np.asarray(polarizations, dtype='d')
        self.lemma_value = expected_sbm_polarization(params.n, params.q)
        self.ratios = self.polarizations / self.lemma_value
        self.low = low
        self.high = high
        self.pass_fraction = pass_fraction

    def __repr__(self):
        return (
            f'fragileconsensusreport(n={self.params.n}, p={self.params.p},'
            + f' q={self.params.q}, trials={self.trials},'
            + f' median_ratio={self.median_ratio:.4g}, passed={self.passed})'
        )

    @property
    def trials(self):
        return self.ratios.shape[0]

    @property
    def within(self):
        return (self.ratios >= self.low) & (self.ratios <= self.high)

    @property
    def fraction_within(self):
        return float(self.within.mean())

    @property
    def median_ratio(self):
        return float(np.median(self.ratios))

    @property
    def passed(self):
        return self.fraction_within >= self.pass_fraction

    def to_frame(self):
        """
        One row per trial: trial, n, p, q, expected, polarization,
        lemma_value, ratio, within.
        """
        import pandas as pd
        prm = self.params
        return pd.DataFrame(dict(
            trial=np.arange(self.trials), n=prm.n, p=prm.p, q=prm.q,
            expected=self.expected, polarization=self.polarizations,
            lemma_value=self.lemma_value, ratio=self.ratios,
            within=self.within
        ))


def verify_fragile_consensus(
    params, trials=50, expected=False, workers=1, low=0.2, high=5.,
    pass_fraction=0.95, cfg=None, verbose=0
):
    """
    Compare sampled SBM polarization with the expected-graph closed form.

    Arguments
    ---------
    params : SbmParams
        Must satisfy 1/n <= q <= p.
    trials : int
        Number of independent samples (>= 30)
    expected : bool
        Use the expected adjacency for every trial instead of samples;
        every ratio is then 1 to solver precision.
    workers : int or None
        Process pool size; None uses os.cpu_count(). Results do not depend
        on it.
    low, high, pass_fraction : float
        Acceptance bracket for the ratios.
    cfg : FjSolverConfig or None
    verbose : int

    Returns
    -------
    report : fragileconsensusreport
    """
    params.check_theorem_regime()
    if int(trials) < 30:
        raise ValueError(f'trials must be >= 30; got {trials}')
    tasks = [
        (int(params.n), params.p, params.q, params.seed, k, expected, cfg)
        for k in range(int(trials))
    ]
    pols = _map_trials(tasks, workers)
    report = fragileconsensusreport(
        params, pols, expected=expected, low=low, high=high,
        pass_fraction=pass_fraction
    )
    if verbose > 0:
        print(report, flush=True)
    return report


def fragile_consensus_sweep(
    n, p, q_grid, trials=20, seed=0, workers=1, cfg=None, verbose=0
):
    """
    Mean equilibrium polarization of SBM samples across a grid of q.

    Trial k uses the same random stream at every grid point, so a larger q
    only adds cross-community edges to the trial-k graph.

    Arguments
    ---------
    n : int
        Community size
    p : float
        In-community probability
    q_grid : iterable of float
        Cross-community probabilities, each in [0, 1]
    trials : int
        Samples per grid point
    seed : int
    workers : int or None
    cfg : FjSolverConfig or None
    verbose : int

    Returns
    -------
    df : pandas.DataFrame
        Columns n, p, q, nq, trials, mean_polarization, std_polarization,
        lemma_value in grid order.
    """
    import pandas as pd
    q_grid = [float(q) for q in q_grid]
    if len(q_grid) == 0:
        raise ValueError('q_grid must not be empty')
    if int(trials) < 1:
        raise ValueError(f'trials must be >= 1; got {trials}')
    for q in q_grid:
        SbmParams(n, p, q, seed)
    tasks = [
        (int(n), p, q, seed, k, False, cfg)
        for q in q_grid for k in range(int(trials))
    ]
    pols = np.array(_map_trials(tasks, workers)).reshape(len(q_grid), -1)
    rows = []
    for q, qpols in zip(q_grid, pols):
        std = qpols.std(ddof=1) if qpols.shape[0] > 1 else 0.
        rows.append((
            int(n), p, q, n * q, int(trials), qpols.mean(), std,
            expected_sbm_polarization(n, q)
        ))
        if verbose > 0:
            print(f'q={q:.4g} nq={n * q:.4g} P={qpols.mean():.6g}', flush=True)
    return pd.DataFrame(rows, columns=sweep_columns)
