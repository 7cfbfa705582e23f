__all__ = [
    'MetricsReport', 'polarization', 'local_disagreement',
    'global_disagreement', 'local_internal_conflict', 'internal_conflict',
    'metrics_report', 'conservation_check',
    'equilibrium_polarization_quadform',
    'report_frame', 'report_columns'
]

from dataclasses import dataclass, astuple

from .graph import as_opinions


report_columns = [
    'round', 'polarization', 'disagreement', 'internal_conflict',
    'conservation_residual', 'mean_opinion'
]


@dataclass(frozen=True)
class MetricsReport:
    """
    Polarization, disagreement and internal conflict of one opinion state.

    conservation_residual is P + 2 D + I - sbar.sbar, which vanishes when z
    is the equilibrium of the graph it is measured on.
    """
    polarization: float
    global_disagreement: float
    global_internal_conflict: float
    conservation_residual: float
    mean_opinion: float

    def to_row(self, rnd=0):
        return (rnd,) + astuple(self)


def _centered(v):
    return v - v.mean()


def polarization(z):
    """
    Sum of squared deviations of z from its mean.
    """
    zc = _centered(as_opinions(z, name='z'))
    return float(zc @ zc)


def local_disagreement(g, z, i):
    """
    sum_j w_ij (z_i - z_j)**2 for node i.
    """
    z = as_opinions(z, g.n, name='z')
    if not (0 <= i < g.n):
        raise IndexError(f'node {i} out of range for n={g.n}')
    return float(g.weights[i] @ (z[i] - z) ** 2)


def global_disagreement(g, z):
    """
    z^T L z; each edge counted once.
    """
    z = as_opinions(z, g.n, name='z')
    # round-off can make a zero quadratic form slightly negative
    return max(float(z @ g.laplacian() @ z), 0.)


def local_internal_conflict(z, s, i):
    z = as_opinions(z, name='z')
    s = as_opinions(s, z.shape[0], name='s')
    if not (0 <= i < z.shape[0]):
        raise IndexError(f'node {i} out of range for n={z.shape[0]}')
    return float((z[i] - s[i]) ** 2)


def internal_conflict(z, s):
    """
    Squared distance between expressed opinions z and innate opinions s.
    """
    z = as_opinions(z, name='z')
    s = as_opinions(s, z.shape[0], name='s')
    d = z - s
    return float(d @ d)


def metrics_report(g, z, s):
    """
    Build a MetricsReport for opinions z on graph g with innate opinions s.

    z need not be the equilibrium of g; the conservation residual is only
    expected to vanish when it is.
    """
    z = as_opinions(z, g.n, name='z')
    s = as_opinions(s, g.n, name='s')
    sc = _centered(s)
    pol = polarization(z)
    dis = global_disagreement(g, z)
    ic = internal_conflict(z, s)
    residual = pol + 2 * dis + ic - float(sc @ sc)
    return MetricsReport(
        polarization=pol, global_disagreement=dis,
        global_internal_conflict=ic, conservation_residual=residual,
        mean_opinion=float(z.mean())
    )


def conservation_check(g, s, cfg=None):
    """
    MetricsReport at the equilibrium z* of g for innate opinions s.

    Arguments
    ---------
    g : weightedgraph
    s : array-like
    cfg : opinionlab.dynamics.FjSolverConfig or None

    Returns
    -------
    report : MetricsReport
    """
    from .dynamics import fj_equilibrium
    z = fj_equilibrium(g, s, cfg=cfg)
    return metrics_report(g, z, s)


def equilibrium_polarization_quadform(g, s, cfg=None):
    """
    sbar^T (L + I)^-2 sbar using two sequential SPD solves.

    Equals polarization(fj_equilibrium(g, s)) because the equilibrium
    preserves the mean.
    """
    from .dynamics import fj_equilibrium
    sc = _centered(as_opinions(s, g.n, name='s'))
    y = fj_equilibrium(g, sc, cfg=cfg)
    y = fj_equilibrium(g, y, cfg=cfg)
    return max(float(sc @ y), 0.)


def report_frame(reports, rounds=None):
    """
    Arguments
    ---------
    reports : iterable of MetricsReport
    rounds : iterable of int or None
        Round labels; defaults to 0, 1, 2, ...

    Returns
    -------
    df : pandas.DataFrame
        Columns in report_columns order.
    """
    import pandas as pd
    reports = list(reports)
    if rounds is None:
        rounds = range(len(reports))
    rows = [rep.to_row(r) for r, rep in zip(rounds, reports)]
    return pd.DataFrame(rows, columns=report_columns)
