__all__ = [
    'constraintset', 'AdminConfig', 'admintrajectory', 'roundrecord',
    'feasibility_violations', 'is_feasible'
]

from dataclasses import dataclass, field
import numpy as np

from ..dynamics import FjSolverConfig


class constraintset:
    __doc__ = """
    Feasible region S of the network administrator.

    A matrix W is in S when it is symmetric with zero diagonal, nonnegative,
    zero outside support_mask, has the same row sums (degrees) as the
    reference matrix Wbar, and ||W - Wbar||_F <= epsilon ||Wbar||_F.

    Internally, W is represented by the vector x of its upper-triangle
    entries on the support (one free variable per unordered pair). The
    Frobenius norm of W is sqrt(2) ||x||, so Frobenius projections of W are
    Euclidean projections of x.
    """

    def __init__(self, reference_weights, epsilon, support_mask=None):
        """
        Arguments
        ---------
        reference_weights : array-like or weightedgraph
            Initial adjacency matrix Wbar
        epsilon : float
            Frobenius budget fraction (>= 0; numpy.inf disables the ball)
        support_mask : array-like of bool or None
            True where an entry may be nonzero. None allows every
            off-diagonal pair.
        """
        from ..graph import weightedgraph
        if isinstance(reference_weights, weightedgraph):
            wbar = reference_weights.weights
        else:
            wbar = weightedgraph(reference_weights).weights
        n = wbar.shape[0]
        epsilon = float(epsilon)
        if not epsilon >= 0:
            raise ValueError(f'epsilon must be >= 0; got {epsilon}')
        if support_mask is None:
            mask = ~np.eye(n, dtype=bool)
        else:
            mask = np.array(support_mask, dtype=bool)
            if mask.shape != (n, n):
                raise ValueError(
                    f'support_mask shape {mask.shape} does not match {n}'
                )
            if not np.array_equal(mask, mask.T):
                raise ValueError('support_mask must be symmetric')
            if mask.diagonal().any():
                raise ValueError('support_mask diagonal must be False')
        if ((wbar != 0) & ~mask).any():
            raise ValueError(
                'infeasible constraint set: reference weights are nonzero'
                + ' outside support_mask'
            )
        mask.setflags(write=False)
        self.reference_weights = wbar
        self.epsilon = epsilon
        self.support_mask = mask
        self.degree_targets = wbar.sum(axis=1)
        self.degree_targets.setflags(write=False)
        self._iu, self._ju = np.nonzero(np.triu(mask, 1))
        self.reference_vector = wbar[self._iu, self._ju]
        self.reference_vector.setflags(write=False)

    @classmethod
    def from_graph(cls, g, epsilon, support='full'):
        """
        Arguments
        ---------
        g : weightedgraph
            Reference graph
        epsilon : float
            Frobenius budget fraction
        support : str
            'full' lets the administrator use every pair; 'original'
            restricts changes to the edges of g.

        Returns
        -------
        cs : constraintset
        """
        if support == 'full':
            mask = None
        elif support == 'original':
            mask = g.weights != 0
        else:
            raise KeyError(
                f'unknown support {support!r}; use full or original'
            )
        return cls(g, epsilon, support_mask=mask)

    def __repr__(self):
        return (
            f'constraintset(n={self.n}, epsilon={self.epsilon},'
            + f' free={self.num_free})'
        )

    @property
    def n(self):
        return self.reference_weights.shape[0]

    @property
    def num_free(self):
        return self._iu.shape[0]

    @property
    def pairs(self):
        return self._iu, self._ju

    @property
    def radius(self):
        """
        Ball radius in the x representation: epsilon ||Wbar||_F / sqrt(2).
        """
        if np.isinf(self.epsilon):
            return np.inf
        return self.epsilon * np.linalg.norm(self.reference_vector)

    @property
    def incidence(self):
        """
        Sparse n x m node-pair incidence matrix B, so that B x is the vector
        of row sums of the matrix represented by x.
        """
        if not hasattr(self, '_incidence'):
            import scipy.sparse as sps
            m = self.num_free
            rows = np.concatenate([self._iu, self._ju])
            cols = np.concatenate([np.arange(m), np.arange(m)])
            self._incidence = sps.csr_matrix(
                (np.ones(2 * m), (rows, cols)), shape=(self.n, m)
            )
        return self._incidence

    @property
    def gram_pinv(self):
        """
        Pseudo-inverse of B B^T (the signless Laplacian of the support).
        B B^T is singular when a support component is bipartite.
        """
        if not hasattr(self, '_gram_pinv'):
            from scipy.linalg import pinvh
            b = self.incidence
            gram = (b @ b.T).toarray()
            self._gram_pinv = pinvh(gram)
        return self._gram_pinv

    def to_vector(self, w):
        w = np.asarray(w, dtype='d')
        return w[self._iu, self._ju].copy()

    def to_matrix(self, x):
        w = np.zeros((self.n, self.n))
        w[self._iu, self._ju] = x
        w[self._ju, self._iu] = x
        return w


@dataclass(frozen=True)
class AdminConfig:
    """
    Solver settings for admin_step and admin_dynamics.

    gamma is the strength of the gamma ||W||_F^2 regularizer (0 disables
    it). initial_step of None lets admin_step pick one from the problem
    scale; backtracking then shrinks it by backtrack_factor as needed.
    """
    gamma: float = 0.
    inner_max_iters: int = 5000
    inner_tolerance: float = 1e-8
    dykstra_max_iters: int = 2000
    dykstra_tolerance: float = 1e-10
    outer_max_rounds: int = 100
    outer_tolerance: float = 1e-6
    step_size_rule: str = 'backtracking'
    initial_step: float = None
    backtrack_factor: float = 0.5
    fj: FjSolverConfig = field(default_factory=FjSolverConfig)

    def __post_init__(self):
        if not self.gamma >= 0:
            raise ValueError('gamma must be >= 0')
        for key in (
            'inner_max_iters', 'dykstra_max_iters', 'outer_max_rounds'
        ):
            if int(getattr(self, key)) < 1:
                raise ValueError(f'{key} must be >= 1')
        for key in ('inner_tolerance', 'dykstra_tolerance', 'outer_tolerance'):
            if not getattr(self, key) > 0:
                raise ValueError(f'{key} must be > 0')
        if self.step_size_rule != 'backtracking':
            raise ValueError('step_size_rule must be backtracking')
        if self.initial_step is not None and not self.initial_step > 0:
            raise ValueError('initial_step must be > 0')
        if not 0 < self.backtrack_factor < 1:
            raise ValueError('backtrack_factor must be in (0, 1)')


def feasibility_violations(w, cs):
    """
    Measure how far w is from the constraint set.

    Returns
    -------
    out : dict
        asymmetry : max |w - w.T|
        diagonal : max |diag(w)|
        min_entry : smallest entry of w
        off_support : max |w| outside the support mask
        degree_residual : max |rowsum(w) - degree_targets|
        ball_excess : ||w - Wbar||_F - epsilon ||Wbar||_F (<= 0 inside)
    """
    w = np.asarray(w, dtype='d')
    wbar = cs.reference_weights
    off = np.abs(w[~cs.support_mask]).max(initial=0.)
    if np.isinf(cs.epsilon):
        ball = -np.inf
    else:
        ball = np.linalg.norm(w - wbar) - cs.epsilon * np.linalg.norm(wbar)
    return dict(
        asymmetry=float(np.abs(w - w.T).max(initial=0.)),
        diagonal=float(np.abs(np.diag(w)).max(initial=0.)),
        min_entry=float(w.min(initial=0.)),
        off_support=float(off),
        degree_residual=float(
            np.abs(w.sum(axis=1) - cs.degree_targets).max(initial=0.)
        ),
        ball_excess=float(ball),
    )


def is_feasible(w, cs, degree_rtol=1e-6, min_entry=-1e-10, ball_rtol=1e-8):
    """
    True if w satisfies every constraint within the given tolerances.

    Symmetry, diagonal and support are checked exactly; row sums to
    degree_rtol * max degree; the ball to a relative ball_rtol.
    """
    v = feasibility_violations(w, cs)
    maxdeg = max(float(cs.degree_targets.max(initial=0.)), 1.)
    budget = cs.epsilon * np.linalg.norm(cs.reference_weights)
    return (
        v['asymmetry'] == 0 and v['diagonal'] == 0 and v['off_support'] == 0
        and v['degree_residual'] <= degree_rtol * maxdeg
        and v['min_entry'] >= min_entry
        and v['ball_excess'] <= ball_rtol * budget
    )


@dataclass
class roundrecord:
    """
    State after one round of administrator dynamics.

    report describes z on the graph it is the equilibrium of (the previous
    round's graph), so its conservation residual vanishes.
    combined_objective is D + I of z on this round's graph, plus
    gamma ||W||_F^2 for regularized runs.
    """
    weights: np.ndarray
    z: np.ndarray
    report: object
    combined_objective: float


class admintrajectory:
    __doc__ = """
    Ordered record of an administrator dynamics run.

    rounds[0] holds the reference graph with z = s; rounds[r] for r >= 1
    holds G(r) and z(r). final_opinions and final_report give the
    equilibrium of the last graph.
    """

    def __init__(self, s, rounds=None):
        self.s = np.asarray(s, dtype='d')
        self.rounds = [] if rounds is None else list(rounds)
        self.converged = False
        self.stop_reason = None
        self.final_weights = None
        self.final_opinions = None
        self.final_report = None

    def __len__(self):
        return len(self.rounds)

    def append(self, record):
        self.rounds.append(record)

    @property
    def final_graph(self):
        from ..graph import weightedgraph
        return weightedgraph(self.final_weights)

    @property
    def combined_objectives(self):
        return np.array([r.combined_objective for r in self.rounds])

    def to_frame(self):
        """
        One MetricsReport row per round plus the combined objective.

        Returns
        -------
        df : pandas.DataFrame
        """
        from ..metrics import report_frame
        df = report_frame([r.report for r in self.rounds])
        df['combined_objective'] = self.combined_objectives
        return df

    def to_dataset(self):
        """
        Trajectory as an xarray.Dataset.

        Per-round metrics have dimension round. Opinions have dims (round,
        node) and, when they were stored, weights have dims (round, row,
        col). Provenance attributes follow the opinionlab output convention.

        Returns
        -------
        ds : xarray.Dataset
        """
        import xarray as xr
        from datetime import datetime
        from ..utils import opl_version

        df = self.to_frame().set_index('round')
        ds = xr.Dataset.from_dataframe(df)
        ds['z'] = xr.DataArray(
            np.array([r.z for r in self.rounds]), dims=('round', 'node'),
            attrs=dict(long_name='expressed opinions')
        )
        ds['s'] = xr.DataArray(
            self.s, dims=('node',), attrs=dict(long_name='innate opinions')
        )
        if all(r.weights is not None for r in self.rounds):
            ds['weights'] = xr.DataArray(
                np.array([r.weights for r in self.rounds]),
                dims=('round', 'row', 'col'),
                attrs=dict(long_name='adjacency matrix')
            )
        ds.attrs['converged'] = int(self.converged)
        ds.attrs['stop_reason'] = str(self.stop_reason)
        ds.attrs['updated'] = datetime.now().strftime('%FT%H:%M:%S%z')
        ds.attrs['history'] = ''
        ds.attrs['opinionlab_version'] = opl_version()
        return ds
