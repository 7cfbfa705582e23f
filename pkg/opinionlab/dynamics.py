__all__ = [
    'FjSolverConfig', 'fj_step', 'fj_equilibrium', 'fj_trajectory',
    'fj_fixed_point'
]

from dataclasses import dataclass
import numpy as np

from .graph import as_opinions
from .utils import ConvergenceError


@dataclass(frozen=True)
class FjSolverConfig:
    """
    Tolerances for the equilibrium solve and the fixed-point iteration.

    method is "direct" (Cholesky), "cg" (conjugate gradient), or "auto",
    which picks direct when n <= direct_max_n.
    """
    solve_tolerance: float = 1e-10
    max_fixed_point_iters: int = 100000
    fixed_point_tolerance: float = 1e-12
    method: str = 'auto'
    direct_max_n: int = 2000
    cg_max_iters: int = None

    def __post_init__(self):
        if not self.solve_tolerance > 0:
            raise ValueError('solve_tolerance must be > 0')
        if not self.fixed_point_tolerance > 0:
            raise ValueError('fixed_point_tolerance must be > 0')
        if int(self.max_fixed_point_iters) < 1:
            raise ValueError('max_fixed_point_iters must be >= 1')
        if self.method not in ('auto', 'direct', 'cg'):
            raise ValueError(f'unknown method {self.method!r}')
        if self.cg_max_iters is not None and int(self.cg_max_iters) < 1:
            raise ValueError('cg_max_iters must be >= 1')


_default_cfg = FjSolverConfig()


def fj_step(g, z_prev, s):
    """
    One synchronous Friedkin-Johnsen update.

    z_i = (s_i + sum_j w_ij z_prev_j) / (d_i + 1)

    Arguments
    ---------
    g : weightedgraph
    z_prev : array-like
        Expressed opinions from the previous step
    s : array-like
        Innate opinions

    Returns
    -------
    z : numpy.ndarray
    """
    z_prev = as_opinions(z_prev, g.n, name='z_prev')
    s = as_opinions(s, g.n, name='s')
    return (s + g.weights @ z_prev) / (g.degrees + 1)


def _solve_direct(m, rhs):
    from scipy.linalg import cho_factor, cho_solve
    cf = cho_factor(m, lower=True, check_finite=False)
    z = cho_solve(cf, rhs, check_finite=False)
    # one step of iterative refinement keeps the residual at round-off level
    # for high-degree graphs
    z = z + cho_solve(cf, rhs - m @ z, check_finite=False)
    return z


def _solve_cg(m, rhs, tol, maxiter):
    from scipy.sparse.linalg import cg
    n = rhs.shape[0]
    # 2-norm residual bound that implies the max-norm contract
    rtol = tol / np.sqrt(max(n, 1))
    z, info = cg(m, rhs, x0=rhs.copy(), rtol=rtol, atol=0., maxiter=maxiter)
    return z, info


def fj_equilibrium(g, s, cfg=None, verbose=0):
    """
    Equilibrium opinions z* = (L + I)^-1 s.

    L + I is symmetric positive definite, so the solution exists and is
    unique. The result satisfies
    max|(L + I) z* - s| <= cfg.solve_tolerance * max|s|.

    Arguments
    ---------
    g : weightedgraph
    s : array-like
        Innate opinions (any real vector is accepted)
    cfg : FjSolverConfig or None
        Solver configuration; defaults used if None.
    verbose : int
        Print solver diagnostics if > 1

    Returns
    -------
    z : numpy.ndarray
    """
    if cfg is None:
        cfg = _default_cfg
    n = g.n
    s = as_opinions(s, n, name='s')
    m = g.laplacian() + np.eye(n)
    method = cfg.method
    if method == 'auto':
        method = 'direct' if n <= cfg.direct_max_n else 'cg'

    bound = cfg.solve_tolerance * np.abs(s).max(initial=0.)
    if method == 'direct':
        z = _solve_direct(m, s)
        iters = 1
    else:
        maxiter = cfg.cg_max_iters
        if maxiter is None:
            maxiter = 10 * n + 100
        z, iters = _solve_cg(m, s, cfg.solve_tolerance, maxiter)
        if iters < 0:
            raise ConvergenceError(f'cg breakdown (info={iters})')

    gap = np.abs(m @ z - s).max(initial=0.)
    if verbose > 1:
        print(f'fj_equilibrium: {method} n={n} residual={gap:.3e}', flush=True)
    if gap > bound:
        raise ConvergenceError(
            f'fj_equilibrium ({method}) residual {gap:.3e} exceeds'
            + f' {bound:.3e}', iterations=iters, gap=gap
        )
    return z


def fj_trajectory(g, s, t_max, cfg=None, full_output=False):
    """
    Iterate fj_step from z(0) = s.

    Stops after t_max steps or as soon as the max-norm change between
    consecutive iterates falls below cfg.fixed_point_tolerance.

    Arguments
    ---------
    g : weightedgraph
    s : array-like
        Innate opinions
    t_max : int
        Maximum number of steps (>= 0)
    cfg : FjSolverConfig or None
    full_output : bool
        If True, also return a dict with stop_index and converged.

    Returns
    -------
    zs : list of numpy.ndarray
        [z(0), z(1), ..., z(stop_index)]
    info : dict
        Only if full_output.
    """
    if cfg is None:
        cfg = _default_cfg
    if int(t_max) < 0:
        raise ValueError('t_max must be >= 0')
    s = as_opinions(s, g.n, name='s')
    zs = [s.copy()]
    converged = False
    for t in range(int(t_max)):
        znew = fj_step(g, zs[-1], s)
        change = np.abs(znew - zs[-1]).max(initial=0.)
        zs.append(znew)
        if change < cfg.fixed_point_tolerance:
            converged = True
            break
    if full_output:
        return zs, dict(stop_index=len(zs) - 1, converged=converged)
    return zs


def fj_fixed_point(g, s, cfg=None):
    """
    Equilibrium by plain fixed-point iteration of fj_step.

    This is slow and only used to cross-check fj_equilibrium.

    Raises
    ------
    ConvergenceError
        If max_fixed_point_iters is reached first.
    """
    if cfg is None:
        cfg = _default_cfg
    s = as_opinions(s, g.n, name='s')
    z = s.copy()
    change = np.inf
    for it in range(int(cfg.max_fixed_point_iters)):
        znew = fj_step(g, z, s)
        change = np.abs(znew - z).max(initial=0.)
        z = znew
        if change < cfg.fixed_point_tolerance:
            return z
    raise ConvergenceError(
        f'fixed-point iteration did not settle in {it + 1} steps',
        iterations=it + 1, gap=change
    )
