__all__ = ['admin_step', 'admin_dynamics', 'admin_objective']

import warnings
import numpy as np

from ..graph import as_opinions, weightedgraph
from ..utils import ConvergenceError, OpinionlabWarning
from .core import AdminConfig, admintrajectory, constraintset, roundrecord
from .projection import project_vector


def admin_objective(w, z, gamma=0.):
    """
    Administrator objective D(W, z) + gamma ||W||_F^2 for a dense matrix.
    """
    w = np.asarray(w, dtype='d')
    z = as_opinions(z, w.shape[0], name='z')
    gaps = (z[:, None] - z[None, :]) ** 2
    return float(0.5 * (w * gaps).sum() + gamma * (w * w).sum())


def _initial_step(cs, grad0, gamma):
    gn = np.linalg.norm(grad0)
    radius = cs.radius
    if not np.isfinite(radius) or radius == 0:
        radius = max(np.linalg.norm(cs.reference_vector), 1.)
    if gn > 0:
        # first step spans twice the ball diameter
        alpha = 4 * radius / gn
    else:
        alpha = 1.
    if gamma > 0:
        alpha = min(alpha, 1 / (4 * gamma))
    return alpha


def admin_step(z, cs, cfg=None, init=None, full_output=False, verbose=0):
    """
    Network administrator update: minimize disagreement (plus the optional
    gamma ||W||_F^2 regularizer) over the constraint set for fixed opinions.

    In the free-variable form used by constraintset the objective is
    f(x) = c.x + 2 gamma x.x with c_ij = (z_i - z_j)^2 for each pair i < j,
    so grad f = c + 4 gamma x. Projected gradient descent starts from init
    (default Wbar) with a backtracking step and stops when the relative
    objective change drops below cfg.inner_tolerance.

    Arguments
    ---------
    z : array-like
        Expressed opinions
    cs : constraintset
    cfg : AdminConfig or None
    init : array-like or None
        Feasible starting matrix (warm start); defaults to Wbar.
    full_output : bool
        If True, also return a dict of solver diagnostics.
    verbose : int

    Returns
    -------
    w : numpy.ndarray
        Best feasible iterate. It never has a larger objective than init
        and only replaces init after an improvement of more than 1e-10
        relative, so a problem whose feasible set is a single point returns
        init unchanged.
    info : dict
        Only if full_output: iterations, converged, warning, objective,
        initial_objective, step, pg_norm.
    """
    if cfg is None:
        cfg = AdminConfig()
    z = as_opinions(z, cs.n, name='z')
    iu, ju = cs.pairs
    c = (z[iu] - z[ju]) ** 2
    gamma = float(cfg.gamma)

    def fval(x):
        return float(c @ x + 2 * gamma * (x @ x))

    def grad(x):
        return c + 4 * gamma * x

    def project(y):
        return project_vector(
            y, cs, max_iters=cfg.dykstra_max_iters, tol=cfg.dykstra_tolerance
        )

    if init is None:
        x = cs.reference_vector.copy()
    else:
        x = cs.to_vector(init)
    f = fval(x)
    f0 = f
    best_x, best_f = x, f
    if cfg.initial_step is None:
        alpha = _initial_step(cs, grad(x), gamma)
    else:
        alpha = float(cfg.initial_step)

    converged = False
    failed = False
    it = 0
    for it in range(1, int(cfg.inner_max_iters) + 1):
        g = grad(x)
        while True:
            try:
                xn = project(x - alpha * g)
            except ConvergenceError as e:
                warnings.warn(
                    f'admin_step: projection failed at iteration {it} ({e});'
                    + ' returning best feasible iterate', OpinionlabWarning
                )
                failed = True
                break
            d = xn - x
            fn = fval(xn)
            model = f + g @ d + (d @ d) / (2 * alpha)
            if fn <= model + 1e-12 * max(1., abs(f)) or alpha < 1e-300:
                break
            alpha *= cfg.backtrack_factor
        if failed:
            break
        change = abs(fn - f)
        fprev = f
        x, f = xn, fn
        if f < best_f - 1e-10 * max(1., abs(best_f)):
            best_x, best_f = x, f
        if verbose > 1:
            print(
                f' admin_step {it}: f={f:.10g} step={alpha:.3g}', flush=True
            )
        if change <= cfg.inner_tolerance * max(abs(fprev), 1e-300):
            converged = True
            break

    if not converged and not failed:
        warnings.warn(
            f'admin_step: no convergence in {cfg.inner_max_iters} iterations;'
            + ' returning best feasible iterate', OpinionlabWarning
        )

    w = cs.to_matrix(best_x)
    if not full_output:
        return w

    pg_norm = np.nan
    try:
        gb = grad(best_x)
        pg_norm = float(np.linalg.norm(best_x - project(best_x - alpha * gb)))
        pg_norm /= alpha
    except ConvergenceError:
        pass
    info = dict(
        iterations=it, converged=converged, warning=not converged,
        objective=best_f, initial_objective=f0, step=alpha, pg_norm=pg_norm,
        grad_norm=float(np.linalg.norm(grad(best_x)))
    )
    return w, info


def admin_dynamics(
    g0, s, cs=None, cfg=None, epsilon=None, support='full',
    store_weights=True, verbose=0
):
    """
    Alternate user equilibria and administrator updates.

    Round r computes z(r) = (L(r-1) + I)^-1 s and then
    G(r) = admin_step(z(r)) warm-started at G(r-1). The combined objective
    D(G(r), z(r)) + I(z(r), s) + gamma ||G(r)||_F^2 cannot increase from
    round to round; the run stops when its relative change is below
    cfg.outer_tolerance or after cfg.outer_max_rounds rounds.

    Arguments
    ---------
    g0 : weightedgraph
        Initial graph; also the reference graph of the constraint set
    s : array-like
        Innate opinions
    cs : constraintset or None
        If None, built with constraintset.from_graph(g0, epsilon, support).
    cfg : AdminConfig or None
    epsilon : float
        Frobenius budget; required when cs is None.
    support : str
        'full' or 'original'; used when cs is None.
    store_weights : bool
        Keep each round's matrix in the trajectory (n^2 floats per round).
    verbose : int

    Returns
    -------
    traj : admintrajectory
    """
    from ..dynamics import fj_equilibrium
    from ..metrics import metrics_report, global_disagreement
    from ..metrics import internal_conflict

    if cfg is None:
        cfg = AdminConfig()
    if cs is None:
        if epsilon is None:
            raise ValueError('admin_dynamics needs cs or epsilon')
        cs = constraintset.from_graph(g0, epsilon, support=support)
    elif not np.array_equal(cs.reference_weights, g0.weights):
        raise ValueError('cs.reference_weights must equal the weights of g0')
    s = as_opinions(s, g0.n, name='s')

    traj = admintrajectory(s)
    g = g0
    w = g0.weights
    rep = metrics_report(g0, s, s)
    gamma = float(cfg.gamma)
    obj = rep.global_disagreement + gamma * g0.frobenius_norm ** 2
    traj.append(roundrecord(
        w.copy() if store_weights else None, s.copy(), rep, obj
    ))

    stop_reason = 'round_cap'
    for r in range(1, int(cfg.outer_max_rounds) + 1):
        try:
            z = fj_equilibrium(g, s, cfg=cfg.fj)
        except ConvergenceError as e:
            raise ConvergenceError(
                f'round {r}: {e}', iterations=e.iterations, gap=e.gap
            ) from e
        rep = metrics_report(g, z, s)
        wnew = admin_step(z, cs, cfg=cfg, init=w, verbose=verbose)
        gnew = weightedgraph(wnew)
        newobj = global_disagreement(gnew, z) + internal_conflict(z, s)
        newobj += gamma * gnew.frobenius_norm ** 2
        traj.append(roundrecord(
            wnew if store_weights else None, z, rep, newobj
        ))
        if newobj > obj + 1e-9:
            warnings.warn(
                f'round {r}: combined objective rose from {obj:.12g} to'
                + f' {newobj:.12g}', OpinionlabWarning
            )
        if verbose > 0:
            print(
                f'round {r}: P={rep.polarization:.6g}'
                + f' D+I={newobj:.10g}', flush=True
            )
        relchange = abs(obj - newobj) / max(abs(obj), 1e-300)
        g, w, obj = gnew, wnew, newobj
        if relchange <= cfg.outer_tolerance:
            stop_reason = 'tolerance'
            break

    traj.converged = stop_reason == 'tolerance'
    traj.stop_reason = stop_reason
    traj.final_weights = g.weights
    try:
        traj.final_opinions = fj_equilibrium(g, s, cfg=cfg.fj)
    except ConvergenceError as e:
        raise ConvergenceError(
            f'final equilibrium: {e}', iterations=e.iterations, gap=e.gap
        ) from e
    traj.final_report = metrics_report(g, traj.final_opinions, s)
    return traj
