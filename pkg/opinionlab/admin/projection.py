__all__ = ['project_feasible', 'project_vector']

import numpy as np

from ..utils import ConvergenceError


def _affine(x, cs):
    # {x : B x = d} with symmetry, zero diagonal and support folded into x
    b = cs.incidence
    r = b @ x - cs.degree_targets
    return x - b.T @ (cs.gram_pinv @ r)


def _nonneg(x, cs):
    return np.maximum(x, 0.)


def _ball(x, cs):
    radius = cs.radius
    if np.isinf(radius):
        return x
    xbar = cs.reference_vector
    v = x - xbar
    nv = np.linalg.norm(v)
    if nv <= radius:
        return x
    if radius == 0:
        return xbar.copy()
    return xbar + v * (radius / nv)


_projections = (_affine, _nonneg, _ball)


def project_vector(y, cs, max_iters=2000, tol=1e-10, verbose=0):
    """
    Euclidean projection of the free-variable vector y onto the constraint
    set by cyclic Dykstra iteration over the affine (row sum), nonnegative
    and ball sets, in that order.

    Arguments
    ---------
    y : numpy.ndarray
        Vector of upper-triangle support entries (see constraintset)
    cs : constraintset
    max_iters : int
        Maximum number of full cycles
    tol : float
        Stop when successive cycle iterates differ by less than tol in the
        Frobenius norm of the corresponding matrices.
    verbose : int

    Returns
    -------
    x : numpy.ndarray
        Projected vector. The ball is visited last and round-off negatives
        are clipped, so nonnegativity and the ball hold exactly and row sums
        to round-off times the convergence gap.
    """
    x = np.array(y, dtype='d', copy=True)
    increments = [np.zeros_like(x) for _ in _projections]
    gap = np.inf
    for it in range(int(max_iters)):
        xold = x
        for k, proj in enumerate(_projections):
            tmp = x + increments[k]
            x = proj(tmp, cs)
            increments[k] = tmp - x
        # ||W||_F = sqrt(2) ||x||
        gap = np.sqrt(2) * np.linalg.norm(x - xold)
        if verbose > 2:
            print(f'  dykstra {it}: gap={gap:.3e}', flush=True)
        if gap < tol:
            # the ball step can leave round-off negatives
            return np.maximum(x, 0.)
    raise ConvergenceError(
        f'Dykstra projection did not converge in {it + 1} cycles'
        + f' (gap={gap:.3e})', iterations=it + 1, gap=gap
    )


def project_feasible(w, cs, cfg=None, verbose=0):
    """
    Frobenius projection of a matrix onto the administrator's feasible set.

    w is symmetrized first; entries on the diagonal or outside the support
    mask are dropped, which is their exact projection. The remaining free
    entries are projected with project_vector.

    Arguments
    ---------
    w : array-like
        n x n candidate matrix
    cs : constraintset
    cfg : AdminConfig or None
        Supplies dykstra_max_iters and dykstra_tolerance.

    Returns
    -------
    wproj : numpy.ndarray

    Raises
    ------
    ConvergenceError
        If Dykstra iteration exhausts dykstra_max_iters; the error carries
        the final gap.
    """
    from .core import AdminConfig
    if cfg is None:
        cfg = AdminConfig()
    w = np.asarray(w, dtype='d')
    if w.shape != (cs.n, cs.n):
        raise ValueError(f'w has shape {w.shape}; expected {(cs.n, cs.n)}')
    w = (w + w.T) / 2
    x = project_vector(
        cs.to_vector(w), cs, max_iters=cfg.dykstra_max_iters,
        tol=cfg.dykstra_tolerance, verbose=verbose
    )
    return cs.to_matrix(x)
