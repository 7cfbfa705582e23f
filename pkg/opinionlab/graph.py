__all__ = [
    'weightedgraph', 'laplacian', 'as_opinions', 'load_edge_list',
    'write_edge_list', 'load_opinions', 'write_opinions', 'count_opinions',
    'read_opinion_values',
    'recover_innate'
]

import numpy as np


class weightedgraph:
    __doc__ = """
    Undirected weighted graph stored as a dense, read-only n x n matrix.

    The weights must be symmetric, nonnegative, finite, and have a zero
    diagonal. Instances never change after construction; derived quantities
    (degrees, Laplacian) are computed once and cached.
    """

    def __init__(self, weights, symmetrize=False):
        """
        Arguments
        ---------
        weights : array-like
            Square matrix of interaction weights
        symmetrize : bool
            If True, replace weights by (W + W.T) / 2 and zero the diagonal
            before validation. Otherwise asymmetric input is rejected.
        """
        w = np.array(weights, dtype='d', copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f'weights must be square; got shape {w.shape}')
        if symmetrize:
            w = (w + w.T) / 2
            np.fill_diagonal(w, 0)
        if not np.isfinite(w).all():
            raise ValueError('weights must be finite')
        if not np.array_equal(w, w.T):
            raise ValueError('weights must be symmetric')
        if (np.diag(w) != 0).any():
            raise ValueError('weights must have a zero diagonal')
        if (w < 0).any():
            raise ValueError('weights must be nonnegative')
        w.setflags(write=False)
        self._weights = w

    @classmethod
    def empty(cls, n):
        return cls(np.zeros((n, n)))

    @classmethod
    def from_edges(cls, n, edges):
        """
        Arguments
        ---------
        n : int
            Node count
        edges : iterable
            (i, j, w) triples with 0-based node indices

        Returns
        -------
        g : weightedgraph
        """
        w = np.zeros((n, n))
        for i, j, wij in edges:
            w[i, j] = w[j, i] = wij
        return cls(w)

    def __repr__(self):
        return f'weightedgraph(n={self.n}, edges={self.num_edges})'

    @property
    def n(self):
        return self._weights.shape[0]

    @property
    def weights(self):
        return self._weights

    @property
    def degrees(self):
        if not hasattr(self, '_degrees'):
            self._degrees = self._weights.sum(axis=1)
            self._degrees.setflags(write=False)
        return self._degrees

    @property
    def num_edges(self):
        return int(np.count_nonzero(np.triu(self._weights, 1)))

    @property
    def frobenius_norm(self):
        return float(np.linalg.norm(self._weights))

    def laplacian(self):
        if not hasattr(self, '_laplacian'):
            lap = np.diag(self.degrees) - self._weights
            lap.setflags(write=False)
            self._laplacian = lap
        return self._laplacian

    def edge_frame(self):
        """
        Returns
        -------
        df : pandas.DataFrame
            One row per unordered pair i < j with nonzero weight; columns i,
            j, w.
        """
        import pandas as pd
        iu, ju = np.nonzero(np.triu(self._weights, 1))
        return pd.DataFrame(dict(i=iu, j=ju, w=self._weights[iu, ju]))


def laplacian(g):
    """
    Graph Laplacian L = D - A.

    Arguments
    ---------
    g : weightedgraph

    Returns
    -------
    L : numpy.ndarray
        Symmetric positive semidefinite matrix whose rows sum to zero
    """
    return g.laplacian()


def as_opinions(values, n=None, name='opinions'):
    """
    Coerce values to a 1-d float array and check its length.
    """
    v = np.asarray(values, dtype='d')
    if v.ndim != 1:
        raise ValueError(f'{name} must be 1-d; got shape {v.shape}')
    if n is not None and v.shape[0] != n:
        raise ValueError(f'{name} has length {v.shape[0]}; expected {n}')
    return v


def _data_lines(path):
    with open(path, 'r') as inf:
        for lineno, line in enumerate(inf, start=1):
            line = line.split('#', 1)[0].strip()
            if line != '':
                yield lineno, line


def load_edge_list(path, n):
    """
    Read an edge-list file into a weightedgraph.

    Each data line is `i j w` with 0-based node indices and a nonnegative
    weight, whitespace separated. Lines starting with # are comments. Each
    unordered pair may appear at most once; pairs that do not appear have
    weight 0.

    Arguments
    ---------
    path : str
        Path to the edge list
    n : int
        Number of nodes

    Returns
    -------
    g : weightedgraph
    """
    w = np.zeros((n, n))
    seen = {}
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(
                f'{path}:{lineno}: expected "i j w", got {line!r}'
            )
        try:
            i, j, wij = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ValueError(f'{path}:{lineno}: could not parse {line!r}')
        if i == j:
            raise ValueError(f'{path}:{lineno}: self-loop on node {i}')
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(
                f'{path}:{lineno}: node index out of range for n={n}'
            )
        if not np.isfinite(wij) or wij < 0:
            raise ValueError(
                f'{path}:{lineno}: weight must be >= 0; got {wij}'
            )
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(
                f'{path}: duplicate pair {key} on lines {seen[key]} and'
                + f' {lineno}'
            )
        seen[key] = lineno
        w[i, j] = w[j, i] = wij
    return weightedgraph(w)


def write_edge_list(g, path, header=None):
    """
    Write g as an edge list readable by load_edge_list.

    Only pairs i < j with nonzero weight are written. Weights use 17
    significant digits so that a reload reproduces them exactly.
    """
    df = g.edge_frame()
    with open(path, 'w') as outf:
        if header is not None:
            for line in str(header).split('\n'):
                outf.write(f'# {line}\n')
        for i, j, wij in zip(df['i'], df['j'], df['w']):
            outf.write(f'{i:d} {j:d} {wij:.17g}\n')


def count_opinions(path):
    """
    Number of data lines in an opinion file.
    """
    return sum(1 for _ in _data_lines(path))


def read_opinion_values(path):
    """
    Unclamped values of an opinion file, one per data line.
    """
    values = []
    for lineno, line in _data_lines(path):
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f'{path}:{lineno}: not a number: {line!r}')
    raw = np.array(values, dtype='d')
    if not np.isfinite(raw).all():
        raise ValueError(f'{path}: opinions must be finite')
    return raw


def load_opinions(path, n):
    """
    Read one opinion per line and clamp each value to [-1, 1].

    Arguments
    ---------
    path : str
        Path to the opinion file
    n : int
        Expected number of values

    Returns
    -------
    values : numpy.ndarray
    """
    import warnings
    from .utils import OpinionlabWarning, clamp

    raw = read_opinion_values(path)
    if raw.shape[0] != n:
        raise ValueError(
            f'{path}: found {raw.shape[0]} opinions; expected {n}'
        )
    out = clamp(raw)
    nclamped = int((out != raw).sum())
    if nclamped > 0:
        warnings.warn(
            f'{path}: {nclamped} opinions clamped to [-1, 1]',
            OpinionlabWarning
        )
    return out


def write_opinions(values, path, header=None):
    """
    Write opinions one per line with 17 significant digits.
    """
    values = as_opinions(values)
    with open(path, 'w') as outf:
        if header is not None:
            for line in str(header).split('\n'):
                outf.write(f'# {line}\n')
        for v in values:
            outf.write(f'{v:.17g}\n')


def recover_innate(g, z_star):
    """
    Invert the equilibrium relation to estimate innate opinions.

    Arguments
    ---------
    g : weightedgraph
    z_star : array-like
        Expressed (equilibrium) opinions

    Returns
    -------
    s : numpy.ndarray
        clamp((L + I) z_star) entrywise to [-1, 1]
    """
    from .utils import clamp
    z = as_opinions(z_star, g.n, name='z_star')
    return clamp(g.laplacian() @ z + z)
