__all__ = [
    'OpinionlabWarning', 'ConvergenceError', 'opl_version', 'clamp',
    'read_config', 'resolve_seed', 'trial_rng', 'parse_grid', 'check_outpath'
]


class OpinionlabWarning(UserWarning):
    pass


class ConvergenceError(RuntimeError):
    """
    Raised when an iterative solver exhausts its iteration cap.

    Attributes
    ----------
    iterations : int
        Iterations performed before giving up
    gap : float
        Last measured convergence gap (residual or iterate change)
    """
    def __init__(self, msg, iterations=None, gap=None):
        super().__init__(msg)
        self.iterations = iterations
        self.gap = gap


def opl_version():
    from . import __version__ as _opl_version
    return _opl_version


def clamp(values, lo=-1., hi=1.):
    """
    Entrywise clip to [lo, hi]; returns a new float array.
    """
    import numpy as np
    return np.clip(np.asarray(values, dtype='d'), lo, hi)


def read_config(path):
    """
    Read a flat key-value configuration file.

    Lines look like `key = value`. Text after `#` or `!` is a comment, blank
    lines are skipped, and dashes in keys become underscores so that keys
    match argparse destinations (e.g., epsilon-grid -> epsilon_grid).
    true/false/yes/no values become booleans; everything else stays a
    string so argparse can apply its own type conversion.

    Arguments
    ---------
    path : str
        Path to the configuration file

    Returns
    -------
    opts : dict
    """
    import re
    opts = {}
    comment = re.compile('[#!].*$')
    with open(path, 'r') as cfgf:
        for lineno, line in enumerate(cfgf, start=1):
            line = comment.sub('', line).strip()
            if line == '':
                continue
            if '=' not in line:
                raise ValueError(
                    f'{path}:{lineno}: expected key = value, got {line!r}'
                )
            key, value = [part.strip() for part in line.split('=', 1)]
            key = key.replace('-', '_')
            if value.lower() in ('true', 'yes', 'on'):
                value = True
            elif value.lower() in ('false', 'no', 'off'):
                value = False
            opts[key] = value
    return opts


def resolve_seed(seed=None):
    """
    Return seed if given, otherwise OPINIONLAB_SEED from the environment,
    otherwise 0.
    """
    import os
    if seed is not None:
        return int(seed)
    return int(os.environ.get('OPINIONLAB_SEED', '0'))


def trial_rng(seed, trial=None):
    """
    Counter-based random generator for one trial.

    The stream is Philox keyed by numpy.random.SeedSequence(seed,
    spawn_key=(trial,)), so trial i of master seed k is the same on every
    platform and independent of how many trials run or in which order.

    Arguments
    ---------
    seed : int
        Master seed
    trial : int or None
        Trial index; None uses the master stream directly.

    Returns
    -------
    rng : numpy.random.Generator
    """
    import numpy as np
    if trial is None:
        ss = np.random.SeedSequence(int(seed))
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.Philox(ss))


def parse_grid(txt):
    """
    Parse a numeric grid.

    Accepts comma separated values (0,0.1,0.3) or start:stop:num which is
    expanded with numpy.linspace (inclusive of stop).

    Returns
    -------
    grid : list of float
    """
    import numpy as np
    txt = str(txt).strip()
    if txt == '':
        raise ValueError('empty grid')
    if ':' in txt:
        parts = txt.split(':')
        if len(parts) != 3:
            raise ValueError(f'grid {txt!r} must be start:stop:num')
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        if num < 1:
            raise ValueError(f'grid {txt!r} needs num >= 1')
        return [float(v) for v in np.linspace(start, stop, num)]
    return [float(v) for v in txt.replace(' ', '').split(',') if v != '']


def check_outpath(outpath, overwrite):
    """
    Remove outpath if overwrite, otherwise refuse to clobber it.
    """
    import os
    if os.path.exists(outpath):
        if overwrite:
            os.remove(outpath)
        else:
            raise IOError(f'{outpath} exists; use -O or --overwrite to force')
