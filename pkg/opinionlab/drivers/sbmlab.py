from . import optutils


def sbm(
    mode, n, p, q, q_grid, trials, expected, seed, workers, out_dir,
    overwrite, verbose=0, config=None
):
    """
    SBM studies.

    Arguments
    ---------
    mode : str
        verify writes sbm_verify.csv with one ratio per trial (see
        opinionlab.sbm.verify_fragile_consensus); sweep writes
        sbm_sweep.csv with one row per q in q_grid.
    n : int
        Community size
    p, q : float
        In- and cross-community probabilities (q is unused by sweep)
    q_grid : list of float or None
        Required for sweep
    trials : int
    expected : bool
        verify only; use the expected adjacency instead of samples
    seed : int or None
        Defaults to $OPINIONLAB_SEED or 0
    workers : int or None
    out_dir : str
    overwrite : bool

    Results
    -------
    status : int
        0
    """
    from .. import sbm as sbmlib
    from ..utils import resolve_seed

    seed = resolve_seed(seed)
    if mode == 'verify':
        params = sbmlib.SbmParams(n, p, q, seed)
        outpath, = optutils.prepare_outputs(
            out_dir, ['sbm_verify.csv'], overwrite
        )
        report = sbmlib.verify_fragile_consensus(
            params, trials=trials, expected=expected, workers=workers,
            verbose=verbose
        )
        optutils.write_csv(report.to_frame(), outpath)
    elif mode == 'sweep':
        if q_grid is None:
            raise ValueError('sbm sweep requires --q-grid')
        outpath, = optutils.prepare_outputs(
            out_dir, ['sbm_sweep.csv'], overwrite
        )
        df = sbmlib.fragile_consensus_sweep(
            n, p, q_grid, trials=trials, seed=seed, workers=workers,
            verbose=verbose
        )
        optutils.write_csv(df, outpath)
    else:
        raise KeyError('mode must be verify or sweep')
    return 0


def add_sbm_parser(subparsers):
    sbmparser = subparsers.add_parser(
        'sbm',
        help=(
            'Verify the SBM polarization bound by Monte Carlo (verify) or'
            + ' sweep polarization over q (sweep).'
        )
    )
    optutils.add_common_arguments(sbmparser)
    sbmparser.add_argument('--n', default=250, type=int, help='Community size')
    sbmparser.add_argument(
        '--p', default=0.1, type=float, help='In-community probability'
    )
    sbmparser.add_argument(
        '--q', default=0.02, type=float, help='Cross-community probability'
    )
    sbmparser.add_argument(
        '--q-grid', default=None, type=optutils.probability_grid_type,
        help='sweep: comma separated or start:stop:num values of q'
    )
    sbmparser.add_argument('--trials', default=50, type=int)
    sbmparser.add_argument(
        '--expected', default=False, action='store_true',
        help='verify: use the expected adjacency for every trial'
    )
    sbmparser.add_argument(
        '--seed', default=None, type=int,
        help='Master seed; defaults to $OPINIONLAB_SEED or 0'
    )
    sbmparser.add_argument(
        '--workers', default=None, type=int,
        help='Parallel trials; defaults to the number of cores'
    )
    sbmparser.add_argument('mode', choices=('verify', 'sweep'))
