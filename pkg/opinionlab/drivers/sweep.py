import pandas as pd
from . import optutils


sweep_columns = [
    'epsilon', 'gamma', 'pol_ratio', 'disagreement_ratio', 'polarization',
    'disagreement', 'rounds', 'converged', 'stop_reason', 'status'
]


def _eps_label(eps):
    return f'{eps:g}'


def change_ratio(value, baseline):
    """
    value / baseline, with 0 / 0 defined as 1 and x / 0 as inf.
    """
    import numpy as np
    if value == baseline:
        return 1.
    with np.errstate(divide='ignore', invalid='ignore'):
        return float(np.divide(np.float64(value), np.float64(baseline)))


def _sweep_point(task):
    # module level so multiprocessing can pickle it
    import numpy as np
    from ..graph import weightedgraph
    from .. import admin

    weights, s, eps, support, cfg, baseline = task
    g0 = weightedgraph(weights)
    pol0, dis0 = baseline
    try:
        traj = admin.admin_dynamics(
            g0, s, cfg=cfg, epsilon=eps, support=support, store_weights=False
        )
        rep = traj.final_report
        row = (
            eps, cfg.gamma, change_ratio(rep.polarization, pol0),
            change_ratio(rep.global_disagreement, dis0), rep.polarization,
            rep.global_disagreement, len(traj) - 1, traj.converged,
            traj.stop_reason, 'ok'
        )
        return row, traj.to_frame(), traj.final_weights
    except Exception as e:
        row = (
            eps, cfg.gamma, np.nan, np.nan, np.nan, np.nan, 0, False, '',
            f'failed: {e}'
        )
        return row, None, None


def run_sweep(
    g0, s, epsilon_grid, cfg, support='full', workers=None, verbose=0
):
    """
    Run admin_dynamics once per epsilon and compare each final equilibrium
    with the untouched graph's equilibrium.

    Arguments
    ---------
    g0 : weightedgraph
    s : numpy.ndarray
        Innate opinions
    epsilon_grid : list of float
    cfg : opinionlab.admin.AdminConfig
    support : str
        full or original
    workers : int or None
        Process pool size; None uses os.cpu_count(). Rows are always in grid
        order.
    verbose : int

    Returns
    -------
    summary : pandas.DataFrame
        Columns in sweep_columns order
    trajectories : list of pandas.DataFrame or None
    finals : list of numpy.ndarray or None
    """
    import os
    from ..dynamics import fj_equilibrium
    from ..metrics import polarization, global_disagreement

    z0 = fj_equilibrium(g0, s, cfg=cfg.fj)
    baseline = (polarization(z0), global_disagreement(g0, z0))
    if verbose > 0:
        print(
            f'baseline: P={baseline[0]:.6g} D={baseline[1]:.6g}', flush=True
        )
    tasks = [
        (g0.weights, s, eps, support, cfg, baseline) for eps in epsilon_grid
    ]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(tasks) <= 1:
        results = [_sweep_point(task) for task in tasks]
    else:
        from multiprocessing import Pool
        with Pool(min(int(workers), len(tasks))) as pool:
            results = pool.map(_sweep_point, tasks)
    rows, trajs, finals = zip(*results)
    summary = pd.DataFrame(list(rows), columns=sweep_columns)
    if verbose > 0:
        print(summary.to_string(index=False), flush=True)
    return summary, list(trajs), list(finals)


def _sweep_inputs(
    graph, opinions, nodes, opinions_are_expressed, sbm, seed
):
    if sbm is not None:
        from ..sbm import SbmParams, sbm_generate, polarized_opinions
        from ..utils import resolve_seed
        n, p, q = sbm
        params = SbmParams(n, p, q, resolve_seed(seed))
        return sbm_generate(params), polarized_opinions(n)
    if graph is None or opinions is None:
        raise ValueError('provide --graph and --opinions, or --sbm N,P,Q')
    return optutils.load_inputs(graph, opinions, nodes, opinions_are_expressed)


def _admin_config(
    gamma, max_rounds, outer_tolerance, inner_max_iters, inner_tolerance,
    dykstra_max_iters, dykstra_tolerance
):
    from ..admin import AdminConfig
    return AdminConfig(
        gamma=gamma, outer_max_rounds=max_rounds,
        outer_tolerance=outer_tolerance, inner_max_iters=inner_max_iters,
        inner_tolerance=inner_tolerance, dykstra_max_iters=dykstra_max_iters,
        dykstra_tolerance=dykstra_tolerance
    )


def _sweep_command(
    prefix, graph, opinions, nodes, opinions_are_expressed, sbm, seed,
    epsilon_grid, gamma, support, workers, max_rounds, outer_tolerance,
    inner_max_iters, inner_tolerance, dykstra_max_iters, dykstra_tolerance,
    out_dir, overwrite, verbose
):
    from ..graph import weightedgraph, write_edge_list
    from ..utils import opl_version

    cfg = _admin_config(
        gamma, max_rounds, outer_tolerance, inner_max_iters, inner_tolerance,
        dykstra_max_iters, dykstra_tolerance
    )
    g0, s = _sweep_inputs(
        graph, opinions, nodes, opinions_are_expressed, sbm, seed
    )
    names = [f'{prefix}.csv']
    for eps in epsilon_grid:
        label = _eps_label(eps)
        names.append(f'{prefix}_trajectory_eps{label}.csv')
        names.append(f'{prefix}_graph_eps{label}.edges')
    paths = optutils.prepare_outputs(out_dir, names, overwrite)
    summary, trajs, finals = run_sweep(
        g0, s, epsilon_grid, cfg, support=support, workers=workers,
        verbose=verbose
    )
    optutils.write_csv(summary, paths[0])
    for k, eps in enumerate(epsilon_grid):
        if trajs[k] is None:
            continue
        optutils.write_csv(trajs[k], paths[1 + 2 * k])
        write_edge_list(
            weightedgraph(finals[k]), paths[2 + 2 * k],
            header=f'opinionlab {opl_version()}\nepsilon={_eps_label(eps)}'
        )
    nfail = int((summary['status'] != 'ok').sum())
    if nfail > 0:
        print(f'{prefix}: {nfail} of {len(summary)} runs failed', flush=True)
        return 1
    return 0


def admin_sweep(
    graph, opinions, nodes, opinions_are_expressed, sbm, seed, epsilon_grid,
    gamma, support, workers, max_rounds, outer_tolerance, inner_max_iters,
    inner_tolerance, dykstra_max_iters, dykstra_tolerance, out_dir,
    overwrite, verbose=0, config=None
):
    """
    Network administrator epsilon sweep.

    Writes admin_sweep.csv (one row per epsilon with pol_ratio and
    disagreement_ratio against the untouched graph), plus a per-epsilon
    trajectory csv and final edge list.

    Results
    -------
    status : int
        0 if every epsilon completed, otherwise 1
    """
    return _sweep_command(
        'admin_sweep', graph, opinions, nodes, opinions_are_expressed, sbm,
        seed, epsilon_grid, gamma, support, workers, max_rounds,
        outer_tolerance, inner_max_iters, inner_tolerance, dykstra_max_iters,
        dykstra_tolerance, out_dir, overwrite, verbose
    )


def reg_sweep(
    graph, opinions, nodes, opinions_are_expressed, sbm, seed, epsilon_grid,
    gamma, support, workers, max_rounds, outer_tolerance, inner_max_iters,
    inner_tolerance, dykstra_max_iters, dykstra_tolerance, out_dir,
    overwrite, verbose=0, config=None
):
    """
    Same as admin_sweep with the gamma ||W||_F^2 regularizer; gamma must be
    positive. Outputs use the reg_sweep prefix.
    """
    if not gamma > 0:
        raise ValueError(f'reg-sweep requires gamma > 0; got {gamma}')
    return _sweep_command(
        'reg_sweep', graph, opinions, nodes, opinions_are_expressed, sbm,
        seed, epsilon_grid, gamma, support, workers, max_rounds,
        outer_tolerance, inner_max_iters, inner_tolerance, dykstra_max_iters,
        dykstra_tolerance, out_dir, overwrite, verbose
    )


def _add_sweep_arguments(cmdparser, gamma):
    optutils.add_common_arguments(cmdparser)
    optutils.add_input_arguments(cmdparser, required=False)
    cmdparser.add_argument(
        '--sbm', default=None, type=optutils.sbm_type, metavar='N,P,Q',
        help=(
            'Use a sampled two-community SBM with N nodes per community and'
            + ' polarized innate opinions instead of --graph/--opinions'
        )
    )
    cmdparser.add_argument(
        '--seed', default=None, type=int,
        help='SBM seed; defaults to $OPINIONLAB_SEED or 0'
    )
    cmdparser.add_argument(
        '--epsilon-grid', default=[0., 0.1, 0.3, 0.5],
        type=optutils.grid_type,
        help='Comma separated or start:stop:num; ascending and >= 0'
    )
    cmdparser.add_argument(
        '--gamma', default=gamma, type=float,
        help='Frobenius regularization strength'
    )
    cmdparser.add_argument(
        '--support', default='full', choices=('full', 'original'),
        help='full lets the administrator add edges; original does not'
    )
    cmdparser.add_argument(
        '--workers', default=None, type=int,
        help='Parallel sweep points; defaults to the number of cores'
    )
    cmdparser.add_argument(
        '--max-rounds', default=100, type=int,
        help='Administrator rounds per epsilon'
    )
    cmdparser.add_argument('--outer-tolerance', default=1e-6, type=float)
    cmdparser.add_argument('--inner-max-iters', default=5000, type=int)
    cmdparser.add_argument('--inner-tolerance', default=1e-8, type=float)
    cmdparser.add_argument('--dykstra-max-iters', default=2000, type=int)
    cmdparser.add_argument('--dykstra-tolerance', default=1e-10, type=float)


def add_sweep_parsers(subparsers):
    adminparser = subparsers.add_parser(
        'admin-sweep',
        help='Run network administrator dynamics over an epsilon grid.'
    )
    _add_sweep_arguments(adminparser, gamma=0.)
    regparser = subparsers.add_parser(
        'reg-sweep',
        help=(
            'Run regularized network administrator dynamics over an epsilon'
            + ' grid (gamma > 0).'
        )
    )
    _add_sweep_arguments(regparser, gamma=0.2)
