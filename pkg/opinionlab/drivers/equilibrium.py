import pandas as pd
from . import optutils


def equilibrium(
    graph, opinions, nodes, opinions_are_expressed, method, out_dir,
    overwrite, verbose=0, config=None
):
    """
    Solve for the equilibrium of a graph and write opinions and metrics.

    Arguments
    ---------
    graph : str
        Path to the edge list
    opinions : str
        Path to the opinion file
    nodes : int or None
        Node count; defaults to the number of opinions
    opinions_are_expressed : bool
        If True, recover innate opinions from the file first.
    method : str
        auto, direct or cg
    out_dir : str
        Output directory
    overwrite : bool
        Overwrite existing files?

    Results
    -------
    status : int
        0; outputs are equilibrium_opinions.csv (node, s, z) and
        equilibrium_metrics.csv (one MetricsReport row).
    """
    from ..dynamics import FjSolverConfig, fj_equilibrium
    from ..metrics import metrics_report, report_frame

    g, s = optutils.load_inputs(graph, opinions, nodes, opinions_are_expressed)
    optpath, metpath = optutils.prepare_outputs(
        out_dir, ['equilibrium_opinions.csv', 'equilibrium_metrics.csv'],
        overwrite
    )
    if verbose > 0:
        print(f'Loaded {g}', flush=True)
    cfg = FjSolverConfig(method=method)
    z = fj_equilibrium(g, s, cfg=cfg, verbose=verbose)
    report = metrics_report(g, z, s)
    zdf = pd.DataFrame(dict(node=range(g.n), s=s, z=z))
    optutils.write_csv(zdf, optpath)
    optutils.write_csv(report_frame([report]), metpath)
    if verbose > 0:
        print(report, flush=True)
    return 0


def add_equilibrium_parser(subparsers):
    eqparser = subparsers.add_parser(
        'equilibrium',
        help=(
            'Compute equilibrium opinions (L + I)^-1 s and their polarization,'
            + ' disagreement and internal conflict.'
        )
    )
    optutils.add_common_arguments(eqparser)
    optutils.add_input_arguments(eqparser)
    eqparser.add_argument(
        '--method', default='auto', choices=('auto', 'direct', 'cg'),
        help='Linear solver; auto uses direct up to 2000 nodes'
    )
