import argparse
import os


def grid_type(txt):
    """
    argparse type for a nonnegative, ascending epsilon grid.
    """
    from ..utils import parse_grid
    try:
        grid = parse_grid(txt)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if any(v < 0 for v in grid):
        raise argparse.ArgumentTypeError(f'grid values must be >= 0: {txt}')
    if grid != sorted(grid):
        raise argparse.ArgumentTypeError(f'grid must be ascending: {txt}')
    return grid


def probability_grid_type(txt):
    """
    argparse type for a grid of probabilities in [0, 1].
    """
    from ..utils import parse_grid
    try:
        grid = parse_grid(txt)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if any(not 0 <= v <= 1 for v in grid):
        raise argparse.ArgumentTypeError(
            f'probabilities must be in [0, 1]: {txt}'
        )
    return grid


def sbm_type(txt):
    """
    argparse type for N,P,Q describing an SBM surrogate input.
    """
    parts = txt.split(',')
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f'expected N,P,Q; got {txt}')
    try:
        n, p, q = int(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected N,P,Q; got {txt}')
    if n < 1 or not (0 <= p <= 1 and 0 <= q <= 1):
        raise argparse.ArgumentTypeError(f'invalid SBM parameters {txt}')
    return (n, p, q)


def add_common_arguments(cmdparser):
    cmdparser.add_argument(
        '-O', '--overwrite', default=False, action='store_true',
        help='Existing outputs in --out-dir will be removed first'
    )
    cmdparser.add_argument(
        '--out-dir', default='.', help='Directory for output files'
    )
    cmdparser.add_argument(
        '--config', default=None,
        help=(
            'Flat key = value file; keys are long option names and override'
            + ' built-in defaults but not command-line flags'
        )
    )
    cmdparser.add_argument(
        '--verbose', '-v', default=0, action='count',
        help='Increase progress output'
    )


def add_input_arguments(cmdparser, required=True):
    cmdparser.add_argument(
        '--graph', required=required, default=None,
        help='Edge list with one "i j w" line per edge (0-based nodes)'
    )
    cmdparser.add_argument(
        '--opinions', required=required, default=None,
        help='One opinion per line; values are clamped to [-1, 1]'
    )
    cmdparser.add_argument(
        '--nodes', default=None, type=int,
        help='Number of nodes; defaults to the number of opinions'
    )
    cmdparser.add_argument(
        '--opinions-are-expressed', default=False, action='store_true',
        help=(
            'Treat --opinions as expressed equilibrium opinions and recover'
            + ' innate opinions as clamp((L + I) z)'
        )
    )


def load_inputs(graph, opinions, nodes=None, opinions_are_expressed=False):
    """
    Read an edge list and opinion file.

    Returns
    -------
    g : weightedgraph
    s : numpy.ndarray
        Innate opinions (recovered when opinions_are_expressed)
    """
    from ..graph import load_edge_list, load_opinions, count_opinions
    from ..graph import recover_innate
    n = nodes
    if n is None:
        n = count_opinions(opinions)
    g = load_edge_list(graph, n)
    values = load_opinions(opinions, n)
    if opinions_are_expressed:
        return g, recover_innate(g, values)
    return g, values


def version_line():
    from ..utils import opl_version
    return f'# opinionlab {opl_version()}\n'


def prepare_outputs(out_dir, names, overwrite):
    """
    Create out_dir and clear (or refuse to clobber) every output path.

    Returns
    -------
    paths : list of str
    """
    from ..utils import check_outpath
    os.makedirs(out_dir, exist_ok=True)
    paths = [os.path.join(out_dir, name) for name in names]
    for path in paths:
        check_outpath(path, overwrite)
    return paths


def write_csv(df, outpath):
    """
    Write df with a leading version comment line and no index.
    """
    with open(outpath, 'w', newline='') as outf:
        outf.write(version_line())
        df.to_csv(outf, index=False, float_format='%.17g', lineterminator='\n')
