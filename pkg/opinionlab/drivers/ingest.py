import pandas as pd
from . import optutils


ingest_columns = [
    'nodes', 'edges', 'total_weight', 'min_degree', 'max_degree',
    'isolated_nodes', 'components', 'min_opinion', 'max_opinion',
    'mean_opinion', 'clamped'
]


def summarize_inputs(g, raw_opinions, opinions_are_expressed=False):
    """
    One-row summary of a graph and its (unclamped) opinion values.

    Arguments
    ---------
    g : weightedgraph
    raw_opinions : numpy.ndarray
        Values as read from the opinion file
    opinions_are_expressed : bool
        If True, the opinion columns describe the recovered innate opinions
        clamp((L + I) z) with z the clamped file values, and clamped counts
        the recovered values that fell outside [-1, 1].

    Returns
    -------
    df : pandas.DataFrame
        Columns in ingest_columns order
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components
    from ..utils import clamp

    ncomp, _ = connected_components(csr_matrix(g.weights), directed=False)
    if opinions_are_expressed:
        z = clamp(raw_opinions)
        raw_opinions = g.laplacian() @ z + z
    clamped = clamp(raw_opinions)
    row = (
        g.n, g.num_edges, float(g.weights.sum() / 2), float(g.degrees.min()),
        float(g.degrees.max()), int((g.degrees == 0).sum()), int(ncomp),
        float(clamped.min()), float(clamped.max()), float(clamped.mean()),
        int((clamped != raw_opinions).sum())
    )
    return pd.DataFrame([row], columns=ingest_columns)


def ingest_check(
    graph, opinions, nodes, opinions_are_expressed, out_dir, overwrite,
    verbose=0, config=None
):
    """
    Validate input files and write ingest_check.csv.

    Any parse problem raises ValueError naming the file and line. With
    opinions_are_expressed the opinion range and clamp count describe the
    recovered innate opinions (see summarize_inputs).

    Results
    -------
    status : int
        0
    """
    from ..graph import load_edge_list, read_opinion_values

    raw = read_opinion_values(opinions)
    if raw.shape[0] == 0:
        raise ValueError(f'{opinions}: no opinion values')
    n = raw.shape[0] if nodes is None else nodes
    if raw.shape[0] != n:
        raise ValueError(
            f'{opinions}: found {raw.shape[0]} opinions; expected {n}'
        )
    g = load_edge_list(graph, n)
    df = summarize_inputs(g, raw, opinions_are_expressed)
    outpath, = optutils.prepare_outputs(
        out_dir, ['ingest_check.csv'], overwrite
    )
    optutils.write_csv(df, outpath)
    if verbose > 0:
        print(df.to_string(index=False), flush=True)
    return 0


def add_ingest_parser(subparsers):
    ingestparser = subparsers.add_parser(
        'ingest-check',
        help='Parse a graph and opinion file and summarize them in one row.'
    )
    optutils.add_common_arguments(ingestparser)
    optutils.add_input_arguments(ingestparser)
