__all__ = [
    'equilibrium', 'ingest', 'sweep', 'sbmlab', 'make_parser', 'parser',
    'parse_args', 'main'
]

from . import equilibrium
from . import ingest
from . import sweep
from . import sbmlab
import argparse


commands = {
    'equilibrium': equilibrium.equilibrium,
    'ingest-check': ingest.ingest_check,
    'admin-sweep': sweep.admin_sweep,
    'reg-sweep': sweep.reg_sweep,
    'sbm': sbmlab.sbm,
}


def make_parser():
    myparser = argparse.ArgumentParser(prog='opinionlab')
    subparsers = myparser.add_subparsers(
        dest='command', title='subcommands',
        description='Valid subcommands are shown below:',
        help='For help on subcommands run %(prog)s subcommand -h'
    )
    equilibrium.add_equilibrium_parser(subparsers)
    ingest.add_ingest_parser(subparsers)
    sweep.add_sweep_parsers(subparsers)
    sbmlab.add_sbm_parser(subparsers)
    return myparser, subparsers


parser, _subparsers = make_parser()


def _with_config(args, kwargs):
    """
    Re-parse args with the --config file as subcommand defaults, so that
    command-line flags still win.
    """
    from ..utils import read_config
    opts = read_config(kwargs['config'])
    myparser, subparsers = make_parser()
    cmdparser = subparsers.choices[kwargs['command']]
    unknown = sorted(set(opts) - set(kwargs))
    if len(unknown) > 0:
        cmdparser.error(
            f'unknown keys in {kwargs["config"]}: ' + ', '.join(unknown)
        )
    cmdparser.set_defaults(**opts)
    return vars(myparser.parse_args(args))


def parse_args(args, run=True, noexit=True):
    """
    args : list
        Like argparse.ArgumentParser.parse_args (use '-h' for more details)
    run : bool
        If True, run the commands. Otherwise simply return the kwargs.
    noexit : bool
        By default, do not exits on error. If running from CLI, noexit should
        be False

    Returns
    -------
    out : int or dict
        Exit status of the command (0 when every run completed), the kwargs
        if run is False, or the argparse exit code on a usage error when
        noexit is True.
    """
    try:
        kwargs = vars(parser.parse_args(args))
        if kwargs.get('config') is not None:
            kwargs = _with_config(args, kwargs)
        cmdname = kwargs.pop('command')
        if cmdname is None:
            parser.print_usage()
            return 1
        if not run:
            return kwargs
        return commands[cmdname](**kwargs)
    except SystemExit as e:
        if not noexit:
            raise e
        else:
            print(repr(e))
            return e.code


def main(args=None):
    import sys
    from ..utils import ConvergenceError
    try:
        status = parse_args(args, noexit=False)
    except (ValueError, KeyError, IOError, ConvergenceError) as e:
        print(f'opinionlab: error: {e}', file=sys.stderr, flush=True)
        status = 1
    sys.exit(status or 0)
