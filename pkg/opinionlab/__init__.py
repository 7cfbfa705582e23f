__all__ = [
    'utils', 'graph', 'dynamics', 'metrics', 'sbm', 'admin', 'drivers',
    'weightedgraph', 'fj_equilibrium', 'metrics_report', 'constraintset',
    'admin_step', 'admin_dynamics', 'SbmParams'
]

__doc__ = """
Overview
========

opinionlab studies Friedkin-Johnsen opinion dynamics on weighted social
graphs and a network administrator who rewires the graph to reduce
disagreement. It has four basic pieces:
  1. Compute equilibrium opinions z* = (L + I)^-1 s for innate opinions s,
  2. measure polarization, disagreement and internal conflict of z*,
  3. alternate equilibria with administrator updates of the weights under
     a degree-preserving, Frobenius-bounded constraint set, and
  4. check the polarization of two-community stochastic block models
     against its expected-graph closed form.

Core Objects
============

  * weightedgraph : immutable symmetric weighted graph.
  * fj_equilibrium : equilibrium opinions.
  * metrics_report : polarization, disagreement and internal conflict.
  * constraintset : the administrator's feasible set.
  * admin_step, admin_dynamics : administrator update and alternating run.
  * SbmParams : two-community SBM parameters.

Filter Bubble Example
=====================

    # Import Libraries
    import opinionlab as opl

    # Sampled SBM with 100 nodes per community and polarized opinions
    params = opl.SbmParams(n=100, p=0.1, q=0.05, seed=0)
    g0 = opl.sbm.sbm_generate(params)
    s = opl.sbm.polarized_opinions(params.n)

    # Equilibrium before the administrator acts
    z0 = opl.fj_equilibrium(g0, s)
    print(opl.metrics_report(g0, z0, s))

    # Let the administrator change up to 30% of the Frobenius norm
    traj = opl.admin_dynamics(g0, s, epsilon=0.3)
    print(traj.final_report.polarization / opl.metrics.polarization(z0))

    # Per-round metrics and weights
    traj.to_frame().to_csv('rounds.csv', index=False)
    traj.to_dataset().to_netcdf('rounds.nc')

Command line
============

    opinionlab equilibrium --graph g.edges --opinions s.txt
    opinionlab admin-sweep --sbm 100,0.1,0.05 --epsilon-grid 0,0.1,0.3,0.5
    opinionlab reg-sweep --sbm 100,0.1,0.05 --gamma 0.2
    opinionlab sbm verify --n 250 --p 0.1 --q 0.02 --trials 50
    opinionlab sbm sweep --n 250 --p 0.1 --q-grid 0.02:0.08:4 --trials 20
    opinionlab ingest-check --graph g.edges --opinions z.txt
"""

__version__ = '0.1.0'

from . import utils
from . import graph
from . import dynamics
from . import metrics
from . import sbm
from . import admin
from . import drivers

weightedgraph = graph.weightedgraph
fj_equilibrium = dynamics.fj_equilibrium
metrics_report = metrics.metrics_report
constraintset = admin.constraintset
admin_step = admin.admin_step
admin_dynamics = admin.admin_dynamics
SbmParams = sbm.SbmParams
