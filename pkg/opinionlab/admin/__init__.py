__all__ = [
    'constraintset', 'AdminConfig', 'admintrajectory', 'roundrecord',
    'feasibility_violations', 'is_feasible', 'project_feasible',
    'project_vector', 'admin_step', 'admin_dynamics', 'admin_objective'
]

from .core import (
    constraintset, AdminConfig, admintrajectory, roundrecord,
    feasibility_violations, is_feasible
)
from .projection import project_feasible, project_vector
from .solver import admin_step, admin_dynamics, admin_objective
