"""Simulation, mean-field analysis and fitting of citation network growth models."""

from reforcite.graph import EvolvingDigraph, SnapshotSchedule, degree_views
from reforcite.models import (
    CP,
    CPT,
    PA,
    EdgeBudgetExceeded,
    ForestFire,
    RefOrCite1,
    RefOrCite2,
    grow,
    grow_cp,
    grow_cpt,
    grow_forest_fire,
    grow_pa,
    grow_reforcite1,
    grow_reforcite2,
)

__version__ = "0.1.0"

__all__ = [
    "CP",
    "CPT",
    "PA",
    "EdgeBudgetExceeded",
    "EvolvingDigraph",
    "ForestFire",
    "RefOrCite1",
    "RefOrCite2",
    "SnapshotSchedule",
    "degree_views",
    "grow",
    "grow_cp",
    "grow_cpt",
    "grow_forest_fire",
    "grow_pa",
    "grow_reforcite1",
    "grow_reforcite2",
]
