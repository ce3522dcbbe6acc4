"""Multiset batch codes from bipartite graphs of girth at least 8."""
from .bigraph import BiGraph, degree_profile, girth, has_four_cycle, has_six_cycle
from .code import RepairGroup, SystematicCode, code_from_graph
from .constructions import (build_gq, gq_incidence, lazebnik, replication, split_left,
                            zigzag)
from .fault import ComposedCode, MdsCode, compose, erasure_recover, min_distance, rs_systematic
from .gf import Field, FieldElement, field_make, frobenius
from .scheduler import (Assignment, Plan, RequestPattern, oracle_feasible, schedule,
                        verify_assignment)
from .sim import SimReport, Workload, simulate, tradeoff_table
from .storage import BucketStore, serve, store

__version__ = "0.1.0"
