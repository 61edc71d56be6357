"""Maximal independent branching packings in matroid-rooted digraphs."""

from .digraph import Digraph, Edge, Path, emit_dot
from .errors import BranchpackError, PreconditionError, SchemaError
from .fixtures import Bounds, fig1_truncate, fig2_truncate, fig3_truncate, gen_random
from .linkage import (
    Linkage,
    TGoodCertificate,
    check_complementarity,
    check_linkage_condition,
    find_dangerous_for,
    is_dangerous,
    is_t_good,
    is_tight,
    largest_t_good,
    max_linkage,
)
from .matroid import DirectSum, Explicit, Free, LinearQ, Matroid, Minor, Partition, Uniform
from .oracle import verify_packing
from .packing import Branching, Packing, augment_at, find_feasible, is_feasible, schedule, solve
from .rooted import ExtensionStep, RootedDigraph
from .serialize import InstanceDoc, emit_instance, parse_instance

__version__ = "0.1.0"
