"""Graphs with no short odd cycles: low-diameter partitions with vertex
separators, bipartization by guard deletion, and layered independent sets."""

from .bipartize import (BipartizationResult, RemovalBounds, bipartize, bipartize_by_fraction,
                        remaining_graph, removal_bound)
from .errors import *  # noqa: F401,F403
from .generators import (GenSpec, gen_complete_bipartite, gen_cycle, gen_cycle_blowup, gen_gnp,
                         gen_path, gen_random_bipartite, gen_subdivision, generate)
from .graph import (Bipartition, Graph, LayerDecomposition, bfs_layers, connected_components,
                    format_graph, from_edge_list, independence_violation, is_bipartite,
                    is_independent_set, parse_graph, parse_graph_text, write_graph)
from .indset import (HarvestResult, HarvestRound, HarvestTrace, k_root_ceil,
                     layered_greedy_independent_set, size_guarantee)
from .oddcycle import (INF, brute_force_max_independent_set, brute_force_odd_girth, is_valid_cycle, odd_girth,
                       reduce_odd_walk, shortest_odd_cycle)
from .partition import (Partition, PartitionParams, cross_edge_mask, cross_edges, guard_probability_oracle, guards,
                        sample_partition)
from .rng import PRNG_ID, mix

__version__ = "0.1.0"
