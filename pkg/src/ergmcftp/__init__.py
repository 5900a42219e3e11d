"""Perfect sampling of exponential random graph models by monotone coupling
from the past, with a forward Glauber baseline and an exact small-graph oracle."""
from .cftp import CftpResult, CoalescenceError, RandomnessStream, backward_map, run_cftp, run_cftp_batch
from .graph import EdgeSlot, Graph, complete_graph, edge_slots, empty_graph, leq, with_edge
from .mcmc import ChainTrace, empirical_coalescence_curve, erdos_renyi, forward_run
from .model import ErgmModel, NotMonotoneError, glauber_p1, glauber_update, is_monotone, log_weight
from .motifs import EDGE, TRIANGLE, TWO_STAR, Motif, change_statistic, count_motif, count_motif_at_edge, parse_motif
from .oracle import dbar_curve, exact_distribution, exact_t_mix, exact_transition_matrix, tv_distance

__version__ = "0.1.0"
