"""Democratic spectrum sharing: simulator and analysis toolkit.

Wireless APs on an interference graph decide which OFDM sub-bands to
occupy by voting with their neighbors - social first, selfish only when a
datarate threshold demands it - and the result is compared against the
greedy occupy-everything baseline on datarate, fairness and area spectral
efficiency, over synthetic Poisson deployments and real AP datasets.
"""

from .deploy import (DatasetError, GridCell, Region, generate_ppp,
                     generate_uniform, ingest_ap_csv,
                     nearest_neighbor_distances, partition_grid,
                     project_lonlat_to_meters, save_nodes_csv)
from .engine import (TraceRecord, TriggerEvent, on_trigger, run_dss,
                     run_greedy, selfish_escalation, social_decision,
                     tally_votes, thresholds_from_greedy)
from .experiments import (SampleResult, SweepRow, SweepSpec, run_geo_analysis,
                          run_sample_network, run_scheme_pair,
                          run_synthetic_sweep)
from .graph import InterferenceGraph, build_graph, edge_weight, save_edges_csv
from .kernel import BACKEND as KERNEL_BACKEND
from .link import (NetworkState, Scope, estimate_qos, node_rate, path_gain,
                   signal_power, sinr, spectral_efficiency)
from .metrics import (MetricReport, area_spectral_efficiency, improvement,
                      jain_fairness, rate_ccdf, summarize)
from .model import (AllocationResult, ConfigError, Node, NodeSet, RadioConfig,
                    Scheme, SimConfig, full_occupation, is_valid_sbos,
                    load_config, validate_config)

__version__ = "0.1.0"
