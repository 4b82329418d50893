"""Exact counting of feedback arc sets, vertex covers and feedback vertex sets."""

from .contraction import card_fas, fas_spectrum_contracted
from .counting import (
    CapExceededError,
    MinimumCount,
    Spectrum,
    fas_spectrum_bruteforce,
    fas_spectrum_dp,
    fvs_spectrum,
    minimal_fas_count,
    minimum_of_spectrum,
    vc_spectrum,
)
from .gadgets import GadgetMap, karp_gadget, line_digraph, subdivision_gadget
from .graphs import (
    Digraph,
    GraphError,
    UGraph,
    is_acyclic,
    is_fas,
    is_vc,
    parse,
    random_digraph,
    random_ugraph,
    serialize,
)
from .reductions import (
    InconsistentOracleError,
    OracleTranscript,
    ReductionReport,
    SpectrumOracle,
    card_vc_via_card_fas,
    fas_spectrum_via_fas,
    minimum_fas_via_card_fas,
    verify_fvs_correspondence,
    verify_parsimonious_min,
    verify_partition_identity,
)

__version__ = "0.1.0"
