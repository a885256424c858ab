"""Exact tools for N-detachable pairs in small matroids."""

from __future__ import annotations

from .connectivity import (
    blocks,
    cyclic_3_separations,
    enumerate_k_separations,
    fans,
    full_closure,
    guts_coguts,
    is_3_connected,
    is_n_connected,
    lambda_,
    vertical_3_separations,
)
from .constructions import (
    GraphSpec,
    WheelAttachmentSpec,
    attach_wheels_to_spike,
    common_spoke_wheels,
    delta_y,
    fano,
    gpc_triangle,
    graph_delta_y,
    graphic,
    k33k,
    non_fano,
    spike,
    two_sum,
    uniform,
    unhinged_multidim_wheel,
    wheel,
    whirl,
    y_delta,
)
from .errors import DetachkitError, MatroidError, ParseError, PreconditionError, SizeLimitError
from .example import paper_example_augmented_quad
from .fileformat import parse_matroid, write_matroid
from .isomorphism import find_isomorphism, is_isomorphic
from .matroid import Matroid, cosimplify, direct_sum, simplify
from .minors import (
    all_labellings,
    classify_elements,
    delta_y_detachable,
    detachable_pairs,
    has_minor,
    splitter_step,
    switch_class,
    unfortunate_sets,
)
from .separators import (
    SeparatorCertificate,
    augmentations,
    detect_all,
    find_double_quad_spider,
    find_plane_spikes,
    find_quad_plus_pair,
    find_quads,
    find_spike_like,
    find_twisted,
    find_vamos_like,
    is_problematic_augmentation,
    separator_connectivity_check,
    triangle_leg_check,
)
from .verify import TheoremOutcome, chain_scan, verify_graphic_theorem, verify_main_theorem

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_") and name not in ("annotations",)]
