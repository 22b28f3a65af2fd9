"""Compact traces of Kottwitz functions on GL_n via weighted Dyck paths."""

from .exactq import QPoly, from_text, poly_eval, poly_order, to_text
from .satake import kottwitz_composite, kottwitz_simple
from .zel import SpehSpec
from .traces import (trace_rigid_local, trace_speh, trace_speh_tadic_oracle,
                     trace_standard, trace_steinberg, trace_trivial)

__version__ = "0.1.0"
