"""Kernel selection: compiled lane when available, numpy reference otherwise.

Set FANOLINES_PURE=1 to force the reference lane (used by the benchmark and
to reproduce results on installs without a compiler).
"""

import os

from . import ref

HAVE_SPEED = False
if not os.environ.get("FANOLINES_PURE"):
    try:
        from . import speed as _speed
        HAVE_SPEED = True
    except ImportError:
        _speed = None

if HAVE_SPEED:
    count_zero_groups = _speed.count_zero_groups
    eval_form_at_points = _speed.eval_form_at_points
else:
    count_zero_groups = ref.count_zero_groups
    eval_form_at_points = ref.eval_form_at_points

zero_group_mask = ref.zero_group_mask

__all__ = ["HAVE_SPEED", "count_zero_groups", "eval_form_at_points",
           "zero_group_mask", "ref"]
