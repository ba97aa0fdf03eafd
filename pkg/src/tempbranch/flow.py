"""Backend selection for the max-flow kernel.

The compiled ``_flow_ext`` module is used when it was built; otherwise the
pure-Python twin is loaded.  Set ``TEMPBRANCH_PURE_PYTHON=1`` to force the
fallback.
"""

import os

if os.environ.get("TEMPBRANCH_PURE_PYTHON"):
    from ._flow_py import FlowNetwork

    BACKEND = "python"
else:
    try:
        from ._flow_ext import FlowNetwork

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from ._flow_py import FlowNetwork

        BACKEND = "python"

__all__ = ["FlowNetwork", "BACKEND"]
