"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled backend (``luandri.kernels._native``, built from Cython) is
preferred; set ``LUANDRI_PURE_PYTHON=1`` to force the fallback.  Both expose
the same four functions and must agree bit-for-bit; ``BACKEND`` names the one
in use.
"""

import os

if os.environ.get("LUANDRI_PURE_PYTHON"):
    from luandri.kernels.pure import (  # noqa: F401
        BACKEND,
        decode_postings_block,
        leaf_scores,
        ordered_window_matches,
        unordered_window_matches,
    )
else:
    try:
        from luandri.kernels._native import (  # noqa: F401
            BACKEND,
            decode_postings_block,
            leaf_scores,
            ordered_window_matches,
            unordered_window_matches,
        )
    except ImportError:
        from luandri.kernels.pure import (  # noqa: F401
            BACKEND,
            decode_postings_block,
            leaf_scores,
            ordered_window_matches,
            unordered_window_matches,
        )
