"""Hot inner loops, compiled when the extension is built.

Set ``LOOPLANG_PURE=1`` to force the pure-Python implementations.
"""

import os

from . import _pykernels as pure

BACKEND = "python"
if not os.environ.get("LOOPLANG_PURE"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = pure
else:
    _impl = pure

refine_partition = _impl.refine_partition
run_dfa_batch = _impl.run_dfa_batch
language_layer = _impl.language_layer
compose_relations = _impl.compose_relations
