"""Hot-loop kernels with a compiled core and a pure-numpy fallback.

The mode-sum synthesis dominates runtime for large grids, so it is
implemented twice: a Cython extension (built by setup.py) and a numpy
version with identical semantics. The compiled one is preferred when the
import succeeds; benchmarks/bench_kernels.py compares the two.
"""

from . import _modesum_py

try:  # pragma: no cover - depends on the build environment
    from . import _modesum as _impl

    USING_COMPILED = True
except ImportError:  # pragma: no cover
    _impl = _modesum_py
    USING_COMPILED = False

synth_grid = _impl.synth_grid
synth_grid_python = _modesum_py.synth_grid

__all__ = ["synth_grid", "synth_grid_python", "USING_COMPILED"]
