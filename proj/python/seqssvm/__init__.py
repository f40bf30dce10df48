"""Chain-structured max-margin sequence labeling with constraint-driven
semi-supervised training."""

try:
    from ._seqssvm import *  # noqa: F401,F403  installed layout
    from . import _seqssvm as _impl
except ImportError:  # build-tree layout: extension sits next to the package on sys.path
    from _seqssvm import *  # noqa: F401,F403
    import _seqssvm as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
