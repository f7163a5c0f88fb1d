"""Gazetteer-aware sequence labeling: matching, CRF training, evaluation."""

try:
    from ._gazlab import *  # noqa: F401,F403
    from ._gazlab import __doc__  # noqa: F401
except ImportError:  # extension on sys.path directly (in-tree builds)
    from _gazlab import *  # noqa: F401,F403
    from _gazlab import __doc__  # noqa: F401
