"""Certified search for periodic billiard paths in triangles.

The package splits into an exact layer and a search layer.  ``sequences``,
``classify``, ``tower``, and ``numeric`` manipulate bounce codes and their
unfoldings symbolically over the rationals; ``prover`` turns those into
interval certificates and quadtree covers of the angle plane; ``oracle``
is an unverified floating-point simulator used only to cross-check.  The
``cli`` module exposes all of it as the ``billiardpath`` command.
"""

__version__ = "0.1.0"

from .classify import classify_code
from .corpus import load_corpus, load_default_corpus
from .oracle import find_orbit, trace
from .prover import Square, certify_square, cover, region_system
from .sequences import CodeSequence, SideSequence
from .tower import Triangle, test_I, test_II, test_III, unfold

__all__ = [
    "CodeSequence", "SideSequence", "Square", "Triangle", "certify_square",
    "classify_code", "cover", "find_orbit", "load_corpus",
    "load_default_corpus", "region_system", "test_I", "test_II", "test_III",
    "trace", "unfold", "__version__",
]
