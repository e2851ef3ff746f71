"""Discrete asymptotic nets.

Co-normal fields through the Lelieuvre equations, compatible interpolating
quadric fields, constant affine mean curvature, and the Demoulin,
affine-sphere, affine-minimal, ruled and Q-surface characterizations.

The heavy lifting lives in the compiled extension ``asymnet._core``; this
package re-exports it and adds a couple of path-friendly helpers.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__, defaults  # noqa: F401
from . import _core


def load(path):
    """Load a NetDocument from a file path."""
    return _core.load_document_file(str(path))


def save(doc, path):
    """Write a NetDocument to a file path."""
    _core.save_document_file(doc, str(path))


def load_net(path):
    """Load a file and return the AsymptoticNet it contains."""
    return _core.load_document_file(str(path)).to_net()


def save_net(net, path):
    """Write an AsymptoticNet to a file path."""
    _core.save_document_file(_core.NetDocument.from_net(net), str(path))
