"""Secrecy metrics for incremental decode-and-forward relaying under jamming.

Thin package wrapper: the compiled extension carries the whole API.
"""

try:
    from ._relaysec import *  # noqa: F401,F403  wheel layout
except ImportError:  # in-tree builds put the extension directly on sys.path
    from _relaysec import *  # noqa: F401,F403
