"""Computational workbench for decorated path algebra quotients.

Quiver specs and rule files use the same text formats as the command-line
tool; see the package README for the grammar.
"""

try:
    # installed layout: the extension lives inside the package
    from ._depa import (
        center,
        confluence,
        flatness,
        frobenius_pairing,
        hilbert,
        moment_check,
        total_dimension,
    )
except ImportError:
    # build-tree layout: the extension sits on PYTHONPATH next to the package
    from _depa import (
        center,
        confluence,
        flatness,
        frobenius_pairing,
        hilbert,
        moment_check,
        total_dimension,
    )

__all__ = [
    "center",
    "confluence",
    "flatness",
    "frobenius_pairing",
    "hilbert",
    "moment_check",
    "total_dimension",
]

__version__ = "0.1.0"
