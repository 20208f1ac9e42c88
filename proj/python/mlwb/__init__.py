"""Workbench for monadic intuitionistic and modal logics.

Parse formulas of the intuitionistic monadic language (``parse_int``) and the
bimodal language (``parse_mod``), translate between them (``godel``,
``split``, ``godel_split``), build and classify finite augmented frames
(``Frame``), model-check (``holds``, ``truth``, ``validity``), and search for
countermodels or bounded proofs (``search_countermodel``, ``decide``,
``chain``).
"""

from ._mlwb import (
    CapExceeded,
    Frame,
    IntFormula,
    ModFormula,
    WorkbenchError,
    bound_profile,
    chain,
    decide,
    enumerate_frames,
    godel,
    godel_split,
    holds,
    named_formula,
    parse_int,
    parse_mod,
    random_frame,
    search_countermodel,
    split,
    truth,
    validity,
)

__all__ = [
    "CapExceeded",
    "Frame",
    "IntFormula",
    "ModFormula",
    "WorkbenchError",
    "bound_profile",
    "chain",
    "decide",
    "enumerate_frames",
    "godel",
    "godel_split",
    "holds",
    "named_formula",
    "parse_int",
    "parse_mod",
    "random_frame",
    "search_countermodel",
    "split",
    "truth",
    "validity",
]

__version__ = "0.1.0"
