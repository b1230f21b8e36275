"""Boolean bases, succinctness-preserving translations and Kripke-semantics
deciders for modal logic over arbitrary connectives."""

import sys

from .boolfn import (AND, BOT, DM, EXTDM, IFF, IMP, MAJ, NAND, NOT, OR, TOP, XOR,
                     Basis, TruthTable, evaluate, is_affine, is_complete,
                     is_locally_monotone, is_monotone_in_arg, load_basis, parse_basis)
from .formula import (Apply, Diamond, Formula, Metrics, Var, eo_sets, metrics, parse,
                      render, substitute)
from .representations import (Representation, repr_biimplication, repr_disjunction, repr_dm,
                              repr_extdm, repr_negation, synthesize)
from .semantics import (FrameClass, KripkeModel, counter_model, equivalent, load_model,
                        min_diamond_search, model_check, parse_model, phi_n, satisfiable, valid)
from .translate import TranslationReport, derivative, eliminate, rank, translate_pipeline
from .s5 import balance, eliminate_iff, eliminate_iff_balanced, reduce_prefix, split

# translations of deep formulae recurse once per tree level
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__version__ = "0.1.0"
