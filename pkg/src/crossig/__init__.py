"""Inductive groupoids and cross-connections of finite regular semigroups, with exhaustive checkers."""
from __future__ import annotations

from .biorder import BiorderedSet, check_axioms, check_bimorphism, is_regular, load_biorder
from .crossconn import CCMorphism, CrossConnection, biorder_of, check_cc_morphism, transpose, validate_crossconnection
from .echain import EChain, chain_fragment, chain_groupoid, chain_leq, reduce_path, restrict_chain
from .equivalence import iso_cr, iso_ig, roundtrip_report
from .errors import CrossigError
from .fixtures import builtin, idempotent_biorder, load_cayley, principal_categories, trace_groupoid
from .functor_ci import build_gamma, build_lcat, build_rcat, map_inductive_functor, principal_cone
from .functor_ic import build_ig, map_morphism
from .inductive import InductiveFunctor, InductiveGroupoid, check_inductive, check_inductive_functor
from .normcat import SubobjectCategory, check_normal_category, find_isomorphism
from .report import Report

__version__ = "0.1.0"
