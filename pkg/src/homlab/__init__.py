"""Exact counting of weighted graph homomorphisms plus an inequality
verification harness.

Everything numeric runs on exact rational arithmetic (fractions.Fraction
over Python big ints); no floating point touches any counting or
comparison path that decides a verdict.
"""

from homlab.graphs import Graph, GraphFamilySpec, build_named, tensor_with_k2, add_apexes
from homlab.models import Model, Classification, classify_model
from homlab.counting import (
    hom,
    hom_biclique,
    hom_clique,
    hom_eps_polynomial,
    semiproper_count,
    cc,
    ominus,
)
from homlab.power import PowerProduct, compare_power_products
from homlab.inequalities import (
    IneqReport,
    check_bst,
    check_clique_max,
    check_graphical_bl,
    check_reverse_sidorenko,
    check_sym_monotone,
    swap_injection_check,
)
from homlab.lemmas import LEMMA_IDS, LemmaInstance, check_local_lemma, random_lemma_instance
from homlab.toy import reproduce_toy_c6

__all__ = [
    "Graph",
    "GraphFamilySpec",
    "build_named",
    "tensor_with_k2",
    "add_apexes",
    "Model",
    "Classification",
    "classify_model",
    "hom",
    "hom_biclique",
    "hom_clique",
    "hom_eps_polynomial",
    "semiproper_count",
    "cc",
    "ominus",
    "PowerProduct",
    "compare_power_products",
    "IneqReport",
    "check_bst",
    "check_clique_max",
    "check_graphical_bl",
    "check_reverse_sidorenko",
    "check_sym_monotone",
    "swap_injection_check",
    "LEMMA_IDS",
    "LemmaInstance",
    "check_local_lemma",
    "random_lemma_instance",
    "reproduce_toy_c6",
]
