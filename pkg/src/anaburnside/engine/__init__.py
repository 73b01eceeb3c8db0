"""Finite group engine: permutation groups, indexed substrates, structure."""

from .build import (alternating, cyclic, dihedral, direct_product, from_file,
                    make_group, psl2_group, symmetric, wreath)
from .indexed import (CAYLEY_CAP, IndexedGroup, PairGroup, PermIndexedGroup,
                      QuotientGroup, SubgroupView, TableGroup, as_indexed,
                      densify)
from .laws import (LawVerdict, ShortestLawResult, automorphism_count,
                   count_generating_tuples, group_exponent, is_law, is_simple,
                   max_d_generated_power, shortest_law_search)
from .perm import Permutation, PermGroup
from .structure import (CompositionFactor, CompositionReport, LambdaFactor,
                        LambdaReport, composition_report, conjugacy_classes,
                        derived_series, is_anabelian, is_semisimple,
                        is_solvable, minimal_normal_subgroups,
                        nonsolvable_length, resolve_series_descriptor,
                        simple_name, socle, solvable_radical,
                        subgroup_closure, verify_series_lambda)

__all__ = [
    "CAYLEY_CAP",
    "CompositionFactor",
    "CompositionReport",
    "IndexedGroup",
    "LambdaFactor",
    "LambdaReport",
    "LawVerdict",
    "PairGroup",
    "PermGroup",
    "PermIndexedGroup",
    "Permutation",
    "QuotientGroup",
    "ShortestLawResult",
    "SubgroupView",
    "TableGroup",
    "alternating",
    "as_indexed",
    "automorphism_count",
    "composition_report",
    "conjugacy_classes",
    "count_generating_tuples",
    "cyclic",
    "densify",
    "derived_series",
    "dihedral",
    "direct_product",
    "from_file",
    "group_exponent",
    "is_anabelian",
    "is_law",
    "is_semisimple",
    "is_simple",
    "is_solvable",
    "make_group",
    "max_d_generated_power",
    "minimal_normal_subgroups",
    "nonsolvable_length",
    "psl2_group",
    "resolve_series_descriptor",
    "shortest_law_search",
    "simple_name",
    "socle",
    "solvable_radical",
    "subgroup_closure",
    "symmetric",
    "verify_series_lambda",
    "wreath",
]
