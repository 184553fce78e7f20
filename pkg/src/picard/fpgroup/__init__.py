"""Finitely presented groups: coset enumeration, low-index subgroups, homology and cusps."""

from .cosets import CosetTable, group_order, todd_coxeter
from .lowindex import (
    KERNELS,
    StagedResult,
    SubgroupRecord,
    canonical_key,
    count_subgroup_classes,
    cusp_count,
    default_kernel,
    homology,
    intersection_subgroup,
    low_index_subgroups,
    make_record,
    record_presentation,
    search_tables,
    staged_search,
    subgroup_record,
)
from .rewrite import (
    SubgroupPresentation,
    abelianization,
    peripheral_orbits,
    reidemeister_schreier,
    simplify,
    table_cusp_count,
    table_homology,
)
from .snf import AbelianGroup, parse_abelian, smith_normal_form
from .words import (
    GroupData,
    Presentation,
    dump_group_data,
    format_word,
    load_group_data,
    parse_group_data,
    parse_word,
)
