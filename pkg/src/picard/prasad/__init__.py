"""Covolumes, bounds, torsion witnesses and the elimination census."""

from .census import (
    ELIMINATED,
    NEEDS_GROUP_THEORY,
    POSSIBLE,
    CANDIDATE_FIELDS,
    CensusReport,
    FieldVerdict,
    census,
    enumerate_data,
    evaluate_field,
    minimality_search,
    projective_chi,
)
from .volume import (
    CovolumeBound,
    LatticeDatum,
    ParahoricChoice,
    PiSquaredVolume,
    brauer_siegel_bound,
    covolume,
    euler_characteristic,
    lambda_factor,
    min_covolume_lower_bound,
    normalizer_index_bound,
    sister_count,
    volume_from_chi,
)
from .witness import (
    MatrixWitness,
    QuadNumber,
    find_preserved_form,
    load_witnesses,
    signature,
    verify_torsion_witness,
)
