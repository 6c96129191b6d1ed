"""Unitals, their confluence graphs, and mechanical theorem checks.

Library layout:

  algebra      exact GF(p^e) arithmetic and conjugation on GF(q^2)
  incidence    incidence structures, classical constructions, searches
  confluence   block-intersection graphs, strong regularity, ratio bound
  cliques      maximal-clique enumeration and pencil/near-pencil tags
  linspace     q^2-point linear space classification and embeddings
  reconstruct  unital reconstruction from the bare graph, isomorphism
  cli          command-line interface (`unitals ...`)
"""

from .algebra import FieldElement, FieldSpec, conjugate, field_create, quadratic_extension
from .cliques import (
    CliqueClassification,
    classify_clique,
    enumerate_maximal_cliques,
    max_clique_size,
    naive_maximal_cliques,
    verify_star_property,
)
from .confluence import (
    ConfluenceGraph,
    SrgParams,
    build_confluence,
    expected_unital_params,
    hoffman_bound,
    infer_order,
    read_dimacs,
    srg_check,
    write_dimacs,
)
from .incidence import (
    DesignReport,
    IncidenceStructure,
    OnanConfiguration,
    affine_plane,
    conic_points,
    dual,
    find_onan,
    hermitian_unital,
    near_pencil,
    pencil,
    projective_plane,
    puncture,
    read_json,
    validate,
    validate_unital,
    write_json,
)
from .linspace import (
    EmbeddingWitness,
    LinSpaceClass,
    Q2SpecialCase,
    check_assumptions,
    classify,
    complete_affine,
    complete_thin_point,
    embed_full_pencils,
    embedding_errors,
    projective_lines,
    q2_special_classify,
    thin_points,
)
from .reconstruct import (
    Reconstruction,
    extend_graph_isomorphism,
    isomorphic,
    reconstruct_unital,
)

__version__ = "0.1.0"
