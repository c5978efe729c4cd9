"""Topology of divisibility graphs and the Morse theory of counting.

Builds the graphs on squarefree (or all) integers joined by divisibility,
recognizes discrete spheres, computes exact cohomology, and machine-checks the
number-theoretic identities the construction satisfies (Mertens-Euler,
Poincare-Hopf, Morse inequalities, counting-function formulas).
"""

__version__ = "0.1.0"

from .arithmetic import (
    FactorSieve,
    PrimeSignature,
    build_sieve,
    divisor_moebius_sum,
    kummer_number,
    mertens,
    moebius,
    pi_k,
    prime_pi,
    prime_signature,
    primorial,
)
from .cohomology import (
    BettiVector,
    ChainComplex,
    SimplicialComplex,
    betti_numbers,
    boundary_matrices,
    euler_characteristic,
    hodge_nullity,
    lefschetz_number,
    whitney_complex,
    witten_nullity,
    wu_characteristic,
)
from .errors import (
    ClassificationError,
    InternalConsistencyError,
    InvalidArgumentError,
    RankDiscrepancyError,
    ResourceLimitError,
)
from .graphs import (
    Graph,
    GraphKind,
    barycentric_refinement,
    build_graph,
    component_diameter,
    components,
    graph_product,
    heteroclinic,
    induced_subgraph,
    kummer_involution,
    unit_sphere,
)
from .morse import (
    FiltrationEvent,
    MorseComplex,
    MorseReport,
    barycentric_morse_complex,
    betti_timeline,
    chi_timeline,
    classify_vertex,
    critical_counts,
    events_to_csv,
    formula_hypotheses,
    morse_betti,
    morse_inequality_check,
    run_filtration,
    stable_sphere,
)
from .topology import (
    SphereVerdict,
    homotopy_reduce,
    inductive_dimension,
    is_contractible,
    sphere_dimension,
)
