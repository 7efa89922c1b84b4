"""Exact combinatorics and Hopf algebras of a zero-dimensional boson field theory."""

from .boson import (
    BosonWord,
    NormalForm,
    ZPolynomial,
    coherent_expectation,
    cumulants_to_moments,
    forget_normal_order,
    free_boson_partition_function,
    geometric_trace,
    moments_to_cumulants,
    normal_mul,
    normal_order,
    parse_word,
    word_moments,
)
from .combinatorics import (
    IntegerPartition,
    SetPartition,
    bell_number,
    bell_polynomial,
    enumerate_integer_partitions,
    enumerate_set_partitions,
    partition_type_multiplicity,
    stirling2,
)
from .diagrams import (
    BellGenerator,
    DiagDiagram,
    LabelledConfiguration,
    canonicalize,
    configuration_to_diagram,
    connected_generating_check,
    connected_sums,
    diagram_weight,
    enumerate_bell_diagrams,
    enumerate_diag_diagrams,
    is_connected,
    pfi_by_diagrams,
    pfi_by_series,
    to_dot,
    write_dot_files,
)
from .errors import BoundExceededError, OrderMismatchError, ParseError
from .exact_core import (
    BivariatePoly,
    EGFSeries,
    apply_diff_operator,
    series_add,
    series_exp,
    series_log,
    series_mul,
)
from .hopf import (
    BELL,
    DIAG,
    HopfElement,
    Monomial,
    TensorElement,
    antipode,
    check_hopf_axioms,
    check_hopf_morphism,
    coproduct,
    counit,
    graded_dimension,
    is_primitive,
    phi_bell,
    phi_contract,
    phi_zero,
    product,
    unit,
)

__version__ = "0.1.0"
