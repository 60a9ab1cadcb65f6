"""Orbit types of compact E7 acting on its 56-dimensional Freudenthal space."""
from .classify import (AmbiguousClassification, DiagonalForm, classify, classify_jordan,
                       classify_jordanC, classify_multiset, classify_report, invariants_of,
                       recover_multiset)
from .diagonalize import ReductionConfig, ReductionResult, off_form_energy, reduce, verify_reduction
from .freudenthal import FreudenthalVector, LieElement, SU2Matrix, cross_p, phi_su2, s_covariant, t_covariant
from .jordan import JordanElement
from .lie import build_e6_basis, build_e7_basis, build_f4_basis, random_group_element, stabilizer_dimension
from .octonion import Octonion
from .patterns import OrbitType, parse_pattern
from .scalars import QQi

__version__ = "0.1.0"
