"""Exact spectral data of commuting matrix tuples and the Chow image of the Hitchin base."""

from .chow import (ConsistencyReport, Indeterminate, Member, NonSplitError, NotMember,
                   Polynomial, ZeroCycle, attach_point, b_membership, cayley_fiber_length,
                   chow_point, f_v_poly, sd_consistency, spectral_data)
from .commuting import (CommutingTuple, MatrixTuple, NotCommutingError, cayley_hamilton_verify,
                        check_commute, conjugate_tuple, gld_transform, polarize, random_commuting,
                        trace_word, verify_trace_identity)
from .linalg import (Matrix, SingularMatrixError, UniPoly, char_poly, generalized_eigenspace,
                     kernel_basis, rational_roots)
from .multiform import (BasePoint, MultiForm, elementary_symmetric_forms, mf_eval, mf_mul,
                        mf_substitute, newton_power_sums, rank_one_quadratic_test)

__version__ = "0.1.0"
