"""Exact verification of DAHA modules pulled back to the universal Askey-Wilson algebra."""

from .exact import Matrix, QContext, RationalityError, Subspace, format_scalar, scalar
from .aw import AWAction, AWParams, build_vd, check_aw_relations, find_intertwiner, twist_z2
from .daha import EParams, HModule, OParams, build_h, check_h_relations, pullback, twist_z4
from .lattice import CONFIRMED, INCONCLUSIVE, MISMATCH, analyze, full_lattice, lattice_of, t0_eigen
from .instances import InstanceSpec, sample

__version__ = "0.1.0"
