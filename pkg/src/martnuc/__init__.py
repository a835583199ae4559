"""Twins, habit planes and corner nucleation for cubic-to-orthorhombic martensite."""

from .errors import (AssumptionViolated, DegenerateSpecimen, DegenerateTwin, EmptyRegion,
                     InjectivityViolated, MalformedPath, MartnucError, NoHabitPlane, NoMatch,
                     NonInvertible, NoRankOneConnection, PairNotTabulated, PlanesOverlap)
from .habit import (HabitInvariants, HabitSolution, habit_solutions, habit_table_constants,
                    solve_volume_fractions, verify_habit)
from .lattice import (DEFAULT, PRESETS, EnergyDensity, LatticeParams, check_assumptions,
                      load_params, variants)
from .maxdirs import (check_rigidity, classify_sphere, fibonacci_sphere, in_M, in_Minv, in_N,
                      in_Ninv, in_UinvSq_Minv)
from .mat3 import polar_rotation, rank_one_decompose, sym_eigen
from .nucleation import (build_construction, energy_change, enumerate_candidates,
                         laminate_minors_check, nucleating_octants, verify_injectivity)
from .regression import verify_paper
from .specimen import Parallelepiped, classify_specimen, edge_admissible, face_admissible
from .symmetry import build_symmetry_table, cubic_group
from .twinning import TwinSystem, solve_twins_generic, twin_constants, type1_twin, type2_twin

__version__ = "0.1.0"
