"""Zero forcing and brushing on graphs and their line graphs."""

from .brushing import (BrushScript, FiringStep, SimulationResult, chained_cycle_strategy, exact_B, exact_b,
                       exact_b_direct, prism_strategy, simulate)
from .errors import *  # noqa: F401,F403
from .families import FamilySpec, generate, known_value, parse_family
from .forcing import (ChainDecomposition, ForcingRun, exact_Z, extract_chains, forcing_closure,
                      is_zero_forcing_set, replay_forces)
from .graph import Graph, LineGraphMap, cartesian_product, line_graph, make_graph
from .report import Budgets, HuntResult, ParamReport, build_report, hunt
from .translations import (thm1_brushing_from_line_forcing, thm2_forcing_set_from_line_forcing,
                           thm3_brushing_from_line_brushing)

__version__ = "0.1.0"
