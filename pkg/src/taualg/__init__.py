"""Normal-form arithmetic, Hopf structure, resolutions and tri-graded
charts for bigraded F2[tau]-algebras."""

__version__ = "1.0.0"

from .algebra import (BiDegree, Presentation, basis, make_algebra,
                      multiply, parse_element, format_element)
from .dual import DualElement, dual_product, named_generator, pair
from .hopf import coproduct
from .quotients import ko_ladder, quotient_dims, verify_mmf_ladder
from .resolution import (ext_chart, ext_dims, load_checkpoint,
                         minimal_resolution, save_checkpoint)
from .cobar import cobar_ext, cobar_window
from .truncation import (Chart, ChartClass, Differential, motivic_assemble,
                         parse_chart, run_ss, tau_invert, truncate)

__all__ = [
    "BiDegree", "Presentation", "basis", "make_algebra", "multiply",
    "parse_element", "format_element", "DualElement", "dual_product",
    "named_generator", "pair", "coproduct", "ko_ladder", "quotient_dims",
    "verify_mmf_ladder", "ext_chart", "ext_dims", "load_checkpoint",
    "minimal_resolution", "save_checkpoint", "cobar_ext", "cobar_window",
    "Chart", "ChartClass", "Differential", "motivic_assemble",
    "parse_chart", "run_ss", "tau_invert", "truncate",
]
