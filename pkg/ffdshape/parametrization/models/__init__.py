from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.parametrization.models.warp_record import WarpRecord

__all__ = ["ControlWarp", "DifferentialWarp", "WarpRecord"]
