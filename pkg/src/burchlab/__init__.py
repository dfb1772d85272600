"""burchlab: Burch indices, bar resolutions, and k-summands of syzygies, exactly.

Quick start::

    from burchlab.ring import PolyRing
    from burchlab.groebner import Ideal
    from burchlab.burch import burch_index, burch_data

    R = PolyRing(32003, ("x", "y"))
    I = Ideal(R, [R.parse("x^2"), R.parse("x*y"), R.parse("y^2")])
    burch_index(I)   # 2

The heavier pipelines live in burchlab.pipeline; the CLI in burchlab.cli.
"""

__version__ = "0.1.0"

from .burch import burch_data, burch_ideal, burch_index  # noqa: F401
from .groebner import Ideal  # noqa: F401
from .ring import PolyRing  # noqa: F401
