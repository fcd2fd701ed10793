# Start logging first, incase anything goes wrong
from hetpir.core.logging import *                    # noqa
set_log_handler()

from hetpir.core import *                            # noqa
from hetpir.capacity import *                        # noqa
from hetpir.placement import *                       # noqa
from hetpir.retrieval import *                       # noqa
from hetpir.simulation import *                      # noqa
