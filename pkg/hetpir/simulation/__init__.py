from hetpir.simulation.databases import *   # noqa
from hetpir.simulation.transport import *   # noqa
from hetpir.simulation.auditor import *     # noqa
