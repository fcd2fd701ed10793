from hetpir.capacity.level_costs import *          # noqa
from hetpir.capacity.relaxed import *              # noqa
from hetpir.capacity.simplex import *              # noqa
from hetpir.capacity.linear_program import *       # noqa
from hetpir.capacity.vertex_enumeration import *   # noqa
