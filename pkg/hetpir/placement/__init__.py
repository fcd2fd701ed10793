from hetpir.placement.equality_system import *       # noqa
from hetpir.placement.explicit_assignment import *   # noqa
