from hetpir.core.configuration import *   # noqa
from hetpir.core.exceptions import *      # noqa
from hetpir.core.io import *              # noqa
from hetpir.core.logging import *         # noqa
from hetpir.core.model import *           # noqa
from hetpir.core.rationals import *       # noqa
