from hetpir.retrieval.layout import *        # noqa
from hetpir.retrieval.sun_jafar import *     # noqa
from hetpir.retrieval.composition import *   # noqa
