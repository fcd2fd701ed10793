import sys

from hetpir.cli import main

sys.exit(main())
