import sys

from qmut.cli import main

sys.exit(main())
