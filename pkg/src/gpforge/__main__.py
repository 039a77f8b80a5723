import sys

from gpforge.cli import main

sys.exit(main())
