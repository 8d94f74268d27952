import sys

from qsglab.cli import main

sys.exit(main())
