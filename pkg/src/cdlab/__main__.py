import sys

from cdlab.cli import main

sys.exit(main())
