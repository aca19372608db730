import sys

from atomset.cli import main

sys.exit(main())
