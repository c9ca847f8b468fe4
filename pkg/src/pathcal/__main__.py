import sys

from pathcal.cli import main

sys.exit(main())
