import sys

from gcol.cli import main

sys.exit(main())
