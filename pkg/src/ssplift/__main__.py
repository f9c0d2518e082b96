import sys

from ssplift.cli import main

sys.exit(main())
