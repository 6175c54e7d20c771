import sys

from cobwebkit.cli import main

sys.exit(main())
