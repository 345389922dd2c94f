import sys

from reforcite.cli import main

sys.exit(main())
