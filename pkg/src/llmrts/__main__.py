import sys

from llmrts.cli import main

sys.exit(main())
