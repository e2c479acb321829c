"""Allow ``python -m mlharness``."""

import sys

from .cli import main

sys.exit(main())
