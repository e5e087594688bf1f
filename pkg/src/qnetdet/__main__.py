"""Entry point for python -m qnetdet."""

import sys

from .cli import main

sys.exit(main())
