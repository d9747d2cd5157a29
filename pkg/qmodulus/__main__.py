"""Allow ``python -m qmodulus``."""

from .cli import main

raise SystemExit(main())
