"""Allow ``python -m cge``."""
import sys

from cge.main import main

if __name__ == "__main__":
    sys.exit(main())
