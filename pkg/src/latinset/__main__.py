"""Allow ``python -m latinset`` as an alias for the console script."""
from latinset.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
