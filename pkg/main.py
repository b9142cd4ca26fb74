"""
Process entry point for braidcheck
"""

from cli import main

if __name__ == "__main__":
    raise SystemExit(main())
