"""Allow running as: python -m askey_shift"""

from askey_shift.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
