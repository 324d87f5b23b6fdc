import sys

from hedgehog_ramsey.cli import main


if __name__ == "__main__":
    sys.exit(main())
