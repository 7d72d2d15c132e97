import sys

from elastic_bands.main import main

if __name__ == "__main__":
    sys.exit(main())
