import sys

from fockdl.cli import main

sys.exit(main())
