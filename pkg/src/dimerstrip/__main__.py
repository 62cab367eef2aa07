import sys

from dimerstrip.cli import main

sys.exit(main())
