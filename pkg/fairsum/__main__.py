import sys

from fairsum.cli import main

sys.exit(main())
