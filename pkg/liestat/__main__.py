import sys

from liestat.cli import main

sys.exit(main())
