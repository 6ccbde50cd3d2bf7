import sys

from luandri.cli import main

sys.exit(main())
