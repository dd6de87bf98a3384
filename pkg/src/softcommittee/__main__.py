import sys

from softcommittee.cli import main

sys.exit(main())
