import sys

from klein_magic.cli import main

sys.exit(main())
