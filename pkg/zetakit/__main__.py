import sys

from zetakit.main import main

sys.exit(main())
