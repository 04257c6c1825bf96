import sys

from minspread.cli import main

sys.exit(main())
