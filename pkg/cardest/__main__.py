# cardest. GNU GPL-3.0 (see LICENSE file)
import sys

from cardest.cli import main

sys.exit(main())
