import sys

from hybridmark.cli import main

sys.exit(main())
