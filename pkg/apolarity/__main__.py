import sys

from apolarity.main import main

sys.exit(main())
