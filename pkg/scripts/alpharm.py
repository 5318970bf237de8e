#!/usr/bin/env python3
"""
Alpharm launcher
Runs the alpharm command line from a source checkout without installing the package
"""

import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from services.alpharm.cli import main

if __name__ == "__main__":
    main()
