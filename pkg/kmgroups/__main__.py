"""Allows python -m kmgroups"""
import sys

from kmgroups.cli import main

if __name__ == '__main__':
    sys.exit(main())
