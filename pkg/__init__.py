import sys
import os

__version__ = '0.1.0'
sys.path.insert(0, os.path.dirname(__file__))
