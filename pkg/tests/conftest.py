import sys
from pathlib import Path

# lets tests import the shared data tables next to them
sys.path.insert(0, str(Path(__file__).parent))
