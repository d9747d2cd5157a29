import sys
from pathlib import Path

from hypothesis import settings

# Add current directory to Python path
root_dir = Path(__file__).parent
sys.path.insert(0, str(root_dir))

# Exact arithmetic over F_q(u) can be slow per example; keep runs reproducible.
settings.register_profile("qmodulus", deadline=None, derandomize=True, max_examples=50)
settings.load_profile("qmodulus")
