"""
Main entry point for the reservoir teleportation simulator.

    python src/main.py run --preset fig2
    python src/main.py validate
    python src/main.py thresholds --s 3
"""

import sys
from pathlib import Path

# Add src and the repository root to path for imports
sys.path.insert(0, str(Path(__file__).parent))
sys.path.insert(0, str(Path(__file__).parent.parent))

from ui.cli import cli  # noqa: E402

if __name__ == "__main__":
    cli(prog_name="teleport-sim")
