#!/usr/bin/env python3
"""
qwass - Quantum Wasserstein information geometry

Run the worked examples and write their artifacts without installing the package.
"""

import sys
from pathlib import Path

# Load environment variables (QWASS_NUM_THREADS)
from dotenv import load_dotenv

load_dotenv()

# Add src to path for development
sys.path.insert(0, str(Path(__file__).parent / "src"))

from rich.console import Console

from qwass.main import main as cli_main

console = Console()


def main() -> int:
    try:
        return cli_main(sys.argv[1:])
    except KeyboardInterrupt:
        console.print("\n[yellow]⚠️ Interrupted by user[/yellow]")
        return 130


if __name__ == "__main__":
    sys.exit(main())
