#!/usr/bin/env python3
"""
Reproduce every figure preset into one output directory.
Runs fig1 through fig5 in turn and prints a timing table.
"""

import asyncio
import sys
from pathlib import Path

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

# Add src and the repository root to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.scenario import build_scenario  # noqa: E402
from config.settings import get_settings  # noqa: E402
from core.logger import setup_logging  # noqa: E402
from core.orchestrator import run_scenario  # noqa: E402
from physics.errors import TeleportSimError  # noqa: E402

console = Console()

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")


async def reproduce(output_dir: Path) -> bool:
    """Run all presets; return True when every one succeeded."""
    settings = get_settings()
    results = {}

    with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"), console=console) as progress:
        for preset in FIGURES:
            task = progress.add_task(f"Reproducing {preset}...", total=None)
            try:
                config = build_scenario(preset, overrides={"output_dir": output_dir})
                result = await run_scenario(config, settings)
                results[preset] = (True, len(result.files), result.elapsed)
            except (TeleportSimError, OSError) as e:
                console.print(f"❌ {preset} failed: {e}", style="red")
                results[preset] = (False, 0, 0.0)
            progress.remove_task(task)

    table = Table(title="Figure reproduction")
    table.add_column("Preset", style="cyan")
    table.add_column("Status", style="bold")
    table.add_column("Files", justify="right")
    table.add_column("Seconds", justify="right")
    for preset, (ok, files, elapsed) in results.items():
        status = "✅ DONE" if ok else "❌ FAILED"
        table.add_row(preset, status, str(files), f"{elapsed:.2f}")
    console.print(table)

    return all(ok for ok, _, _ in results.values())


def main() -> None:
    output_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else get_settings().output_dir
    setup_logging(get_settings())
    ok = asyncio.run(reproduce(output_dir))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
