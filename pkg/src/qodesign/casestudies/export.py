"""Regenerate the model files shipped with the package.

Run as ``python3 -m qodesign.casestudies.export [directory]``.  The UAV
documents are exported at the tiny grid resolution so the files stay
readable; rebuild with a custom UavTaskSpec for anything heavier.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .tracking import tracking_bool_model, tracking_model
from .uav import UavTaskSpec, uav_cost_model, uav_powerset_model


def shipped_documents():
    task = UavTaskSpec.tiny()
    return (
        tracking_model(),
        tracking_bool_model(),
        uav_cost_model(task),
        uav_powerset_model(task),
    )


def export_models(directory=None) -> tuple:
    """Write each document's canonical text to <name>.model; returns paths."""
    if directory is None:
        directory = Path(__file__).resolve().parent.parent / "models"
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for doc in shipped_documents():
        path = directory / f"{doc.name}.model"
        path.write_text(doc.render())
        written.append(path)
    return tuple(written)


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    target = args[0] if args else None
    for path in export_models(target):
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
