"""Bundled synthetic corpus: small FOONs with kitchens and a motion rates file."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .core import UniversalFOON
from .formats import Kitchen, MotionRates, parse_kitchen, parse_motion_rates, parse_subgraph

NAMES = ("add_yoghurt", "chain", "diamond", "cyclic", "dead_end", "recipes")
RATES_FILE = "motion_rates.txt"


def corpus_files() -> list[str]:
    files = [f"{name}.{ext}" for name in NAMES for ext in ("foon", "kitchen")]
    return files + [RATES_FILE]


def read_text(filename: str) -> str:
    return resources.files(__package__).joinpath("corpus", filename).read_text(encoding="utf-8")


def load_foon(name: str) -> UniversalFOON:
    return UniversalFOON(parse_subgraph(read_text(f"{name}.foon"), source=f"{name}.foon")).freeze()


def load_kitchen(name: str) -> Kitchen:
    return parse_kitchen(read_text(f"{name}.kitchen"), source=f"{name}.kitchen")


def load_rates(default_rate: float = 0.0) -> MotionRates:
    return parse_motion_rates(read_text(RATES_FILE), default_rate, source=RATES_FILE)


def extract(directory: str | Path) -> list[Path]:
    """Copy the corpus files into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for filename in corpus_files():
        target = directory / filename
        target.write_text(read_text(filename), encoding="utf-8")
        written.append(target)
    return written
