"""Allow ``python -m betafreeze``."""

from .cli import main_entry

main_entry()
