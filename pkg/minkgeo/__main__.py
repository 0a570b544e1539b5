"""Run the command line with ``python -m minkgeo``."""

from .cli.main import main_entry

main_entry()
