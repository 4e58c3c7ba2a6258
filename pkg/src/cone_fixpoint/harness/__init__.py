"""Instance I/O, seeded generators, property suites, and the CLI."""

from .generators import KINDS, generate_instance
from .instance import Instance, load_instance, save_instance
from .suites import SUITES, SuiteReport, run_property_suite

__all__ = [
    "KINDS",
    "SUITES",
    "Instance",
    "SuiteReport",
    "generate_instance",
    "load_instance",
    "run_property_suite",
    "save_instance",
]
