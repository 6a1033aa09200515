"""Shared plumbing for fiberpairs: errors, enums, units, concurrency and task registry."""

__version__ = "0.1.0"
