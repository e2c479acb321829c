"""Exception types raised by the harness."""

from __future__ import annotations


class HarnessError(Exception):
    """Base class for every error this package raises on purpose."""


class SchemaMismatch(HarnessError):
    """The dataset file does not follow the telemetry CSV contract."""


class SingleClass(HarnessError):
    """The dataset (or a split of it) contains only one label value."""


class CrossCheckMismatch(HarnessError):
    """Harness metrics disagree with the reference metrics CLI."""


class IoError(HarnessError):
    """An artifact or dataset file could not be read or written."""
