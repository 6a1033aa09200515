# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Enum repository for the application."""

from enum import IntEnum, StrEnum, auto


class ExitCode(IntEnum):
    """Process exit codes, one per error class."""

    OK = 0
    USAGE = 2
    CONFIG = 3
    MODEL = 4
    EXTRACTION = 5


class Verb(StrEnum):
    """CLI verbs. Values are the names typed on the command line."""

    SPECTRUM = "spectrum"
    BANDWIDTH = "bandwidth"
    PHASE_MATCH = "phase-match"
    DISPERSION = "dispersion"
    SIMULATE = "simulate"
    SWEEP = "sweep"
    MU_EXTRACT = "mu-extract"
    BELL = "bell"
    CALIBRATE = "calibrate"
    EXPLAIN = "explain"


class TaskStatus(StrEnum):
    """Lifecycle states of a verb task."""

    PENDING = auto()
    RUNNING = auto()
    COMPLETED = auto()
    FAILED = auto()


class DeltaKMode(StrEnum):
    """How the propagation-constant mismatch is evaluated."""

    TRUNCATED = auto()  # even Taylor orders beta2 and beta4
    EXACT = auto()      # numerically integrated k(omega)


class BetaMethod(StrEnum):
    """How higher Taylor coefficients are differentiated."""

    ANALYTIC = auto()
    FINITE_DIFFERENCE = auto()


class HwhmReference(StrEnum):
    """Where the half width of the mu_p spectrum is measured from."""

    FROM_PUMP = auto()
    FROM_PEAK = auto()


class FitKind(StrEnum):
    """Estimator used by a FitResult."""

    LOGLOG_LINEAR = auto()
    QUADRATIC_THROUGH_ORIGIN = auto()
    QUADRATIC_WITH_LINEAR = auto()


class SweepAxis(StrEnum):
    """Quantity varied by the sweep verb."""

    POWER = auto()
    LENGTH = auto()


class Provenance(StrEnum):
    """Where a default value comes from."""

    REFERENCE_SETUP = "reference-setup"
    CALIBRATED = "calibrated"
    INVENTED = "invented"
