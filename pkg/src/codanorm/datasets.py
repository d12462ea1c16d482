"""Bundled example data.

One dataset ships with the package: the AFM subcomposition of 23 aphyric
lava specimens from the Isle of Skye (A: Na2O + K2O, F: Fe2O3, M: MgO, in
weight percent), from Thompson, Esson & Duncan (1972) as tabulated by
Aitchison (1986).  It is the standard worked example for fitting a normal
law on a three-part simplex.

Transcription status
--------------------
The shipped copy is a best-effort digitization and is *known not to match
the printed table exactly*: its closed geometric center and differentiation
trend agree with the published analysis, but the fitted coordinate mean and
covariance disagree beyond rounding (verified during development; the golden
regression tests in ``tests/test_acceptance.py`` document the expected
published values and currently fail against this copy).  To restore them,
replace ``data/skye_lavas_afm.csv`` with a verified transcription, keeping
the column order ``(F, M, A)`` — the part order under which the published
coordinate estimates were computed with the default sequential basis.

The checksum of the shipped file is recorded here so any replacement is an
explicit, visible act:

>>> import codanorm.datasets as ds
>>> ds.skye_lavas_checksum() == ds.SHIPPED_SKYE_SHA256   # doctest: +SKIP
True
"""

from __future__ import annotations

import hashlib
from importlib import resources

from .inference import SimplexSample
from .io import read_simplex_csv

__all__ = [
    "SHIPPED_SKYE_SHA256",
    "skye_lavas_path",
    "skye_lavas_checksum",
    "skye_lavas_afm",
]

#: sha256 of the shipped (best-effort, unverified) transcription.
SHIPPED_SKYE_SHA256 = "b8ef5db9070fa90f1a6d87343408765c874cfc5662404ed385787972cee3acdc"


def skye_lavas_path() -> str:
    """Filesystem path of the bundled CSV."""
    return str(resources.files("codanorm").joinpath("data/skye_lavas_afm.csv"))


def skye_lavas_checksum() -> str:
    """sha256 hex digest of the bundled CSV as shipped on disk."""
    with open(skye_lavas_path(), "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def skye_lavas_afm() -> SimplexSample:
    """The Skye lavas AFM table as a :class:`SimplexSample`.

    Parts are percentages (``kappa = 100``) in the column order (F, M, A);
    the default sequential basis of the sample is the one the published
    coordinate estimates refer to.  Read the module docstring for the
    transcription caveat before using this for anything quantitative.
    """
    sample, _ = read_simplex_csv(skye_lavas_path(), kappa=100.0)
    return sample
