"""Exception hierarchy shared by every module.

Each error carries a stable machine-readable ``code`` and the name of the
module that raised it, so the command line front end can map failures to
exit codes without parsing messages.
"""

from __future__ import annotations


class LinftyError(Exception):
    code = "E_LINFTY"
    module = "linfty"

    def __init__(self, message: str, *, code: str | None = None, module: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        if module is not None:
            self.module = module

    @property
    def qualified(self) -> str:
        return f"{self.module}: {self.args[0]}"


class ParseError(LinftyError):
    code = "E_PARSE"
    module = "syntax"

    def __init__(self, message: str, *, line: int = 1, column: int = 1, **kw):
        super().__init__(f"{message} (line {line}, column {column})", **kw)
        self.line = line
        self.column = column


class AlgebraError(LinftyError):
    code = "E_ALGEBRA"
    module = "algebra"


class SpaceError(LinftyError):
    code = "E_SPACE"
    module = "superspace"


class CochainError(LinftyError):
    code = "E_COCHAIN"
    module = "cochain"


class CohomologyError(LinftyError):
    code = "E_COHOMOLOGY"
    module = "cohomology"


class DeformationError(LinftyError):
    code = "E_DEFORM"
    module = "deform"


class ClassificationError(LinftyError):
    code = "E_CLASSIFY"
    module = "classify"
