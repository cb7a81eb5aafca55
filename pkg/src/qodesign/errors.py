"""Exception hierarchy for the co-design engine."""


class CodesignError(Exception):
    """Base class for all engine errors."""


class QuantaleError(CodesignError):
    """Bad quantale construction or a payload outside a carrier."""


class CategoryError(CodesignError):
    """Enriched-category axiom violation or malformed hom data."""


class ProblemError(CodesignError):
    """Design-problem validation failure or malformed value data."""


class LaxityError(CodesignError):
    """A map used where a verified lax map is required."""


class CompositionError(CodesignError):
    """Interface mismatch between composed entities."""


class ModelError(CodesignError):
    """Model-file diagnostic carrying position and entity context."""

    def __init__(self, message, line=None, column=None, entity=None):
        self.message = message
        self.line = line
        self.column = column
        self.entity = entity
        super().__init__(str(self))

    def __str__(self):
        where = ""
        if self.line is not None:
            where = f"line {self.line}"
            if self.column is not None:
                where += f", col {self.column}"
            where = f" ({where})"
        ent = f" [{self.entity}]" if self.entity else ""
        return f"{self.message}{where}{ent}"
