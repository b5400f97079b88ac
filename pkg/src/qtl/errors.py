"""Error taxonomy shared by every qtl module."""


class QtlError(Exception):
    """Base class for all qtl errors."""


class InputError(QtlError):
    """Malformed input (bad JSON, unknown generator, bad selector)."""


class EmptyCarrier(QtlError):
    pass


class NotAPartialOrder(QtlError):
    def __init__(self, x, y):
        super().__init__(f"antisymmetry fails: {x!r} <= {y!r} and {y!r} <= {x!r}")
        self.witness = (x, y)


class NotALattice(QtlError):
    def __init__(self, kind, x, y):
        super().__init__(f"no unique {kind} for ({x!r}, {y!r})")
        self.kind = kind
        self.witness = (x, y)


class ForeignElement(QtlError):
    pass


class SizeCapExceeded(QtlError):
    pass


class AxiomViolation(QtlError):
    """A multiplication table fails one of the quantale axioms.

    ``axiom`` is one of ``top-identity``, ``commutativity``,
    ``associativity``, ``distributivity``; ``witness`` is a tuple of element
    indices exhibiting the failure.
    """

    def __init__(self, axiom, witness, labels=None):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        shown = self.witness if labels is None else tuple(labels[w] for w in self.witness)
        super().__init__(f"{axiom} violated at {shown}")


class EmptyGeneratorSet(QtlError):
    pass


class MixedQuantales(QtlError):
    pass


class NoProperIdeals(QtlError):
    pass


class ImproperPoint(QtlError):
    pass


class NotClosed(QtlError):
    pass


class NotEvaluated(QtlError):
    """A property needs closed-set enumeration beyond the point cap."""


class PreconditionViolated(QtlError):
    pass


class NoUnitPair(QtlError):
    pass


class HomAxiomViolation(QtlError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"homomorphism axiom {axiom} violated at {self.witness}")


class BottomNotPreserved(QtlError):
    pass


class ContractionEscapes(QtlError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"contraction of {point!r} is not a point of the source spectrum")


class NotSurjective(QtlError):
    pass


class EmptySpectrum(QtlError):
    pass
