"""Exception hierarchy.

Every error raised on purpose by the toolkit derives from
:class:`RLeibnizError`.  ``TheoremViolation`` and the ``*Fails`` errors that
guard internal consistency indicate a bug when they surface.
"""


class RLeibnizError(Exception):
    pass


# fields and polynomials

class NotPrime(RLeibnizError, ValueError):
    pass


class DegreeZero(RLeibnizError, ValueError):
    pass


class FieldTooLarge(RLeibnizError, ValueError):
    pass


class NoSplitWithinBound(RLeibnizError):
    def __init__(self, bound, needed=None):
        self.bound = bound
        self.needed = needed
        msg = f"characteristic polynomial does not split within extension degree {bound}"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)


# linear algebra

class DimensionMismatch(RLeibnizError, ValueError):
    pass


class NotCoprime(RLeibnizError, ValueError):
    pass


class NotAnnihilating(RLeibnizError, ValueError):
    pass


# algebra construction and structure

class LeibnizIdentityViolation(RLeibnizError, ValueError):
    def __init__(self, triple, lhs, rhs):
        self.triple = tuple(int(t) for t in triple)
        self.lhs = [int(v) for v in lhs]
        self.rhs = [int(v) for v in rhs]
        super().__init__(
            f"Leibniz identity fails on basis triple {self.triple}: "
            f"[[x,y],z] = {self.lhs} but [x,[y,z]] - [y,[x,z]] = {self.rhs}"
        )


class NotAnIdeal(RLeibnizError, ValueError):
    pass


class NotLie(RLeibnizError, ValueError):
    pass


class NotDerivation(RLeibnizError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"phi(e_{index}) is not a derivation")


class NotHomomorphism(RLeibnizError, ValueError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"phi([e_{i}, e_{j}]) != [phi(e_{i}), phi(e_{j})]")


class TheoremViolation(RLeibnizError, AssertionError):
    pass


# p-mappings

class BasisAxiomFails(RLeibnizError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"L_(image of e_{index}) != (L_e_{index})^p")


class RandomSpotFails(RLeibnizError, AssertionError):
    def __init__(self, x):
        self.x = [int(v) for v in x]
        super().__init__(f"L_(x^[p]) != (L_x)^p at x = {self.x}")


class NotCentral(RLeibnizError, AssertionError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"difference of p-maps leaves the right center at e_{index}")


class NotSemilinear(RLeibnizError, AssertionError):
    def __init__(self, x, y):
        self.x = [int(v) for v in x]
        self.y = [int(v) for v in y]
        super().__init__(f"difference of p-maps not p-semilinear at ({self.x}, {self.y})")


class NotLeftIdeal(RLeibnizError, ValueError):
    pass


class Degenerate(RLeibnizError, ValueError):
    pass


# tori and Cartan subalgebras

class NotAbelian(RLeibnizError, ValueError):
    pass


class NotPClosed(RLeibnizError, ValueError):
    pass


class CertificateFails(RLeibnizError):
    pass


class CentralizersDiffer(RLeibnizError):
    def __init__(self, torus, right, left):
        self.torus = torus
        self.right = right
        self.left = left
        super().__init__(
            f"right centralizer (dim {right.dim}) and left centralizer (dim {left.dim}) "
            f"of the maximal torus (dim {torus.dim}) differ"
        )


class HypothesisFails(RLeibnizError):
    pass


# decompositions

class CertificationFailed(RLeibnizError):
    pass


class CenterNonzero(RLeibnizError, ValueError):
    pass


class RefutedWithWitness(RLeibnizError):
    def __init__(self, x):
        self.x = [int(v) for v in x]
        super().__init__(f"phi(x^[p]) != phi(x)^[p] at x = {self.x}")


# files

class FormatError(RLeibnizError, ValueError):
    pass
