"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` so the CLI can render
it as a structured diagnostic.
"""

from __future__ import annotations


class SceneError(Exception):
    code = "scene-error"

    def __init__(self, message: str, *, entities: tuple[str, ...] = ()):
        super().__init__(message)
        self.message = message
        self.entities = tuple(entities)

    def as_dict(self) -> dict:
        return {"error": self.code, "message": self.message, "entities": list(self.entities)}


# scene construction
class DanglingReference(SceneError):
    code = "dangling-reference"


class DuplicateId(SceneError):
    code = "duplicate-id"


class SchemaViolation(SceneError):
    code = "schema-violation"


class InconsistentEigenvalueSigns(SceneError):
    code = "inconsistent-eigenvalue-signs"


# graph analysis
class CyclicGraph(SceneError):
    code = "cyclic-graph"


class AmbiguousSide(SceneError):
    code = "ambiguous-side"


# quasi-order calculus
class NotInSPrime(SceneError):
    code = "not-in-s-prime"


class IrrationalEigenvalue(SceneError):
    code = "irrational-eigenvalue"


class ResonantStep(SceneError):
    code = "resonant-step"


class DomainError(SceneError):
    code = "domain-error"


class NotSkeletonPath(SceneError):
    code = "not-skeleton-path"


class NotSaddleConnectionChain(SceneError):
    code = "not-saddle-connection-chain"


class NotASaddle(SceneError):
    code = "not-a-saddle"


class NotTransversalSaddle(SceneError):
    code = "not-transversal-saddle"


# fattening
class ValidationFailed(SceneError):
    code = "validation-failed"


class NotDistinguished(SceneError):
    code = "not-distinguished"


class GoodSaturationsRequired(SceneError):
    code = "good-saturations-required"


# numerics
class NoCrossing(SceneError):
    code = "no-crossing"


class StepLimitExceeded(SceneError):
    code = "step-limit-exceeded"


class InsufficientSamples(SceneError):
    code = "insufficient-samples"


class DegenerateCurve(SceneError):
    code = "degenerate-curve"


class ResonantInput(SceneError):
    code = "resonant-input"


class NonpositiveWeight(SceneError):
    code = "nonpositive-weight"
