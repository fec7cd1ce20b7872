"""
Constants of the amortized analysis and the (DLM, OFF) pair they are evaluated on.
"""

from dataclasses import dataclass
from fractions import Fraction

from pydantic import Field, computed_field

from ..core.permutation import Permutation
from ..dlm.algorithm import AlgState
from ..exceptions import BadConfigError, DomainMismatchError
from ..models.base import BaseMsscModel, Rational


def ceil_log2(value: int) -> int:
    """Smallest k with 2**k >= value, for a positive integer value."""
    if value < 1:
        raise ValueError(f"ceil_log2 needs a positive integer, got {value}")
    return (value - 1).bit_length()


class PotentialParams(BaseMsscModel):
    """
    alpha, beta, gamma and kappa for a cardinality bound r.

    Use for_r() rather than the constructor so the relations between the
    constants are checked.
    """

    r: int = Field(ge=1, description="Maximum request cardinality")
    alpha: int = Field(default=2, description="Budget weight on the safe branch")
    gamma: int = Field(description="Budget weight on the deep branch, 5r")
    beta: Rational = Field(description="Position weight, 15r/2 + 5")
    kappa: int = Field(ge=0, description="ceil(log2(6 * beta))")

    @classmethod
    def for_r(cls, r: int) -> "PotentialParams":
        """
        Build the constants for r and verify the relations the analysis needs.

        Raises:
            BadConfigError: If r < 1 or one of the relations fails
        """
        if r < 1:
            raise BadConfigError(f"r must be positive, got {r}")
        alpha = 2
        gamma = 5 * r
        beta = Fraction(15 * r, 2) + 5
        # 6 * beta = 45r + 30 is always an integer
        kappa = ceil_log2(int(6 * beta))
        params = cls(r=r, alpha=alpha, gamma=gamma, beta=beta, kappa=kappa)
        params.check_relations()
        return params

    def check_relations(self) -> None:
        """Raise BadConfigError unless all four constant relations hold."""
        failures = []
        if self.alpha < 2:
            failures.append(f"alpha={self.alpha} < 2")
        if self.gamma < (3 + self.alpha) * self.r:
            failures.append(f"gamma={self.gamma} < (3 + alpha) * r")
        if self.beta < 3 + self.alpha + Fraction(3, 2) * self.gamma:
            failures.append(f"beta={self.beta} < 3 + alpha + 3/2 * gamma")
        if (1 << self.kappa) < 6 * self.beta:
            failures.append(f"2^kappa={1 << self.kappa} < 6 * beta")
        if failures:
            raise BadConfigError(f"potential constants for r={self.r}: " + "; ".join(failures))

    @computed_field
    @property
    def stage1_coefficient(self) -> int:
        """(3 + alpha) * 2^(kappa + 1), the factor on OFF's access cost."""
        return (3 + self.alpha) << (self.kappa + 1)

    @computed_field
    @property
    def stage2_coefficient(self) -> Rational:
        """beta * 2^(kappa + 3), the factor on OFF's move-to-front cost."""
        return self.beta * (1 << (self.kappa + 3))


@dataclass
class PairState:
    """DLM's list and budgets next to OFF's list, over one universe."""

    alg: AlgState
    off: Permutation

    def __post_init__(self) -> None:
        if self.alg.n != self.off.n:
            raise DomainMismatchError(
                f"DLM has {self.alg.n} elements but OFF has {self.off.n}"
            )

    @property
    def n(self) -> int:
        return self.off.n

    def snapshot(self) -> "PairState":
        return PairState(self.alg.copy(), self.off.copy())
