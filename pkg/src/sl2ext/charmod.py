"""Torus characters as exponents against the norm-compatible generator
chain.

A character is an integer e modulo q^{imax!}-1: it sends the top-level
generator to zeta^e for the fixed primitive root zeta of that order in
the coefficient field.  Restriction to lower levels is then coherent for
free, and the Weyl twist and the derived character of a pair are pure
exponent arithmetic.
"""

from __future__ import annotations

from .coeff import CoeffField, Scalar
from .tower import Tower, TowerElem


class TorusCharacter:
    def __init__(self, tower: Tower, field: CoeffField, exp: int):
        self.tower = tower
        self.field = field
        self.order_mod = tower.size - 1  # q^{imax!} - 1
        self.exp = exp % self.order_mod
        self._cache = {}

    def eval(self, t: TowerElem) -> Scalar:
        """Value at a nonzero tower element, as an exact root of unity."""
        if t.val == 0:
            raise ZeroDivisionError("characters are defined on nonzero elements")
        v = self._cache.get(t.val)
        if v is None:
            e = self.tower.dlog_ambient(t)
            v = self.field.root_of_unity(self.order_mod, self.exp * e)
            self._cache[t.val] = v
        return v

    def eval_inv(self, t: TowerElem) -> Scalar:
        return self.eval(t.inverse())

    def weyl_twist(self) -> "TorusCharacter":
        """Conjugation by the Weyl element inverts torus values: e -> -e."""
        return TorusCharacter(self.tower, self.field, -self.exp)

    def inverse(self) -> "TorusCharacter":
        return TorusCharacter(self.tower, self.field, -self.exp)

    def __mul__(self, other: "TorusCharacter") -> "TorusCharacter":
        if not isinstance(other, TorusCharacter):
            return NotImplemented
        if other.tower is not self.tower or other.field != self.field:
            raise ValueError("characters live on different towers or fields")
        return TorusCharacter(self.tower, self.field, self.exp + other.exp)

    def is_trivial(self) -> bool:
        return self.exp == 0

    def is_trivial_on_center(self) -> bool:
        """Value at -1 is 1.  Even exponents qualify for q odd; everything
        does for q even, where the center is trivial."""
        if self.tower.p == 2:
            return True
        return (self.exp * (self.order_mod // 2)) % self.order_mod == 0

    def restriction_exp(self, i: int) -> int:
        """Exponent of the restriction to level i against generator(i)."""
        return self.exp % (self.tower.level_size(i) - 1)

    def is_trivial_on_level(self, i: int) -> bool:
        return self.restriction_exp(i) == 0

    def parabolic_support(self) -> frozenset:
        """The subset of simple indices where the character dies: {1} for
        the trivial character, empty otherwise (rank 1)."""
        return frozenset({1}) if self.is_trivial() else frozenset()

    def __eq__(self, other):
        if not isinstance(other, TorusCharacter):
            return NotImplemented
        return (
            self.tower is other.tower
            and self.field == other.field
            and self.exp == other.exp
        )

    def __repr__(self):
        return f"chi[{self.exp}]"


def nu_character(lam: TorusCharacter, mu: TorusCharacter) -> TorusCharacter:
    """The derived character (mu twisted by the long Weyl element)^{-1} * lam.

    In rank 1 the twist inverts, so the exponent is e_lam + e_mu; when lam
    and mu agree on the center, the result is trivial on the center.
    """
    if lam.tower is not mu.tower or lam.field != mu.field:
        raise ValueError("characters live on different towers or fields")
    return TorusCharacter(lam.tower, lam.field, lam.exp + mu.exp)
