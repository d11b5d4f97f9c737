"""The represented derivator of finite-dimensional rational vector spaces
and its shifts.

Every operation of a shifted derivator D^I at level K is the corresponding
operation of D at level I x K, along id_I x u.
"""

from __future__ import annotations

from halfder.fincat.category import FinCategory, product
from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    identity_functor,
    identity_nat,
    product_functor,
    product_nat,
)
from halfder.repder import kan
from halfder.repder.diagram import Diagram, DiagramMap, zero_diagram


class RepDerivator:
    """K |-> Fun(K, Vect_Q) with pullback, pointwise Kan extensions, and
    their units and counits."""

    name = "Vect"

    def level(self, K: FinCategory) -> FinCategory:
        return K

    def functor_at(self, u: FinFunctor) -> FinFunctor:
        return u

    def cell_at(self, alpha: FinNatTrans) -> FinNatTrans:
        return alpha

    def zero(self, K: FinCategory) -> Diagram:
        return zero_diagram(self.level(K))

    def pullback(self, u: FinFunctor, X: Diagram) -> Diagram:
        return kan.pullback(self.functor_at(u), X)

    def pullback_map(self, u: FinFunctor, phi: DiagramMap) -> DiagramMap:
        return kan.pullback_map(self.functor_at(u), phi)

    def pullback_cell(self, alpha: FinNatTrans, X: Diagram) -> DiagramMap:
        return kan.pullback_cell(self.cell_at(alpha), X)

    def lan_result(self, u: FinFunctor, X: Diagram) -> kan.KanResult:
        return kan.lan(self.functor_at(u), X)

    def ran_result(self, u: FinFunctor, X: Diagram) -> kan.KanResult:
        return kan.ran(self.functor_at(u), X)

    def lan(self, u: FinFunctor, X: Diagram) -> Diagram:
        return self.lan_result(u, X).value

    def ran(self, u: FinFunctor, X: Diagram) -> Diagram:
        return self.ran_result(u, X).value

    def lan_map(self, u: FinFunctor, phi: DiagramMap) -> DiagramMap:
        return kan.lan_map(self.functor_at(u), phi)

    def ran_map(self, u: FinFunctor, phi: DiagramMap) -> DiagramMap:
        return kan.ran_map(self.functor_at(u), phi)

    def lan_unit(self, u: FinFunctor, X: Diagram) -> DiagramMap:
        """X -> u* u_! X."""
        return kan.lan_unit(self.functor_at(u), X)

    def lan_counit(self, u: FinFunctor, Y: Diagram) -> DiagramMap:
        """u_! u* Y -> Y."""
        return kan.lan_counit(self.functor_at(u), Y)

    def ran_unit(self, u: FinFunctor, Y: Diagram) -> DiagramMap:
        """Y -> u_* u* Y."""
        return kan.ran_unit(self.functor_at(u), Y)

    def ran_counit(self, u: FinFunctor, X: Diagram) -> DiagramMap:
        """u* u_* X -> X."""
        return kan.ran_counit(self.functor_at(u), X)

    def kan(self, side: str, u: FinFunctor, X: Diagram) -> Diagram:
        if side == "left":
            return self.lan(u, X)
        if side == "right":
            return self.ran(u, X)
        raise ValueError(f"side must be left or right, not {side!r}")

    def __repr__(self):
        return f"<derivator {self.name}>"

    def __eq__(self, other):
        return type(other) is RepDerivator

    def __hash__(self):
        return hash(RepDerivator)


class ShiftedDerivator(RepDerivator):
    """D^I: level K of the shift is level I x K of the base."""

    def __init__(self, base: RepDerivator, I: FinCategory):
        self.base = base
        self.I = I
        self.name = f"{base.name}^{I.name}"

    def level(self, K: FinCategory) -> FinCategory:
        return self.base.level(product(self.I, K))

    def functor_at(self, u: FinFunctor) -> FinFunctor:
        return self.base.functor_at(product_functor(identity_functor(self.I), u))

    def cell_at(self, alpha: FinNatTrans) -> FinNatTrans:
        ident = identity_nat(identity_functor(self.I))
        return self.base.cell_at(product_nat(ident, alpha))

    def __eq__(self, other):
        return isinstance(other, ShiftedDerivator) and (self.base, self.I) == (other.base, other.I)

    def __hash__(self):
        return hash((type(self), self.I))


VECT = RepDerivator()


def shift(I: FinCategory, base: RepDerivator = VECT) -> ShiftedDerivator:
    return ShiftedDerivator(base, I)
