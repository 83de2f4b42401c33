"""Positive symmetric idempotents and the algebras they carve out.

For a positive symmetric idempotent p the set {x : p.x.p = x} is closed under
every operation except the unit, which becomes p; the result is again a quasi
relation algebra on the surviving elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteDqRA, LawViolationError, validate_dqra


class NotPsiError(ValueError):
    """The chosen element is not a positive symmetric idempotent."""


def is_psi(A: FiniteDqRA, p: int) -> bool:
    """True iff 1 <= p, the three unary images of p coincide, and p.p = p."""
    return (
        bool(A.leq[A.unit, p])
        and int(A.tilde[p]) == int(A.minus[p]) == int(A.negn[p])
        and int(A.mult[p, p]) == p
    )


def psi_elements(A: FiniteDqRA) -> tuple[int, ...]:
    """All positive symmetric idempotents, in element-index order."""
    return tuple(p for p in range(A.size) if is_psi(A, p))


@dataclass(frozen=True)
class MembershipVerdict:
    """The three equivalent membership tests for pAp at one element."""

    in_pap: bool            # b = p.a.p for some a
    pbp_eq_b: bool          # p.b.p = b
    pb_and_bp_eq_b: bool    # p.b = b and b.p = b

    @property
    def verdict(self) -> bool:
        return self.pbp_eq_b


def membership_tfae(A: FiniteDqRA, p: int, b: int) -> MembershipVerdict:
    """Evaluate all three membership characterisations and check they agree.

    Disagreement means the ambient algebra is broken (p must be idempotent).
    """
    if int(A.mult[p, p]) != p:
        raise NotPsiError(f"element {A.label(p)} is not idempotent")
    in_pap = any(
        int(A.mult[A.mult[p, a], p]) == b for a in range(A.size)
    )
    pbp = int(A.mult[A.mult[p, b], p]) == b
    pb_bp = int(A.mult[p, b]) == b and int(A.mult[b, p]) == b
    if not (in_pap == pbp == pb_bp):
        raise LawViolationError(
            f"membership characterisations disagree at p={A.label(p)}, "
            f"b={A.label(b)}: broken algebra"
        )
    return MembershipVerdict(in_pap, pbp, pb_bp)


@dataclass(frozen=True, eq=False)
class Contraction:
    """The algebra on {x : p.x.p = x} with unit p.

    `members` lists the surviving parent elements in parent index order and
    doubles as the inclusion map: contraction element k is parent element
    members[k].
    """

    parent: FiniteDqRA
    p: int
    members: tuple[int, ...]
    algebra: FiniteDqRA

    def parent_index(self, k: int) -> int:
        return self.members[k]

    def member_index(self, parent_elt: int) -> int:
        return self.members.index(parent_elt)

    def __repr__(self) -> str:
        return (f"Contraction(p={self.parent.label(self.p)}, "
                f"size={len(self.members)})")


def contract(A: FiniteDqRA, p: int) -> Contraction:
    """Build the contraction at a positive symmetric idempotent p.

    All operations restrict; only the unit changes.  The member list follows
    parent index order so regression output is stable.  The extracted tables
    are revalidated before being returned.
    """
    if not is_psi(A, p):
        raise NotPsiError(
            f"element {A.label(p)} is not a positive symmetric idempotent")
    members = tuple(
        x for x in range(A.size)
        if int(A.mult[A.mult[p, x], p]) == x
    )
    sel = np.array(members)
    back = {x: k for k, x in enumerate(members)}

    def reindex(table: np.ndarray) -> np.ndarray:
        out = np.empty(table.shape, dtype=np.int64)
        flat = table.ravel()
        outf = out.ravel()
        for i, v in enumerate(flat):
            if int(v) not in back:
                raise LawViolationError(
                    "contraction members are not closed under the operations")
            outf[i] = back[int(v)]
        return out

    leq = A.leq[sel][:, sel]
    mult = reindex(A.mult[sel][:, sel])
    til = reindex(A.tilde[sel])
    mns = reindex(A.minus[sel])
    ngn = reindex(A.negn[sel])
    labels = tuple(A.labels[x] for x in members)
    algebra = FiniteDqRA(len(members), leq, mult, til, mns, ngn,
                         back[p], labels)
    report = validate_dqra(algebra)
    if not report.ok:
        raise LawViolationError(
            "contraction failed validation: " + "; ".join(
                str(c) for c in report.failures))
    return Contraction(A, p, members, algebra)
