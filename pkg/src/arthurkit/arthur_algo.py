"""The Arthur-type decision algorithm.

Given Langlands data of good parity, the algorithm reconstructs the only
possible Arthur parameter by measuring orders of highest derivatives, first at
exponents above 1/2 (step 2), then, after re-inserting what step 2 consumed,
at negative exponents (step 3), and finally balances the exponent multi-sets
to recover the blocks invisible to derivatives (step 4).  A monotonicity
failure in any table proves the input lies in no packet.  Step 5 checks
membership where this package can enumerate the packet.

Derivatives and socles of general representations are far outside this
package; the algorithm instead consumes a :class:`DerivativeOracle`.  Two
closed-form oracles ship with it: one for tempered data with trivial sign
character, one for unramified-shaped data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Protocol, Union

from .core import ArthurKitError, HalfInt, MultiSet, RhoSymbol, ValidationError
from .classify import classify_unramified, UnramifiedRejection
from .ems import ExtendedMultiSegment, l_class, parameter_of, pi_of_L
from .ldata import (
    LData,
    LParameter,
    TemperedData,
    make_ldata,
    omega_pi,
    steinberg_segment,
)
from .params import (
    ArthurParameter,
    LPiece,
    Summand,
    is_good_parity,
    predicates,
    validate,
)


class UnsupportedInputError(ArthurKitError):
    """The oracle cannot answer for this input; distinct from a negative verdict."""


class DerivativeOracle(Protocol):
    """Supplier of highest derivatives (and, where needed, socles).

    ``highest_derivative`` returns the order k and the derived data; k = 0
    means the input is already reduced at that exponent and is returned
    unchanged.  ``socle`` inserts one exponent and is only exercised when the
    positive side of the algorithm found something to re-insert.
    """

    def highest_derivative(
        self, pi: LData, rho: RhoSymbol, exponent: HalfInt
    ) -> tuple[int, LData]: ...

    def socle(self, pi: LData, rho: RhoSymbol, exponent: HalfInt) -> LData: ...


# ---------------------------------------------------------------------------
# Closed-form oracles


def oracle_tempered(
    phi: LParameter, rho: RhoSymbol, z: HalfInt
) -> tuple[int, LParameter]:
    """Highest derivative of the generic (trivial-sign) tempered member at
    rho|.|^z for z > 1/2: the order is the number of pieces rho (x) S_(2z+1),
    and each drops to rho (x) S_(2z-1)."""
    z = HalfInt.coerce(z)
    if z.twice <= 1:  # z <= 1/2
        raise UnsupportedInputError("the tempered derivative rule needs z > 1/2")
    if not phi.is_tempered:
        raise UnsupportedInputError("tempered oracle: L-parameter has a nonzero twist")
    a_old = z.twice + 1  # 2z + 1
    old = LPiece(rho, Fraction(0), a_old)
    k = phi.pieces.multiplicity(old)
    if k == 0:
        return 0, phi
    new = LPiece(rho, Fraction(0), a_old - 2)
    pieces = (phi.pieces - MultiSet([old] * k)) + MultiSet([new] * k)
    return k, LParameter(phi.family, pieces)


class TemperedOracle:
    """Oracle for tempered Langlands data with trivial sign character.

    Tempered modules admit no derivatives at negative exponents, so the
    negative side is identically zero; the socle is the exact inverse of the
    derivative rule (inserting rho|.|^x grows one piece rho (x) S_(2x-1) to
    rho (x) S_(2x+1)), which is what the re-insertion chain of step 3 needs.
    """

    def _tempered_part(self, pi: LData) -> LParameter:
        if pi.segments:
            raise UnsupportedInputError("tempered oracle: input has Langlands segments")
        if not pi.tempered.is_trivial_eps:
            raise UnsupportedInputError("tempered oracle: sign character is not trivial")
        return pi.tempered.phi

    def _wrap(self, pi: LData, phi: LParameter) -> LData:
        eps = {(p.rho.label, p.a): 1 for p in phi.pieces.support()}
        return make_ldata(pi.group, (), TemperedData(phi, tuple(sorted(eps.items()))))

    def highest_derivative(
        self, pi: LData, rho: RhoSymbol, exponent: HalfInt
    ) -> tuple[int, LData]:
        phi = self._tempered_part(pi)
        exponent = HalfInt.coerce(exponent)
        if exponent.twice < 0:
            return 0, pi  # tempered modules are reduced at negative exponents
        if exponent.twice <= 1:
            raise UnsupportedInputError(
                f"tempered oracle: exponent {exponent} not supported"
            )
        k, derived = oracle_tempered(phi, rho, exponent)
        if k == 0:
            return 0, pi
        return k, self._wrap(pi, derived)

    def socle(self, pi: LData, rho: RhoSymbol, exponent: HalfInt) -> LData:
        phi = self._tempered_part(pi)
        exponent = HalfInt.coerce(exponent)
        a_old = exponent.twice - 1  # 2x - 1
        if a_old < 1:
            raise UnsupportedInputError(f"tempered oracle: no piece to grow at {exponent}")
        old = LPiece(rho, Fraction(0), a_old)
        if phi.pieces.multiplicity(old) == 0:
            raise UnsupportedInputError(
                f"tempered oracle: socle at {exponent} finds no piece {old}"
            )
        new = LPiece(rho, Fraction(0), a_old + 2)
        pieces = (phi.pieces - MultiSet([old])) + MultiSet([new])
        return self._wrap(pi, LParameter(phi.family, pieces))


def _unramified_profile(pi: LData) -> dict[tuple[str, HalfInt], int]:
    counts: dict[tuple[str, HalfInt], int] = {}
    for seg in pi.segments:
        if seg.x != seg.y or not seg.rho.unramified_character:
            raise UnsupportedInputError(
                "unramified oracle: input must have [x,x] segments of unramified characters"
            )
        key = (seg.rho.label, -seg.x)
        counts[key] = counts.get(key, 0) + 1
    for piece, mult in pi.tempered.phi.pieces.items():
        if piece.a != 1 or not piece.rho.unramified_character:
            raise UnsupportedInputError(
                "unramified oracle: tempered part must consist of rho (x) S_1 pieces"
            )
        key = (piece.rho.label, HalfInt(0))
        counts[key] = counts.get(key, 0) + mult
    return counts


def oracle_unramified(
    pi: LData, rho: RhoSymbol, exponent: HalfInt
) -> tuple[int, LData]:
    """Highest derivative of unramified-shaped data.

    Positive exponents are always reduced.  At -x with x > 0 the order is
    max(m_(rho,x) - m_(rho,x+1), 0); the derivative removes that many
    segments Delta_rho[-x,-x] and re-inserts them one step up: as segments at
    -(x-1) for x > 1, as tempered rho (x) S_1 pieces for x = 1, and as
    nothing for x = 1/2 (the segment is consumed entirely).  The result keeps
    the unramified shape.
    """
    exponent = HalfInt.coerce(exponent)
    profile = _unramified_profile(pi)
    if exponent.twice > 0:
        return 0, pi
    if exponent.twice == 0:
        raise UnsupportedInputError("unramified oracle: exponent 0 not supported")
    x = -exponent
    m_x = profile.get((rho.label, x), 0)
    m_next = profile.get((rho.label, x + 1), 0)
    k = max(m_x - m_next, 0)
    if k == 0:
        return 0, pi
    segments = list(pi.segments)
    removed = 0
    kept = []
    for seg in segments:
        if removed < k and seg.rho == rho and seg.x == -x:
            removed += 1
            continue
        kept.append(seg)
    if removed != k:
        raise ArthurKitError("unramified oracle: profile disagrees with segments")
    tempered = pi.tempered
    if x > 1:
        kept.extend(steinberg_segment(rho, -(x - 1), -(x - 1)) for _ in range(k))
    elif x == 1:
        pieces = tempered.phi.pieces + MultiSet([LPiece(rho, Fraction(0), 1)] * k)
        phi = LParameter(tempered.phi.family, pieces)
        eps = dict(tempered.eps)
        eps.setdefault((rho.label, 1), 1)  # new pieces adopt the existing sign
        try:
            tempered = TemperedData(phi, tuple(sorted(eps.items())))
        except ValidationError as exc:
            raise UnsupportedInputError(
                f"unramified oracle: sign bookkeeping at exponent -1 fails ({exc})"
            ) from exc
    # x = 1/2: the one-element segments vanish outright.
    return k, make_ldata(pi.group, kept, tempered)


class UnramifiedOracle:
    """Oracle for Langlands data in unramified shape (used by step 2 and 3
    chains; the positive side never fires, so no socle is ever requested)."""

    def highest_derivative(
        self, pi: LData, rho: RhoSymbol, exponent: HalfInt
    ) -> tuple[int, LData]:
        return oracle_unramified(pi, rho, exponent)

    def socle(self, pi: LData, rho: RhoSymbol, exponent: HalfInt) -> LData:
        raise UnsupportedInputError(
            "unramified oracle: socles are never needed (no positive derivatives)"
        )


# ---------------------------------------------------------------------------
# Verdicts and state


@dataclass(frozen=True)
class NotArthurType:
    step: int
    witness: str

    def __str__(self) -> str:
        return f"not of Arthur type (step {self.step}: {self.witness})"


@dataclass(frozen=True)
class Candidate:
    """The reconstructed parameter, with packet membership not verifiable here."""

    psi: ArthurParameter
    membership_verified: bool = False

    def __str__(self) -> str:
        return f"candidate parameter {self.psi} (membership unverified)"


@dataclass(frozen=True)
class ArthurVia:
    """A verified verdict: pi is the member of the psi-packet labeled by rows."""

    rows: ExtendedMultiSegment
    psi: ArthurParameter

    def __str__(self) -> str:
        return f"of Arthur type: psi = {self.psi} via {self.rows}"


Verdict = Union[NotArthurType, Candidate, ArthurVia]


@dataclass
class AlgoState:
    """Bookkeeping tables of one run, keyed per rho label.

    k/kbar hold derivative orders keyed (chain index i, exponent twice);
    K/Kbar their consecutive differences; M the step-4 balance; omega_plus
    and omega_minus the re-inserted exponent multi-sets.
    """

    psi_summands: list[Summand] = field(default_factory=list)
    k_table: dict[str, dict[tuple[int, int], int]] = field(default_factory=dict)
    K_table: dict[str, dict[tuple[int, int], int]] = field(default_factory=dict)
    kbar_table: dict[str, dict[tuple[int, int], int]] = field(default_factory=dict)
    Kbar_table: dict[str, dict[tuple[int, int], int]] = field(default_factory=dict)
    M_table: dict[str, dict[int, int]] = field(default_factory=dict)
    omega_plus: dict[str, list[HalfInt]] = field(default_factory=dict)
    omega_minus: dict[str, list[HalfInt]] = field(default_factory=dict)


def _half_range_desc(top: HalfInt, bottom: HalfInt) -> list[HalfInt]:
    """Integer-step segment {top, top-1, ..., bottom}; empty if top < bottom."""
    out = []
    t = top
    while t >= bottom:
        out.append(t)
        t = t - 1
    return out


def _negative_scan(
    pi: LData, rho: RhoSymbol, oracle: DerivativeOracle
) -> list[HalfInt]:
    """Exponents B < 0 with a nonzero derivative, in increasing order."""
    candidates: set[HalfInt] = set()
    for (r, x), _ in omega_pi(pi).items():
        if r != rho:
            continue
        if x.twice < 0:
            candidates.add(x)
        if x.twice > 0:
            candidates.add(-x)
    found = []
    for t in sorted(candidates, key=lambda h: h.twice):
        k, _ = oracle.highest_derivative(pi, rho, t)
        if k > 0:
            found.append(t)
    return found


def _positive_scan(
    pi: LData, rho: RhoSymbol, oracle: DerivativeOracle
) -> list[HalfInt]:
    """Exponents B > 1/2 with a nonzero derivative, in decreasing order."""
    candidates: set[HalfInt] = set()
    for (r, x), _ in omega_pi(pi).items():
        if r == rho and x.twice > 1:
            candidates.add(x)
    found = []
    for t in sorted(candidates, key=lambda h: -h.twice):
        k, _ = oracle.highest_derivative(pi, rho, t)
        if k > 0:
            found.append(t)
    return found


def arthur_type_check_with_state(
    pi: LData, oracle: DerivativeOracle
) -> tuple[Verdict, AlgoState]:
    """Run the full decision procedure and return the verdict with its tables."""
    state = AlgoState()
    rhos = sorted(
        {rho for (rho, _), _ in omega_pi(pi).items()}, key=lambda r: r.label
    )
    omega_pi_full = omega_pi(pi)

    for rho in rhos:
        label = rho.label
        exponents = [x for (r, x), m in omega_pi_full.items() if r == rho for _ in range(m)]
        A = max(exponents, key=lambda h: h.twice)
        eps_shift = HalfInt(A.twice % 2)  # 0 or 1/2 with A + eps_shift integral
        omega_plus: list[HalfInt] = []
        omega_minus: list[HalfInt] = []
        state.k_table[label] = {}
        state.K_table[label] = {}
        state.kbar_table[label] = {}
        state.Kbar_table[label] = {}
        state.M_table[label] = {}

        # Step 2: positive-side chains.
        positive = _positive_scan(pi, rho, oracle)
        k_tab = state.k_table[label]
        for i, B_i in enumerate(positive, start=1):
            current = pi
            for t in _half_range_desc(A + 1, B_i)[::-1]:  # ascending from B_i
                k, current = oracle.highest_derivative(current, rho, t)
                k_tab[(i, t.twice)] = k
            if k_tab.get((i, (A + 1).twice), 0) != 0:
                return (
                    NotArthurType(2, f"rho {label}: k_({i},{A + 1}) != 0"),
                    state,
                )
        K_tab = state.K_table[label]
        for i, B_i in enumerate(positive, start=1):
            for t in _half_range_desc(A + 1, B_i):
                K_tab[(i, t.twice)] = k_tab.get((i, t.twice), 0) - k_tab.get(
                    (i - 1, t.twice), 0
                )
            for t in _half_range_desc(A + 1, B_i + 1):
                K_t = K_tab.get((i, t.twice), 0)
                K_prev = K_tab.get((i, (t - 1).twice), 0)
                if K_t > K_prev:
                    return (
                        NotArthurType(
                            2, f"rho {label}: K_({i},{t}) > K_({i},{t - 1})"
                        ),
                        state,
                    )
                if K_t < K_prev:
                    copies = K_prev - K_t
                    a_size = int((t - 1) + B_i) + 1
                    b_size = int((t - 1) - B_i) + 1
                    state.psi_summands.extend(
                        [Summand(rho, Fraction(0), a_size, b_size)] * copies
                    )
                    for _ in range(copies):
                        omega_plus.extend(_half_range_desc(t - 1, B_i))

        # Step 3: re-insert the positive side, then mirror on the negative side.
        omega_plus.sort(key=lambda h: h.twice)
        pi_A = pi
        if omega_plus:
            shift = 1
            while HalfInt.coerce(shift) <= A + eps_shift:
                # Socles are applied right-to-left: largest exponent first.
                for x in sorted(omega_plus, key=lambda h: -h.twice):
                    pi_A = oracle.socle(pi_A, rho, x + shift)
                shift += 1

        negative = _negative_scan(pi_A, rho, oracle)
        kbar_tab = state.kbar_table[label]
        for i, B_i in enumerate(negative, start=1):
            current = pi_A
            for t in _half_range_desc(B_i, -A - 1):  # descending from B_i
                k, current = oracle.highest_derivative(current, rho, t)
                kbar_tab[(i, t.twice)] = k
            if kbar_tab.get((i, (-A - 1).twice), 0) != 0:
                return (
                    NotArthurType(3, f"rho {label}: kbar_({i},{-A - 1}) != 0"),
                    state,
                )
        Kbar_tab = state.Kbar_table[label]
        for i, B_i in enumerate(negative, start=1):
            for t in _half_range_desc(B_i, -A - 1):
                Kbar_tab[(i, t.twice)] = kbar_tab.get((i, t.twice), 0) - kbar_tab.get(
                    (i - 1, t.twice), 0
                )
            for t in _half_range_desc(B_i - 1, -A - 1):
                K_t = Kbar_tab.get((i, t.twice), 0)
                K_next = Kbar_tab.get((i, (t + 1).twice), 0)
                if K_t > K_next:
                    return (
                        NotArthurType(
                            3, f"rho {label}: Kbar_({i},{t}) > Kbar_({i},{t + 1})"
                        ),
                        state,
                    )
                if K_t < K_next:
                    copies = K_next - K_t
                    a_size = int(-(t + 1) + B_i) + 1
                    b_size = int(-(t + 1) - B_i) + 1
                    state.psi_summands.extend(
                        [Summand(rho, Fraction(0), a_size, b_size)] * copies
                    )
                    for _ in range(copies):
                        omega_minus.extend(_half_range_desc(-t - 1, B_i))

        # Step 4: balance the exponent multi-sets.
        omega = MultiSet(omega_plus + omega_minus)
        omega_pi_rho = MultiSet(
            {x: m for (r, x), m in omega_pi_full.items() if r == rho}
        )
        m1 = omega - omega_pi_rho
        m2 = omega_pi_rho - omega
        M_tab = state.M_table[label]

        def M(t: HalfInt) -> int:
            if t.twice in M_tab:
                return M_tab[t.twice]
            value = (m1.multiplicity(-t - 1) - m1.multiplicity(t)) + m2.multiplicity(t)
            M_tab[t.twice] = value
            return value

        for t in _half_range_desc(A + 1, eps_shift + 1):
            M_t, M_prev = M(t), M(t - 1)
            if M_t > M_prev:
                return (
                    NotArthurType(4, f"rho {label}: M_{t} > M_{t - 1}"),
                    state,
                )
            if M_t < M_prev:
                copies = M_prev - M_t
                a_size = int((t - 1) + eps_shift) + 1
                b_size = int((t - 1) - eps_shift) + 1
                state.psi_summands.extend(
                    [Summand(rho, Fraction(0), a_size, b_size)] * copies
                )

        state.omega_plus[label] = omega_plus
        state.omega_minus[label] = omega_minus

    psi = ArthurParameter(pi.group, MultiSet(state.psi_summands))
    report = validate(psi)
    if report is not None:
        raise ArthurKitError(f"reconstructed parameter is invalid: {report}")

    return _step5_membership(pi, psi), state


def _step5_membership(pi: LData, psi: ArthurParameter) -> Verdict:
    """Verify membership where the packet is enumerable; otherwise hand back
    the candidate parameter."""
    unramified_shape = all(
        seg.x == seg.y and seg.rho.unramified_character for seg in pi.segments
    ) and all(
        p.a == 1 and p.rho.unramified_character
        for p in pi.tempered.phi.pieces.support()
    )
    if unramified_shape:
        result = classify_unramified(pi)
        if isinstance(result, UnramifiedRejection):
            return NotArthurType(5, str(result))
        if parameter_of(result) != psi:
            raise ArthurKitError("step 5 disagrees with the unramified classification")
        return ArthurVia(result, psi)
    if is_good_parity(psi):
        for e in l_class(psi):
            if pi_of_L(e) == pi:
                return ArthurVia(e, psi)
        if predicates(psi).is_tempered:
            # The normal forms exhaust a tempered packet, so absence decides.
            return NotArthurType(5, "not a member of the tempered packet")
    return Candidate(psi, membership_verified=False)


def arthur_type_check(pi: LData, oracle: DerivativeOracle) -> Verdict:
    """Decide whether pi is of Arthur type; see the module docstring."""
    verdict, _ = arthur_type_check_with_state(pi, oracle)
    return verdict
