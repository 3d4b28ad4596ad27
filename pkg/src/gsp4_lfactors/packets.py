"""Endoscopic L-packets and Saito-Kurokawa Arthur packets, with their L-factor identities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bessel import l_full_any_model
from .catalog import (Cuspidal, GL2Rep, GSp4Rep, OneDimensional, OpaqueCuspidal, PrincipalSeries, Special,
                      make_rep)
from .characters import Character
from .errors import InputError
from .euler import EulerFactor, tate_factor, tate_product

__all__ = ["Packet", "PacketCheck", "PacketReport", "endoscopic_packet", "sk_packet", "gl2_lfactor",
           "verify_packet_identity"]


@dataclass(frozen=True)
class Packet:
    """``source`` is ("endoscopic", pi1, pi2) or ("saito_kurokawa", pi)."""

    source: tuple
    row: str
    plus: GSp4Rep
    minus: Optional[GSp4Rep] = None

    @property
    def kind(self) -> str:
        return self.source[0]

    def source_text(self) -> str:
        args = ", ".join(str(p) for p in self.source[1:])
        return f"{self.kind}({args})"


def _require_generic(pi: GL2Rep) -> None:
    if not isinstance(pi, GL2Rep):
        raise InputError(f"expected a GL(2) representation, got {type(pi).__name__}")
    if isinstance(pi, OneDimensional):
        raise InputError(f"{pi} is not generic")


def _order(pi: GL2Rep) -> int:
    return {"principal": 0, "special": 1, "cuspidal": 2}[pi.kind]


def endoscopic_packet(pi1: GL2Rep, pi2: GL2Rep) -> Packet:
    """The packet {Pi_+(pi1, pi2), Pi_-(pi1, pi2)}; inputs are put in the row's printed order."""
    _require_generic(pi1)
    _require_generic(pi2)
    if pi1.central_character() != pi2.central_character():
        raise InputError(f"central characters differ: {pi1.central_character()} vs {pi2.central_character()}")
    source = ("endoscopic", pi1, pi2)
    if _order(pi1) > _order(pi2):
        pi1, pi2 = pi2, pi1
    kinds = (pi1.kind, pi2.kind)
    if kinds == ("principal", "principal"):
        mu1 = pi1.mu1
        plus = make_rep("I", chi1=pi2.mu1 / mu1, chi2=pi2.mu2 / mu1, sigma=mu1)
        return Packet(source, "principal-principal", plus)
    if kinds == ("principal", "special"):
        mu1 = pi1.mu1
        return Packet(source, "principal-special", make_rep("IIa", chi=pi2.mu / mu1, sigma=mu1))
    if kinds == ("principal", "cuspidal"):
        mu1 = pi1.mu1
        return Packet(source, "principal-cuspidal", make_rep("X", pi=pi2.twist(mu1.inverse()), sigma=mu1))
    if kinds == ("special", "special"):
        # As printed: pi1 = xi mu St, pi2 = mu St.
        mu = pi2.mu
        xi = pi1.mu / mu
        if xi.is_trivial():
            return Packet(source, "special-special-equal", make_rep("VIa", sigma=mu), make_rep("VIb", sigma=mu))
        return Packet(source, "special-special-twisted", make_rep("Va", xi=xi, sigma=mu),
                      make_rep("Va*", sigma=mu, xi=xi))
    if kinds == ("special", "cuspidal"):
        mu = pi1.mu
        cusp = pi2.twist(mu.inverse())
        return Packet(source, "cuspidal-special", make_rep("XIa", pi=cusp, sigma=mu),
                      make_rep("XIa*", sigma=mu, pi=cusp))
    if pi1 == pi2:
        return Packet(source, "cuspidal-equal", make_rep("VIIIa", pi=pi1), make_rep("VIIIb", pi=pi1))
    omega = pi1.central_character()
    name = f"theta_{pi1.name}_{pi2.name}"
    return Packet(source, "cuspidal-distinct",
                  make_rep("CuspGeneric", data=OpaqueCuspidal(name + "_plus", omega)),
                  make_rep("CuspOtherNonGeneric", data=OpaqueCuspidal(name + "_minus", omega)))


def sk_packet(pi: GL2Rep) -> Packet:
    """The Saito-Kurokawa packet of a generic pi with trivial central character."""
    _require_generic(pi)
    if not pi.central_character().is_trivial():
        raise InputError(f"{pi} has non-trivial central character {pi.central_character()}")
    source = ("saito_kurokawa", pi)
    one = pi.central_character()
    if isinstance(pi, PrincipalSeries):
        return Packet(source, "principal", make_rep("IIb", chi=pi.mu1, sigma=pi.mu1.inverse()))
    if isinstance(pi, Special):
        if pi.mu.is_trivial():
            return Packet(source, "steinberg", make_rep("VIc", sigma=one), make_rep("VIb", sigma=one))
        return Packet(source, "twisted-steinberg", make_rep("Vb", xi=pi.mu, sigma=one),
                      make_rep("Va*", sigma=one, xi=pi.mu))
    return Packet(source, "cuspidal", make_rep("XIb", pi=pi, sigma=one), make_rep("XIa*", sigma=one, pi=pi))


def gl2_lfactor(pi: GL2Rep, mu: Character | None = None) -> EulerFactor:
    """L(s, pi (x) mu) for the irreducible GL(2) representation pi."""
    if mu is None:
        mu = pi.central_character().ctx.trivial()
    if isinstance(pi, PrincipalSeries):
        return tate_product([mu * pi.mu1, mu * pi.mu2])
    if isinstance(pi, Special):
        return tate_factor(mu.ctx.nu("1/2") * mu * pi.mu)
    if isinstance(pi, OneDimensional):
        return tate_product([mu.ctx.nu("-1/2") * mu * pi.mu, mu.ctx.nu("1/2") * mu * pi.mu])
    if isinstance(pi, Cuspidal):
        return EulerFactor()
    raise InputError(f"expected a GL(2) representation, got {type(pi).__name__}")


@dataclass(frozen=True)
class PacketCheck:
    member: str
    rep: GSp4Rep
    lhs: EulerFactor
    rhs: EulerFactor

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"member": self.member, "rep": str(self.rep), "type": self.rep.type,
                "lhs": str(self.lhs), "rhs": str(self.rhs), "verdict": "equal" if self.equal else "unequal"}


@dataclass(frozen=True)
class PacketReport:
    packet: Packet
    mu: Character
    checks: tuple[PacketCheck, ...]

    @property
    def verdict(self) -> str:
        return "equal" if all(c.equal for c in self.checks) else "unequal"

    def to_dict(self) -> dict:
        return {
            "source": self.packet.source_text(), "row": self.packet.row, "mu": str(self.mu),
            "plus": str(self.packet.plus), "minus": str(self.packet.minus) if self.packet.minus else None,
            "lhs": {c.member: str(c.lhs) for c in self.checks},
            "rhs": {c.member: str(c.rhs) for c in self.checks},
            "members": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
        }


def verify_packet_identity(p: Packet, mu: Character | None = None) -> PacketReport:
    """Compare each member's full spinor factor with the packet's product formula."""
    ctx = p.plus.ctx
    mu = ctx.trivial() if mu is None else mu
    if p.kind == "endoscopic":
        _, pi1, pi2 = p.source
        rhs_plus = rhs_minus = gl2_lfactor(pi1, mu) * gl2_lfactor(pi2, mu)
    else:
        pi = p.source[1]
        half = tate_factor(ctx.nu("1/2") * mu)
        rhs_minus = gl2_lfactor(pi, mu) * half
        rhs_plus = rhs_minus * tate_factor(ctx.nu("-1/2") * mu)
    checks = [PacketCheck("plus", p.plus, l_full_any_model(p.plus, mu), rhs_plus)]
    if p.minus is not None:
        checks.append(PacketCheck("minus", p.minus, l_full_any_model(p.minus, mu), rhs_minus))
    return PacketReport(p, mu, tuple(checks))
