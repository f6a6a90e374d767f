"""Lambek invariants of commutative squares and the Lambek morphism.

The diagram is two adjacent squares sharing the vertical ``b``::

    A --f--> B --g--> C
    |a       |b       |c
    v        v        v
    A'-f'--> B'-g'--> C'

``Im S`` is the cokernel of ``lam: A -> M`` where ``M`` is the pullback of
``im b`` and ``im f'``; ``Ker T`` is the kernel of ``rho: N -> C'`` where
``N`` is the pushout of ``coim b`` and ``coim g``.  With ``b`` exact and
both row composites null, ``r @ inv(b_bar) @ l`` factors uniquely as
``ker_t @ Lambda @ im_s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import core
from .core import CokernelArrow, KernelArrow, Square
from .errors import (
    EndpointMismatch,
    HypothesisFailed,
    NonCommutingSquare,
    PreconditionFailed,
    TooLarge,
    Unsupported,
)
from .models.base import Morphism


@dataclass(frozen=True, eq=False)
class LambekDiagram:
    f: Morphism
    g: Morphism
    fp: Morphism
    gp: Morphism
    a: Morphism
    b: Morphism
    c: Morphism

    NAMES = ("f", "g", "fp", "gp", "a", "b", "c")

    def __post_init__(self):
        checks = [
            ("g", self.g.src == self.f.dst),
            ("gp", self.gp.src == self.fp.dst),
            ("a", self.a.src == self.f.src and self.a.dst == self.fp.src),
            ("b", self.b.src == self.f.dst and self.b.dst == self.fp.dst),
            ("c", self.c.src == self.g.dst and self.c.dst == self.gp.dst),
        ]
        for name, ok in checks:
            if not ok:
                raise EndpointMismatch(f"morphism {name!r} has the wrong endpoints", name=name)
        models = {m.model.name for m in self.morphisms}
        if len(models) != 1:
            raise EndpointMismatch("diagram mixes models: " + ", ".join(sorted(models)))
        if not self.s.commutes():
            raise NonCommutingSquare("square S does not commute: b f != f' a", name="S")
        if not self.t.commutes():
            raise NonCommutingSquare("square T does not commute: c g != g' b", name="T")

    @property
    def morphisms(self):
        return tuple(getattr(self, n) for n in self.NAMES)

    @property
    def model(self):
        return self.f.model

    @property
    def s(self) -> Square:
        return Square(top=self.f, left=self.a, right=self.b, bottom=self.fp)

    @property
    def t(self) -> Square:
        return Square(top=self.g, left=self.b, right=self.c, bottom=self.gp)


@dataclass(frozen=True, eq=False)
class LambekResult:
    lam: Morphism
    im_s: CokernelArrow
    rho: Morphism
    ker_t: KernelArrow
    l: Morphism  # noqa: E741
    r: Morphism
    alpha: Optional[Morphism] = None
    beta: Optional[Morphism] = None
    Lambda: Optional[Morphism] = None
    unique: Optional[bool] = None

    @property
    def im_s_object(self):
        return self.im_s.dst

    @property
    def ker_t_object(self):
        return self.ker_t.src


def lambek_invariants(d: LambekDiagram) -> LambekResult:
    """``Im S`` and ``Ker T`` with their defining arrows; Lambda left unset."""
    nd_b = core.normal_decomposition(d.b)
    nd_fp = core.normal_decomposition(d.fp)
    nd_g = core.normal_decomposition(d.g)

    # M as a subobject of Im b: the part that also lies in Im f'
    l, _ = core.pullback_of_kernel(nd_fp.im, nd_b.im.arrow)
    lam = core.factor_through(l, nd_b.imfactor() @ d.f)
    im_s = core.cokernel(lam)

    # N as a quotient of Coim b: additionally collapse Ker g
    r, _ = core.pushout_of_cokernel(nd_g.coim, nd_b.coim.arrow)
    rho = core.factor_through_cokernel(r, d.gp @ nd_b.coimfactor())
    ker_t = core.kernel(rho)

    return LambekResult(lam=lam, im_s=im_s, rho=rho, ker_t=ker_t, l=l.arrow, r=r.arrow)


def check_hypotheses(d: LambekDiagram):
    """Names of the failing hypotheses of the existence theorem (empty if none)."""
    failed = []
    if not core.is_null(d.g @ d.f):
        failed.append("gf_null")
    if not core.is_null(d.gp @ d.fp):
        failed.append("gpfp_null")
    if not core.is_exact(d.b):
        failed.append("b_exact")
    return failed


def lambek_morphism(d: LambekDiagram) -> LambekResult:
    """Construct Lambda, raising :class:`HypothesisFailed` if it does not apply."""
    failed = check_hypotheses(d)
    if failed:
        raise HypothesisFailed(failed[0], "hypotheses not met: " + ", ".join(failed))
    res = lambek_invariants(d)
    nd_b = core.normal_decomposition(d.b)
    b_bar_inv = core.inverse(nd_b.middle)
    rl = res.r @ b_bar_inv @ res.l

    alpha = core.factor_through_cokernel(res.im_s, rl)
    beta = core.factor_through(res.ker_t, rl)
    from_alpha = core.factor_through(res.ker_t, alpha)
    from_beta = core.factor_through_cokernel(res.im_s, beta)
    if not from_alpha == from_beta:
        raise PreconditionFailed("the two factorizations of r l disagree")
    unique = (
        core.is_null(core.kernel(res.ker_t.arrow).arrow)
        and core.is_null(core.cokernel(res.im_s.arrow).arrow)
    )
    return LambekResult(
        lam=res.lam, im_s=res.im_s, rho=res.rho, ker_t=res.ker_t, l=res.l, r=res.r,
        alpha=alpha, beta=beta, Lambda=from_alpha, unique=unique,
    )


@dataclass
class CheckReport:
    model: str
    gf_null: bool
    gpfp_null: bool
    b_exact: bool
    top_row_exact: bool
    bottom_row_exact: bool
    im_s_fingerprint: object
    ker_t_fingerprint: object
    lambda_exists: bool = False
    lambda_unique: bool = False
    lambda_iso: Optional[bool] = None
    lambda_error: Optional[str] = None
    oracle: Optional[object] = None
    oracle_error: Optional[str] = None
    homological: bool = False
    notes: list = field(default_factory=list)

    @property
    def rows_exact(self) -> bool:
        return self.top_row_exact and self.bottom_row_exact

    @property
    def existence_applicable(self) -> bool:
        return self.gf_null and self.gpfp_null and self.b_exact

    @property
    def iso_applicable(self) -> bool:
        """Hypotheses of the isomorphism theorem (needs a homological model)."""
        return self.existence_applicable and self.rows_exact and self.homological

    @property
    def oracle_agrees(self) -> Optional[bool]:
        return None if self.oracle is None else self.oracle.agrees

    def failures(self) -> list:
        """Theorem-predicted properties that did not hold."""
        out = []
        if self.existence_applicable and not (self.lambda_exists and self.lambda_unique):
            out.append("lambek_existence")
        if self.iso_applicable and not self.lambda_iso:
            out.append("lambek_iso")
        # in grp a divergence is a finding about the open question, not a bug
        if self.oracle is not None and not self.oracle.agrees and self.homological:
            out.append("oracle_agreement")
        return out


def lambek_check(d: LambekDiagram, oracle: bool = True) -> CheckReport:
    """Check the hypotheses, build Lambda where possible and compare with the oracle."""
    model = d.model
    top = core.sequence_report([d.f, d.g])[0]
    bottom = core.sequence_report([d.fp, d.gp])[0]
    inv = lambek_invariants(d)
    report = CheckReport(
        model=model.name,
        gf_null=top.order_two,
        gpfp_null=bottom.order_two,
        b_exact=core.is_exact(d.b),
        top_row_exact=top.exact,
        bottom_row_exact=bottom.exact,
        im_s_fingerprint=model.fingerprint(inv.im_s_object),
        ker_t_fingerprint=model.fingerprint(inv.ker_t_object),
        homological=model.homological,
    )
    if report.existence_applicable:
        try:
            res = lambek_morphism(d)
        except PreconditionFailed as exc:
            report.lambda_error = str(exc)
        else:
            report.lambda_exists = True
            report.lambda_unique = bool(res.unique)
            report.lambda_iso = core.classify(res.Lambda).is_iso
    if oracle:
        from .oracle import lambek_oracle

        try:
            rep = lambek_oracle(d)
        except (TooLarge, Unsupported) as exc:
            report.oracle_error = f"{type(exc).__name__}: {exc}"
        else:
            report.oracle = rep.against(report.im_s_fingerprint, report.ker_t_fingerprint)
    return report
