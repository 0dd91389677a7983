"""Decision procedure for Cohen-Macaulayness of the arrangement X and its
symmetric quotient X/S_n, by partition shape.

The engine applies a fixed, ordered rule list.  Each rule either settles a
target (CM / notCM) with a citation of the structural fact it invokes, or
passes.  Reductions (rescaling for the quotient, removal of a part that is
not a subset sum of the others) recurse on smaller partitions, so every
verdict carries the full trace of reasoning.

Also home of the exceptional-parameter set for the deformed Newton algebras
and the report comparing it against swept dimension drops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .poly import Partition
from .subalgebra import GeneratorFamily, default_candidate_grid, parameter_sweep
from .verdict import Rule, Verdict

TARGET_X = "X_lambda"
TARGET_Q = "X_lambda/S_n"


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


class _State:
    """Verdict under construction for one target."""

    def __init__(self, target):
        self.target = target
        self.status = None
        self.rules = []

    def settle(self, status: str, rule: Rule):
        if self.status is None:
            self.status = status
            self.rules.append(rule)

    def verdict(self, lam: Partition) -> Verdict:
        status = self.status or "unknown"
        certainty = "theorem-cited" if self.status else "none"
        details = {"lambda": list(lam.parts)}
        if not self.status:
            details["note"] = "no classification rule applies"
        return Verdict(self.target, status, certainty, list(self.rules),
                       details=details)


def _removable_parts(parts: tuple):
    """Part values l such that l is not a sum of a nonempty subset of the
    remaining parts (removing one copy of l)."""
    out = []
    for val in sorted(set(parts), reverse=True):
        rest = list(parts)
        rest.remove(val)
        sums = {0}
        for p in rest:
            sums |= {s + p for s in sums}
        if val not in sums - {0}:
            out.append(val)
    return out


def _classify(lam: Partition, x: _State, q: _State):
    parts = lam.parts
    r = len(parts)
    distinct = lam.distinct_parts

    # 1: at most two parts
    if r <= 2:
        rule = Rule("few-parts",
                    "with at most two parts the arrangement is a union of "
                    "translates of a plane of dimension at most two, which "
                    "is Cohen-Macaulay")
        x.settle("CM", rule)
        q.settle("CM", Rule("cm-descends-to-quotient",
                            "the symmetric quotient of a Cohen-Macaulay "
                            "arrangement of this type is Cohen-Macaulay"))
        return

    # 2: all parts equal
    if len(distinct) == 1:
        rule = Rule("equal-parts",
                    "when all parts are equal the arrangement is "
                    "Cohen-Macaulay, and so is its symmetric quotient")
        x.settle("CM", rule)
        q.settle("CM", rule)
        return

    # 3: shape (m^r, 1^s)
    if len(distinct) == 2 and distinct[1] == 1:
        m = distinct[0]
        s = lam.multiplicities[1]
        if m <= 2 or m > s:
            rule = Rule("m-and-ones-cm",
                        f"for parts (m^r, 1^s) with m = {m}, s = {s}: the "
                        "arrangement and its quotient are Cohen-Macaulay "
                        "exactly when m <= 2 or m > s")
            x.settle("CM", rule)
            q.settle("CM", rule)
        else:
            rule = Rule("m-and-ones-notcm",
                        f"for parts (m^r, 1^s) with m = {m}, s = {s}: since "
                        "2 < m <= s, neither the arrangement nor its "
                        "quotient is Cohen-Macaulay")
            x.settle("notCM", rule)
            q.settle("notCM", rule)
        return

    # 4: quotient-only rescaling by the gcd of the parts
    g = gcd(*parts)
    if g > 1 and q.status is None:
        q.rules.append(Rule(
            "quotient-rescale",
            "the invariant algebra is unchanged when all parts are divided "
            f"by their gcd {g}",
            note=f"reduced to {list(p // g for p in parts)}"))
        sub_x = _State(TARGET_X)
        _classify(lam.rescaled(), sub_x, q)
        # fall through: X is unaffected by rescaling

    # 5a: three parts with two distinct values: the invariant algebra
    # rescales to the equal-parameter slice family with a positive rational
    # parameter, which is Cohen-Macaulay
    if r == 3 and len(distinct) == 2 and q.status is None:
        q.settle("CM", Rule(
            "three-parts-two-values",
            "with three parts and two distinct values the invariant algebra "
            "rescales to the equal-parameter slice family at a positive "
            "rational parameter, which is a free module over its parameter "
            "subalgebra, hence Cohen-Macaulay"))

    # 5: two-part shapes, reduced-ratio obstruction
    if len(distinct) == 2:
        m, p = distinct
        rr = lam.multiplicities[m]
        s = lam.multiplicities[p]
        k = gcd(m, p)
        b, c = m // k, p // k
        if c <= rr and 3 <= b <= s:
            rule = Rule("reduced-ratio-obstruction",
                        f"for parts (m^r, p^s) with m/p = {b}/{c} in lowest "
                        f"terms, {c} <= r and 3 <= {b} <= s force the "
                        "quotient, and hence the arrangement, to fail "
                        "Cohen-Macaulayness")
            q.settle("notCM", rule)
            x.settle("notCM", rule)

    # 6: explicit computed small families
    if parts == (4, 2, 2):
        x.settle("CM", Rule(
            "four-two-two",
            "the (4,2,2) arrangement has a nonnegative Hilbert numerator "
            "realized by a regular sequence, so it is Cohen-Macaulay"))
    if len(distinct) == 2 and distinct == (3, 2) and r >= 3:
        x.settle("notCM", Rule(
            "three-two-powers",
            "arrangements with parts (3^r, 2^s), r, s >= 1, r + s >= 3, "
            "have a negative Hilbert numerator coefficient and are not "
            "Cohen-Macaulay"))
    if (len(distinct) == 2 and distinct == (5, 2)
            and lam.multiplicities[2] >= 2):
        x.settle("notCM", Rule(
            "five-two-powers",
            "arrangements with parts (5^r, 2^s), r >= 1, s >= 2, have a "
            "negative Hilbert numerator coefficient and are not "
            "Cohen-Macaulay"))

    # 7: at least four distinct parts
    if len(distinct) >= 4:
        rule = Rule("four-distinct-parts",
                    "a partition with at least four distinct parts has a "
                    "non-Cohen-Macaulay quotient, hence a "
                    "non-Cohen-Macaulay arrangement")
        q.settle("notCM", rule)
        x.settle("notCM", rule)

    # 8-9: three distinct parts
    if len(distinct) == 3:
        a, b, c = distinct
        if a != b + c:
            rule = Rule("three-distinct-generic",
                        f"three distinct parts {a} > {b} > {c} with "
                        f"{a} != {b} + {c}: the quotient and the "
                        "arrangement are not Cohen-Macaulay")
            q.settle("notCM", rule)
            x.settle("notCM", rule)
        elif lam.multiplicities[a] == 1:
            x.settle("notCM", Rule(
                "sum-part",
                f"for parts ({b}+{c}, {b}^r, {c}^s) the arrangement is not "
                "Cohen-Macaulay (detected through the reflection-isotypic "
                "module, whose Hilbert numerator sum exceeds its rank)"))
            # the invariant algebra rescales to the slice family with
            # weights (beta+1, beta, 1^s), beta = b/c (or c/b when the
            # middle part repeats instead of the small one)
            combos = []
            if lam.multiplicities[b] == 1:
                combos.append((Fraction(b, c), lam.multiplicities[c]))
            if lam.multiplicities[c] == 1:
                combos.append((Fraction(c, b), lam.multiplicities[b]))
            for beta, s in combos:
                if q.status is not None:
                    break
                if s == 1:
                    if beta in (Fraction(2), Fraction(1, 2)):
                        q.settle("notCM", Rule(
                            "b-plus-one-b-one-exception",
                            "the invariant algebra of parts proportional to "
                            "(3, 2, 1) has Hilbert numerator "
                            "1 + t^4 + t^5 + t^6 + t^8 + ... and is not "
                            "Cohen-Macaulay"))
                    else:
                        q.settle("CM", Rule(
                            "b-plus-one-b-one",
                            "the invariant algebra rescales to the slice "
                            f"family (beta+1, beta, 1) with beta = {beta} "
                            "outside {0, 1/2, 1, 2} (up to sign), which is "
                            "a free module over its parameter subalgebra, "
                            "hence Cohen-Macaulay"))
                elif s == 2 and beta not in (
                        Fraction(1, 2), Fraction(3, 2), Fraction(2),
                        Fraction(3)):
                    q.settle("CM", Rule(
                        "b-plus-one-b-one-one",
                        "the invariant algebra rescales to the slice "
                        f"family (beta+1, beta, 1, 1) with beta = {beta} "
                        "outside {0, 1/2, 1, 3/2, 2, 3} (up to sign), "
                        "which is a free module over its parameter "
                        "subalgebra, hence Cohen-Macaulay"))

    # 10: remove a part that is not a subset sum of the others
    if x.status is None or q.status is None:
        for val in _removable_parts(parts):
            rest = list(parts)
            rest.remove(val)
            if len(rest) < 2:
                continue
            sub_x = _State(TARGET_X)
            sub_q = _State(TARGET_Q)
            _classify(Partition(rest), sub_x, sub_q)
            note = f"removed part {val}, reduced to {rest}"
            if sub_x.status == "notCM" and x.status is None:
                x.rules.append(Rule(
                    "part-removal",
                    "a part that is not a sum of other parts can be "
                    "removed: if the smaller arrangement is not "
                    "Cohen-Macaulay, neither is the larger", note=note))
                x.rules.extend(sub_x.rules)
                x.status = "notCM"
            if sub_q.status == "notCM" and q.status is None:
                q.rules.append(Rule(
                    "part-removal",
                    "a part that is not a sum of other parts can be "
                    "removed: if the smaller quotient is not "
                    "Cohen-Macaulay, neither is the larger", note=note))
                q.rules.extend(sub_q.rules)
                q.status = "notCM"
            if x.status is not None and q.status is not None:
                break

    # consistency propagation
    if x.status == "CM":
        q.settle("CM", Rule("cm-descends-to-quotient",
                            "the symmetric quotient of a Cohen-Macaulay "
                            "arrangement of this type is Cohen-Macaulay"))
    if q.status == "notCM":
        x.settle("notCM", Rule("quotient-obstruction",
                               "an arrangement whose symmetric quotient is "
                               "not Cohen-Macaulay is itself not "
                               "Cohen-Macaulay"))


def classify(lam):
    """Ordered-rule verdict pair (arrangement, symmetric quotient)."""
    lam = _as_partition(lam)
    x = _State(TARGET_X)
    q = _State(TARGET_Q)
    _classify(lam, x, q)
    return x.verdict(lam), q.verdict(lam)


def bbar_set(r: int, s: int):
    """Exceptional parameter values of the deformed family predicted by the
    reduced-ratio obstruction: b/c in lowest terms with b > c lands in the
    set when 3 <= b <= s and c <= r, and its reciprocal when 3 <= b <= r
    and c <= s."""
    out = set()
    for b in range(3, max(r, s) + 1):
        for c in range(1, b):
            if gcd(b, c) != 1:
                continue
            if b <= s and c <= r:
                out.add(Fraction(b, c))
            if b <= r and c <= s:
                out.add(Fraction(c, b))
    return sorted(out)


def known_cm_drops(r: int, s: int):
    """Parameter values where the dimension table drops although the
    algebra is known to stay Cohen-Macaulay (so they are excluded from the
    exceptional set): 1 always, 2 for s >= 2, 1/2 for r >= 2."""
    out = [Fraction(1)]
    if s >= 2:
        out.append(Fraction(2))
    if r >= 2:
        out.append(Fraction(1, 2))
    return sorted(out)


@dataclass
class BSetReport:
    r: int
    s: int
    bbar: list
    known_cm_drops: list
    sweep: object
    unexplained_drops: list
    missing: list

    @property
    def agrees(self) -> bool:
        return not self.unexplained_drops and not self.missing

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "bbar": [str(a) for a in self.bbar],
            "known_cm_drops": [str(a) for a in self.known_cm_drops],
            "sweep": self.sweep.to_json(),
            "unexplained_drops": [str(a) for a in self.unexplained_drops],
            "missing": [str(a) for a in self.missing],
            "agrees": self.agrees,
        }


def bset_report(r: int, s: int, max_degree: int = 12,
                seed: int | None = None, candidates=None) -> BSetReport:
    """Sweep the deformed family's parameter over the default grid and
    compare the dimension-drop set against the predicted exceptional set."""
    if candidates is None:
        candidates = default_candidate_grid(r, s)
    sweep = parameter_sweep(
        lambda a: GeneratorFamily.deformed(r, s, a), candidates,
        max_degree=max_degree, seed=seed)
    bbar = bbar_set(r, s)
    known = known_cm_drops(r, s)
    drops = set(sweep.drop_set)
    unexplained = sorted(drops - set(bbar) - set(known))
    missing = sorted(set(bbar) - drops)
    return BSetReport(r, s, bbar, known, sweep, unexplained, missing)
