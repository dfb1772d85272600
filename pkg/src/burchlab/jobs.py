"""Job descriptions: the JSON surface of the CLI.

A job fixes the prime, the variables, the ideal I (which must be
homogeneous and inside the square of the maximal ideal), the module (a
cyclic quotient or an explicit presentation), caps, and the regime.
Parsing is strict: every polynomial uses explicit * and ^, and failures
carry the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InputError
from .groebner import Ideal
from .matrices import FreeModuleElement
from .pipeline import Caps, RingContext
from .resolve import ModulePresentation
from .ring import ParseError, PolyRing

SCHEMA_VERSION = 1

COMMANDS = ("burch", "resolve", "bar", "cycles", "verify-general", "verify-golod", "corpus")


@dataclass
class JobSpec:
    prime: int
    variables: tuple
    ideal_strings: list
    module: dict                 # {"cyclic": [...]} | {"presentation": {...}}
    caps: Caps = field(default_factory=Caps)
    regime: str = "auto"
    command: str | None = None
    name: str | None = None

    def to_dict(self) -> dict:
        out = {
            "p": self.prime,
            "vars": list(self.variables),
            "ideal": list(self.ideal_strings),
            "module": self.module,
            "caps": {
                "homDegree": self.caps.hom_degree,
                "arity": self.caps.arity,
                "degree": self.caps.degree,
                "bruteForceDim": self.caps.brute_force_dim,
                "generalQs": list(self.caps.general_qs),
            },
            "regime": self.regime,
        }
        if self.command:
            out["command"] = self.command
        if self.name:
            out["name"] = self.name
        return out

    # -- realization -------------------------------------------------------

    def ring(self) -> PolyRing:
        return PolyRing(self.prime, tuple(self.variables))

    def ideal(self, ring: PolyRing) -> Ideal:
        gens = []
        for s in self.ideal_strings:
            try:
                gens.append(ring.parse(s))
            except ParseError as e:
                raise InputError(f"ideal generator {s!r}: {e}") from None
        return Ideal(ring, gens)

    def context(self) -> RingContext:
        ring = self.ring()
        ideal = self.ideal(ring)
        from .burch import check_in_square

        check_in_square(ideal)
        return RingContext.build(ring, ideal)

    def presentation(self, ctx: RingContext) -> ModulePresentation:
        ring = ctx.ring
        if "cyclic" in self.module:
            gens = []
            for s in self.module["cyclic"]:
                try:
                    gens.append(ring.parse(s))
                except ParseError as e:
                    raise InputError(f"module generator {s!r}: {e}") from None
            return ModulePresentation.cyclic(ctx.ideal, gens)
        if "presentation" in self.module:
            spec = self.module["presentation"]
            degrees = spec.get("generatorDegrees")
            if not isinstance(degrees, list) or not all(isinstance(d, int) for d in degrees):
                raise InputError("presentation.generatorDegrees must be a list of integers")
            rels = []
            for col in spec.get("relations", []):
                if len(col) != len(degrees):
                    raise InputError("each relation column needs one entry per generator")
                coords = {}
                for i, s in enumerate(col):
                    try:
                        f = ring.parse(s) if s not in ("0", "") else ring.zero()
                    except ParseError as e:
                        raise InputError(f"relation entry {s!r}: {e}") from None
                    if f:
                        coords[i] = f
                rels.append(FreeModuleElement(ring, coords))
            return ModulePresentation(ring, ctx.ideal, degrees, rels)
        raise InputError("module must have a 'cyclic' or 'presentation' key")


def parse_job(doc) -> JobSpec:
    """Validate a JSON job document into a JobSpec."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InputError("job document must be a JSON object")
    for key in ("p", "vars", "ideal", "module"):
        if key not in doc:
            raise InputError(f"missing required field {key!r}")
    p = doc["p"]
    if not isinstance(p, int) or p < 2:
        raise InputError("p must be a prime integer")
    variables = doc["vars"]
    if (not isinstance(variables, list) or not variables
            or not all(isinstance(v, str) and v.isidentifier() for v in variables)):
        raise InputError("vars must be a nonempty list of identifiers")
    if len(set(variables)) != len(variables):
        raise InputError("duplicate variable names")
    ideal = doc["ideal"]
    if not isinstance(ideal, list) or not all(isinstance(s, str) for s in ideal):
        raise InputError("ideal must be a list of polynomial strings")
    module = doc["module"]
    if not isinstance(module, dict) or not ({"cyclic", "presentation"} & set(module)):
        raise InputError("module must be {'cyclic': [...]} or {'presentation': {...}}")
    caps_doc = doc.get("caps", {})
    caps = Caps(
        hom_degree=int(caps_doc.get("homDegree", 10)),
        arity=int(caps_doc.get("arity", 4)),
        degree=int(caps_doc.get("degree", 10)),
        brute_force_dim=int(caps_doc.get("bruteForceDim", 400)),
        general_qs=tuple(caps_doc.get("generalQs", (4, 5))),
    )
    if caps.hom_degree < 2 or caps.hom_degree > 12:
        raise InputError("caps.homDegree must be between 2 and 12")
    regime = doc.get("regime", "auto")
    if regime not in ("dg", "ainf", "auto"):
        raise InputError("regime must be dg, ainf, or auto")
    command = doc.get("command")
    if command is not None and command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    spec = JobSpec(
        prime=p,
        variables=tuple(variables),
        ideal_strings=list(ideal),
        module=module,
        caps=caps,
        regime=regime,
        command=command,
        name=doc.get("name"),
    )
    # fail fast on unparseable input and the minimality requirement
    spec.context()
    return spec


def load_job(path) -> JobSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_job(fh.read())
