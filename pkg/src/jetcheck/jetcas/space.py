"""Variable spaces: independent variables, field catalogs, jet keys.

A jet variable is a pair (field_index, multi_index) where the
multi-index is a tuple of derivative orders aligned with the field's
depends_on list.  Constants and algebraic-extension generators always
carry the empty multi-index; extension generators (s with s^2 = lam,
I with I^2 = -1) are differentiated through their defining relation at
the expression layer and never grow jet indices of their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction


@dataclass(frozen=True)
class IndependentVariable:
    name: str
    index: int


@dataclass(frozen=True)
class FieldSignature:
    name: str
    depends_on: tuple[str, ...] = ()
    kind: str = "field"  # field | constant | extension
    # for kind == "extension": generator g satisfies g**2 == relation,
    # where relation names either another field or a rational constant
    relation: tuple[str, object] | None = None

    def __post_init__(self):
        if self.kind == "constant" and self.depends_on:
            raise ValueError(f"constant {self.name} cannot depend on variables")
        if self.kind == "extension":
            if self.depends_on:
                raise ValueError(f"extension symbol {self.name} carries no jet indices")
            if self.relation is None:
                raise ValueError(f"extension symbol {self.name} needs a defining relation")


class SpaceError(ValueError):
    pass


class VariableSpace:
    """Catalog of independent variables and field signatures."""

    def __init__(self, variables, fields, invertible=(), name=""):
        self.name = name
        self.variables = tuple(
            IndependentVariable(v, i) for i, v in enumerate(variables)
        )
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise SpaceError("duplicate variable names")
        self.var_index = {v.name: v.index for v in self.variables}
        self.fields = tuple(fields)
        fnames = [f.name for f in self.fields]
        if len(set(fnames)) != len(fnames):
            raise SpaceError("duplicate field names")
        clash = set(fnames) & set(names)
        if clash:
            raise SpaceError(f"names used as both variable and field: {sorted(clash)}")
        self.field_index = {f.name: i for i, f in enumerate(self.fields)}
        for f in self.fields:
            for v in f.depends_on:
                if v not in self.var_index:
                    raise SpaceError(f"field {f.name} depends on undeclared variable {v}")
            if f.kind == "extension":
                rkind, rval = f.relation
                if rkind == "field" and rval not in self.field_index:
                    raise SpaceError(f"extension {f.name} relation names unknown field {rval}")
        # declared-nonvanishing jets, by printed jet name (e.g. "P", "X_z0")
        self.invertible = frozenset(invertible)

    # -- jet keys -----------------------------------------------------

    def jet(self, field_name, orders=()):
        """Jet key for field_name differentiated per `orders` (var names)."""
        fi = self.field_index.get(field_name)
        if fi is None:
            raise SpaceError(f"undeclared field {field_name!r}")
        f = self.fields[fi]
        mi = [0] * len(f.depends_on)
        pos = {v: k for k, v in enumerate(f.depends_on)}
        for v in orders:
            if v not in pos:
                raise SpaceError(
                    f"field {field_name} does not depend on variable {v!r}"
                )
            mi[pos[v]] += 1
        return (fi, tuple(mi))

    def jet_field(self, key):
        return self.fields[key[0]]

    def jet_total_order(self, key):
        return sum(key[1])

    def jet_orders(self, key):
        """Map var name -> derivative order for this jet."""
        f = self.fields[key[0]]
        return {v: o for v, o in zip(f.depends_on, key[1]) if o}

    def jet_name(self, key):
        f = self.fields[key[0]]
        if not any(key[1]):
            return f.name
        suffix = "".join(v * o for v, o in zip(f.depends_on, key[1]))
        return f"{f.name}_{suffix}"

    def bump(self, key, var_name):
        """Jet key differentiated once more by var_name, or None if the
        field does not depend on it (derivative is zero)."""
        fi, mi = key
        f = self.fields[fi]
        try:
            pos = f.depends_on.index(var_name)
        except ValueError:
            return None
        mi = list(mi)
        mi[pos] += 1
        return (fi, tuple(mi))

    def is_invertible_jet(self, key):
        return self.jet_name(key) in self.invertible

    # -- catalog text -------------------------------------------------

    def to_text(self):
        lines = [f"vars {' '.join(v.name for v in self.variables)}"]
        for f in self.fields:
            if f.kind == "constant":
                lines.append(f"const {f.name}")
            elif f.kind == "extension":
                rkind, rval = f.relation
                rhs = rval if rkind == "field" else str(rval)
                lines.append(f"ext {f.name} : {f.name}^2 = {rhs}")
            else:
                lines.append(f"field {f.name}({','.join(f.depends_on)})")
        if self.invertible:
            lines.append(f"invertible {' '.join(sorted(self.invertible))}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text, name=""):
        variables = []
        fields = []
        invertible = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "vars":
                variables.extend(rest.split())
            elif head == "const":
                fields.append(FieldSignature(rest, (), "constant"))
            elif head == "field":
                fname, _, args = rest.partition("(")
                args = args.rstrip(")")
                deps = tuple(a.strip() for a in args.split(",") if a.strip())
                fields.append(FieldSignature(fname.strip(), deps))
            elif head == "ext":
                sym, _, rel = rest.partition(":")
                sym = sym.strip()
                lhs, _, rhs = rel.partition("=")
                lhs = lhs.strip()
                if lhs != f"{sym}^2":
                    raise SpaceError(f"unsupported extension relation {line!r}")
                rhs = rhs.strip()
                try:
                    relation = ("const", Fraction(rhs))
                except ValueError:
                    relation = ("field", rhs)
                fields.append(FieldSignature(sym, (), "extension", relation))
            elif head == "invertible":
                invertible.extend(rest.split())
            else:
                raise SpaceError(f"unknown catalog line {line!r}")
        # infer variables from depends_on when no vars line was given
        if not variables:
            seen = []
            for f in fields:
                for v in f.depends_on:
                    if v not in seen:
                        seen.append(v)
            variables = seen
        return cls(variables, fields, invertible, name=name)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, VariableSpace)
            and self.variables == other.variables
            and self.fields == other.fields
            and self.invertible == other.invertible
        )

    def __hash__(self):
        return hash((self.variables, self.fields, self.invertible))

    def __repr__(self):
        return (
            f"VariableSpace({[v.name for v in self.variables]}, "
            f"{[f.name for f in self.fields]})"
        )
