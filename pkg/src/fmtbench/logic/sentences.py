"""Constructors for the named sentences and formula schemes."""

from __future__ import annotations

from itertools import combinations

from .formula import Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, conj, disj, exists, forall, neq
from .vocab import LT, TAU_0, TAU_E, Vocabulary


def lt(x, y):
    return Rel(LT, (x, y))


def phi_dg() -> Formula:
    return Forall("x", Not(Rel("E", ("x", "x"))))


def phi_graph() -> Formula:
    symmetric = forall(["x", "y"], Implies(Rel("E", ("x", "y")), Rel("E", ("y", "x"))))
    return conj(phi_dg(), symmetric)


def phi0_conjuncts() -> list[Formula]:
    """The seven universal conjuncts saying that ``Lt`` is a linear order,
    ``U_min``/``U_max`` hold only at the extremes and ``S`` is contained in the
    successor relation."""
    return [
        Forall("x", Not(lt("x", "x"))),
        forall(["x", "y"], disj(lt("x", "y"), Eq("x", "y"), lt("y", "x"))),
        forall(["x", "y", "z"], Implies(conj(lt("x", "y"), lt("y", "z")), lt("x", "z"))),
        forall(["x", "y"], Implies(Rel("U_min", ("x",)), disj(Eq("x", "y"), lt("x", "y")))),
        forall(["x", "y"], Implies(Rel("U_max", ("x",)), disj(Eq("x", "y"), lt("y", "x")))),
        forall(["x", "y"], Implies(Rel("S", ("x", "y")), lt("x", "y"))),
        forall(["x", "y", "z"], Implies(conj(lt("x", "y"), lt("y", "z")), Not(Rel("S", ("x", "z"))))),
    ]


def phi0() -> Formula:
    return conj(phi0_conjuncts())


def _successor_total() -> Formula:
    return forall(["x", "y"], Implies(lt("x", "y"), Exists("z", Rel("S", ("x", "z")))))


def phi1() -> Formula:
    return conj(
        Exists("x", Rel("U_min", ("x",))),
        Exists("x", Rel("U_max", ("x",))),
        _successor_total(),
    )


def phi1_star() -> Formula:
    """Like ``phi1`` without asking for a maximum."""
    return conj(Exists("x", Rel("U_min", ("x",))), _successor_total())


def _tuple_vars(arity):
    return ["x"] if arity == 1 else [f"x{i}" for i in range(1, arity + 1)]


def totality_conjuncts(vocab: Vocabulary) -> list[Formula]:
    out = []
    for std, comp in vocab.pairs:
        xs = _tuple_vars(vocab.arity(std))
        out.append(forall(xs, Or((Rel(std, tuple(xs)), Rel(comp, tuple(xs))))))
    return out


def disjointness_conjuncts(vocab: Vocabulary) -> list[Formula]:
    out = []
    for std, comp in vocab.pairs:
        xs = _tuple_vars(vocab.arity(std))
        out.append(forall(xs, Or((Not(Rel(std, tuple(xs))), Not(Rel(comp, tuple(xs)))))))
    return out


def phi1_tau(vocab: Vocabulary) -> Formula:
    if not vocab.pairs:
        raise ValueError("phi1_tau needs a vocabulary with standard/complement pairs")
    return conj([phi1()] + totality_conjuncts(vocab))


def cycle_vars(r, prefix="z"):
    return [f"{prefix}{i}" for i in range(1, r + 1)]


def phi_c(r: int, x: str = "x", zs=None) -> Formula:
    """Quantifier-free: ``zs`` is a cycle of length r through ``x`` (x = z1)."""
    if r < 3:
        raise ValueError("cycle length must be at least 3")
    zs = list(zs) if zs is not None else cycle_vars(r)
    if len(zs) != r:
        raise ValueError("need exactly r cycle variables")
    parts = [Eq(x, zs[0]), Rel("E", (zs[-1], zs[0]))]
    parts += [Rel("E", (zs[i], zs[i + 1])) for i in range(r - 1)]
    parts += [neq(a, b) for a, b in combinations(zs, 2)]
    return conj(parts)


def phi_pe(r: int, s: int, x: str = "x", y: str = "y", zs=None, ws=None) -> Formula:
    """Quantifier-free: z0..zr is a path of length r from x to y, and w1..ws is
    a disjoint s-cycle whose vertex w1 is adjacent to z_{r-1}.

    The edge between z_{r-1} and z_r is included so the path is connected.
    """
    if r < 3 or s < 3:
        raise ValueError("path and ear lengths must be at least 3")
    zs = list(zs) if zs is not None else [f"z{i}" for i in range(r + 1)]
    ws = list(ws) if ws is not None else cycle_vars(s, "w")
    if len(zs) != r + 1 or len(ws) != s:
        raise ValueError("need r+1 path variables and s ear variables")
    parts = [Eq(x, zs[0]), Eq(y, zs[-1])]
    parts += [Rel("E", (zs[i], zs[i + 1])) for i in range(r)]
    parts += [neq(a, b) for a, b in combinations(zs, 2)]
    parts += [neq(z, w) for z in zs for w in ws]
    parts.append(phi_c(s, ws[0], ws))
    parts.append(Rel("E", (zs[r - 1], ws[0])))
    return conj(parts)


BUILTIN_NAMES = ("phi_DG", "phi_Graph", "phi0", "phi1", "phi1_tau", "phi1_star", "phi_c", "phi_pe")


def builtin_vocab(name: str, params: dict | None = None) -> Vocabulary:
    params = params or {}
    if name in ("phi_DG", "phi_Graph", "phi_c", "phi_pe"):
        return TAU_E
    if name == "phi1_tau":
        return params["vocab"]
    if name in BUILTIN_NAMES:
        return TAU_0
    raise KeyError(f"unknown builtin sentence {name}")


def builtin_sentence(name: str, params: dict | None = None) -> Formula:
    params = dict(params or {})
    if name == "phi_DG":
        return phi_dg()
    if name == "phi_Graph":
        return phi_graph()
    if name == "phi0":
        return phi0()
    if name == "phi1":
        return phi1()
    if name == "phi1_star":
        return phi1_star()
    if name == "phi1_tau":
        if "vocab" not in params:
            raise ValueError("phi1_tau needs a paired vocabulary parameter 'vocab'")
        return phi1_tau(params["vocab"])
    if name == "phi_c":
        return phi_c(int(params.get("r", 0)))
    if name == "phi_pe":
        return phi_pe(int(params.get("r", 0)), int(params.get("s", 0)))
    raise KeyError(f"unknown builtin sentence {name}")


def cycle_through(r: int, x: str = "x", prefix: str = "z") -> Formula:
    """Existential closure of ``phi_c`` leaving ``x`` free."""
    zs = cycle_vars(r, prefix)
    return exists(zs, phi_c(r, x, zs))


def path_with_ear(r: int, s: int, x: str = "x", y: str = "y", zp: str = "z", wp: str = "w") -> Formula:
    zs = [f"{zp}{i}" for i in range(r + 1)]
    ws = cycle_vars(s, wp)
    return exists(zs + ws, phi_pe(r, s, x, y, zs, ws))
