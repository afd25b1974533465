"""Plain recursive Tarskian evaluation, used as a reference oracle."""

from __future__ import annotations

from ..logic.formula import And, Eq, Exists, Forall, Implies, Not, Or, Rel


def naive_satisfies(a, f, env=None) -> bool:
    env = dict(env or {})
    return _ev(a, f, env)


def _ev(a, f, env):
    if isinstance(f, Eq):
        return env[f.left] == env[f.right]
    if isinstance(f, Rel):
        return tuple(env[x] for x in f.args) in a[f.name]
    if isinstance(f, Not):
        return not _ev(a, f.body, env)
    if isinstance(f, And):
        return all(_ev(a, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_ev(a, p, env) for p in f.parts)
    if isinstance(f, Implies):
        return (not _ev(a, f.left, env)) or _ev(a, f.right, env)
    if isinstance(f, (Forall, Exists)):
        saved = env.get(f.var)
        had = f.var in env
        results = []
        for e in a.universe:
            env[f.var] = e
            results.append(_ev(a, f.body, env))
        if had:
            env[f.var] = saved
        else:
            del env[f.var]
        return all(results) if isinstance(f, Forall) else any(results)
    raise TypeError(f"not a formula: {f!r}")
