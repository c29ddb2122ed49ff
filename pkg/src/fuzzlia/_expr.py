"""Evaluation of user-supplied closed-form expressions over numpy arrays.

Expressions see a fixed numpy vocabulary and the argument names only; no
builtins. This is a convenience for descriptors, not a sandbox.
"""

from __future__ import annotations

import numpy as np

from .errors import DescriptorError

_NAMESPACE = {
    name: getattr(np, name)
    for name in (
        "abs", "clip", "cos", "exp", "expm1", "log", "log1p", "maximum",
        "minimum", "power", "sin", "sqrt", "tanh", "where", "floor", "ceil",
        "isclose", "logical_and", "logical_or",
    )
}
_NAMESPACE.update(pi=np.pi, e=np.e, inf=np.inf)


def compile_expr(expr: str, argnames: tuple[str, ...]):
    try:
        code = compile(expr, "<closed-form>", "eval")
    except SyntaxError as exc:
        raise DescriptorError(f"cannot parse expression {expr!r}: {exc.msg}") from exc
    unknown = set(code.co_names) - set(_NAMESPACE) - set(argnames)
    if unknown:
        raise DescriptorError(f"expression {expr!r} uses unknown names {sorted(unknown)}")

    def fn(*args):
        ns = dict(_NAMESPACE)
        ns.update(zip(argnames, (np.asarray(a, dtype=float) for a in args)))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = eval(code, {"__builtins__": {}}, ns)  # noqa: S307
        shape = np.broadcast_shapes(*(np.shape(a) for a in args))
        return np.broadcast_to(np.asarray(out, dtype=float), shape).copy()

    return fn
