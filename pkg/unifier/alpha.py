"""Alpha-equivalence of closed expressions through unification.

Both expressions are renamed apart, encoded and unified. The bound
variables are the only variables of the encodings, so a DVC-clean final
system whose BV classes each pair one binder of the left expression with
one of the right expression witnesses alpha-equivalence.
"""
from beartype import beartype

from calculus import Abstraction, Application, Expr, Letrec, Variable, encode
from unifier.problem import Equation, UnifProblem
from unifier.search import solve


def free_variables(e: Expr) -> set[str]:
    match e:
        case Variable(name):
            return {name}
        case Application(fun, arg):
            return free_variables(fun) | free_variables(arg)
        case Abstraction(param, body):
            return free_variables(body) - {param}
        case Letrec(bindings, body):
            found = free_variables(body)
            for _, s in bindings:
                found |= free_variables(s)
            return found - {x for x, _ in bindings}
    raise TypeError(f"Not an expression: {e!r}")


def rename_bound(e: Expr, prefix: str) -> tuple[Expr, int]:
    """Rename every binder to prefix1, prefix2, ... in binding order"""
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"{prefix}{counter[0]}"

    def walk(e: Expr, scope: dict[str, str]) -> Expr:
        match e:
            case Variable(name):
                return Variable(scope[name])
            case Application(fun, arg):
                return Application(walk(fun, scope), walk(arg, scope))
            case Abstraction(param, body):
                inner = {**scope, param: fresh()}
                return Abstraction(inner[param], walk(body, inner))
            case Letrec(bindings, body):
                inner = dict(scope)
                for x, _ in bindings:
                    inner[x] = fresh()
                renamed = tuple((inner[x], walk(s, inner)) for x, s in bindings)
                return Letrec(renamed, walk(body, inner))
        raise TypeError(f"Not an expression: {e!r}")

    return walk(e, {}), counter[0]


@beartype
def alpha_equivalent(e1: Expr, e2: Expr) -> bool:
    """Raises ValueError for expressions with free variables"""
    for e in (e1, e2):
        if free_variables(e):
            raise ValueError(f"Expression has free variables {sorted(free_variables(e))}")
    left, n_left = rename_bound(e1, "p")
    right, n_right = rename_bound(e2, "q")
    if n_left != n_right:
        return False
    problem = UnifProblem((Equation(encode(left), encode(right)),))
    for final in solve(problem):
        if not final.dvc_ok:
            continue
        lefts = [x.name for x, _ in final.s_bv]
        rights = [rep.name for _, rep in final.s_bv]
        if (
            all(x.startswith("p") for x in lefts)
            and all(y.startswith("q") for y in rights)
            and len(set(lefts)) == len(lefts) == n_left
            and len(set(rights)) == len(rights)
        ):
            return True
    return False
