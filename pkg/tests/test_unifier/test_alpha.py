import pytest

from calculus import parse
from unifier import alpha_equivalent


@pytest.mark.parametrize(
    "left,right,expected",
    [
        ("\\x.x", "\\y.y", True),
        ("\\x.\\y.x", "\\a.\\b.a", True),
        ("\\x.\\y.x", "\\x.\\y.y", False),
        ("\\x.x", "\\x.\\y.y", False),
        ("letrec a = \\z.z, b = a in b", "letrec d = c, c = \\w.w in d", True),
        ("letrec a = \\z.z, b = a in b", "letrec d = c, c = \\w.w in c", False),
        ("\\f.(f f)", "\\g.(g g)", True),
    ],
)
def test_alpha_equivalent(left: str, right: str, expected: bool) -> None:
    assert alpha_equivalent(parse(left), parse(right)) is expected


def test_free_variables_are_rejected() -> None:
    with pytest.raises(ValueError):
        alpha_equivalent(parse("\\x.y"), parse("\\x.y"))
