import importlib
import inspect
import pkgutil
from types import ModuleType

import pytest
from hamcrest import assert_that, empty

import lambek_lke


def _modules() -> list[ModuleType]:
    names = [info.name for info in pkgutil.walk_packages(lambek_lke.__path__, "lambek_lke.")]
    return [importlib.import_module(name) for name in sorted(names)]


def _own_doc(value: object) -> str:
    doc = vars(value).get("__doc__") if inspect.isclass(value) else getattr(value, "__doc__", None)
    return (doc or "").strip()


@pytest.mark.parametrize("module", _modules(), ids=lambda module: module.__name__)
def test_public_definitions_are_documented(module: ModuleType) -> None:
    undocumented = [
        name
        for name, value in vars(module).items()
        if not name.startswith("_")
        and (inspect.isclass(value) or inspect.isfunction(value))
        and value.__module__ == module.__name__
        and not _own_doc(value)
    ]
    assert_that(undocumented, empty())
