"""
Lets mypy read the markers of :mod:`hagafold.config.types` as the types they wrap:
``Optional[T]`` is ``T | None`` and ``Stateless[T]`` or ``Stateful[T]`` is ``T``.
"""

from mypy import errorcodes
from mypy.plugin import AnalyzeTypeContext, Callable, Plugin, Type
from mypy.types import AnyType, NoneType, TypeOfAny, UnionType

PREFIX = "hagafold.config.types"


def _single_arg(ctx: AnalyzeTypeContext, marker: str) -> Type | None:
    args = ctx.type.args
    if len(args) == 1:
        return ctx.api.anal_type(args[0])
    ctx.api.fail(
        f"{marker} takes exactly one type argument, got {len(args)}",
        ctx.context,
        code=errorcodes.VALID_TYPE,
    )
    return None


def optional_callback(ctx: AnalyzeTypeContext) -> Type:
    item = _single_arg(ctx, "Optional")
    if item is None:
        return AnyType(TypeOfAny.from_error)
    return UnionType([item, NoneType()], ctx.type.line, ctx.type.column)


def state_callback(ctx: AnalyzeTypeContext) -> Type:
    item = _single_arg(ctx, "Stateless/Stateful")
    return AnyType(TypeOfAny.from_error) if item is None else item


class ConfigPlugin(Plugin):
    def get_type_analyze_hook(
        self, fullname: str
    ) -> Callable[[AnalyzeTypeContext], Type] | None:
        if fullname == f"{PREFIX}.Optional":
            return optional_callback
        if fullname in (f"{PREFIX}.Stateless", f"{PREFIX}.Stateful"):
            return state_callback
        return None


def plugin(version: str):
    return ConfigPlugin
