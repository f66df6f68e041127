"""Model checking of transcribed formulas against an instance frame."""

from __future__ import annotations

from ..core.model import Model
from ..foltrans.evaluate import fol_eval
from ..foltrans.syntax import Fol, free_vars
from ..foltrans.translate import translate_model


class InstanceError(ValueError):
    pass


def check_instance(f: Fol, instance: Model) -> bool:
    """Truth of the closed formula ``f`` in ``instance``."""
    fv = free_vars(f)
    if fv:
        raise InstanceError(f"formula has free variables: {', '.join(sorted(fv))}")
    if instance.wrappings:
        raise InstanceError("an instance is a plain frame without wrappings")
    return fol_eval(translate_model(instance), f)
