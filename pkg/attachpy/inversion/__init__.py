from .closed_form import (
    chung_lu_exponent,
    chung_lu_offset,
    closed_form_f,
    closed_form_rate,
)
from .conditions import ConditionReport, check_conditions
from .inversion import (
    AttachmentFunction,
    ModelRate,
    forward,
    invert,
    node_probability,
)

__all__ = [
    "AttachmentFunction",
    "ConditionReport",
    "ModelRate",
    "check_conditions",
    "chung_lu_exponent",
    "chung_lu_offset",
    "closed_form_f",
    "closed_form_rate",
    "forward",
    "invert",
    "node_probability",
]
