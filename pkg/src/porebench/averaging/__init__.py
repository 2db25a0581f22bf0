"""Volume averaging of pore-scale scalar fields."""

from porebench.averaging.field import (
    ScalarField,
    decode_field,
    encode_field,
    read_field,
    write_field,
    write_field_pgm,
)
from porebench.averaging.schemes import (
    Average,
    AveragingKind,
    AveragingScheme,
    average,
    decompose,
    variation_product,
)

__all__ = [
    "Average",
    "AveragingKind",
    "AveragingScheme",
    "ScalarField",
    "average",
    "decode_field",
    "decompose",
    "encode_field",
    "read_field",
    "variation_product",
    "write_field",
    "write_field_pgm",
]
