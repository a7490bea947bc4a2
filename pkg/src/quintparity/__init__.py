"""Quintuple-parity erasure coding over GF(2^m).

k data symbols are protected by 5 parity symbols per stripe.  Any 4
erasures, any 2 errors at unknown positions, or a mix with
``erasures + 2 * errors <= 4`` are corrected.  Past that radius the list
decoders in :mod:`quintparity.beyond` enumerate candidate explanations.
"""

from .beyond import (
    list_bound,
    locate_three_data_multi_syndrome,
    recover_three_failed,
    repair_3erasures_1unknown,
)
from .code import CodeParams, Stripe, build_code, encode, error_syndrome, k_max, syndrome
from .galois import FieldSpec, FieldTables, make_field
from .mindist import (
    Classification,
    DecodeOutcome,
    Status,
    decode_combined,
    decode_erasures,
    decode_stripe,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CodeParams",
    "DecodeOutcome",
    "FieldSpec",
    "FieldTables",
    "Status",
    "Stripe",
    "build_code",
    "decode_combined",
    "decode_erasures",
    "decode_stripe",
    "encode",
    "error_syndrome",
    "k_max",
    "list_bound",
    "locate_three_data_multi_syndrome",
    "make_field",
    "recover_three_failed",
    "repair_3erasures_1unknown",
    "syndrome",
]
