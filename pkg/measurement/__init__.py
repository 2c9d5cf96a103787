from .choi import (
    choi_adjoint_apply,
    choi_apply,
    choi_from_kraus,
    choi_to_superop,
    compose_chois,
    kraus_from_choi,
    superop_to_choi,
)
from .povm import (
    Label,
    Povm,
    PovmReport,
    coin_flip_povm,
    povm_from_projectors,
    pvm_from_observable,
    trivial_povm,
    validate_povm,
)
from .channel import (
    Channel,
    ChannelReport,
    depolarizing_channel,
    identity_channel,
    replacement_channel,
    unitary_channel,
    validate_channel,
)
from .instrument import (
    Instrument,
    InstrumentReport,
    adjoint_apply,
    compose_instrument,
    instrument_from_kraus,
    lueders_instrument,
    measure_prepare_instrument,
    mix_instruments,
    sequential_povm,
    total_channel,
    validate_instrument,
)
from .sampling import random_channel, random_instrument, random_povm, random_pvm

__all__ = [
    'choi_adjoint_apply',
    'choi_apply',
    'choi_from_kraus',
    'choi_to_superop',
    'compose_chois',
    'kraus_from_choi',
    'superop_to_choi',
    'Label',
    'Povm',
    'PovmReport',
    'coin_flip_povm',
    'povm_from_projectors',
    'pvm_from_observable',
    'trivial_povm',
    'validate_povm',
    'Channel',
    'ChannelReport',
    'depolarizing_channel',
    'identity_channel',
    'replacement_channel',
    'unitary_channel',
    'validate_channel',
    'Instrument',
    'InstrumentReport',
    'adjoint_apply',
    'compose_instrument',
    'instrument_from_kraus',
    'lueders_instrument',
    'measure_prepare_instrument',
    'mix_instruments',
    'sequential_povm',
    'total_channel',
    'validate_instrument',
    'random_channel',
    'random_instrument',
    'random_povm',
    'random_pvm',
]
