"""I-Ching casting, chance music and ambient sonification (C++ core)."""

import json

from . import _core
from ._core import (
    IChingError,
    cage_midi,
    derive_zhi_gua,
    king_wen_number,
    pattern_for_king_wen,
    render_ambient_midi,
    render_casting_midi,
)

__all__ = [
    "IChingError",
    "cage_midi",
    "cast",
    "derive_zhi_gua",
    "interpret",
    "king_wen_number",
    "pattern_for_king_wen",
    "render_ambient_midi",
    "render_casting_midi",
    "replay_session",
]


def cast(seed):
    """Six coin tosses from `seed`, as the canonical casting record."""
    return json.loads(_core.cast_json(seed))


def interpret(seed, question, name=None, include_name=True):
    """Cast, interpret with the offline mock provider, and derive a music plan.

    Returns a dict with `record`, `prompt`, `reading` and `plan`.
    """
    return json.loads(_core.interpret_json(seed, question, name, include_name))


def replay_session(log_path, session_id):
    return json.loads(_core.replay_session_json(str(log_path), session_id))
