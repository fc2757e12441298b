"""Line-up elections: parallel single-winner elections over a shared candidate pool."""

from .model import Election, ElectionError, LineUp, WinnerSet, parse_election, restrict, score_vector

__all__ = ["Election", "ElectionError", "LineUp", "WinnerSet", "parse_election", "restrict", "score_vector"]
