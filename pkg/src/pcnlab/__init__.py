"""Primitive and completely normal elements of finite fields.

A toolkit for the existence question: does F_{q^n} contain an element that
is simultaneously a generator of the multiplicative group and a normal
basis generator over every intermediate field F_{q^l}, l | n?  The package
counts such elements exactly at desk scale, certifies explicit examples,
and replays the inequality pipelines that settle existence for all but a
short list of parameter pairs.
"""

__version__ = "0.1.0"
