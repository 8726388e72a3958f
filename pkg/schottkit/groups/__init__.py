#!/usr/bin/env python

"""
Group presentations, words and the canonical surjections alpha.
"""

from schottkit.groups.presentations import (
    GroupKind, GroupSpec, FreeWord, AbelianWord, Morphism,
    free_group, free_abelian, lattice, surface_group,
    identity_word, generator_word, compose_words, invert_word,
    apply, alpha_torus, alpha_surface, kernel_generators, relator,
    parse_word, format_word, parse_group,
)
