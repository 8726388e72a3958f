#!/usr/bin/env python

"""
Cocycle-level H^0, H^1 and Ext^1, extensions and their classes.
"""

from schottkit.cohomology.cocycles import (
    Cocycle, ExtClass, H1Result, InflationResult, ConnectingMap,
    hom_vector, hom_block, fox_blocks, evaluate_cocycle, pullback_cocycle,
    h0, h1, ext1, class_of, class_eq, inflation, connecting_map,
    dimension_table,
)
from schottkit.cohomology.extensions import (
    ExtensionData, build_extension, extract_class,
)
