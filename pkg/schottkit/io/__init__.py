#!/usr/bin/env python

"""
JSON codecs and the CLI report writer.
"""

from schottkit.io.codec import (
    encode_matrix, decode_matrix, encode_rep, decode_rep, encode_torus,
    decode_torus, encode_cocycle, decode_cocycle, encode_gauge,
    decode_gauge, load_json, dump_json,
)
from schottkit.io.report import Report
