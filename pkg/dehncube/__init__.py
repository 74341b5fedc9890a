"""Khovanov cube of resolutions of plat-closed braids over GF(2) and the
spectral sequence of its weight filtration.
"""
from dehncube import common
from dehncube import conventions
from dehncube import topology
from dehncube import algebra
from dehncube import spectral
from dehncube import pipeline
from dehncube import invariants
from dehncube import cli
