#!/usr/bin/env python

"""
Run `pip install -e .` to install local git version.
"""

import os
import re
from setuptools import setup, find_packages

# parse version from init.py
with open("schottkit/__init__.py") as init:
    CUR_VERSION = re.search(
        r"^__version__ = ['\"]([^'\"]*)['\"]",
        init.read(),
        re.M,
    ).group(1)


# nasty workaround for RTD low memory limits
on_rtd = os.environ.get('READTHEDOCS') == 'True'
if on_rtd:
    install_requires = []
else:
    install_requires = [
        "numpy",
        "pandas",
        "scipy",
        "sympy",
        "loguru",
    ]


# setup installation
setup(
    name="schottkit",
    packages=find_packages(include=["schottkit", "schottkit.*"]),
    version=CUR_VERSION,
    author="schottkit developers",
    install_requires=install_requires,
    extras_require={"tests": ["pytest"]},
    entry_points={"console_scripts": ["schottkit = schottkit.cli:main"]},
    license='GPL',
    classifiers=[
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
)
