#!/usr/bin/env python3

import qmetric
import json
import sys

from setuptools import setup, find_packages


if sys.version_info < (3, 7):
    print("qmetric requires at least python 3.7", file=sys.stderr)
    sys.exit(1)


# Optional dependencies are kept in an external JSON file so other tooling
# can read them without importing setuptools.
with open("extras_require.json") as f:
    extras_require = json.load(f)

setup(
    name="qmetric",
    version=qmetric.VERSION,
    description="variational estimation of trace distance and fidelity",
    long_description=open("README.rst", encoding="utf-8").read(),
    long_description_content_type="text/x-rst",
    author="qmetric developers",
    license="GPL-3+",
    packages=find_packages(exclude=["tests", "tests.*"]),
    entry_points={
        "console_scripts": ["qmetric=qmetric.main:main"],
    },
    install_requires=[
        "numpy",
        "scipy",
    ],
    extras_require=extras_require,
    python_requires=">=3.7",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Operating System :: POSIX",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
