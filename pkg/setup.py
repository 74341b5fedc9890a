"""Khovanov cube of resolutions over GF(2) and its filtration spectral sequence
"""
from setuptools import setup, find_packages

setup(
    name='dehncube',
    version='0.1.0',
    author="dehncube developers",
    description="Cube of resolutions of plat-closed braids over GF(2) and the spectral sequence of its weight filtration",
    packages=find_packages(exclude=['contrib', 'docs', 'tests', '__pycache__']),
    include_package_data=True,
    package_data={'dehncube.cli': ['report_schema.json']},
    python_requires='>=3.7',
    install_requires=[
        "jsonschema >= 3.0.0",
        "numpy >= 1.17.0",
        "pandas >= 0.25.0",
        "scipy >= 1.3.0",
        "setuptools >= 39.0.1",
        "sympy >= 1.5",
        "tqdm >= 4.23.3"
    ],
    extras_require={
        "test": ["pytest >= 5.0"],
        "docs": ["sphinx"],
    },
    entry_points={
        "console_scripts": ["dehncube=dehncube.cli.main:main"],
    },
)
