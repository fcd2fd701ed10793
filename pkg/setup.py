#!/usr/bin/env python

from setuptools import setup

setup(name="hetpir",
      version="1.0",
      description="Exact capacity, placement and private retrieval for "
                  "databases with heterogeneous storage",
      author="The hetpir Team",
      python_requires=">=3.9",
      install_requires=["numpy", "pandas>=1.5", "simpy>=4"],
      extras_require={"test": ["pytest", "hypothesis"]},
      entry_points={"console_scripts": ["hetpir=hetpir.cli:main"]},
      packages=["hetpir",
                "hetpir.core",
                "hetpir.capacity",
                "hetpir.placement",
                "hetpir.retrieval",
                "hetpir.simulation"])
