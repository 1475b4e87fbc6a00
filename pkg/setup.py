#!/usr/bin/env python
# -*- coding: utf-8 -*-

try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup

import re


def fread(filename):
    with open(filename) as f:
        return f.read()


def meta(name):
    match = re.search(r'__%s__ = "([^"]+)"' % name,
                      fread('pareto_rules/__init__.py'))
    return match.group(1)


setup(
    name='Pareto-Rules',
    version=meta('version'),
    author=meta('author'),
    packages=['pareto_rules'],
    description='Multi-objective evolution of technical trading rules',
    zip_safe=False,
    include_package_data=True,
    platforms='any',
    long_description=fread('README.rst'),
    license='BSD',
    python_requires='>=3.8',
    install_requires=[
        'Flask>=2.3',
        'Werkzeug>=2.3',
        'blinker>=1.6',
        'click>=8.0',
        'numpy>=1.22',
        'pandas>=1.5',
    ],
    tests_require=['pytest', 'mock'],
    entry_points={
        'console_scripts': [
            'pareto-rules = pareto_rules.cli:main',
        ],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Financial and Insurance Industry',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: POSIX',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Office/Business :: Financial :: Investment',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
    ]
)
