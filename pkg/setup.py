"""Setup script for rankset."""

from setuptools import setup

setup(
    name='rankset',
    version='0.1.0',
    packages=['rankset'],
    package_data={'rankset': ['catalog/*.mslsp']},
    include_package_data=True,
    python_requires='>=3.8',
    install_requires=[
        'click', 'bitmath', 'colorama', 'progressbar2', 'ply', 'numpy'
    ],
    entry_points='''
        [console_scripts]
        rankset=rankset.cli:cli
    ''',
)
