"""Uses setuptools to install the kmgroups module"""
import setuptools
import os

setuptools.setup(
    name='kmgroups',
    version='0.1.0',
    author='Timothy Moore',
    author_email='mtimothy984@gmail.com',
    description='Exact Kac-Moody algebras, their roots and minimal Kac-Moody groups',
    license='CC0',
    keywords='kac-moody lie algebra weyl group chevalley commutator loop group',
    packages=['kmgroups'],
    long_description=open(
        os.path.join(os.path.dirname(__file__), 'README.md')).read(),
    long_description_content_type='text/markdown',
    install_requires=['pytypeutils', 'numpy', 'sympy>=1.12'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['kmgroups=kmgroups.cli:main']},
    classifiers=(
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'License :: CC0 1.0 Universal (CC0 1.0) Public Domain Dedication',
        'Topic :: Scientific/Engineering :: Mathematics'),
    python_requires='>=3.8',
)
