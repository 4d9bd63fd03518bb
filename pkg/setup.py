from kgwall.__init__ import __version__
try:
    from setuptools import setup, find_packages
except ImportError:
    from distutils.core import setup


setup(
    name='kgwall',
    description=('Klein-Gordon waves against singular mass barriers'),
    author='The kgwall authors',
    long_description=open('README.md', 'r').read(),
    long_description_content_type='text/markdown',
    version=__version__,
    license='GPL3',
    install_requires=[
        'numpy',
        'scipy',
        'pyyaml',
        'pyxdg',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'kgwall = kgwall.__main__:main',
        ]
    },
    packages=find_packages(exclude=['tests']),
    scripts=[],
    python_requires='>=3.6',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Natural Language :: English',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
