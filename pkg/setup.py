from setuptools import setup, find_packages

setup(
    name='liquid-unravel',
    version='0.2.0',
    packages=find_packages(include=['unravel', 'unravel.*']),
    install_requires=[
        'Django>=4.0',
        'laces>=0.1.2',
        'networkx>=3.0',
    ],
    extras_require={
        'test': ['sympy>=1.12'],
    },
    entry_points={
        'console_scripts': ['unravel=unravel.commands:main'],
    },
    author='Antwi Kwarteng',
    description='Unravelling of classic and smart liquid democracy ballots into concrete votes',
    python_requires='>=3.8',
)
