import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

with open("opinionlab/__init__.py", "r") as fh:
    for l in fh:
        if l.startswith('__version__'):
            exec(l)
            break
    else:
        __version__ = 'x.y.z'

setuptools.setup(
    name="opinionlab",
    version=__version__,
    description=(
        "Friedkin-Johnsen opinion dynamics, polarization metrics, network"
        + " administrator dynamics and SBM polarization experiments."
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Development Status :: 2 - Pre-Alpha",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.9',
    install_requires=[
        "numpy>=1.22", "scipy>=1.12", "pandas>=1.5", "xarray"
    ],
    extras_require={
        "netcdf":  ["netcdf4"],
    },
    entry_points={
        "console_scripts": ["opinionlab = opinionlab.drivers:main"],
    }
)
