from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="baryopt",
    version="0.1.0",
    description="Global optimization on spheres and complex Grassmannians by tracking the barycentre of a Gibbs distribution",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["baryopt", "baryopt.*"]),
    package_data={"baryopt.core": ["config.yaml"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.9",
        "pyyaml>=6.0",
        "pydantic>=2.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-asyncio>=0.21.0",
            "hypothesis>=6.70",
            "black>=23.1.0",
            "flake8>=6.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "baryopt=baryopt.core.cli:main",
        ],
    },
)
