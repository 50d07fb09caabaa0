"""Package setup configuration"""

from setuptools import setup, find_packages

setup(
    name="hadamard-flow",
    version="0.1.0",
    description="Area- and length-preserving curvature flows on pinched Hadamard surfaces",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "pydantic>=2.0.0",
        "python-dotenv>=1.0.0",
        "rich>=13.0.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0.0",
            "pytest-asyncio>=0.21.0",
            "pytest-cov>=4.0.0",
            "pytest-timeout>=2.1.0",
            "pytest-mock>=3.10.0",
            "hypothesis>=6.80.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "hflow=src.main:cli",
        ],
    },
    python_requires=">=3.10",
)
